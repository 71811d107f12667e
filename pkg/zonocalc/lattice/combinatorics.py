"""
Matroidal data of a weight list: bases, admissible hyperplanes, cocircuits and
the flats (rational subspaces) spanned by sublists.
"""
import logging
from functools import lru_cache
from itertools import combinations
from typing import FrozenSet, List, Sequence, Tuple

from ..errors import DoesNotSpan
from ..exactnum.linalg import int_det, nullspace, primitive_integer, rank
from ..exactnum.rational import dot
from .weights import IndexSet, Vector, WeightList

logger = logging.getLogger(__name__)

Normal = Tuple[int, ...]


def vectors_rank(vectors: Sequence[Sequence[int]]) -> int:
    return rank(list(vectors)) if vectors else 0


def spans(X: WeightList) -> bool:
    return vectors_rank(X.vectors()) == X.dim


def require_span(X: WeightList) -> None:
    if not spans(X):
        raise DoesNotSpan(X.to_json())


def enumerate_bases(X: WeightList) -> List[Tuple[IndexSet, int]]:
    """All index sets sigma of size s whose vectors form a basis, with det(sigma)."""
    bases = []
    for sigma in combinations(X.indices, X.dim):
        d = int_det(X.vectors(sigma))
        if d:
            bases.append((sigma, d))
    return bases


def is_unimodular(X: WeightList) -> bool:
    bases = enumerate_bases(X)
    return bool(bases) and all(abs(d) == 1 for _, d in bases)


@lru_cache(maxsize=256)
def _normals_of(vectors: Tuple[Vector, ...], dim: int) -> Tuple[Normal, ...]:
    if dim == 1:
        return ((1,),)
    found = set()
    for subset in combinations(range(len(vectors)), dim - 1):
        rows = [vectors[i] for i in subset]
        if vectors_rank(rows) != dim - 1:
            continue
        kernel = nullspace(rows, dim)
        found.add(primitive_integer(kernel[0]))
    return tuple(sorted(found))


def admissible_normals(vectors: Sequence[Sequence[int]], dim: int = None) -> Tuple[Normal, ...]:
    """
    Primitive integer normals of the hyperplanes spanned by sublists of a
    spanning vector list, first nonzero entry positive, sorted.
    """
    vectors = tuple(tuple(int(x) for x in v) for v in vectors)
    dim = dim or len(vectors[0])
    if vectors_rank(vectors) != dim:
        raise DoesNotSpan([list(v) for v in vectors])
    return _normals_of(vectors, dim)


def weight_normals(X: WeightList) -> Tuple[Normal, ...]:
    return admissible_normals(X.vectors(), X.dim)


def cocircuits(X: WeightList) -> List[IndexSet]:
    """X \\ H for every admissible hyperplane H, as index sets."""
    require_span(X)
    result = []
    for normal in weight_normals(X):
        cocircuit = tuple(i for i in X.indices if dot(normal, X[i]) != 0)
        if cocircuit not in result:
            result.append(cocircuit)
    return result


def is_long(X: WeightList, indices: Sequence[int]) -> bool:
    """True when removing ``indices`` leaves a sublist that does not span."""
    return vectors_rank(X.vectors(X.complement(indices))) < X.dim


# ------------------------------------------
# Flats
# ------------------------------------------

def _closure(X: WeightList, indices: FrozenSet[int]) -> FrozenSet[int]:
    base = X.vectors(sorted(indices))
    r = vectors_rank(base)
    return frozenset(i for i in X.indices if i in indices or vectors_rank(base + [X[i]]) == r)


def _independent_basis(X: WeightList, flat: FrozenSet[int]) -> IndexSet:
    chosen: List[int] = []
    for i in sorted(flat):
        if vectors_rank(X.vectors(chosen + [i])) == len(chosen) + 1:
            chosen.append(i)
    return tuple(chosen)


def rational_subspaces(X: WeightList) -> List[Tuple[List[Vector], IndexSet]]:
    """
    Every subspace spanned by a sublist, once each, as (basis vectors, X cap s).

    The flats are grown breadth first from the closure of the empty list, so
    the output is ordered by dimension and then by index set.
    """
    start = _closure(X, frozenset())
    seen = {start}
    frontier = [start]
    while frontier:
        grown = []
        for flat in frontier:
            for i in X.indices:
                if i in flat:
                    continue
                bigger = _closure(X, flat | {i})
                if bigger not in seen:
                    seen.add(bigger)
                    grown.append(bigger)
        frontier = grown
    flats = sorted(seen, key=lambda f: (vectors_rank(X.vectors(sorted(f))), sorted(f)))
    return [(X.vectors(_independent_basis(X, f)), tuple(sorted(f))) for f in flats]
