import logging
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from sympy import QQ

from ..errors import DoesNotSpan
from ..exactnum.linalg import nullspace, primitive_integer, rank
from ..exactnum.rational import Point, dot, format_point, sub
from ..lattice.combinatorics import admissible_normals, require_span, vectors_rank
from ..lattice.weights import WeightList
from .arrangement import Arrangement, Cell
from .polyhedron import Polyhedron, Window

logger = logging.getLogger(__name__)


def _facet_normals(vectors: List[Tuple[int, ...]], dim: int) -> Tuple[List[Tuple[int, ...]], List[Tuple[int, ...]]]:
    """
    Normals of the hyperplanes (inside span X) spanned by sublists, plus a
    basis of the orthogonal complement of span X.
    """
    r = vectors_rank(vectors) if vectors else 0
    complement = [primitive_integer(m) for m in nullspace(vectors, dim)] if r < dim else []
    normals = set()
    if r == 0:
        return [], complement
    for subset in combinations(range(len(vectors)), r - 1):
        rows = [vectors[i] for i in subset] + complement
        if rank(rows) != dim - 1:
            continue
        normals.add(primitive_integer(nullspace(rows, dim)[0]))
    return sorted(normals), complement


def zonotope(X: WeightList) -> Polyhedron:
    """Z(X) = {sum t_i a_i : 0 <= t_i <= 1} as an H-polytope."""
    vectors = X.vectors()
    normals, complement = _facet_normals(vectors, X.dim)
    inequalities = []
    for n in normals:
        values = [dot(n, a) for a in vectors]
        upper = sum((v for v in values if v > 0), QQ(0))
        lower = sum((v for v in values if v < 0), QQ(0))
        inequalities.append((n, upper))
        inequalities.append((tuple(-x for x in n), -lower))
    equalities = [(m, QQ(0)) for m in complement]
    return Polyhedron.with_equalities(X.dim, inequalities, equalities)


def zonotope_box(X: WeightList) -> Tuple[Point, Point]:
    """Coordinate bounds of Z(X)."""
    lower = [QQ(0)] * X.dim
    upper = [QQ(0)] * X.dim
    for a in X.vectors():
        for i, x in enumerate(a):
            if x < 0:
                lower[i] += x
            else:
                upper[i] += x
    return tuple(lower), tuple(upper)


def zonotope_volume(X: WeightList) -> int:
    volume = zonotope(X).volume()
    return int(volume.numerator) // int(volume.denominator)


def cone_polyhedron(vectors: Sequence[Sequence[int]], dim: int) -> Polyhedron:
    """Cone(vectors) for a spanning list: the admissible half-spaces containing every vector."""
    constraints = []
    for n in admissible_normals(vectors, dim):
        values = [dot(n, a) for a in vectors]
        if all(v >= 0 for v in values):
            constraints.append((tuple(-x for x in n), 0))
        if all(v <= 0 for v in values):
            constraints.append((n, 0))
    return Polyhedron(dim, constraints)


# ------------------------------------------
# Alcoves at the origin
# ------------------------------------------

def _origin_window(X: WeightList) -> Window:
    # alcoves with 0 in their closure lie inside [-L, L]^s
    bound = sum(max(abs(x) for x in a) for a in X.vectors())
    return Window.cube(X.dim, -bound - 1, bound + 1)


def alcoves_at_origin(X: WeightList) -> List[Cell]:
    require_span(X)
    window = _origin_window(X)
    return [c for c in Arrangement.of_weights(X).cells(window) if all(k in (-1, 0) for k in c.signature)]


def base_alcove(X: WeightList, require_in_zonotope: bool = True, require_in_cone: bool = False) -> Cell:
    """
    Deterministic alcove with 0 in its closure, optionally inside Z(X) or
    inside Cone(X).

    Among the candidates the one whose vertex average is smallest in reverse
    lexicographic order (last coordinate most significant) is chosen.
    """
    candidates = alcoves_at_origin(X)
    if require_in_zonotope:
        Z = zonotope(X)
        candidates = [c for c in candidates if all(Z.contains(v) for v in c.polyhedron.vertices)]
    if require_in_cone:
        cone = cone_polyhedron(X.vectors(), X.dim)
        candidates = [c for c in candidates if all(cone.contains(v) for v in c.polyhedron.vertices)]
    if not candidates:
        raise DoesNotSpan(X.to_json(), message=f"no alcove at the origin satisfies the constraints for {X}")
    chosen = min(candidates, key=lambda c: tuple(reversed(c.interior_point)))
    logger.debug(f"base alcove of {X}: {format_point(chosen.interior_point)}")
    return chosen


def alcove_containing(X: WeightList, point: Sequence) -> Optional[Cell]:
    """The alcove with 0 in its closure that contains the point, if any."""
    for c in alcoves_at_origin(X):
        if c.contains(point):
            return c
    return None


def delta_set(c: Cell, X: WeightList, epsilon: Optional[Sequence] = None) -> List[Tuple[int, ...]]:
    """delta(c|X) = (eps - Z(X)) cap Lambda for an interior point eps of c."""
    epsilon = c.interior_point if epsilon is None else epsilon
    Z = zonotope(X)
    lower, upper = zonotope_box(X)
    window = Window(sub(epsilon, upper), sub(epsilon, lower))
    return [lam for lam in window.lattice_points() if Z.contains(sub(epsilon, lam))]
