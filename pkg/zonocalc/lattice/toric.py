import logging
from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import List, Sequence, Tuple

from sympy import QQ

from ..exactnum.cyclotomic import Cyclo
from ..exactnum.linalg import smith_decomposition
from ..exactnum.rational import Rat, dot, floor_rat, format_point, is_integral, rat
from .combinatorics import enumerate_bases, require_span, vectors_rank
from .weights import IndexSet, WeightList

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ToricVertex:
    """
    A torsion point g of the torus, stored as q in [0,1)^s.

    The pairing with a lattice vector is g^lambda = zeta_n^(n <q, lambda>)
    where n is the lcm of the coordinate denominators.
    """
    coords: Tuple[Rat, ...]

    @classmethod
    def canonical(cls, coords: Sequence) -> "ToricVertex":
        reduced = []
        for c in coords:
            c = rat(c)
            reduced.append(c - floor_rat(c))
        return cls(tuple(reduced))

    @classmethod
    def identity(cls, dim: int) -> "ToricVertex":
        return cls(tuple(QQ(0) for _ in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def order(self) -> int:
        n = 1
        for c in self.coords:
            d = int(c.denominator)
            n = n * d // gcd(n, d)
        return n

    def is_identity(self) -> bool:
        return not any(self.coords)

    def inverse(self) -> "ToricVertex":
        return ToricVertex.canonical(-c for c in self.coords)

    def exponent(self, vector: Sequence[int]) -> int:
        """n <q, vector> mod n."""
        n = self.order
        value = dot(self.coords, vector) * n
        return (int(value.numerator) // int(value.denominator)) % n

    def fixes(self, vector: Sequence[int]) -> bool:
        return is_integral(dot(self.coords, vector))

    def pairing(self, vector: Sequence[int]) -> Cyclo:
        """g^vector as a cyclotomic number of order ``self.order``."""
        return Cyclo.root_power(self.order, self.exponent(vector))

    def to_json(self) -> dict:
        return {"coords": format_point(self.coords), "order": self.order}

    def __str__(self) -> str:
        return "(" + ",".join(format_point(self.coords)) + ")"


def fixed_sublist(X: WeightList, g: ToricVertex) -> IndexSet:
    """X^g: indices of the weights with g^a = 1."""
    return tuple(i for i in X.indices if g.fixes(X[i]))


def _basis_torsion(rows: List[Tuple[int, ...]]) -> List[ToricVertex]:
    """All q mod Z^s with <q, a> integral for the basis vectors in ``rows``."""
    diagonal, _, t = smith_decomposition(rows)
    dim = len(rows)
    found = []
    diagonal = [abs(d) for d in diagonal]
    for ks in product(*(range(d) for d in diagonal)):
        scaled = [QQ(k, d) for k, d in zip(ks, diagonal)]
        q = [sum((t[i][j] * scaled[j] for j in range(dim)), QQ(0)) for i in range(dim)]
        found.append(ToricVertex.canonical(q))
    return found


def toric_vertices(X: WeightList) -> List[ToricVertex]:
    """
    V(X): torsion points g whose fixed sublist X^g still spans.

    Candidates are the torsion solutions of every basis (via Smith normal
    form); the identity is always first, the rest follow in order then
    coordinates.
    """
    require_span(X)
    seen = set()
    vertices = []
    for sigma, d in enumerate_bases(X):
        for g in _basis_torsion(X.vectors(sigma)):
            if g in seen:
                continue
            seen.add(g)
            if vectors_rank(X.vectors(fixed_sublist(X, g))) == X.dim:
                vertices.append(g)
            else:
                logger.debug(f"rejected torsion point {g} of basis {sigma}: fixed sublist does not span")
    vertices.sort(key=lambda g: (not g.is_identity(), g.order, g.coords))
    return vertices
