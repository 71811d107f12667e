"""
The Dahmen-Micchelli spaces.

D(X) is the space of polynomials killed by d_Y for every cocircuit Y, DM(X)
the lattice functions killed by nabla_Y. DM(X) decomposes over the toric
vertices as the sum of g^lambda D(X^g), which is how its elements are stored.
"""
import logging
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import QQ

from ..errors import SingularSystem
from ..exactnum.cyclotomic import Cyclo, as_cyclo, common_order
from ..exactnum.linalg import nullspace, solve
from ..exactnum.rational import format_point, scale
from ..geometry.arrangement import Cell
from ..geometry.polyhedron import Window
from ..geometry.zonotope import delta_set, zonotope, zonotope_box, zonotope_volume
from ..lattice.combinatorics import cocircuits, enumerate_bases, require_span
from ..lattice.toric import ToricVertex, fixed_sublist, toric_vertices
from ..lattice.weights import WeightList
from ..piecewise.polynomials import MultiPoly, poly_ring
from .functions import LatticeFunction, LatticePoint, nabla_discrete

logger = logging.getLogger(__name__)


class DMElement(LatticeFunction):
    """
    K(lambda) = sum_g g^lambda p_g(lambda).

    Attributes:
        components: (vertex, polynomial) pairs, one per vertex at most.
    """

    def __init__(self, dim: int, components: Sequence[Tuple[ToricVertex, MultiPoly]], label: str = ""):
        super().__init__(dim, label)
        merged: Dict[ToricVertex, MultiPoly] = {}
        for g, p in components:
            merged[g] = merged[g] + p if g in merged else p
        self.components: List[Tuple[ToricVertex, MultiPoly]] = [(g, p) for g, p in merged.items() if not p.is_zero()]

    def _value(self, lam: LatticePoint) -> Cyclo:
        total = Cyclo.zero()
        for g, p in self.components:
            total = total + g.pairing(lam) * p.evaluate(lam)
        return total

    def component(self, g: ToricVertex) -> MultiPoly:
        for h, p in self.components:
            if h == g:
                return p
        return MultiPoly.zero(self.dim)

    def scale(self, c) -> "DMElement":
        return DMElement(self.dim, [(g, p.scale(c)) for g, p in self.components], self.label)

    def plus(self, other: "DMElement") -> "DMElement":
        return DMElement(self.dim, self.components + other.components, self.label)

    def to_json(self, points=None):
        if points is not None:
            return super().to_json(points)
        return [{"vertex": g.to_json(), "polynomial": p.to_json()} for g, p in self.components]


def linear_combination(dim: int, coefficients: Sequence, elements: Sequence[DMElement], label: str = "") -> DMElement:
    components = []
    for c, element in zip(coefficients, elements):
        c = as_cyclo(c)
        if c.is_zero():
            continue
        components.extend((g, p.scale(c)) for g, p in element.components)
    return DMElement(dim, components, label)


# ------------------------------------------
# D(X)
# ------------------------------------------

def _monomials(dim: int, degree: int) -> List[Tuple[int, ...]]:
    found = [m for m in product(range(degree + 1), repeat=dim) if sum(m) <= degree]
    return sorted(found, key=lambda m: (sum(m), tuple(reversed(m))))


def _derivative(p, vectors, gens):
    for a in vectors:
        result = p.ring.zero
        for g, x in zip(gens, a):
            if x:
                result += p.diff(g) * x
        p = result
        if not p:
            break
    return p


@lru_cache(maxsize=128)
def _d_space(X: WeightList) -> Tuple[MultiPoly, ...]:
    require_span(X)
    R = poly_ring(X.dim)
    degree = len(X) - X.dim
    monomials = _monomials(X.dim, degree)
    images = []
    for Y in cocircuits(X):
        vectors = X.vectors(Y)
        images.append([_derivative(R({m: QQ(1)}), vectors, R.gens) for m in monomials])
    rows = []
    for image in images:
        targets = sorted({t for p in image for t in p.itermonoms()})
        for t in targets:
            rows.append([p.get(t, QQ(0)) for p in image])
    basis = nullspace(rows, len(monomials))
    polys = []
    for vector in basis:
        p = R.zero
        for m, c in zip(monomials, vector):
            if c:
                p += R({m: c})
        polys.append(MultiPoly.from_ring(p))
    polys.sort(key=lambda q: (q.degree(), [tuple(reversed(m)) for m in sorted(q.monomials(), reverse=True)]))
    logger.debug(f"D{X} has dimension {len(polys)}")
    return tuple(polys)


def d_space_basis(X: WeightList) -> List[MultiPoly]:
    """Basis of D(X) among polynomials of degree <= |X| - s."""
    return list(_d_space(X))


def dm_space_basis(X: WeightList) -> List[DMElement]:
    """g^lambda p(lambda) for every vertex g and every p in a basis of D(X^g)."""
    basis = []
    for g in toric_vertices(X):
        Xg = X.sublist(fixed_sublist(X, g))
        for p in d_space_basis(Xg):
            basis.append(DMElement(X.dim, [(g, p)], label=f"{g}:{p}"))
    return basis


def dimension_counts(X: WeightList) -> Dict[str, int]:
    """dim D(X), #bases, dim DM(X), sum |det|, vol Z(X)."""
    bases = enumerate_bases(X)
    return {
        "dim_D": len(d_space_basis(X)),
        "bases": len(bases),
        "dim_DM": len(dm_space_basis(X)),
        "sum_abs_det": sum(abs(d) for _, d in bases),
        "zonotope_volume": zonotope_volume(X),
    }


# ------------------------------------------
# Difference equations
# ------------------------------------------

def certifying_grid(X: WeightList, dilation: int = 2) -> List[LatticePoint]:
    """Lattice points of dilation * (Z(X) - Z(X))."""
    doubled = X.doubled()
    Z = zonotope(doubled)
    lower, upper = zonotope_box(doubled)
    window = Window(scale(dilation, lower), scale(dilation, upper))
    return [lam for lam in window.lattice_points() if Z.contains(scale(QQ(1, dilation), lam))]


def annihilation_failure(X: WeightList, K: LatticeFunction, grid: Sequence[LatticePoint]) -> Optional[Tuple]:
    """(cocircuit, lambda) where nabla_Y K does not vanish, or None."""
    for Y in cocircuits(X):
        image = nabla_discrete(K, X.vectors(Y))
        for lam in grid:
            if not image.value(lam).is_zero():
                return Y, lam
    return None


# ------------------------------------------
# Interpolation
# ------------------------------------------

def _realified_solve(matrix: List[List[Cyclo]], rhs: List[Cyclo]) -> Optional[List[Cyclo]]:
    """Solves a square system over Q(zeta_n) as a rational system of size phi(n) times larger."""
    n = common_order([z.order for row in matrix for z in row] + [z.order for z in rhs])
    width = None
    rows = []
    vector = []
    for row, b in zip(matrix, rhs):
        blocks = [z.embed(n).multiplication_matrix() for z in row]
        width = len(blocks[0])
        for i in range(width):
            rows.append([x for block in blocks for x in block[i]])
        vector.extend(b.embed(n).coeffs)
    solution = solve(rows, vector)
    if solution is None:
        return None
    return [Cyclo(n, list(solution[j * width:(j + 1) * width])) for j in range(len(matrix))]


def evaluation_matrix(X: WeightList, points: Sequence[LatticePoint], basis: Sequence[DMElement]) -> List[List[Cyclo]]:
    return [[element.value(xi) for element in basis] for xi in points]


def dm_interpolate(X: WeightList, c: Cell, values: Dict[Sequence[int], object]) -> DMElement:
    """The unique K in DM(X) with prescribed values on delta(c|X)."""
    points = delta_set(c, X)
    data = {tuple(k): as_cyclo(v) for k, v in values.items()}
    if set(data) != set(points):
        raise SingularSystem(f"interpolation data must be keyed by delta(c|X) = {[list(p) for p in points]}")
    basis = dm_space_basis(X)
    if len(basis) != len(points):
        raise SingularSystem(f"|delta(c|X)| = {len(points)} but dim DM{X} = {len(basis)}")
    coefficients = _realified_solve(evaluation_matrix(X, points, basis), [data[p] for p in points])
    if coefficients is None:
        raise SingularSystem(f"evaluation matrix of DM{X} on delta(c|X) at {format_point(c.interior_point)} is singular")
    return linear_combination(X.dim, coefficients, basis, label=f"DM{X}")


def interpolation_basis(X: WeightList, c: Cell) -> Dict[LatticePoint, DMElement]:
    """k_c^(xi): the element equal to 1 at xi and 0 on the rest of delta(c|X)."""
    points = delta_set(c, X)
    return {xi: dm_interpolate(X, c, {p: int(p == xi) for p in points}) for xi in points}
