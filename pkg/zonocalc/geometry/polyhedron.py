"""
Rational polyhedra in H-representation, axis-aligned windows, and the exact
volume/integration kernel (pulling triangulation + simplex moments).
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from math import factorial
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from sympy import QQ

from ..errors import Unbounded
from ..exactnum.linalg import det, nullspace, rank, solve_small
from ..exactnum.rational import Point, Rat, ceil_rat, centroid, dot, floor_rat, format_point, format_rat, rat, sub

logger = logging.getLogger(__name__)

Constraint = Tuple[Tuple[Rat, ...], Rat]


# ------------------------------------------
# Windows
# ------------------------------------------

@dataclass(frozen=True)
class Window:
    """The rational box [l_1,u_1] x ... x [l_s,u_s]."""
    lower: Tuple[Rat, ...]
    upper: Tuple[Rat, ...]

    def __post_init__(self):
        if len(self.lower) != len(self.upper) or not self.lower:
            raise ValueError("window bounds must have the same positive length")
        for lo, hi in zip(self.lower, self.upper):
            if lo > hi:
                raise ValueError(f"empty window side [{lo}, {hi}]")

    @classmethod
    def box(cls, lower: Sequence, upper: Sequence) -> "Window":
        return cls(tuple(rat(x) for x in lower), tuple(rat(x) for x in upper))

    @classmethod
    def cube(cls, dim: int, lo, hi) -> "Window":
        return cls.box([lo] * dim, [hi] * dim)

    @classmethod
    def from_pairs(cls, sides: Sequence[Sequence]) -> "Window":
        return cls.box([s[0] for s in sides], [s[1] for s in sides])

    @property
    def dim(self) -> int:
        return len(self.lower)

    def contains(self, point: Sequence, strict: bool = True) -> bool:
        if strict:
            return all(lo < x < hi for lo, x, hi in zip(self.lower, point, self.upper))
        return all(lo <= x <= hi for lo, x, hi in zip(self.lower, point, self.upper))

    def contains_window(self, other: "Window") -> bool:
        return all(a <= b for a, b in zip(self.lower, other.lower)) and all(
            a >= b for a, b in zip(self.upper, other.upper))

    def union(self, other: "Window") -> "Window":
        return Window(tuple(min(a, b) for a, b in zip(self.lower, other.lower)),
                      tuple(max(a, b) for a, b in zip(self.upper, other.upper)))

    def shifted(self, vector: Sequence) -> "Window":
        return Window(tuple(a + rat(x) for a, x in zip(self.lower, vector)),
                      tuple(a + rat(x) for a, x in zip(self.upper, vector)))

    def minkowski(self, lower: Sequence, upper: Sequence) -> "Window":
        """Window + [lower, upper] (a box sum)."""
        return Window(tuple(a + rat(x) for a, x in zip(self.lower, lower)),
                      tuple(a + rat(x) for a, x in zip(self.upper, upper)))

    def padded(self, amount) -> "Window":
        amount = rat(amount)
        return Window(tuple(a - amount for a in self.lower), tuple(a + amount for a in self.upper))

    def volume(self) -> Rat:
        total = QQ(1)
        for lo, hi in zip(self.lower, self.upper):
            total *= hi - lo
        return total

    def lattice_points(self, strict: bool = False) -> List[Tuple[int, ...]]:
        ranges = []
        for lo, hi in zip(self.lower, self.upper):
            if strict:
                ranges.append(range(floor_rat(lo) + 1, ceil_rat(hi)))
            else:
                ranges.append(range(ceil_rat(lo), floor_rat(hi) + 1))
        return [tuple(p) for p in product(*ranges)]

    def to_polyhedron(self) -> "Polyhedron":
        return Polyhedron(self.dim, box_constraints(self.lower, self.upper))

    def to_json(self) -> List[List[str]]:
        return [[format_rat(lo), format_rat(hi)] for lo, hi in zip(self.lower, self.upper)]

    def __str__(self) -> str:
        return " x ".join(f"[{format_rat(lo)},{format_rat(hi)}]" for lo, hi in zip(self.lower, self.upper))


def box_constraints(lower: Sequence, upper: Sequence) -> List[Constraint]:
    dim = len(lower)
    constraints = []
    for i in range(dim):
        unit = tuple(QQ(1) if j == i else QQ(0) for j in range(dim))
        constraints.append((unit, rat(upper[i])))
        constraints.append((tuple(-x for x in unit), -rat(lower[i])))
    return constraints


def bounding_window(points: Sequence[Sequence]) -> Window:
    dim = len(points[0])
    lower = tuple(min(rat(p[i]) for p in points) for i in range(dim))
    upper = tuple(max(rat(p[i]) for p in points) for i in range(dim))
    # degenerate directions get a unit of slack so the box stays nonempty
    return Window(tuple(lo if lo < hi else lo - 1 for lo, hi in zip(lower, upper)),
                  tuple(hi if lo < hi else hi + 1 for lo, hi in zip(lower, upper)))


# ------------------------------------------
# Polyhedra
# ------------------------------------------

class Polyhedron:
    """
    {v : <n_j, v> <= c_j for all j}.

    Vertices are enumerated by brute force over s-subsets of constraints, which
    is adequate at the sizes this package works with.
    """

    def __init__(self, dim: int, constraints: Sequence[Tuple[Sequence, object]]):
        self.dim = dim
        self.constraints: Tuple[Constraint, ...] = tuple(
            (tuple(rat(x) for x in normal), rat(offset)) for normal, offset in constraints)

    @classmethod
    def with_equalities(cls, dim: int, inequalities: Sequence, equalities: Sequence) -> "Polyhedron":
        constraints = list(inequalities)
        for normal, offset in equalities:
            constraints.append((normal, offset))
            constraints.append((tuple(-rat(x) for x in normal), -rat(offset)))
        return cls(dim, constraints)

    def slack(self, point: Sequence) -> List[Rat]:
        return [c - dot(n, point) for n, c in self.constraints]

    def contains(self, point: Sequence, strict: bool = False) -> bool:
        if strict:
            return all(s > 0 for s in self.slack(point))
        return all(s >= 0 for s in self.slack(point))

    def is_bounded(self) -> bool:
        normals = [n for n, _ in self.constraints]
        if not normals or rank(normals) < self.dim:
            return False
        # a pointed recession cone {d : N d <= 0} is trivial iff it has no extreme ray
        for subset in combinations(range(len(normals)), self.dim - 1):
            rows = [normals[i] for i in subset]
            if rows and rank(rows) != self.dim - 1:
                continue
            kernel = nullspace(rows, self.dim)
            if len(kernel) != 1:
                continue
            for direction in (kernel[0], tuple(-x for x in kernel[0])):
                if all(dot(n, direction) <= 0 for n in normals):
                    return False
        return True

    @cached_property
    def vertices(self) -> List[Point]:
        found: Dict[Point, None] = {}
        for subset in combinations(self.constraints, self.dim):
            solution = solve_small([n for n, _ in subset], [c for _, c in subset])
            if solution is None or solution in found:
                continue
            if self.contains(solution):
                found[solution] = None
        return sorted(found)

    def require_bounded(self) -> None:
        if not self.is_bounded():
            raise Unbounded(f"polyhedron with {len(self.constraints)} constraints in dimension {self.dim} is unbounded")

    def is_empty(self) -> bool:
        return not self.vertices

    def affine_dimension(self) -> int:
        return _affine_rank(self.vertices)

    def interior_point(self) -> Optional[Point]:
        if self.affine_dimension() < self.dim:
            return None
        return centroid(self.vertices)

    def bounding_window(self) -> Window:
        self.require_bounded()
        return bounding_window(self.vertices)

    def lattice_points(self, strict: bool = False) -> List[Tuple[int, ...]]:
        if self.is_empty():
            return []
        box = self.bounding_window()
        return [p for p in box.lattice_points() if self.contains(p, strict=strict)]

    def intersect(self, other: "Polyhedron") -> "Polyhedron":
        return Polyhedron(self.dim, self.constraints + other.constraints)

    # ------------------------------------------
    # Triangulation, volume, integration
    # ------------------------------------------

    def simplices(self) -> List[List[Point]]:
        """Pulling triangulation into full-dimensional simplices (empty if lower dimensional)."""
        self.require_bounded()
        vertices = self.vertices
        if _affine_rank(vertices) < self.dim:
            return []
        tight = [frozenset(j for j, (n, c) in enumerate(self.constraints) if dot(n, v) == c) for v in vertices]
        found = _pull(vertices, tight, frozenset(range(len(vertices))), self.dim, len(self.constraints))
        return [[vertices[i] for i in simplex] for simplex in found]

    def volume(self) -> Rat:
        total = QQ(0)
        for simplex in self.simplices():
            total += simplex_volume(simplex)
        return total

    def integrate(self, poly) -> Rat:
        """Exact integral of a sympy ring polynomial (one generator per coordinate)."""
        total = QQ(0)
        if not poly:
            return total
        for simplex in self.simplices():
            total += integrate_over_simplex(poly, simplex)
        return total

    def to_json(self) -> dict:
        return {
            "constraints": [{"normal": format_point(n), "offset": format_rat(c)} for n, c in self.constraints],
            "vertices": [format_point(v) for v in self.vertices],
        }


def _affine_rank(points: Sequence[Sequence]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    return rank([sub(p, base) for p in points[1:]])


def _pull(vertices, tight, face: FrozenSet[int], k: int, n_constraints: int) -> List[Tuple[int, ...]]:
    if k == 0:
        return [tuple(face)]
    apex = min(face)
    result = []
    seen = set()
    for j in range(n_constraints):
        facet = frozenset(i for i in face if j in tight[i])
        if apex in facet or facet in seen or len(facet) < k:
            continue
        if _affine_rank([vertices[i] for i in sorted(facet)]) != k - 1:
            continue
        seen.add(facet)
        for simplex in _pull(vertices, tight, facet, k - 1, n_constraints):
            result.append(simplex + (apex,))
    return result


def simplex_volume(simplex: Sequence[Sequence]) -> Rat:
    base = simplex[0]
    edges = [sub(v, base) for v in simplex[1:]]
    return abs(det(edges)) / factorial(len(edges))


def integrate_over_simplex(poly, simplex: Sequence[Sequence]) -> Rat:
    """
    Pulls ``poly`` back to the standard simplex and sums the moments
    int u^beta = beta! / (|beta| + s)!.
    """
    ring = poly.ring
    s = ring.ngens
    base = simplex[0]
    jacobian = [sub(v, base) for v in simplex[1:]]  # rows are edge vectors
    jac_det = abs(det(jacobian))
    if not jac_det:
        return QQ(0)
    gens = ring.gens
    substitution = []
    for i in range(s):
        image = ring(base[i])
        for j in range(s):
            if jacobian[j][i]:
                image += gens[j] * jacobian[j][i]
        substitution.append((gens[i], image))
    pulled = poly.compose(substitution)
    total = QQ(0)
    for monom, coeff in pulled.terms():
        moment = QQ(1)
        for e in monom:
            moment *= factorial(e)
        total += coeff * moment / factorial(sum(monom) + s)
    return total * jac_det
