"""
Hyperplane arrangements with integer normals, their cells inside a window, and
the dual-space chambers used for regular faces and pointedness.
"""
import logging
import threading
from functools import cached_property, lru_cache
from itertools import combinations, product
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import QQ

from ..errors import IrregularPoint, NotPointed
from ..exactnum.linalg import int_det, primitive_integer, rank
from ..exactnum.rational import Point, dot, floor_rat, format_point, rat
from ..lattice.combinatorics import Normal, weight_normals
from ..lattice.weights import WeightList
from .polyhedron import Polyhedron, Window, box_constraints

logger = logging.getLogger(__name__)

Signature = Tuple[int, ...]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=256)
def _minor_lcm(normals: Tuple[Normal, ...], dim: int) -> int:
    """lcm of |det| over the nonsingular s x s minors of normals and unit vectors."""
    rows = list(normals) + [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    result = 1
    for subset in combinations(rows, dim):
        d = abs(int_det(list(subset)))
        if d:
            result = _lcm(result, d)
    return result


class Arrangement:
    """
    Hyperplanes <n, v> = k for a list of primitive integer normals.

    An affine arrangement takes every integer level k, a central one only k = 0.
    Points are located by their signature: floor(<n, v>) per normal (affine) or
    the sign of <n, v> (central). Points on a hyperplane have no signature.
    """

    def __init__(self, normals: Sequence[Sequence[int]], dim: int, affine: bool = True):
        self.dim = dim
        self.affine = affine
        self.normals: Tuple[Normal, ...] = tuple(sorted({primitive_integer([QQ(x) for x in n]) for n in normals}))
        self._cells: Dict[Window, List["Cell"]] = {}
        self._lock = threading.Lock()

    @classmethod
    def of_weights(cls, X: WeightList) -> "Arrangement":
        """The affine (X, Lambda) arrangement of all lattice translates of admissible hyperplanes."""
        return cls(weight_normals(X), X.dim, affine=True)

    @classmethod
    def central(cls, vectors: Sequence[Sequence[int]], dim: int) -> "Arrangement":
        return cls(vectors, dim, affine=False)

    def key(self) -> Tuple:
        return (self.dim, self.affine, self.normals)

    def __eq__(self, other) -> bool:
        return isinstance(other, Arrangement) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def refine(self, other: "Arrangement") -> "Arrangement":
        """Common refinement; affine wins since it contains every level-0 hyperplane."""
        return Arrangement(self.normals + other.normals, self.dim, self.affine or other.affine)

    # ------------------------------------------
    # Point location
    # ------------------------------------------

    def try_signature(self, point: Sequence) -> Optional[Signature]:
        signature = []
        for n in self.normals:
            value = dot(n, point)
            if self.affine:
                if value.denominator == 1:
                    return None
                signature.append(floor_rat(value))
            else:
                if value == 0:
                    return None
                signature.append(1 if value > 0 else -1)
        return tuple(signature)

    def signature(self, point: Sequence) -> Signature:
        signature = self.try_signature(point)
        if signature is None:
            raise IrregularPoint(format_point(point))
        return signature

    def is_regular(self, point: Sequence) -> bool:
        return self.try_signature(point) is not None

    # ------------------------------------------
    # Cells
    # ------------------------------------------

    def grid_denominator(self, window: Window) -> int:
        # Cramer: vertex denominators divide det(M) times the window denominators
        q = 1
        for x in window.lower + window.upper:
            q = _lcm(q, int(x.denominator))
        return _minor_lcm(self.normals, self.dim) * q

    def cells(self, window: Window) -> List["Cell"]:
        """
        Every cell of the arrangement meeting the window interior, each with a
        sample point.

        Cell vertices lie in (1/D) Z^s, so the barycentre of any s+1 affinely
        independent vertices is a point of (1/(D(s+1))) Z^s inside the cell;
        scanning that grid therefore meets every cell.
        """
        with self._lock:
            cached = self._cells.get(window)
        if cached is not None:
            return cached
        scale = self.grid_denominator(window) * (self.dim + 1)
        ranges = [range(floor_rat(lo * scale) + 1, -floor_rat(-hi * scale)) for lo, hi in zip(window.lower, window.upper)]
        found: Dict[Signature, Cell] = {}
        for ks in product(*ranges):
            signature = self._grid_signature(ks, scale)
            if signature is None or signature in found:
                continue
            sample = tuple(QQ(k, scale) for k in ks)
            found[signature] = Cell(self, signature, window, sample)
        cells = list(found.values())
        logger.debug(f"arrangement with {len(self.normals)} normals has {len(cells)} cells in {window}")
        with self._lock:
            self._cells[window] = cells
        return cells

    def _grid_signature(self, ks: Sequence[int], scale: int) -> Optional[Signature]:
        signature = []
        for n in self.normals:
            value = sum(a * k for a, k in zip(n, ks))
            if self.affine:
                if value % scale == 0:
                    return None
                signature.append(value // scale)
            else:
                if value == 0:
                    return None
                signature.append(1 if value > 0 else -1)
        return tuple(signature)

    def cell_at(self, point: Sequence, window: Window) -> "Cell":
        return Cell(self, self.signature(point), window, tuple(rat(x) for x in point))


class Cell:
    """A full-dimensional cell of an arrangement clipped to a window."""

    def __init__(self, arrangement: Arrangement, signature: Signature, window: Window, sample: Point):
        self.arrangement = arrangement
        self.signature = signature
        self.window = window
        self.sample = sample

    def arrangement_constraints(self) -> List[Tuple[Tuple, object, int, int]]:
        """
        (normal, offset, index of the hyperplane normal, step) for the slab or
        half-space sides; ``step`` is how the signature entry changes when the
        side is crossed.
        """
        constraints = []
        for i, (n, k) in enumerate(zip(self.arrangement.normals, self.signature)):
            normal = tuple(QQ(x) for x in n)
            negated = tuple(-x for x in normal)
            if self.arrangement.affine:
                constraints.append((normal, QQ(k + 1), i, 1))
                constraints.append((negated, QQ(-k), i, -1))
            elif k > 0:
                constraints.append((negated, QQ(0), i, -2))
            else:
                constraints.append((normal, QQ(0), i, 2))
        return constraints

    @cached_property
    def polyhedron(self) -> Polyhedron:
        constraints = [(n, c) for n, c, _, _ in self.arrangement_constraints()]
        return Polyhedron(self.arrangement.dim, constraints + box_constraints(self.window.lower, self.window.upper))

    @cached_property
    def interior_point(self) -> Point:
        """Average of the cell vertices."""
        return self.polyhedron.interior_point()

    def contains(self, point: Sequence) -> bool:
        return self.window.contains(point) and self.arrangement.try_signature(point) == self.signature

    def walls(self) -> List[Tuple[Normal, int, Signature]]:
        """
        Facets lying on arrangement hyperplanes, as (normal, level, signature
        of the neighbouring cell).
        """
        dim = self.arrangement.dim
        vertices = self.polyhedron.vertices
        walls = []
        for normal, offset, i, step in self.arrangement_constraints():
            on_wall = [v for v in vertices if dot(normal, v) == offset]
            if len(on_wall) < dim or _rank_of_differences(on_wall) != dim - 1:
                continue
            neighbour = list(self.signature)
            neighbour[i] += step
            level = self.signature[i] + 1 if step == 1 else (self.signature[i] if step == -1 else 0)
            walls.append((self.arrangement.normals[i], level, tuple(neighbour)))
        return walls

    def to_json(self) -> dict:
        return {
            "signature": list(self.signature),
            "interior_point": format_point(self.interior_point),
            "constraints": self.polyhedron.to_json()["constraints"],
        }

    def __repr__(self) -> str:
        return f"Cell({list(self.signature)} at {format_point(self.sample)})"


def _rank_of_differences(points: Sequence[Sequence]) -> int:
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0


# ------------------------------------------
# Alcoves and chambers
# ------------------------------------------

def alcoves(X: WeightList, window: Window) -> List[Cell]:
    """Alcoves of the (X, Lambda) arrangement meeting the window interior."""
    return Arrangement.of_weights(X).cells(window)


def chambers(vectors: Sequence[Sequence[int]], dim: int) -> List[Cell]:
    """Chambers of {phi : <phi, a> = 0}, clipped to [-1, 1]^s."""
    return Arrangement.central(vectors, dim).cells(Window.cube(dim, -1, 1))


def polarizing_functional(vectors: Sequence[Sequence[int]], dim: int) -> Optional[Point]:
    """A rational phi with <phi, a> > 0 on every vector, or None when the cone is not pointed."""
    if not vectors:
        return tuple(QQ(1) for _ in range(dim))
    for chamber in chambers(vectors, dim):
        phi = chamber.interior_point
        if all(dot(phi, a) > 0 for a in vectors):
            return phi
    return None


def is_pointed(vectors: Sequence[Sequence[int]], dim: int) -> bool:
    return polarizing_functional(vectors, dim) is not None


def require_pointed(vectors: Sequence[Sequence[int]], dim: int) -> Point:
    phi = polarizing_functional(vectors, dim)
    if phi is None:
        raise NotPointed([list(v) for v in vectors])
    return phi
