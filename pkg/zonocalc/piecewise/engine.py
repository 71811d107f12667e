"""
The spline engine.

A spline is given by a list of parts (a, bounded): bounded parts are interval
factors (uniform measure of t a, t in [0,1]) and the others ray factors (t a,
t >= 0). The value of the convolution on the cell of a point w is computed by
peeling one factor a and integrating the remaining spline along the segment
w - t a. Breakpoints of that segment are its crossings with the remaining
arrangement; between breakpoints the remaining spline is one polynomial, so
every segment contributes int_{lo(v)}^{hi(v)} q(v - t a) dt with lo, hi affine
in v. Results are memoized per (parts, cell signature).
"""
import logging
import threading
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import QQ

from ..errors import DoesNotSpan, IrregularPoint, Unbounded
from ..exactnum.linalg import int_det, solve_small, transpose
from ..exactnum.rational import Point, Rat, ceil_rat, dot, floor_rat, format_point, rat
from ..geometry.arrangement import Arrangement, Signature, require_pointed
from ..lattice.combinatorics import admissible_normals, vectors_rank
from .polynomials import integration_ring, poly_ring

logger = logging.getLogger(__name__)

Part = Tuple[Tuple[int, ...], bool]
Parts = Tuple[Part, ...]


def normalize_parts(parts: Sequence[Tuple[Sequence[int], bool]]) -> Parts:
    return tuple((tuple(int(x) for x in a), bool(bounded)) for a, bounded in parts)


@lru_cache(maxsize=1024)
def parts_arrangement(parts: Parts) -> Arrangement:
    """Affine when an interval factor is present, central otherwise."""
    vectors = [a for a, _ in parts]
    dim = len(vectors[0])
    return Arrangement(admissible_normals(vectors, dim), dim, affine=any(b for _, b in parts))


@lru_cache(maxsize=1024)
def _ray_functional(rays: Tuple[Tuple[int, ...], ...], dim: int) -> Point:
    return require_pointed(list(rays), dim)


def _removal_index(parts: Parts) -> int:
    dim = len(parts[0][0])
    for want_bounded in (True, False):
        for i in range(len(parts) - 1, -1, -1):
            if parts[i][1] != want_bounded:
                continue
            rest = [a for j, (a, _) in enumerate(parts) if j != i]
            if vectors_rank(rest) == dim:
                return i
    raise DoesNotSpan([list(a) for a, _ in parts])


class SplineEngine:
    """Memoized piece computation shared by every spline builder."""

    def __init__(self):
        self._memo: Dict[Tuple[Parts, Signature], object] = {}
        self._lock = threading.RLock()

    def clear(self) -> None:
        with self._lock:
            self._memo.clear()

    def cache_size(self) -> int:
        return len(self._memo)

    def piece(self, parts: Parts, w: Sequence) -> object:
        """
        The QQ[v] polynomial of the spline ``parts`` on the cell containing ``w``.
        ``w`` must be regular for the arrangement of the parts.
        """
        w = tuple(rat(x) for x in w)
        dim = len(w)
        vectors = [a for a, _ in parts]
        if len(parts) < dim or vectors_rank(vectors) < dim:
            raise DoesNotSpan([list(a) for a in vectors])
        arrangement = parts_arrangement(parts)
        signature = arrangement.signature(w)
        key = (parts, signature)
        with self._lock:
            cached = self._memo.get(key)
        if cached is not None:
            return cached
        if len(parts) == dim:
            result = self._basis_piece(parts, w)
        else:
            result = self._peeled_piece(parts, w, arrangement, signature)
        with self._lock:
            self._memo[key] = result
        return result

    # ------------------------------------------
    # Base case
    # ------------------------------------------

    def _basis_piece(self, parts: Parts, w: Point):
        R = poly_ring(len(w))
        vectors = [a for a, _ in parts]
        coords = solve_small(transpose(vectors), w)
        inside = all(c > 0 and (not bounded or c < 1) for c, (_, bounded) in zip(coords, parts))
        if not inside:
            return R.zero
        return R(QQ(1, abs(int_det(vectors))))

    # ------------------------------------------
    # One-dimensional integration step
    # ------------------------------------------

    def _peeled_piece(self, parts: Parts, w: Point, arrangement: Arrangement, signature: Signature):
        index = _removal_index(parts)
        a, bounded = parts[index]
        rest = parts[:index] + parts[index + 1:]
        found = self._breakpoints(rest, a, bounded, parts, w)
        if found is None:
            w = self._untie(parts, rest, a, bounded, w, arrangement, signature)
            found = self._breakpoints(rest, a, bounded, parts, w)
        crossings, end = found
        R = poly_ring(len(w))
        values = [QQ(0)] + [t for t, _, _ in crossings] + [end]
        bounds = [None] + [(n, k) for _, n, k in crossings] + [None]
        total = R.zero
        for j in range(len(values) - 1):
            mid = (values[j] + values[j + 1]) / 2
            x = tuple(wi - mid * ai for wi, ai in zip(w, a))
            q = self.piece(rest, x)
            if not q:
                continue
            if not bounded and j == len(values) - 2:
                # past the last crossing a ray integrand must have left the support
                raise Unbounded(f"ray integral along {list(a)} does not terminate at {format_point(w)}")
            lower = _bound_poly(R, bounds[j], a, QQ(0))
            upper = _bound_poly(R, bounds[j + 1], a, QQ(1))
            total += segment_integral(q, a, lower, upper)
        return total

    def _breakpoints(self, rest: Parts, a, bounded: bool, parts: Parts, w: Point) -> Optional[Tuple[List, Rat]]:
        """
        Sorted crossings (t, normal, level) of w - t a with the arrangement of
        ``rest`` for t in (0, end), together with ``end``; None when two
        crossings coincide.
        """
        rest_arrangement = parts_arrangement(rest)
        if bounded:
            end = QQ(1)
        else:
            end = _ray_horizon(parts, rest, a, w) + 1
        crossings = []
        for n in rest_arrangement.normals:
            na = dot(n, a)
            if not na:
                continue
            nw = dot(n, w)
            if rest_arrangement.affine:
                lo, hi = sorted((nw, nw - end * na))
                levels = range(floor_rat(lo) + 1, ceil_rat(hi))
            else:
                levels = [0]
            for k in levels:
                t = (nw - k) / na
                if 0 < t < end:
                    crossings.append((t, n, k))
        crossings.sort(key=lambda c: c[0])
        for first, second in zip(crossings, crossings[1:]):
            if first[0] == second[0]:
                return None
        return crossings, end

    def _untie(self, parts, rest, a, bounded, w, arrangement, signature) -> Point:
        """A point of the same cell where no two crossings coincide."""
        dim = len(w)
        direction = tuple(QQ(1, 7 ** i) for i in range(dim))
        step = QQ(1, 64)
        for _ in range(64):
            candidate = tuple(x + step * d for x, d in zip(w, direction))
            if arrangement.try_signature(candidate) == signature and \
                    self._breakpoints(rest, a, bounded, parts, candidate) is not None:
                logger.debug(f"moved {format_point(w)} to {format_point(candidate)} to separate crossings")
                return candidate
            step /= 3
        raise IrregularPoint(format_point(w))


def _ray_horizon(parts: Parts, rest: Parts, a, w: Point) -> Rat:
    """Largest t for which w - t a can still meet the support of ``rest``."""
    dim = len(w)
    rays = tuple(sorted(v for v, b in parts if not b))
    phi = _ray_functional(rays, dim)
    floor_value = sum((min(QQ(0), dot(phi, v)) for v, b in rest if b), QQ(0))
    horizon = (dot(phi, w) - floor_value) / dot(phi, a)
    return max(horizon, QQ(0))


def _bound_poly(R, bound, a, constant):
    """t as an affine function of v: (<n, v> - k) / <n, a>, or a constant end."""
    if bound is None:
        return R(constant)
    n, k = bound
    na = dot(n, a)
    poly = R(QQ(-k) / na)
    for g, x in zip(R.gens, n):
        if x:
            poly += g * (QQ(x) / na)
    return poly


def segment_integral(q, a: Sequence[int], lower, upper):
    """int_{lower(v)}^{upper(v)} q(v - t a) dt as an element of QQ[v]."""
    R = q.ring
    dim = R.ngens
    B = integration_ring(dim)
    gens = B.gens
    t = gens[-1]
    lifted = q.set_ring(B)
    shifted = lifted.compose([(gens[i], gens[i] - t * a[i]) for i in range(dim) if a[i]])
    antiderivative = B.zero
    for monom, coeff in shifted.terms():
        e = monom[-1]
        antiderivative += B({monom[:-1] + (e + 1,): coeff / (e + 1)})
    hi = antiderivative.compose(t, upper.set_ring(B))
    lo = antiderivative.compose(t, lower.set_ring(B))
    return (hi - lo).set_ring(R)


spline_engine = SplineEngine()
