"""
Piecewise polynomial functions on the cells of an affine arrangement.

A PiecewisePoly is lazy: it carries the arrangement, a working window and a
rule producing the polynomial valid on the cell of a regular point. Pieces are
memoized per cell signature. Values on walls are never produced.
"""
import logging
import threading
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sympy import QQ

from ..errors import UnboundedSupport, WindowExceeded
from ..exactnum.cyclotomic import Cyclo
from ..exactnum.rational import Point, ceil_rat, floor_rat, format_point, rat, sub
from ..geometry.arrangement import Arrangement, Cell, Signature
from ..geometry.polyhedron import Window
from .polynomials import MultiPoly
from .series import OperatorSeries

logger = logging.getLogger(__name__)

PieceRule = Callable[[Point], MultiPoly]


class PiecewisePoly:
    """
    Attributes:
        arrangement: Affine arrangement whose cells carry single polynomials.
        window: The box on which cells, equality and exports are computed.
        support: Optional closed box outside of which the function vanishes.
        label: Short description used in logs and artifacts.
    """

    def __init__(self, arrangement: Arrangement, window: Window, rule: PieceRule,
                 support: Optional[Window] = None, label: str = ""):
        self.arrangement = arrangement
        self.window = window
        self.support = support
        self.label = label
        self._rule = rule
        self._pieces: Dict[Signature, MultiPoly] = {}
        self._lock = threading.RLock()

    @property
    def dim(self) -> int:
        return self.arrangement.dim

    # ------------------------------------------
    # Pieces
    # ------------------------------------------

    def piece_near(self, point: Sequence) -> MultiPoly:
        """Polynomial on the cell of a regular point, without the window check."""
        point = tuple(rat(x) for x in point)
        signature = self.arrangement.signature(point)
        with self._lock:
            cached = self._pieces.get(signature)
        if cached is not None:
            return cached
        if self.support is not None and not self.support.contains(point, strict=False):
            piece = MultiPoly.zero(self.dim)
        else:
            piece = self._rule(point)
        with self._lock:
            self._pieces[signature] = piece
        return piece

    def piece_at(self, point: Sequence) -> MultiPoly:
        if not self.window.contains(point):
            raise WindowExceeded(format_point(point))
        return self.piece_near(point)

    def value(self, point: Sequence) -> Cyclo:
        return self.piece_at(point).evaluate(point)

    def cells(self, window: Optional[Window] = None) -> List[Cell]:
        return self.arrangement.cells(window or self.window)

    def pieces(self, window: Optional[Window] = None) -> List[Tuple[Cell, MultiPoly]]:
        return [(c, self.piece_near(c.sample)) for c in self.cells(window)]

    def max_degree(self, window: Optional[Window] = None) -> int:
        return max((p.degree() for _, p in self.pieces(window)), default=-1)

    def with_window(self, window: Window) -> "PiecewisePoly":
        return PiecewisePoly(self.arrangement, window, self.piece_near, self.support, self.label)

    def __repr__(self) -> str:
        return f"PiecewisePoly({self.label or 'anonymous'} on {self.window})"

    # ------------------------------------------
    # Linear structure
    # ------------------------------------------

    def __add__(self, other: "PiecewisePoly") -> "PiecewisePoly":
        return combine([(QQ(1), self), (QQ(1), other)], label=f"{self.label}+{other.label}")

    def __sub__(self, other: "PiecewisePoly") -> "PiecewisePoly":
        return combine([(QQ(1), self), (QQ(-1), other)], label=f"{self.label}-{other.label}")

    def scale(self, c) -> "PiecewisePoly":
        return PiecewisePoly(self.arrangement, self.window, lambda p: self.piece_near(p).scale(c),
                             self.support, f"{c}*{self.label}")

    def __neg__(self) -> "PiecewisePoly":
        return self.scale(-1)


def combine(terms: Sequence[Tuple[object, PiecewisePoly]], label: str = "") -> PiecewisePoly:
    """sum c_i f_i on the common refinement and the union of windows."""
    arrangement = terms[0][1].arrangement
    window = terms[0][1].window
    supports = []
    for _, f in terms[1:]:
        arrangement = arrangement.refine(f.arrangement)
        window = window.union(f.window)
    for _, f in terms:
        supports.append(f.support)
    support = None
    if all(s is not None for s in supports):
        support = supports[0]
        for s in supports[1:]:
            support = support.union(s)

    def rule(point: Point) -> MultiPoly:
        total = MultiPoly.zero(len(point))
        for c, f in terms:
            total = total + f.piece_near(point).scale(c)
        return total

    return PiecewisePoly(arrangement, window, rule, support, label)


def zero_function(arrangement: Arrangement, window: Window) -> PiecewisePoly:
    return PiecewisePoly(arrangement, window, lambda p: MultiPoly.zero(arrangement.dim), window, "0")


# ------------------------------------------
# Translations, derivatives, differences
# ------------------------------------------

def translate(f: PiecewisePoly, vector: Sequence[int]) -> PiecewisePoly:
    """(t_lambda f)(v) = f(v - lambda); the window grows to cover the shift."""
    vector = tuple(int(x) for x in vector)
    if not any(vector):
        return f
    support = f.support.shifted(vector) if f.support is not None else None

    def rule(point: Point) -> MultiPoly:
        return f.piece_near(sub(point, vector)).shift(vector)

    return PiecewisePoly(f.arrangement, f.window.union(f.window.shifted(vector)), rule, support,
                         f"t{list(vector)}{f.label}")


def partial_pw(f: PiecewisePoly, direction: Sequence[int]) -> PiecewisePoly:
    """Cellwise directional derivative; the support never grows."""
    return PiecewisePoly(f.arrangement, f.window, lambda p: f.piece_near(p).derivative(direction),
                         f.support, f"d{list(direction)}{f.label}")


def nabla(f: PiecewisePoly, direction: Sequence[int]) -> PiecewisePoly:
    """(id - t_a) f."""
    return combine([(QQ(1), f), (QQ(-1), translate(f, direction))], label=f"nabla{list(direction)}{f.label}")


def nabla_all(f: PiecewisePoly, directions: Sequence[Sequence[int]]) -> PiecewisePoly:
    for a in directions:
        f = nabla(f, a)
    return f


def twisted_nabla_pw(f: PiecewisePoly, g, directions: Sequence[Sequence[int]]) -> PiecewisePoly:
    """prod_a (1 - g^{-a} t_a) applied to f."""
    for a in directions:
        f = combine([(QQ(1), f), (-g.pairing(tuple(-x for x in a)), translate(f, a))],
                    label=f"nabla^g{list(a)}{f.label}")
    return f


def apply_series_pw(D: OperatorSeries, f: PiecewisePoly) -> PiecewisePoly:
    """Alcove by alcove action of an operator series."""
    return PiecewisePoly(f.arrangement, f.window, lambda p: D.apply(f.piece_near(p)), f.support,
                         f"{D.name}({f.label})")


def reflect(f: PiecewisePoly, center: Sequence[int]) -> PiecewisePoly:
    """v -> f(center - v) for an integral center."""
    center = tuple(rat(x) for x in center)
    window = Window(sub(center, f.window.upper), sub(center, f.window.lower))
    support = Window(sub(center, f.support.upper), sub(center, f.support.lower)) if f.support else None

    def rule(point: Point) -> MultiPoly:
        return f.piece_near(sub(center, point)).reflect(center)

    return PiecewisePoly(f.arrangement, window, rule, support, f"reflect({f.label})")


# ------------------------------------------
# Lattice restriction and convolution
# ------------------------------------------

def lim_alcove(f: PiecewisePoly, c: Cell, lattice_points: Sequence[Sequence[int]]):
    """
    lim_c f: lambda -> (polynomial of f on lambda + c)(lambda), tabulated on
    the requested lattice points.
    """
    from ..discrete.functions import FiniteFunction
    values = {}
    for lam in lattice_points:
        lam = tuple(int(x) for x in lam)
        shifted = tuple(x + y for x, y in zip(lam, c.sample))
        if not f.window.contains(shifted):
            raise WindowExceeded(format_point(shifted))
        values[lam] = f.piece_near(shifted).evaluate(lam)
    return FiniteFunction(f.dim, values, domain=[tuple(int(x) for x in lam) for lam in lattice_points])


def semidiscrete_convolve(b: PiecewisePoly, K, window: Window) -> PiecewisePoly:
    """b *_d K = sum_lambda K(lambda) t_lambda b on the window."""
    if b.support is None:
        raise UnboundedSupport()
    support = None
    box = K.support_box() if hasattr(K, "support_box") else None
    if box is not None:
        lower, upper = box
        support = b.support.minkowski(lower, upper)

    def rule(point: Point) -> MultiPoly:
        total = MultiPoly.zero(len(point))
        ranges = [range(ceil_rat(x - hi), floor_rat(x - lo) + 1)
                  for x, lo, hi in zip(point, b.support.lower, b.support.upper)]
        for lam in product(*ranges):
            weight = K.value(lam)
            if weight.is_zero():
                continue
            piece = b.piece_near(sub(point, lam))
            if piece.is_zero():
                continue
            total = total + piece.shift(lam).scale(weight)
        return total

    return PiecewisePoly(b.arrangement, window, rule, support, f"{b.label}*d")


# ------------------------------------------
# Comparison and integration
# ------------------------------------------

def first_mismatch(f: PiecewisePoly, g: PiecewisePoly, window: Optional[Window] = None) -> Optional[Cell]:
    """The first refined cell on which f and g carry different polynomials."""
    window = window or f.window
    refined = f.arrangement.refine(g.arrangement)
    for cell in refined.cells(window):
        if f.piece_near(cell.sample) != g.piece_near(cell.sample):
            logger.debug(f"mismatch of {f.label} and {g.label} at {format_point(cell.sample)}")
            return cell
    return None


def equal_on_window(f: PiecewisePoly, g: PiecewisePoly, window: Optional[Window] = None) -> bool:
    return first_mismatch(f, g, window) is None


def integrate(f: PiecewisePoly, window: Optional[Window] = None) -> Cyclo:
    """Exact integral over the window, cell by cell."""
    window = window or f.window
    total = None
    for cell, piece in f.pieces(window):
        if piece.is_zero():
            continue
        value = Cyclo(piece.order, [cell.polyhedron.integrate(p) if p else QQ(0) for p in piece.components])
        total = value if total is None else total + value
    return total if total is not None else Cyclo.zero()


def is_single_polynomial(f: PiecewisePoly, window: Optional[Window] = None) -> Optional[MultiPoly]:
    """The common polynomial when every cell of the window carries the same one."""
    common = None
    for _, piece in f.pieces(window):
        if common is None:
            common = piece
        elif piece != common:
            return None
    return common


def wall_jumps(f: PiecewisePoly, window: Optional[Window] = None) -> List[Tuple[Signature, Tuple[int, ...], int]]:
    """
    Interior walls across which the two adjacent pieces differ as functions on
    the wall, as (signature, normal, level).
    """
    window = window or f.window
    cells = {c.signature: c for c in f.cells(window)}
    R = None
    jumps = []
    for signature, cell in cells.items():
        for normal, level, neighbour in cell.walls():
            if neighbour not in cells or neighbour < signature:
                continue
            difference = f.piece_near(cell.sample) - f.piece_near(cells[neighbour].sample)
            if difference.is_zero():
                continue
            R = R or difference.ring
            wall = R(QQ(-level))
            for gen, x in zip(R.gens, normal):
                if x:
                    wall += gen * x
            if any(p and p.rem(wall) for p in difference.components):
                jumps.append((signature, normal, level))
    return jumps
