"""
Constructors of box splines, multisplines and polarized multisplines as
PiecewisePoly values backed by the shared spline engine.
"""
import logging
from enum import Enum
from itertools import combinations
from typing import Dict, Optional, Sequence, Tuple

from sympy import QQ

from ..discrete.faces import resolve_face
from ..errors import DoesNotSpan, IdentityMismatch
from ..exactnum.rational import format_point, sub
from ..geometry.arrangement import Arrangement, require_pointed
from ..geometry.oracle import OracleKind, spline_point_oracle
from ..geometry.polyhedron import Window
from ..geometry.zonotope import base_alcove, zonotope_box
from ..lattice.combinatorics import admissible_normals, vectors_rank
from ..lattice.weights import WeightList
from .engine import normalize_parts, spline_engine
from .functions import PiecewisePoly, combine, translate
from .polynomials import MultiPoly

logger = logging.getLogger(__name__)


class PartKind(str, Enum):
    INTERVAL = "interval"
    RAY = "ray"
    NEG_RAY = "neg_ray"


def build_spline(parts: Sequence[Tuple[Sequence[int], PartKind]], window: Window, label: str = "") -> PiecewisePoly:
    """
    The convolution of the listed factors: interval factors are the uniform
    measure on [0, a], ray factors on {t a : t >= 0} (on {-t a} for neg_ray).
    """
    oriented = []
    for a, kind in parts:
        kind = PartKind(kind)
        a = tuple(int(x) for x in a)
        if kind == PartKind.NEG_RAY:
            a = tuple(-x for x in a)
        oriented.append((a, kind == PartKind.INTERVAL))
    dim = window.dim
    vectors = [a for a, _ in oriented]
    if len(vectors) < dim or vectors_rank(vectors) < dim:
        raise DoesNotSpan([list(a) for a in vectors])
    rays = [a for a, bounded in oriented if not bounded]
    if rays:
        require_pointed(rays, dim)
    engine_parts = normalize_parts(oriented)
    arrangement = Arrangement(admissible_normals(vectors, dim), dim, affine=True)
    support = None
    if not rays:
        lower, upper = zonotope_box(WeightList.of(vectors, dim))
        support = Window(lower, upper)

    def rule(point):
        return MultiPoly.from_ring(spline_engine.piece(engine_parts, point))

    label = label or "spline[" + ",".join(f"{list(a)}{'' if b else '+'}" for a, b in oriented) + "]"
    return PiecewisePoly(arrangement, window, rule, support, label)


def build_T_polarized(X: WeightList, face, window: Window) -> PiecewisePoly:
    """T_X^F = (-1)^|B| T_{A, -B} for the split X = A u B induced by F."""
    A, B = face.split(X)
    parts = [(X[i], PartKind.RAY if i in A else PartKind.NEG_RAY) for i in X.indices]
    spline = build_spline(parts, window, label=f"T^{face}{X}")
    return spline.scale(-1) if len(B) % 2 else spline


def translate_sums(X: WeightList) -> Dict[Tuple[int, ...], int]:
    """sum over sublists S of (-1)^|S| t_{a_S}, with equal translates grouped."""
    coefficients: Dict[Tuple[int, ...], int] = {}
    for size in range(len(X) + 1):
        for S in combinations(X.indices, size):
            a_S = X.sublist_sum(S)
            coefficients[a_S] = coefficients.get(a_S, 0) + (-1) ** size
    return {a: c for a, c in coefficients.items() if c}


def build_box(X: WeightList, window: Window, face=None, check: bool = True) -> PiecewisePoly:
    """
    B_X = nabla_X T_X^F for a regular face F, checked against the point oracle
    at the base alcove.
    """
    face = resolve_face(X, face)
    lower, upper = zonotope_box(X)
    inner = Window(sub(window.lower, upper), sub(window.upper, lower)).union(window)
    T = build_T_polarized(X, face, inner)
    terms = [(QQ(c), translate(T, a)) for a, c in sorted(translate_sums(X).items())]
    box = combine(terms, label=f"B{X}")
    box = PiecewisePoly(box.arrangement, window, box.piece_near, Window(lower, upper), f"B{X}")
    if check:
        _check_against_oracle(X, box)
    return box


def _check_against_oracle(X: WeightList, box: PiecewisePoly) -> None:
    point = base_alcove(X).interior_point
    expected = spline_point_oracle(X, OracleKind.BOX, point)
    found = box.piece_near(point).evaluate(point).to_rational()
    if found != expected:
        raise IdentityMismatch(f"B{X} at {format_point(point)}: engine {found}, oracle {expected}")
    logger.debug(f"B{X} matches the oracle at {format_point(point)}")


def build_box_direct(X: WeightList, window: Window, label: Optional[str] = None) -> PiecewisePoly:
    """B_X from interval factors only."""
    return build_spline([(a, PartKind.INTERVAL) for a in X.vectors()], window, label or f"B{X}")
