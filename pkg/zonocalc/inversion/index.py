"""
Lattice identities behind the index of Atiyah symbols.

The multiplicity index of the symbol attached to X and a regular face F is
the polarized partition function P_{-X}^F; everything here is stated and
checked with splines and lattice functions only.
"""
import logging
from typing import Optional, Tuple

from ..discrete.faces import RegularFace
from ..discrete.functions import FiniteFunction, LatticeFunction
from ..discrete.partition import polarized_partition
from ..errors import NotUnimodular
from ..exactnum.rational import dot, format_point
from ..geometry.polyhedron import Window
from ..geometry.zonotope import base_alcove
from ..lattice.combinatorics import is_unimodular, require_span
from ..lattice.toric import ToricVertex, fixed_sublist
from ..lattice.weights import WeightList
from ..piecewise.builders import PartKind, build_box_direct, build_spline
from ..piecewise.functions import (PiecewisePoly, apply_series_pw, first_mismatch, lim_alcove,
                                   semidiscrete_convolve, twisted_nabla_pw, wall_jumps)
from ..piecewise.series import OperatorSeries
from .general import invert_general, omega_g
from .report import InversionReport, box_bounds, compare_on_box, working_window

logger = logging.getLogger(__name__)


def atiyah_index(X: WeightList, face: RegularFace) -> LatticeFunction:
    """ind_m of the Atiyah symbol: P_{-X}^F."""
    f = polarized_partition(X.negated(), face)
    f.label = f"ind{X}"
    return f


def atiyah_index_translate_form(X: WeightList, face: RegularFace) -> LatticeFunction:
    """(-1)^|X| t_{a_X} P_X^F."""
    f = polarized_partition(X, face).translate(X.total())
    return f.scale(-1) if len(X) % 2 else f


def atiyah_index_report(X: WeightList, face: RegularFace, box: Window) -> InversionReport:
    points = box.lattice_points()
    first = atiyah_index(X, face)
    second = atiyah_index_translate_form(X, face)
    verdict, mismatch = compare_on_box(first, second, points)
    return InversionReport(
        kind="atiyah-index",
        system=X.to_json(),
        box=box_bounds(box),
        reconstructed=first.to_json(points),
        verdict=verdict,
        mismatch=mismatch,
        notes={"face": face.to_json()},
        function=first.materialize(points),
    )


# ------------------------------------------
# Box spline identities
# ------------------------------------------

def box_times_polarized(X: WeightList, face: RegularFace, window: Window) -> PiecewisePoly:
    """B_X *_c T_{-X}^F as one spline of interval and ray factors."""
    parts = [(a, PartKind.INTERVAL) for a in X.vectors()]
    negatives = 0
    for a in X.vectors():
        flipped = tuple(-x for x in a)
        if dot(face.functional, flipped) > 0:
            parts.append((flipped, PartKind.RAY))
        else:
            parts.append((flipped, PartKind.NEG_RAY))
            negatives += 1
    spline = build_spline(parts, window, label=f"B{X}*T^{face}(-X)")
    return spline.scale(-1) if negatives % 2 else spline


def verify_box_index(X: WeightList, face: RegularFace, window: Window) -> Tuple[bool, Optional[dict]]:
    """
    B_{X u -X} *_d P_{-X}^F = B_X *_c T_{-X}^F on the window; the second item
    is the first mismatching cell when they differ.
    """
    face.split(X)
    double_box = build_box_direct(X.doubled(), window)
    left = semidiscrete_convolve(double_box, atiyah_index(X, face), window)
    right = box_times_polarized(X, face, window)
    cell = first_mismatch(left, right, window)
    if cell is None:
        return True, None
    logger.warning(f"box index identity for {X}, {face} fails near {format_point(cell.sample)}")
    return False, {
        "cell": cell.to_json(),
        "left": left.piece_near(cell.sample).to_json(),
        "right": right.piece_near(cell.sample).to_json(),
    }


def general_index_reconstruction(X: WeightList, face: RegularFace, box: Window,
                                 truncation_margin: int = 0) -> InversionReport:
    """ind_m recovered by the vertex formula over X u -X."""
    require_span(X)
    K = atiyah_index(X, face)
    report = invert_general(X.doubled(), K, box, truncation_margin)
    report.kind = "index-reconstruction"
    report.system = X.to_json()
    report.notes["face"] = face.to_json()
    return report


def vertex_index_identity(X: WeightList, face: RegularFace, g: ToricVertex, window: Window) -> InversionReport:
    """
    omega_g(P_{-X}^F) over X u -X against nabla(g, X \\ X^g)(B_{X^g} *_c T_{-X^g}^F);
    the sign for which they agree is recorded in the notes (0 when neither does).
    """
    doubled = X.doubled()
    left = omega_g(doubled, g, atiyah_index(X, face), window)
    fixed = fixed_sublist(X, g)
    moving = X.vectors(X.complement(fixed))
    right = twisted_nabla_pw(box_times_polarized(X.sublist(fixed), face, window), g, moving)
    sign = 0
    if first_mismatch(left, right, window) is None:
        sign = 1
    elif first_mismatch(left, right.scale(-1), window) is None:
        sign = -1
    logger.info(f"vertex index identity for {X} at {g}: sign {sign}")
    return InversionReport(
        kind="vertex-index",
        system=X.to_json(),
        box=box_bounds(window),
        verdict=sign != 0,
        notes={"face": face.to_json(), "vertex": g.to_json(), "sign": sign},
    )


# ------------------------------------------
# Doubled unimodular lists
# ------------------------------------------

def bott_delta_identity(X: WeightList, box: Window, truncation_margin: int = 0) -> InversionReport:
    """
    lim_c Todd(X u -X)_pw B_{X u -X} = delta_0 on the box, and the transformed
    spline has no jumps across walls of the working window.
    """
    if not is_unimodular(X):
        raise NotUnimodular(X.to_json())
    doubled = X.doubled()
    c = base_alcove(doubled)
    window = working_window(doubled, box)
    points = box.lattice_points()
    transformed = apply_series_pw(OperatorSeries.todd(doubled.vectors(), len(doubled) + truncation_margin),
                                  build_box_direct(doubled, window))
    limit = lim_alcove(transformed, c, points)
    verdict, mismatch = compare_on_box(limit, FiniteFunction.delta(X.dim), points)
    jumps = wall_jumps(transformed, box.padded(1))
    if jumps:
        logger.warning(f"Todd(X u -X) B for {X} jumps across {len(jumps)} walls")
    return InversionReport(
        kind="bott-delta",
        system=X.to_json(),
        box=box_bounds(box),
        alcove=format_point(c.interior_point),
        reconstructed=limit.to_json(points),
        verdict=verdict and not jumps,
        mismatch=mismatch,
        notes={"wall_jumps": len(jumps)},
        function=limit,
    )
