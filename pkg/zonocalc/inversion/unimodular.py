"""
Inversion of the semidiscrete convolution for unimodular weight lists:
K = lim_c Todd(X)_pw (B_X *_d K).
"""
import logging
from typing import Optional

from ..errors import NotUnimodular
from ..discrete.functions import LatticeFunction, MappedFunction
from ..exactnum.rational import format_point
from ..geometry.arrangement import Cell
from ..geometry.polyhedron import Window
from ..geometry.zonotope import base_alcove
from ..lattice.combinatorics import is_unimodular
from ..lattice.toric import ToricVertex
from ..lattice.weights import WeightList
from ..piecewise.builders import build_box
from ..piecewise.export import to_json as piecewise_json
from ..piecewise.functions import apply_series_pw, is_single_polynomial, lim_alcove, semidiscrete_convolve
from ..piecewise.polynomials import MultiPoly
from ..piecewise.series import OperatorSeries
from .report import InversionReport, VertexContribution, box_bounds, compare_on_box, working_window

logger = logging.getLogger(__name__)


def invert_unimodular(X: WeightList, K: LatticeFunction, box: Window, truncation_margin: int = 0,
                      keep_piecewise: bool = False, alcove: Optional[Cell] = None) -> InversionReport:
    if not is_unimodular(X):
        raise NotUnimodular(X.to_json())
    c = alcove or base_alcove(X)
    window = working_window(X, box)
    points = box.lattice_points()
    logger.info(f"unimodular inversion for {X} on {len(points)} points, alcove {format_point(c.interior_point)}")

    b = build_box(X, window)
    convolved = semidiscrete_convolve(b, K, window)
    todd = OperatorSeries.todd(X.vectors(), len(X) + truncation_margin)
    transformed = apply_series_pw(todd, convolved)
    recovered = lim_alcove(transformed, c, points)

    verdict, mismatch = compare_on_box(recovered, K, points)
    contribution = VertexContribution(
        vertex=ToricVertex.identity(X.dim).to_json(),
        fixed=list(X.indices),
        operator=todd.name,
        values=recovered.to_json(points),
        piecewise=piecewise_json(transformed, skip_zero=True) if keep_piecewise else None,
    )
    return InversionReport(
        kind="unimodular",
        system=X.to_json(),
        box=box_bounds(box),
        alcove=format_point(c.interior_point),
        contributions=[contribution],
        reconstructed=recovered.to_json(points),
        verdict=verdict,
        mismatch=mismatch,
        function=recovered,
    )


def action_on_d_space(X: WeightList, p: MultiPoly, window: Window, truncation_margin: int = 0) -> bool:
    """
    B_X *_d p|Lambda is the single polynomial I(X) p on the window.
    """
    restricted = MappedFunction(X.dim, p.evaluate, None, f"{p}|Lambda")
    convolved = semidiscrete_convolve(build_box(X, window), restricted, window)
    found: Optional[MultiPoly] = is_single_polynomial(convolved)
    expected = OperatorSeries.cube_average(X.vectors(), len(X) + truncation_margin).apply(p)
    if found is None:
        logger.warning(f"B{X} *_d {p} is not a single polynomial on {window}")
        return False
    if found != expected:
        logger.warning(f"B{X} *_d {p} = {found}, expected I(X) p = {expected}")
        return False
    return True
