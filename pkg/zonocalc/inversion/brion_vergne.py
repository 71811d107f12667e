"""
P_X from multisplines: P_X = sum_g g^ lim_c (Todd(X^g) D(g, X \\ X^g)^{-1})_pw T_{X^g}
with c an alcove inside Cone(X) touching the origin.
"""
import logging
from typing import Optional, Tuple

from ..discrete.functions import FiniteFunction, g_hat
from ..discrete.partition import partition_function
from ..exactnum.rational import format_point
from ..geometry.arrangement import Cell, require_pointed
from ..geometry.polyhedron import Window
from ..geometry.zonotope import base_alcove
from ..lattice.combinatorics import require_span
from ..lattice.toric import fixed_sublist, toric_vertices
from ..lattice.weights import WeightList
from ..piecewise.builders import PartKind, build_spline
from ..piecewise.export import to_json as piecewise_json
from ..piecewise.functions import apply_series_pw, lim_alcove
from .general import vertex_operator
from .report import InversionReport, VertexContribution, box_bounds, compare_on_box, working_window

logger = logging.getLogger(__name__)


def brion_vergne_partition(X: WeightList, box: Window, truncation_margin: int = 0,
                           keep_piecewise: bool = False, alcove: Optional[Cell] = None
                           ) -> Tuple[FiniteFunction, InversionReport]:
    require_span(X)
    require_pointed(X.vectors(), X.dim)
    c = alcove or base_alcove(X, require_in_zonotope=False, require_in_cone=True)
    window = working_window(X, box)
    points = box.lattice_points()
    truncation = len(X) + truncation_margin
    logger.info(f"vertex sum for P{X} on {len(points)} points")

    contributions = []
    totals = {lam: None for lam in points}
    for g in toric_vertices(X):
        fixed = fixed_sublist(X, g)
        spline = build_spline([(a, PartKind.RAY) for a in X.vectors(fixed)], window, label=f"T{X.sublist(fixed)}")
        operator = vertex_operator(X, g, truncation)
        transformed = apply_series_pw(operator, spline)
        part = g_hat(g, lim_alcove(transformed, c, points)).materialize(points)
        for lam in points:
            value = part.value(lam)
            totals[lam] = value if totals[lam] is None else totals[lam] + value
        contributions.append(VertexContribution(
            vertex=g.to_json(),
            fixed=list(fixed),
            operator=operator.name,
            values=part.to_json(points),
            piecewise=piecewise_json(transformed, skip_zero=True) if keep_piecewise else None,
        ))

    values = {lam: total.to_rational() for lam, total in totals.items()}
    result = FiniteFunction(X.dim, values, domain=points, label=f"vertex sum P{X}")
    verdict, mismatch = compare_on_box(result, partition_function(X), points)
    report = InversionReport(
        kind="brion-vergne",
        system=X.to_json(),
        box=box_bounds(box),
        alcove=format_point(c.interior_point),
        contributions=contributions,
        reconstructed=result.to_json(points),
        verdict=verdict,
        mismatch=mismatch,
        function=result,
    )
    return result, report
