"""
Independent spline evaluation by fiber volumes.

B_X(v) (resp. T_X(v)) is the (N - s)-volume of {t in [0,1]^N : A t = v}
(resp. {t >= 0 : A t = v}) measured in a lattice basis of ker(A) cap Z^N and
divided by the index [Z^s : A Z^N]. Nothing here touches the piecewise engine.
"""
import logging
from enum import Enum
from typing import Sequence

from sympy import QQ

from ..errors import DoesNotSpan, IrregularPoint
from ..exactnum.linalg import smith_decomposition, transpose
from ..exactnum.rational import Rat, dot, format_point, rat
from ..lattice.combinatorics import spans, weight_normals
from ..lattice.weights import WeightList
from .arrangement import Arrangement, require_pointed
from .polyhedron import Polyhedron

logger = logging.getLogger(__name__)


class OracleKind(str, Enum):
    BOX = "box"
    CONE = "cone"


def fiber_volume(vectors: Sequence[Sequence[int]], bounded: Sequence[bool], v: Sequence) -> Rat:
    """
    Normalized volume of {t : A t = v, t_i >= 0, t_i <= 1 where bounded[i]}.

    Mixed interval/ray inputs give the value of the corresponding convolution
    of box and cone factors.
    """
    count = len(vectors)
    dim = len(v)
    columns = [list(a) for a in vectors]
    a_matrix = transpose(columns)  # s x N
    diagonal, s_matrix, t_matrix = smith_decomposition(a_matrix)
    r = sum(1 for d in diagonal if d)
    if r < dim:
        raise DoesNotSpan([list(a) for a in vectors])
    sv = [dot(row, v) for row in s_matrix]
    y = [sv[i] / diagonal[i] for i in range(r)] + [QQ(0)] * (count - r)
    t0 = [dot(row, y) for row in t_matrix]
    index = 1
    for d in diagonal[:r]:
        index *= abs(d)
    kernel = [[t_matrix[i][j] for j in range(r, count)] for i in range(count)]  # N x (N - s)
    free = count - r
    if free == 0:
        feasible = all(x > 0 and (not b or x < 1) for x, b in zip(t0, bounded))
        return QQ(1, index) if feasible else QQ(0)
    constraints = []
    for i in range(count):
        row = kernel[i]
        constraints.append((tuple(-QQ(x) for x in row), t0[i]))
        if bounded[i]:
            constraints.append((tuple(QQ(x) for x in row), 1 - t0[i]))
    fiber = Polyhedron(free, constraints)
    return fiber.volume() / index


def spline_point_oracle(X: WeightList, kind: OracleKind, v: Sequence) -> Rat:
    """Exact B_X(v) (box) or T_X(v) (cone) at a regular rational point."""
    kind = OracleKind(kind)
    v = tuple(rat(x) for x in v)
    if not spans(X):
        raise DoesNotSpan(X.to_json())
    if kind == OracleKind.CONE:
        require_pointed(X.vectors(), X.dim)
        arrangement = Arrangement.central(weight_normals(X), X.dim)
    else:
        arrangement = Arrangement(weight_normals(X), X.dim, affine=True)
    if not arrangement.is_regular(v):
        raise IrregularPoint(format_point(v))
    value = fiber_volume(X.vectors(), [kind == OracleKind.BOX] * len(X), v)
    logger.debug(f"oracle {kind.value} {X} at {format_point(v)} = {value}")
    return value
