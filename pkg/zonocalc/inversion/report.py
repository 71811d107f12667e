from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from ..discrete.functions import LatticeFunction
from ..geometry.polyhedron import Window
from ..geometry.zonotope import zonotope_box
from ..lattice.weights import WeightList


class VertexContribution(BaseModel):
    """
    The share of one toric vertex in a vertex-sum formula.

    Attributes:
        vertex: Coordinates and order of g.
        fixed: Indices of the fixed sublist X^g.
        operator: Name of the series applied alcove by alcove.
        values: (lambda, value) rows of g^ lim_c of the transformed function.
        piecewise: Optional JSON of the transformed piecewise function.
    """
    vertex: Dict[str, Any]
    fixed: List[int]
    operator: str
    values: List[Dict[str, Any]] = []
    piecewise: Optional[Dict[str, Any]] = None


class InversionReport(BaseModel):
    """
    Outcome of a reconstruction on a finite lattice box.

    Attributes:
        kind: Which formula produced the reconstruction.
        system: The weight list.
        box: Lower and upper corners of the lattice box.
        alcove: Interior point of the limit alcove c.
        contributions: Per-vertex data.
        reconstructed: (lambda, value) rows of the result.
        verdict: True iff the result equals the expected function on every box point.
        mismatch: First box point where they differ.
        notes: Free-form facts recorded by the run (signs, dimensions).
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: str
    system: Dict[str, Any]
    box: List[List[int]]
    alcove: List[str] = []
    contributions: List[VertexContribution] = []
    reconstructed: List[Dict[str, Any]] = []
    verdict: bool = False
    mismatch: Optional[List[int]] = None
    notes: Dict[str, Any] = {}
    function: Optional[LatticeFunction] = Field(default=None, exclude=True)

    def summary(self) -> str:
        status = "ok" if self.verdict else f"mismatch at {self.mismatch}"
        return f"{self.kind} {self.system['weights']}: {status}"


def lattice_box(lower: Sequence[int], upper: Sequence[int]) -> Window:
    return Window.box([int(x) for x in lower], [int(x) for x in upper])


def box_bounds(box: Window) -> List[List[int]]:
    return [[int(x) for x in box.lower], [int(x) for x in box.upper]]


def working_window(X: WeightList, box: Window, padding: int = 1) -> Window:
    """The box dilated by Z(X u -X), so every limit alcove lambda + c is inside."""
    lower, upper = zonotope_box(X.doubled())
    return box.minkowski(lower, upper).padded(padding)


def compare_on_box(found: LatticeFunction, expected: LatticeFunction,
                   points: Sequence[Tuple[int, ...]]) -> Tuple[bool, Optional[List[int]]]:
    mismatch = found.agrees_with(expected, points)
    return mismatch is None, list(mismatch) if mismatch is not None else None
