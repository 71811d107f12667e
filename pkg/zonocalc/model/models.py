from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, field_validator

from ..lattice.weights import WeightList
from .types import CommandName, RowStatus, SuiteName

# --- Run configuration ---

SystemRef = Union[str, WeightList]


class RunConfig(BaseModel):
    """
    One run of the calculator, parsed from a single JSON document.

    Attributes:
        system: A catalog name ("U2") or an inline weight list {"dim": .., "weights": ..}.
        systems: Systems for the verify command (default: the catalog members of the suite).
        command: What to compute.
        face: Regular face: an index into the enumerated faces or a functional ["1", "-1/2"].
        window: Working window as [lo, hi] pairs per coordinate.
        box: Lattice box as [lo, hi] integer pairs per coordinate.
        alcove: A point of the alcove to use instead of the base alcove.
        K: Finite lattice data as {"lambda": [...], "value": "p/q"} rows; delta_0 when absent.
        truncation_margin: Extra degree added to |X| for every series truncation.
        grid_dilation: Dilation of Z(X) - Z(X) for difference-equation checks.
        suite: Suite for the verify command.
        output_dir: Where artifacts are written.
        emit_grid: Resolution of CSV samplings (none when absent).
        seed: Seed of the random lattice data used by the suites.
    """
    model_config = ConfigDict(extra="forbid")

    system: Optional[SystemRef] = None
    systems: Optional[List[SystemRef]] = None
    command: Optional[CommandName] = None
    face: Optional[Union[StrictInt, List[Union[StrictInt, str]]]] = None
    window: Optional[List[List[Union[StrictInt, str]]]] = None
    box: Optional[List[List[StrictInt]]] = None
    alcove: Optional[List[Union[StrictInt, str]]] = None
    K: Optional[List[Dict[str, Any]]] = None
    truncation_margin: Optional[int] = Field(default=None, ge=0)
    grid_dilation: Optional[int] = Field(default=None, ge=1)
    suite: SuiteName = SuiteName.ALL
    output_dir: str = "zonocalc-out"
    emit_grid: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None

    @field_validator("box", "window")
    @classmethod
    def _pairs(cls, sides):
        if sides is not None:
            for side in sides:
                if len(side) != 2:
                    raise ValueError(f"expected [lo, hi] pairs, got {side}")
        return sides


# --- Catalog ---

class SystemEntry(BaseModel):
    """
    A named weight list shipped with the calculator.

    Attributes:
        name: Catalog key, e.g. "N2".
        weights: The weight list.
        suites: Suites that run on this system by default.
        description: Free text.
    """
    model_config = ConfigDict(extra="forbid")

    name: str
    weights: WeightList
    suites: List[SuiteName] = []
    description: str = ""


# --- Verification output ---

class SuiteRow(BaseModel):
    """
    One identity checked on one system.

    Attributes:
        check_id: Node id inside the suite graph.
        identity: Human readable name of the identity.
        system: Catalog name or weights of the system.
        status: Outcome of the check.
        verdict: True iff the identity held.
        wall_time: Seconds spent in the check.
        detail: Counterexamples, error messages, recorded constants.
    """
    check_id: str
    identity: str
    system: str
    status: RowStatus
    verdict: bool
    wall_time: float = 0.0
    detail: Dict[str, Any] = {}


class SuiteSummary(BaseModel):
    suite: SuiteName
    rows: List[SuiteRow] = []

    @property
    def all_passed(self) -> bool:
        return all(row.verdict for row in self.rows)

    def exit_code(self) -> int:
        return 0 if self.all_passed else 1
