"""
Handlers of the CLI commands. Each handler reads a RunConfig, computes, and
writes its artifacts before returning the verdict.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .command_registry import command_registry
from .config.store import system_catalog
from .data.artifacts import ArtifactKind, ArtifactStore
from .discrete.dm import d_space_basis, dimension_counts, dm_space_basis, interpolation_basis
from .discrete.faces import RegularFace, regular_faces, resolve_face
from .discrete.functions import FiniteFunction, LatticeFunction
from .discrete.partition import partition_function, polarized_partition
from .errors import ConfigError
from .exactnum.rational import format_point, rat
from .geometry.arrangement import Cell
from .geometry.polyhedron import Window
from .geometry.zonotope import alcove_containing, base_alcove, delta_set, zonotope_box
from .inversion.brion_vergne import brion_vergne_partition
from .inversion.general import invert_general, omega_g, vertex_operator
from .inversion.index import atiyah_index_report
from .inversion.report import InversionReport, lattice_box, working_window
from .inversion.unimodular import invert_unimodular
from .lattice.combinatorics import enumerate_bases, is_unimodular, require_span
from .lattice.toric import fixed_sublist, toric_vertices
from .lattice.weights import WeightList
from .model.defaults import command_defaults
from .model.models import RunConfig
from .model.types import CommandName
from .piecewise.builders import build_box, build_T_polarized
from .piecewise.export import sample_csv, to_json as piecewise_json
from .piecewise.functions import PiecewisePoly, apply_series_pw
from .suites.runner import verify_suite
from .utils.utils import slug

logger = logging.getLogger(__name__)


@dataclass
class CommandResult:
    """
    Attributes:
        verdict: False when a verification inside the command failed.
        artifacts: Paths written by the command.
        message: One line for the console.
    """
    verdict: bool
    artifacts: List[str] = field(default_factory=list)
    message: str = ""


@dataclass
class RunContext:
    config: RunConfig
    store: ArtifactStore
    tunables: Dict[str, Any]
    emit_grid: Optional[int] = None

    @classmethod
    def create(cls, config: RunConfig, store: ArtifactStore, emit_grid: Optional[int] = None) -> "RunContext":
        tunables = dict(command_defaults.get_defaults(config.command))
        for key in ("truncation_margin", "grid_dilation", "seed", "emit_grid"):
            value = getattr(config, key)
            if value is not None:
                tunables[key] = value
        if emit_grid is not None:
            tunables["emit_grid"] = emit_grid
        return cls(config, store, tunables, tunables["emit_grid"])

    @property
    def margin(self) -> int:
        return self.tunables["truncation_margin"]

    def artifact_name(self, system_name: str) -> str:
        return slug(f"{self.config.command.value}-{system_name}")


# ------------------------------------------
# Config resolution
# ------------------------------------------

def resolve_system(ref) -> Tuple[str, WeightList]:
    if isinstance(ref, WeightList):
        return "inline", ref
    entry = system_catalog.require_system(ref)
    return entry.name, entry.weights


def require_system(config: RunConfig) -> Tuple[str, WeightList]:
    if config.system is None:
        raise ConfigError(f"command {config.command.value} needs a system", key="system")
    return resolve_system(config.system)


def resolve_window(config: RunConfig, X: WeightList, default: Window) -> Window:
    if config.window is None:
        return default
    if len(config.window) != X.dim:
        raise ConfigError(f"window has {len(config.window)} sides, the system has dimension {X.dim}", key="window")
    return Window.from_pairs(config.window)


def resolve_box(config: RunConfig, X: WeightList, default: Window) -> Window:
    if config.box is None:
        return default
    if len(config.box) != X.dim:
        raise ConfigError(f"box has {len(config.box)} sides, the system has dimension {X.dim}", key="box")
    return lattice_box([side[0] for side in config.box], [side[1] for side in config.box])


def resolve_data(config: RunConfig, X: WeightList) -> LatticeFunction:
    if config.K is None:
        return FiniteFunction.delta(X.dim)
    try:
        K = FiniteFunction.from_json(X.dim, config.K)
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"rows must look like {{\"lambda\": [...], \"value\": \"p/q\"}}: {e}", key="K")
    for lam in K.support():
        if len(lam) != X.dim:
            raise ConfigError(f"lattice point {list(lam)} has the wrong dimension", key="K")
    return K


def resolve_alcove(config: RunConfig, X: WeightList) -> Optional[Cell]:
    if config.alcove is None:
        return None
    point = [rat(x) for x in config.alcove]
    c = alcove_containing(X, point)
    if c is None:
        raise ConfigError(f"{config.alcove} is not inside an alcove with 0 in its closure", key="alcove")
    return c


def resolve_config_face(config: RunConfig, X: WeightList) -> RegularFace:
    return resolve_face(X, config.face)


def spline_window(X: WeightList, padding) -> Window:
    lower, upper = zonotope_box(X)
    return Window(lower, upper).padded(padding)


# ------------------------------------------
# Artifact helpers
# ------------------------------------------

def config_echo(config: RunConfig) -> dict:
    return config.model_dump(mode="json", exclude_none=True)


def emit_grid(ctx: RunContext, name: str, f: PiecewisePoly, window: Window, artifacts: List[str]) -> None:
    if not ctx.emit_grid:
        return
    path = ctx.store.write_text(ArtifactKind.GRID, name, ".csv", sample_csv(f, ctx.emit_grid, window))
    artifacts.append(str(path))


def write_report(ctx: RunContext, name: str, report: InversionReport, artifacts: List[str]) -> None:
    payload = {"config": config_echo(ctx.config), "report": report.model_dump(mode="json")}
    artifacts.append(str(ctx.store.write_json(ArtifactKind.REPORT, name, payload)))
    if not report.verdict:
        counterexample = {"kind": report.kind, "system": report.system, "mismatch": report.mismatch,
                          "reconstructed": report.reconstructed}
        artifacts.append(str(ctx.store.write_json(ArtifactKind.COUNTEREXAMPLE, name, counterexample)))


# ------------------------------------------
# Spline commands
# ------------------------------------------

@command_registry.command(CommandName.BOX)
def run_box(ctx: RunContext) -> CommandResult:
    system_name, X = require_system(ctx.config)
    window = resolve_window(ctx.config, X, spline_window(X, ctx.tunables["window_padding"]))
    f = build_box(X, window, face=ctx.config.face)
    name = ctx.artifact_name(system_name)
    artifacts = []
    payload = {"config": config_echo(ctx.config), "spline": piecewise_json(f, window)}
    artifacts.append(str(ctx.store.write_json(ArtifactKind.REPORT, name, payload)))
    emit_grid(ctx, name, f, window, artifacts)
    return CommandResult(True, artifacts, f"B{X}: {len(payload['spline']['cells'])} cells")


@command_registry.command(CommandName.MULTISPLINE)
def run_multispline(ctx: RunContext) -> CommandResult:
    system_name, X = require_system(ctx.config)
    face = resolve_config_face(ctx.config, X)
    r = ctx.tunables["box_radius"]
    window = resolve_window(ctx.config, X, Window.cube(X.dim, -r, r))
    f = build_T_polarized(X, face, window)
    name = ctx.artifact_name(system_name)
    artifacts = []
    payload = {"config": config_echo(ctx.config), "face": face.to_json(), "spline": piecewise_json(f, window)}
    artifacts.append(str(ctx.store.write_json(ArtifactKind.REPORT, name, payload)))
    emit_grid(ctx, name, f, window, artifacts)
    return CommandResult(True, artifacts, f"T^{face}{X}: {len(payload['spline']['cells'])} cells")


@command_registry.command(CommandName.SAMPLE)
def run_sample(ctx: RunContext) -> CommandResult:
    system_name, X = require_system(ctx.config)
    if ctx.config.face is None:
        window = resolve_window(ctx.config, X, spline_window(X, ctx.tunables["window_padding"]))
        f = build_box(X, window)
    else:
        face = resolve_config_face(ctx.config, X)
        r = ctx.tunables["box_radius"]
        window = resolve_window(ctx.config, X, Window.cube(X.dim, -r, r))
        f = build_T_polarized(X, face, window)
    artifacts = []
    emit_grid(ctx, ctx.artifact_name(system_name), f, window, artifacts)
    return CommandResult(True, artifacts, f"sampled {f.label} at resolution {ctx.emit_grid}")


# ------------------------------------------
# Lattice commands
# ------------------------------------------

@command_registry.command(CommandName.PARTITION)
def run_partition(ctx: RunContext) -> CommandResult:
    system_name, X = require_system(ctx.config)
    r = ctx.tunables["box_radius"]
    box = resolve_box(ctx.config, X, Window.cube(X.dim, -r, r))
    if ctx.config.face is None:
        f = partition_function(X)
    else:
        face = resolve_config_face(ctx.config, X)
        f = polarized_partition(X, face)
    points = box.lattice_points()
    rows = [list(lam) + [value.to_json()] for lam, value in f.tabulate(points)]
    name = ctx.artifact_name(system_name)
    artifacts = [
        str(ctx.store.write_json(ArtifactKind.TABLE, name,
                                 {"config": config_echo(ctx.config), "function": f.label, "values": f.to_json(points)})),
        str(ctx.store.write_csv(ArtifactKind.TABLE, name, [f"l{i + 1}" for i in range(X.dim)] + ["value"], rows)),
    ]
    return CommandResult(True, artifacts, f"{f.label} on {len(points)} points")


@command_registry.command(CommandName.DM_BASIS)
def run_dm_basis(ctx: RunContext) -> CommandResult:
    system_name, X = require_system(ctx.config)
    counts = dimension_counts(X)
    payload = {
        "config": config_echo(ctx.config),
        "counts": counts,
        "d_space": [p.to_json() for p in d_space_basis(X)],
        "dm_space": [element.to_json() for element in dm_space_basis(X)],
    }
    c = resolve_alcove(ctx.config, X) or base_alcove(X)
    points = delta_set(c, X)
    payload["alcove"] = format_point(c.interior_point)
    payload["delta_set"] = [list(p) for p in points]
    payload["interpolation"] = [{"xi": list(xi), "element": k.to_json()}
                                for xi, k in interpolation_basis(X, c).items()]
    verdict = counts["dim_D"] == counts["bases"] and counts["dim_DM"] == counts["sum_abs_det"] == len(points)
    artifacts = [str(ctx.store.write_json(ArtifactKind.REPORT, ctx.artifact_name(system_name), payload))]
    return CommandResult(verdict, artifacts, f"dim D = {counts['dim_D']}, dim DM = {counts['dim_DM']}")


@command_registry.command(CommandName.VERTICES)
def run_vertices(ctx: RunContext) -> CommandResult:
    system_name, X = require_system(ctx.config)
    require_span(X)
    vertices = []
    for g in toric_vertices(X):
        fixed = fixed_sublist(X, g)
        vertices.append({"vertex": g.to_json(), "order": g.order, "fixed": list(fixed),
                         "fixed_weights": X.sublist(fixed).to_json()["weights"]})
    payload = {
        "config": config_echo(ctx.config),
        "vertices": vertices,
        "bases": [{"indices": list(sigma), "det": d} for sigma, d in enumerate_bases(X)],
        "faces": [face.to_json() for face in regular_faces(X)],
    }
    artifacts = [str(ctx.store.write_json(ArtifactKind.REPORT, ctx.artifact_name(system_name), payload))]
    return CommandResult(True, artifacts, f"{len(vertices)} toric vertices")


# ------------------------------------------
# Inversion commands
# ------------------------------------------

@command_registry.command(CommandName.INVERT)
def run_invert(ctx: RunContext) -> CommandResult:
    system_name, X = require_system(ctx.config)
    require_span(X)
    r = ctx.tunables["box_radius"]
    box = resolve_box(ctx.config, X, Window.cube(X.dim, -r, r))
    K = resolve_data(ctx.config, X)
    c = resolve_alcove(ctx.config, X)
    if is_unimodular(X):
        report = invert_unimodular(X, K, box, ctx.margin, keep_piecewise=True, alcove=c)
    else:
        report = invert_general(X, K, box, ctx.margin, keep_piecewise=True, alcove=c)
    name = ctx.artifact_name(system_name)
    artifacts = []
    write_report(ctx, name, report, artifacts)
    if ctx.emit_grid:
        window = working_window(X, box)
        truncation = len(X) + ctx.margin
        for i, g in enumerate(toric_vertices(X)):
            transformed = apply_series_pw(vertex_operator(X, g, truncation), omega_g(X, g, K, window))
            emit_grid(ctx, f"{name}-vertex{i}", transformed, window, artifacts)
    return CommandResult(report.verdict, artifacts, report.summary())


@command_registry.command(CommandName.BRION_VERGNE)
def run_brion_vergne(ctx: RunContext) -> CommandResult:
    system_name, X = require_system(ctx.config)
    r = ctx.tunables["box_radius"]
    box = resolve_box(ctx.config, X, Window.cube(X.dim, 0, r))
    _, report = brion_vergne_partition(X, box, ctx.margin, keep_piecewise=True, alcove=resolve_alcove(ctx.config, X))
    artifacts = []
    write_report(ctx, ctx.artifact_name(system_name), report, artifacts)
    return CommandResult(report.verdict, artifacts, report.summary())


@command_registry.command(CommandName.INDEX)
def run_index(ctx: RunContext) -> CommandResult:
    system_name, X = require_system(ctx.config)
    face = resolve_config_face(ctx.config, X)
    r = ctx.tunables["box_radius"]
    box = resolve_box(ctx.config, X, Window.cube(X.dim, -r, r))
    report = atiyah_index_report(X, face, box)
    artifacts = []
    write_report(ctx, ctx.artifact_name(system_name), report, artifacts)
    return CommandResult(report.verdict, artifacts, report.summary())


# ------------------------------------------
# Verification
# ------------------------------------------

@command_registry.command(CommandName.VERIFY)
def run_verify(ctx: RunContext) -> CommandResult:
    config = ctx.config
    systems = None
    if config.systems is not None:
        systems = [resolve_system(ref) for ref in config.systems]
    elif config.system is not None:
        systems = [resolve_system(config.system)]
    tunables = {key: ctx.tunables[key] for key in ("truncation_margin", "grid_dilation", "seed")}
    summary = verify_suite(config.suite, systems, tunables)
    artifacts = []
    name = slug(f"verify-{config.suite.value}")
    payload = {"config": config_echo(config), "all_passed": summary.all_passed, **summary.model_dump(mode="json")}
    artifacts.append(str(ctx.store.write_json(ArtifactKind.SUMMARY, name, payload)))
    for row in summary.rows:
        if not row.verdict:
            artifacts.append(str(ctx.store.write_json(ArtifactKind.COUNTEREXAMPLE, slug(f"{name}-{row.check_id}"),
                                                      row.model_dump(mode="json"))))
    passed = sum(1 for row in summary.rows if row.verdict)
    return CommandResult(summary.all_passed, artifacts,
                         f"suite {config.suite.value}: {passed}/{len(summary.rows)} checks passed")


def run(config: RunConfig, store: ArtifactStore, emit_grid_resolution: Optional[int] = None) -> CommandResult:
    """Dispatches a parsed config to its command handler."""
    if config.command is None:
        raise ConfigError("no command given", key="command")
    handler = command_registry.get_handler(config.command)
    if handler is None:
        raise ConfigError(f"unknown command {config.command}", key="command")
    ctx = RunContext.create(config, store, emit_grid_resolution)
    logger.info(f"running {config.command.value}")
    return handler(ctx)

