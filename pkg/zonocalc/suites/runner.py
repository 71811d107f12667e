import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..config.store import system_catalog
from ..lattice.weights import WeightList
from ..model.defaults import command_defaults
from ..model.models import SuiteSummary
from ..model.types import CommandName, SuiteName
from .checks import SystemChecks
from .orchestrator import CheckNode, SuiteOrchestrator

logger = logging.getLogger(__name__)

CONCRETE_SUITES = [SuiteName.INVERSION, SuiteName.PARTITION, SuiteName.DM, SuiteName.INDEX]


def default_systems(suite: SuiteName) -> List[Tuple[str, WeightList, List[SuiteName]]]:
    """Catalog systems with the suites each of them runs."""
    selected = []
    for entry in system_catalog.systems_for(suite):
        suites = [s for s in CONCRETE_SUITES if s in entry.suites] if suite == SuiteName.ALL else [suite]
        selected.append((entry.name, entry.weights, suites))
    return selected


def collect_checks(suite: SuiteName, systems: Sequence[Tuple[str, WeightList, List[SuiteName]]],
                   tunables: Dict[str, Any]) -> List[CheckNode]:
    nodes = []
    for name, X, suites in systems:
        checks = SystemChecks(name, X, tunables)
        for member in suites:
            nodes.extend(checks.build(member))
    logger.info(f"suite {suite.value}: {len(nodes)} checks over {len(systems)} systems")
    return nodes


def verify_suite(suite: SuiteName, systems: Optional[Sequence[Tuple[str, WeightList]]] = None,
                 tunables: Optional[Dict[str, Any]] = None, threads: Optional[int] = None) -> SuiteSummary:
    """
    Runs the named suite. Without explicit systems the catalog decides which
    systems take part; explicit systems run every selected suite.
    """
    suite = SuiteName(suite)
    resolved = {**command_defaults.get_defaults(CommandName.VERIFY), **(tunables or {})}
    if systems is None:
        selected = default_systems(suite)
    else:
        members = CONCRETE_SUITES if suite == SuiteName.ALL else [suite]
        selected = [(name, X, list(members)) for name, X in systems]
    rows = SuiteOrchestrator(threads).run(collect_checks(suite, selected, resolved))
    summary = SuiteSummary(suite=suite, rows=rows)
    failed = [row.check_id for row in rows if not row.verdict]
    if failed:
        logger.warning(f"suite {suite.value}: {len(failed)} of {len(rows)} checks did not pass: {', '.join(failed)}")
    else:
        logger.info(f"suite {suite.value}: all {len(rows)} checks passed")
    return summary
