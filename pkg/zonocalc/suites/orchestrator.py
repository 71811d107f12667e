import logging
import time
from collections import defaultdict, deque
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from ..errors import ZonocalcError
from ..model.models import SuiteRow
from ..model.types import RowStatus
from ..utils.utils import env_int

logger = logging.getLogger("SuiteOrchestrator")

CheckOutcome = Tuple[bool, Dict[str, Any]]


@dataclass
class CheckNode:
    """
    One identity on one system.

    Attributes:
        check_id: Unique id inside the graph, e.g. "U2/dimensions".
        identity: Human readable name of the identity.
        system: Label of the weight list.
        run: Returns (verdict, detail).
        depends_on: Ids of checks that must pass first.
    """
    check_id: str
    identity: str
    system: str
    run: Callable[[], CheckOutcome]
    depends_on: List[str] = field(default_factory=list)


class CheckGraph:
    """
    Manages the state and progression of a single check graph using a
    topological sort (Kahn's algorithm) with explicit in-degree counting.
    It also tracks in-flight checks to prevent false stall detection.
    """
    def __init__(self, nodes: List[CheckNode]):
        self.nodes = {node.check_id: node for node in nodes}

        self.adjacency_list = defaultdict(list)
        self.in_degree = {node_id: 0 for node_id in self.nodes}
        self.failed_dependencies = defaultdict(list)

        for node in nodes:
            for dep_id in node.depends_on:
                if dep_id not in self.nodes:
                    raise ValueError(f"check '{node.check_id}' depends on unknown check '{dep_id}'")
                self.adjacency_list[dep_id].append(node.check_id)
                self.in_degree[node.check_id] += 1

        self.execution_queue = deque([node_id for node_id, degree in self.in_degree.items() if degree == 0])

        self.running_nodes = set()
        self.rows: Dict[str, SuiteRow] = {}

    def get_next_executable_node(self) -> Optional[CheckNode]:
        if not self.execution_queue:
            return None

        next_node_id = self.execution_queue.popleft()
        self.running_nodes.add(next_node_id)
        return self.nodes[next_node_id]

    def blocking_dependencies(self, node_id: str) -> List[str]:
        return self.failed_dependencies.get(node_id, [])

    def on_node_complete(self, node_id: str, row: SuiteRow):
        if node_id in self.running_nodes:
            self.running_nodes.remove(node_id)

        self.rows[node_id] = row

        for neighbor_id in self.adjacency_list[node_id]:
            if row.status != RowStatus.PASSED:
                self.failed_dependencies[neighbor_id].append(node_id)
            self.in_degree[neighbor_id] -= 1
            if self.in_degree[neighbor_id] == 0:
                self.execution_queue.append(neighbor_id)

    def is_complete(self) -> bool:
        return len(self.rows) == len(self.nodes)

    def has_stalled(self) -> bool:
        """A graph has stalled if there is nothing in the queue, nothing is running, and it's not complete."""
        return not self.execution_queue and not self.running_nodes and not self.is_complete()

    def ordered_rows(self) -> List[SuiteRow]:
        """Rows in declaration order, independent of completion order."""
        return [self.rows[node_id] for node_id in self.nodes if node_id in self.rows]


def thread_limit() -> int:
    return max(1, env_int("ZONOCALC_THREADS", 1))


def execute_check(node: CheckNode) -> SuiteRow:
    """Runs one check; errors become ERROR rows instead of escaping."""
    start = time.perf_counter()
    try:
        verdict, detail = node.run()
        status = RowStatus.PASSED if verdict else RowStatus.FAILED
    except ZonocalcError as e:
        logger.error(f"check {node.check_id} raised {type(e).__name__}: {e}")
        verdict, status = False, RowStatus.ERROR
        detail = {"error": type(e).__name__, "message": str(e)}
    except Exception as e:
        logger.exception(f"check {node.check_id} crashed")
        verdict, status = False, RowStatus.ERROR
        detail = {"error": type(e).__name__, "message": str(e)}
    return SuiteRow(
        check_id=node.check_id,
        identity=node.identity,
        system=node.system,
        status=status,
        verdict=bool(verdict),
        wall_time=round(time.perf_counter() - start, 3),
        detail=detail,
    )


def skipped_row(node: CheckNode, blockers: List[str]) -> SuiteRow:
    return SuiteRow(
        check_id=node.check_id,
        identity=node.identity,
        system=node.system,
        status=RowStatus.SKIPPED,
        verdict=False,
        detail={"blocked_by": sorted(blockers)},
    )


class SuiteOrchestrator:
    """Runs check graphs on a bounded thread pool."""

    def __init__(self, threads: Optional[int] = None):
        self.threads = threads or thread_limit()

    def run(self, nodes: List[CheckNode]) -> List[SuiteRow]:
        graph = CheckGraph(nodes)
        logger.info(f"running {len(graph.nodes)} checks on {self.threads} thread(s)")
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            in_flight = {}
            while True:
                self._dispatch(graph, pool, in_flight)
                if not in_flight:
                    break
                done, _ = wait(list(in_flight), return_when=FIRST_COMPLETED)
                for future in done:
                    node = in_flight.pop(future)
                    row = future.result()
                    logger.info(f"{row.check_id}: {row.status.value} ({row.wall_time}s)")
                    graph.on_node_complete(node.check_id, row)

        if graph.has_stalled():
            logger.error("check graph has stalled. Possible cycle in the dependencies.")
            for node_id, node in graph.nodes.items():
                if node_id not in graph.rows:
                    graph.rows[node_id] = skipped_row(node, ["cycle"])
        return graph.ordered_rows()

    def _dispatch(self, graph: CheckGraph, pool: ThreadPoolExecutor, in_flight: dict) -> None:
        while True:
            node = graph.get_next_executable_node()
            if not node:
                return
            blockers = graph.blocking_dependencies(node.check_id)
            if blockers:
                logger.info(f"skipping {node.check_id}: blocked by {', '.join(blockers)}")
                graph.on_node_complete(node.check_id, skipped_row(node, blockers))
                continue
            logger.debug(f"dispatching {node.check_id}")
            in_flight[pool.submit(execute_check, node)] = node
