"""
Vector partition functions P_Y(lambda) = #{k >= 0 : sum k_i a_i = lambda},
their polarized versions and an independent enumeration used as an oracle.
"""
import logging
import threading
from typing import Dict, Sequence, Tuple

from ..exactnum.cyclotomic import Cyclo
from ..exactnum.linalg import solve_small, transpose
from ..exactnum.rational import dot, floor_rat
from ..geometry.arrangement import require_pointed
from ..lattice.combinatorics import vectors_rank
from ..lattice.weights import WeightList
from .faces import RegularFace
from .functions import LatticeFunction, LatticePoint, MappedFunction

logger = logging.getLogger(__name__)


class PartitionFunction(LatticeFunction):
    """
    Memoized P_Y for a list spanning a pointed cone.

    Weights are peeled in input order: P_Y(lambda) = sum_k P_{Y'}(lambda - k a)
    with a the first weight and Y' the rest, down to a basis (one solve) or
    the empty list (delta_0).
    """

    def __init__(self, Y: WeightList):
        super().__init__(Y.dim, f"P{Y}")
        self.weights = Y
        self.functional = require_pointed(Y.vectors(), Y.dim)
        self._memo: Dict[Tuple[int, LatticePoint], int] = {}
        self._lock = threading.Lock()

    def _value(self, lam: LatticePoint) -> Cyclo:
        return Cyclo.rational(self.count(lam))

    def count(self, lam: Sequence[int]) -> int:
        return self._count(0, tuple(int(x) for x in lam))

    def _count(self, start: int, lam: LatticePoint) -> int:
        key = (start, lam)
        with self._lock:
            cached = self._memo.get(key)
        if cached is not None:
            return cached
        result = self._compute(start, lam)
        with self._lock:
            self._memo[key] = result
        return result

    def _compute(self, start: int, lam: LatticePoint) -> int:
        rest = self.weights.vectors()[start:]
        if not rest:
            return 1 if not any(lam) else 0
        level = dot(self.functional, lam)
        if level < 0:
            return 0
        if len(rest) == self.dim and vectors_rank(rest) == self.dim:
            coords = solve_small(transpose(rest), lam)
            return 1 if all(c >= 0 and c.denominator == 1 for c in coords) else 0
        a = rest[0]
        steps = floor_rat(level / dot(self.functional, a))
        total = 0
        for k in range(steps + 1):
            total += self._count(start + 1, tuple(x - k * y for x, y in zip(lam, a)))
        return total

    def memo_size(self) -> int:
        return len(self._memo)


def partition_function(Y: WeightList) -> PartitionFunction:
    return PartitionFunction(Y)


def polarized_partition(Y: WeightList, face: RegularFace) -> LatticeFunction:
    """P_Y^F(lambda) = (-1)^|B| P_{A u -B}(lambda + a_B)."""
    A, B = face.split(Y)
    flipped = PartitionFunction(Y.negated(B))
    shift = Y.sublist_sum(B)
    sign = -1 if len(B) % 2 else 1

    def rule(lam):
        return sign * flipped.count(tuple(x + y for x, y in zip(lam, shift)))

    return MappedFunction(Y.dim, rule, None, f"P^{face}{Y}")


def brute_force_partition(Y: WeightList, lam: Sequence[int]) -> int:
    """Depth first enumeration of the nonnegative solutions, bounded by a polarizing functional."""
    phi = require_pointed(Y.vectors(), Y.dim)
    vectors = Y.vectors()
    target = tuple(int(x) for x in lam)
    count = 0
    stack = [(0, target)]
    while stack:
        i, remaining = stack.pop()
        if i == len(vectors):
            if not any(remaining):
                count += 1
            continue
        level = dot(phi, remaining)
        if level < 0:
            continue
        a = vectors[i]
        for k in range(floor_rat(level / dot(phi, a)) + 1):
            stack.append((i + 1, tuple(x - k * y for x, y in zip(remaining, a))))
    return count


def brute_force_table(Y: WeightList, points) -> Dict[LatticePoint, int]:
    return {tuple(p): brute_force_partition(Y, p) for p in points}
