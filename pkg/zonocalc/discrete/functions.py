"""
Functions on the lattice Z^s.

Every value is a cyclotomic number. Concrete kinds: finite maps, composites
built from other functions (differences, translates, twists), partition
functions (in partition.py) and Dahmen-Micchelli elements (in dm.py).
"""
import logging
import random
from abc import ABC, abstractmethod
from itertools import product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from ..exactnum.cyclotomic import Cyclo, as_cyclo
from ..exactnum.rational import format_rat

logger = logging.getLogger(__name__)

LatticePoint = Tuple[int, ...]
Box = Tuple[LatticePoint, LatticePoint]


def box_points(lower: Sequence[int], upper: Sequence[int]) -> List[LatticePoint]:
    return [tuple(p) for p in product(*(range(lo, hi + 1) for lo, hi in zip(lower, upper)))]


def cube(dim: int, lo: int, hi: int) -> List[LatticePoint]:
    return box_points([lo] * dim, [hi] * dim)


class LatticeFunction(ABC):
    """A function Lambda -> Q(zeta_n)."""

    def __init__(self, dim: int, label: str = ""):
        self.dim = dim
        self.label = label

    @abstractmethod
    def _value(self, lam: LatticePoint) -> Cyclo:
        raise NotImplementedError

    def value(self, lam: Sequence[int]) -> Cyclo:
        return as_cyclo(self._value(tuple(int(x) for x in lam)))

    __call__ = value

    def support_box(self) -> Optional[Box]:
        """A box containing the support, when the support is known to be finite."""
        return None

    def tabulate(self, points: Iterable[Sequence[int]]) -> List[Tuple[LatticePoint, Cyclo]]:
        return [(tuple(p), self.value(p)) for p in points]

    def agrees_with(self, other: "LatticeFunction", points: Iterable[Sequence[int]]) -> Optional[LatticePoint]:
        """First point where the two functions differ, or None."""
        for p in points:
            if self.value(p) != other.value(p):
                return tuple(p)
        return None

    # ------------------------------------------
    # Algebra
    # ------------------------------------------

    def __add__(self, other: "LatticeFunction") -> "LatticeFunction":
        return MappedFunction(self.dim, lambda lam: self.value(lam) + other.value(lam),
                              _union_box(self.support_box(), other.support_box()), f"{self.label}+{other.label}")

    def __sub__(self, other: "LatticeFunction") -> "LatticeFunction":
        return MappedFunction(self.dim, lambda lam: self.value(lam) - other.value(lam),
                              _union_box(self.support_box(), other.support_box()), f"{self.label}-{other.label}")

    def scale(self, c) -> "LatticeFunction":
        return MappedFunction(self.dim, lambda lam: self.value(lam) * c, self.support_box(), f"{c}*{self.label}")

    def __neg__(self) -> "LatticeFunction":
        return self.scale(-1)

    def translate(self, vector: Sequence[int]) -> "LatticeFunction":
        """(t_mu f)(lambda) = f(lambda - mu)."""
        vector = tuple(int(x) for x in vector)
        box = self.support_box()
        if box is not None:
            box = (tuple(a + x for a, x in zip(box[0], vector)), tuple(a + x for a, x in zip(box[1], vector)))
        return MappedFunction(self.dim, lambda lam: self.value(tuple(a - x for a, x in zip(lam, vector))),
                              box, f"t{list(vector)}{self.label}")

    def materialize(self, points: Iterable[Sequence[int]]) -> "FiniteFunction":
        points = [tuple(p) for p in points]
        return FiniteFunction(self.dim, {p: self.value(p) for p in points}, domain=points)

    def to_json(self, points: Iterable[Sequence[int]]) -> List[dict]:
        return [{"lambda": list(p), "value": v.to_json()} for p, v in self.tabulate(points)]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.label})"


def _union_box(a: Optional[Box], b: Optional[Box]) -> Optional[Box]:
    if a is None or b is None:
        return None
    return (tuple(min(x, y) for x, y in zip(a[0], b[0])), tuple(max(x, y) for x, y in zip(a[1], b[1])))


class FiniteFunction(LatticeFunction):
    """
    Finitely supported function given by its nonzero values.

    ``domain`` records the points the values were tabulated on (for reports);
    outside the stored values the function is zero.
    """

    def __init__(self, dim: int, values: Dict[Sequence[int], object], domain: Optional[List[LatticePoint]] = None,
                 label: str = ""):
        super().__init__(dim, label)
        self.values: Dict[LatticePoint, Cyclo] = {}
        for lam, v in values.items():
            v = as_cyclo(v)
            if not v.is_zero():
                self.values[tuple(int(x) for x in lam)] = v
        self.domain = domain

    @classmethod
    def delta(cls, dim: int, at: Optional[Sequence[int]] = None) -> "FiniteFunction":
        at = tuple(at) if at is not None else (0,) * dim
        return cls(dim, {at: 1}, label=f"delta{list(at)}")

    @classmethod
    def random(cls, dim: int, radius: int, seed: int, magnitude: int = 3) -> "FiniteFunction":
        """Seeded random integer data on [-radius, radius]^s."""
        rng = random.Random(seed)
        values = {lam: rng.randint(-magnitude, magnitude) for lam in cube(dim, -radius, radius)}
        return cls(dim, values, label=f"random(seed={seed})")

    @classmethod
    def from_json(cls, dim: int, rows: Iterable) -> "FiniteFunction":
        from ..exactnum.rational import rat
        values = {}
        for row in rows:
            lam, value = (row["lambda"], row["value"]) if isinstance(row, dict) else row
            values[tuple(int(x) for x in lam)] = rat(value)
        return cls(dim, values, label="K")

    def _value(self, lam: LatticePoint) -> Cyclo:
        v = self.values.get(lam)
        return v if v is not None else Cyclo.zero()

    def support(self) -> List[LatticePoint]:
        return sorted(self.values)

    def support_box(self) -> Optional[Box]:
        if not self.values:
            zero = (0,) * self.dim
            return zero, zero
        points = list(self.values)
        return (tuple(min(p[i] for p in points) for i in range(self.dim)),
                tuple(max(p[i] for p in points) for i in range(self.dim)))

    def __repr__(self) -> str:
        shown = ", ".join(f"{list(k)}: {v.to_json()}" for k, v in sorted(self.values.items())[:6])
        return f"FiniteFunction({{{shown}{', ...' if len(self.values) > 6 else ''}}})"


class MappedFunction(LatticeFunction):
    """A lattice function given by an evaluation rule."""

    def __init__(self, dim: int, rule: Callable[[LatticePoint], object], box: Optional[Box] = None,
                 label: str = ""):
        super().__init__(dim, label)
        self._rule = rule
        self._box = box

    def _value(self, lam: LatticePoint) -> Cyclo:
        return as_cyclo(self._rule(lam))

    def support_box(self) -> Optional[Box]:
        return self._box


# ------------------------------------------
# Difference operators and twists
# ------------------------------------------

def nabla_discrete(f: LatticeFunction, vectors: Sequence[Sequence[int]]) -> LatticeFunction:
    """nabla_Y f = prod_a (1 - t_a) f."""
    for a in vectors:
        f = f - f.translate(a)
    return f


def twisted_nabla(g, vectors: Sequence[Sequence[int]], f: LatticeFunction) -> LatticeFunction:
    """nabla(g, Y) f = prod_a (1 - g^{-a} t_a) f."""
    for a in vectors:
        shifted = f.translate(a)
        weight = g.pairing(tuple(-x for x in a))
        f = _twisted_step(f, shifted, weight)
    return f


def _twisted_step(f: LatticeFunction, shifted: LatticeFunction, weight: Cyclo) -> LatticeFunction:
    return MappedFunction(f.dim, lambda lam: f.value(lam) - weight * shifted.value(lam),
                          _union_box(f.support_box(), shifted.support_box()), f"nabla^g{f.label}")


def g_hat(g, f: LatticeFunction) -> LatticeFunction:
    """(g^ f)(lambda) = g^lambda f(lambda)."""
    if g.is_identity():
        return f
    return MappedFunction(f.dim, lambda lam: g.pairing(lam) * f.value(lam), f.support_box(), f"{g}^{f.label}")


def g_hat_inverse(g, f: LatticeFunction) -> LatticeFunction:
    return g_hat(g.inverse(), f)


def project_rational(f: LatticeFunction, points: Iterable[Sequence[int]]) -> Dict[LatticePoint, str]:
    """Rational values of f on points (NotRational if any value is not)."""
    return {tuple(p): format_rat(f.value(p).to_rational()) for p in points}
