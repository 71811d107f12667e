"""
Cyclotomic numbers Q(zeta_n).

An element is stored on the power basis 1, t, ..., t^(phi(n)-1) of
Q[t]/(Phi_n(t)) with t standing for zeta_n = exp(2 pi i / n). Working modulo
the cyclotomic polynomial (and not t^n - 1) keeps the ring a field, so the
twisted inverse operators can divide by 1 - g^{-a}.

Arithmetic is done with sympy's dense univariate kernels over QQ; elements of
different orders are lifted to the lcm order before combining.
"""
import logging
from functools import lru_cache
from math import gcd
from typing import Dict, List, Sequence, Tuple, Union

from sympy import QQ, cyclotomic_poly, totient
from sympy.polys.densearith import dup_mul, dup_rem
from sympy.polys.densebasic import dup_strip
from sympy.polys.euclidtools import dup_invert

from ..errors import IncompatibleOrder, NotRational
from .rational import Rat, format_rat, rat

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def cyclotomic_modulus(n: int) -> Tuple:
    """Dense (high to low) coefficients of Phi_n over QQ."""
    coeffs = cyclotomic_poly(n, polys=True).all_coeffs()
    return tuple(QQ(int(c)) for c in coeffs)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return int(totient(n))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _reduce(f: List, n: int) -> Tuple:
    """Reduces a dense polynomial mod Phi_n; returns low-to-high coefficients of length phi(n)."""
    modulus = list(cyclotomic_modulus(n))
    r = dup_rem(dup_strip(list(f)), modulus, QQ)
    width = euler_phi(n)
    low = list(reversed(r))
    low.extend([QQ(0)] * (width - len(low)))
    return tuple(low)


class Cyclo:
    """An exact element of the cyclotomic field Q(zeta_order)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence):
        if order < 1:
            raise ValueError(f"cyclotomic order must be positive, got {order}")
        width = euler_phi(order)
        values = tuple(rat(c) for c in coeffs)
        if len(values) != width:
            raise ValueError(f"Q(zeta_{order}) needs {width} coefficients, got {len(values)}")
        self.order = order
        self.coeffs = values

    # ------------------------------------------
    # Constructors
    # ------------------------------------------

    @classmethod
    def rational(cls, value, order: int = 1) -> "Cyclo":
        width = euler_phi(order)
        return cls(order, (rat(value),) + (QQ(0),) * (width - 1))

    @classmethod
    def zero(cls, order: int = 1) -> "Cyclo":
        return cls.rational(0, order)

    @classmethod
    def one(cls, order: int = 1) -> "Cyclo":
        return cls.rational(1, order)

    @classmethod
    def root_power(cls, n: int, k: int) -> "Cyclo":
        """zeta_n^k reduced mod Phi_n."""
        if n < 1:
            raise ValueError(f"cyclotomic order must be positive, got {n}")
        k %= n
        dense = [QQ(1)] + [QQ(0)] * k
        return cls(n, _reduce(dense, n))

    @classmethod
    def from_dense(cls, order: int, dense: List) -> "Cyclo":
        return cls(order, _reduce(dense, order))

    # ------------------------------------------
    # Representation helpers
    # ------------------------------------------

    def _dense(self) -> List:
        return dup_strip(list(reversed(self.coeffs)))

    def embed(self, m: int) -> "Cyclo":
        """Same value in Q(zeta_m); zeta_n becomes zeta_m^(m/n)."""
        if m % self.order:
            raise IncompatibleOrder(self.order, m)
        if m == self.order:
            return self
        step = m // self.order
        low = [QQ(0)] * ((len(self.coeffs) - 1) * step + 1)
        for j, c in enumerate(self.coeffs):
            low[j * step] = c
        return Cyclo.from_dense(m, list(reversed(low)))

    def _lift(self, other) -> Tuple["Cyclo", "Cyclo"]:
        other = as_cyclo(other)
        if other.order == self.order:
            return self, other
        m = _lcm(self.order, other.order)
        return self.embed(m), other.embed(m)

    # ------------------------------------------
    # Field operations
    # ------------------------------------------

    def __add__(self, other) -> "Cyclo":
        a, b = self._lift(other)
        return Cyclo(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __sub__(self, other) -> "Cyclo":
        a, b = self._lift(other)
        return Cyclo(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other) -> "Cyclo":
        return as_cyclo(other) - self

    def __neg__(self) -> "Cyclo":
        return Cyclo(self.order, tuple(-x for x in self.coeffs))

    def __mul__(self, other) -> "Cyclo":
        if not isinstance(other, Cyclo):
            c = rat(other)
            return Cyclo(self.order, tuple(c * x for x in self.coeffs))
        a, b = self._lift(other)
        if a.order == 1:
            return Cyclo(1, (a.coeffs[0] * b.coeffs[0],))
        return Cyclo.from_dense(a.order, dup_mul(a._dense(), b._dense(), QQ))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.order == 1:
            return Cyclo(1, (1 / self.coeffs[0],))
        modulus = list(cyclotomic_modulus(self.order))
        return Cyclo.from_dense(self.order, dup_invert(self._dense(), modulus, QQ))

    def __truediv__(self, other) -> "Cyclo":
        return self * as_cyclo(other).inverse()

    def __rtruediv__(self, other) -> "Cyclo":
        return as_cyclo(other) * self.inverse()

    def __pow__(self, k: int) -> "Cyclo":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Cyclo.one(self.order)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # ------------------------------------------
    # Predicates and projections
    # ------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Rat:
        if not self.is_rational():
            raise NotRational(self)
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, (Cyclo, int, Rat)):
            return NotImplemented
        a, b = self._lift(other)
        return a.coeffs == b.coeffs

    def __ne__(self, other) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def multiplication_matrix(self) -> List[List[Rat]]:
        """Matrix of z -> self * z on the power basis; column j is self * zeta^j."""
        width = len(self.coeffs)
        columns = [(self * Cyclo.root_power(self.order, j)).coeffs for j in range(width)]
        return [[columns[j][i] for j in range(width)] for i in range(width)]

    def to_json(self) -> Union[str, Dict]:
        if self.is_rational():
            return format_rat(self.coeffs[0])
        return {"order": self.order, "coeffs": [format_rat(c) for c in self.coeffs]}

    def __repr__(self) -> str:
        if self.is_rational():
            return f"Cyclo({format_rat(self.coeffs[0])})"
        terms = [f"{format_rat(c)}*z{self.order}^{j}" for j, c in enumerate(self.coeffs) if c]
        return f"Cyclo({' + '.join(terms)})"


def as_cyclo(value, order: int = 1) -> Cyclo:
    if isinstance(value, Cyclo):
        return value
    return Cyclo.rational(value, order)


def cyclo_from_root_power(n: int, k: int) -> Cyclo:
    return Cyclo.root_power(n, k)


def cyclo_to_rational(z: Cyclo) -> Rat:
    return z.to_rational()


def cyclo_embed(z: Cyclo, m: int) -> Cyclo:
    return z.embed(m)


def common_order(orders) -> int:
    result = 1
    for n in orders:
        result = _lcm(result, n)
    return result
