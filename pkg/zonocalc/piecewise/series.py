"""
Truncated operator series in directional derivatives.

An OperatorSeries is a product of one-variable series f_a(d_a) = sum_k c_k d_a^k,
one per direction a. Applied to a polynomial of degree m only the terms with
k <= m survive, so a series truncated at degree d acts exactly on every
polynomial of degree <= d.
"""
import logging
from functools import lru_cache
from math import factorial
from typing import Sequence, Tuple, Union

from sympy import QQ
from sympy.polys.ring_series import rs_pow, rs_series_inversion
from sympy.polys.rings import ring

from ..errors import TruncationTooLow
from ..exactnum.cyclotomic import Cyclo
from ..exactnum.rational import Rat
from .polynomials import MultiPoly

logger = logging.getLogger(__name__)

Coefficient = Union[Rat, Cyclo]
Factor = Tuple[Tuple[int, ...], Tuple[Coefficient, ...]]

_SERIES_RING, _x = ring("x", QQ)


def _coefficients(series, degree: int) -> Tuple[Rat, ...]:
    return tuple(series.get((k,), QQ(0)) for k in range(degree + 1))


@lru_cache(maxsize=None)
def cube_average_coefficients(degree: int) -> Tuple[Rat, ...]:
    """(1 - e^{-x}) / x = sum_k (-1)^k x^k / (k+1)!."""
    return tuple(QQ((-1) ** k, factorial(k + 1)) for k in range(degree + 1))


@lru_cache(maxsize=None)
def todd_coefficients(degree: int) -> Tuple[Rat, ...]:
    """x / (1 - e^{-x}), the inverse of the cube average."""
    average = _SERIES_RING.from_dict({(k,): c for k, c in enumerate(cube_average_coefficients(degree))})
    return _coefficients(rs_series_inversion(average, _x, degree + 1), degree)


@lru_cache(maxsize=None)
def _difference_powers(degree: int) -> Tuple[Tuple[Rat, ...], ...]:
    """Coefficients of (1 - e^{-x})^k for k = 0..degree."""
    u = _SERIES_RING.from_dict({(j,): QQ((-1) ** (j + 1), factorial(j)) for j in range(1, degree + 1)})
    return tuple(_coefficients(rs_pow(u, k, _x, degree + 1), degree) for k in range(degree + 1))


def twisted_inverse_coefficients(c: Cyclo, degree: int) -> Tuple[Cyclo, ...]:
    """
    (1 - c e^{-x})^{-1} for c != 1, expanded as
    (1-c)^{-1} sum_k (-c/(1-c))^k (1 - e^{-x})^k.
    """
    one_minus = Cyclo.one(c.order) - c
    if one_minus.is_zero():
        raise ZeroDivisionError("twisted inverse needs g^{-a} != 1")
    head = one_minus.inverse()
    ratio = -c * head
    powers = _difference_powers(degree)
    result = [Cyclo.zero(c.order) for _ in range(degree + 1)]
    weight = head
    for k in range(degree + 1):
        for m, coeff in enumerate(powers[k]):
            if coeff:
                result[m] = result[m] + weight * coeff
        weight = weight * ratio
    return tuple(result)


class OperatorSeries:
    """A product of one-direction series, truncated at ``truncation``."""

    def __init__(self, factors: Sequence[Factor], truncation: int, name: str = "series"):
        self.factors: Tuple[Factor, ...] = tuple((tuple(a), tuple(coeffs)) for a, coeffs in factors)
        self.truncation = truncation
        self.name = name

    # ------------------------------------------
    # Standard series
    # ------------------------------------------

    @classmethod
    def identity(cls, truncation: int = 0) -> "OperatorSeries":
        return cls([], truncation, "id")

    @classmethod
    def todd(cls, vectors: Sequence[Sequence[int]], truncation: int) -> "OperatorSeries":
        """Todd(Y) = prod_a d_a / (1 - e^{-d_a})."""
        coeffs = todd_coefficients(truncation)
        return cls([(a, coeffs) for a in vectors], truncation, "todd")

    @classmethod
    def cube_average(cls, vectors: Sequence[Sequence[int]], truncation: int) -> "OperatorSeries":
        """I(Y) = prod_a (1 - e^{-d_a}) / d_a."""
        coeffs = cube_average_coefficients(truncation)
        return cls([(a, coeffs) for a in vectors], truncation, "cube-average")

    @classmethod
    def twisted_inverse(cls, g, vectors: Sequence[Sequence[int]], truncation: int) -> "OperatorSeries":
        """D(g, Y)^{-1} = prod_a (1 - g^{-a} e^{-d_a})^{-1}."""
        factors = []
        for a in vectors:
            c = g.pairing(tuple(-x for x in a))
            factors.append((a, twisted_inverse_coefficients(c, truncation)))
        return cls(factors, truncation, "twisted-inverse")

    def then(self, other: "OperatorSeries") -> "OperatorSeries":
        """Product of two series (they commute)."""
        return OperatorSeries(self.factors + other.factors, min(self.truncation, other.truncation),
                              f"{self.name}*{other.name}")

    # ------------------------------------------
    # Action
    # ------------------------------------------

    def apply(self, p: MultiPoly) -> MultiPoly:
        degree = p.degree()
        if degree > self.truncation and self.factors:
            raise TruncationTooLow(degree, self.truncation)
        result = p
        for direction, coeffs in self.factors:
            if result.is_zero():
                return result
            derivative = result
            total = MultiPoly.zero(p.dim)
            for k in range(min(result.degree(), len(coeffs) - 1) + 1):
                if k:
                    derivative = derivative.derivative(direction)
                coeff = coeffs[k]
                if coeff.is_zero() if isinstance(coeff, Cyclo) else not coeff:
                    continue
                total = total + derivative.scale(coeff)
            result = total
        return result

    def __repr__(self) -> str:
        return f"OperatorSeries({self.name}, {len(self.factors)} factors, d={self.truncation})"


def apply_series(D: OperatorSeries, p: MultiPoly) -> MultiPoly:
    return D.apply(p)
