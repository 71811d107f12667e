"""
Multivariate polynomials with cyclotomic coefficients.

A MultiPoly of order n stores p = sum_j zeta_n^j p_j with each p_j in
QQ[v1..vs] (a sympy sparse ring element), so the rational case (n = 1) is a
single ring element and all calculus happens in sympy's ring arithmetic.
"""
from functools import lru_cache
from math import gcd
from typing import Dict, List, Sequence, Tuple, Union

from sympy import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing, ring

from ..exactnum.cyclotomic import Cyclo, as_cyclo, euler_phi
from ..exactnum.rational import Rat, rat

Monomial = Tuple[int, ...]
Scalar = Union[int, Rat, Cyclo]


@lru_cache(maxsize=None)
def poly_ring(dim: int) -> PolyRing:
    """QQ[v1, ..., vs] in graded lexicographic order."""
    names = ",".join(f"v{i + 1}" for i in range(dim))
    return ring(names, QQ, grlex)[0]


@lru_cache(maxsize=None)
def integration_ring(dim: int) -> PolyRing:
    """QQ[v1, ..., vs, t]: the ring of 1-D parametric integrals."""
    names = ",".join([f"v{i + 1}" for i in range(dim)] + ["t"])
    return ring(names, QQ, grlex)[0]


def total_degree(p) -> int:
    return max((sum(m) for m in p.itermonoms()), default=-1)


class MultiPoly:
    __slots__ = ("dim", "order", "components")

    def __init__(self, dim: int, order: int, components: Sequence):
        if len(components) != euler_phi(order):
            raise ValueError(f"order {order} needs {euler_phi(order)} components, got {len(components)}")
        self.dim = dim
        self.order = order
        self.components = tuple(components)

    # ------------------------------------------
    # Constructors
    # ------------------------------------------

    @classmethod
    def zero(cls, dim: int, order: int = 1) -> "MultiPoly":
        R = poly_ring(dim)
        return cls(dim, order, [R.zero] * euler_phi(order))

    @classmethod
    def constant(cls, dim: int, value: Scalar) -> "MultiPoly":
        z = as_cyclo(value) if not isinstance(value, Cyclo) else value
        R = poly_ring(dim)
        return cls(dim, z.order, [R(c) for c in z.coeffs])

    @classmethod
    def from_ring(cls, p) -> "MultiPoly":
        """Wraps a rational ring element."""
        return cls(p.ring.ngens, 1, [p])

    @classmethod
    def variable(cls, dim: int, index: int) -> "MultiPoly":
        return cls.from_ring(poly_ring(dim).gens[index])

    @classmethod
    def from_terms(cls, dim: int, terms: Dict[Monomial, Scalar]) -> "MultiPoly":
        result = cls.zero(dim)
        R = poly_ring(dim)
        for monom, coeff in terms.items():
            result = result + cls.constant(dim, coeff).scaled_by_ring(R({tuple(monom): QQ(1)}))
        return result

    def scaled_by_ring(self, p) -> "MultiPoly":
        return MultiPoly(self.dim, self.order, [c * p for c in self.components])

    # ------------------------------------------
    # Orders
    # ------------------------------------------

    @property
    def ring(self) -> PolyRing:
        return poly_ring(self.dim)

    def embed(self, m: int) -> "MultiPoly":
        if m == self.order:
            return self
        R = self.ring
        components = [R.zero] * euler_phi(m)
        for j, p in enumerate(self.components):
            if not p:
                continue
            image = Cyclo.root_power(self.order, j).embed(m)
            for i, c in enumerate(image.coeffs):
                if c:
                    components[i] += p * c
        return MultiPoly(self.dim, m, components)

    def _lift(self, other: "MultiPoly") -> Tuple["MultiPoly", "MultiPoly"]:
        if self.order == other.order:
            return self, other
        m = self.order * other.order // gcd(self.order, other.order)
        return self.embed(m), other.embed(m)

    # ------------------------------------------
    # Arithmetic
    # ------------------------------------------

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        a, b = self._lift(other)
        return MultiPoly(a.dim, a.order, [x + y for x, y in zip(a.components, b.components)])

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        a, b = self._lift(other)
        return MultiPoly(a.dim, a.order, [x - y for x, y in zip(a.components, b.components)])

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.dim, self.order, [-x for x in self.components])

    def scale(self, c: Scalar) -> "MultiPoly":
        if not isinstance(c, Cyclo):
            c = rat(c)
            return MultiPoly(self.dim, self.order, [x * c for x in self.components])
        if c.order == 1:
            return self.scale(c.coeffs[0])
        m = self.order * c.order // gcd(self.order, c.order)
        lifted = self.embed(m)
        matrix = c.embed(m).multiplication_matrix()
        R = self.ring
        components = []
        for row in matrix:
            total = R.zero
            for x, p in zip(row, lifted.components):
                if x and p:
                    total += p * x
            components.append(total)
        return MultiPoly(self.dim, m, components)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.order == 1:
                return MultiPoly(self.dim, self.order, [x * other.components[0] for x in self.components])
            if self.order == 1:
                return other * self
            raise NotImplementedError("product of two twisted polynomials")
        return self.scale(other)

    __rmul__ = __mul__

    # ------------------------------------------
    # Calculus
    # ------------------------------------------

    def derivative(self, direction: Sequence[int]) -> "MultiPoly":
        """Directional derivative along ``direction``."""
        gens = self.ring.gens
        components = []
        for p in self.components:
            total = self.ring.zero
            for i, a in enumerate(direction):
                if a and p:
                    total += p.diff(gens[i]) * a
            components.append(total)
        return MultiPoly(self.dim, self.order, components)

    def substitute(self, images: Sequence) -> "MultiPoly":
        """p(images) for ring elements ``images`` (one per variable)."""
        pairs = list(zip(self.ring.gens, images))
        return MultiPoly(self.dim, self.order, [p.compose(pairs) if p else p for p in self.components])

    def shift(self, vector: Sequence) -> "MultiPoly":
        """v -> p(v - vector)."""
        gens = self.ring.gens
        return self.substitute([g - rat(x) for g, x in zip(gens, vector)])

    def reflect(self, center: Sequence) -> "MultiPoly":
        """v -> p(center - v)."""
        gens = self.ring.gens
        return self.substitute([rat(x) - g for g, x in zip(gens, center)])

    def evaluate(self, point: Sequence) -> Cyclo:
        values = [rat(x) for x in point]
        coeffs = [p(*values) if p else QQ(0) for p in self.components]
        return Cyclo(self.order, coeffs)

    # ------------------------------------------
    # Inspection
    # ------------------------------------------

    def degree(self) -> int:
        return max((total_degree(p) for p in self.components), default=-1)

    def is_zero(self) -> bool:
        return not any(self.components)

    def is_rational(self) -> bool:
        return not any(self.components[1:])

    def rational_part(self):
        """The QQ[v] element when the polynomial has rational coefficients."""
        return self.components[0]

    def monomials(self) -> List[Monomial]:
        found = set()
        for p in self.components:
            found.update(p.itermonoms())
        return sorted(found)

    def coefficient(self, monom: Monomial) -> Cyclo:
        return Cyclo(self.order, [p.get(tuple(monom), QQ(0)) for p in self.components])

    def terms(self) -> Dict[Monomial, Cyclo]:
        return {m: self.coefficient(m) for m in self.monomials()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._lift(other)
        return a.components == b.components

    __hash__ = None

    def to_json(self) -> list:
        rows = []
        for monom, coeff in self.terms().items():
            if not coeff.is_zero():
                rows.append({"exponent": list(monom), "coeff": coeff.to_json()})
        return rows

    def __repr__(self) -> str:
        if self.is_rational():
            return f"MultiPoly({self.components[0]})"
        parts = [f"z{self.order}^{j}*({p})" for j, p in enumerate(self.components) if p]
        return f"MultiPoly({' + '.join(parts) or '0'})"


