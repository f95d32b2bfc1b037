"""
Quadratic integers in Q(√(εp)) on the integral basis 1, θ0 = (1+√(εp))/2.
"""
from __future__ import annotations

import math
from typing import Tuple

from sympy.ntheory import legendre_symbol

from ..exceptions import InternalInconsistency, NotInSubfield, NotPrime, PrimeMismatch, WrongShape
from .cyclotomic import CyclotomicInt, cyc_from_poly
from .factor import is_probable_prime


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    return int(legendre_symbol(a % p, p))


def smallest_nonresidue(p: int) -> int:
    """Smallest quadratic non-residue modulo the odd prime p."""
    for candidate in range(2, p):
        if legendre(candidate, p) == -1:
            return candidate
    raise NotPrime(f"{p} has no quadratic non-residue")


class QuadField:
    """The field Q(√(εp)) with ε = +1 if p ≡ 1 mod 4, else -1."""

    __slots__ = ("p", "eps")

    def __init__(self, p: int):
        if p < 3 or not is_probable_prime(p):
            raise NotPrime(f"{p} is not an odd prime")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "eps", 1 if p % 4 == 1 else -1)

    def __setattr__(self, name, value):
        raise AttributeError("QuadField is immutable")

    @property
    def disc(self) -> int:
        """εp, which is always 1 mod 4."""
        return self.eps * self.p

    @property
    def theta_square_offset(self) -> int:
        """k with θ0² = θ0 + k."""
        return (self.disc - 1) // 4

    @property
    def is_real(self) -> bool:
        return self.eps == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, QuadField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("QuadField", self.p))

    def __repr__(self) -> str:
        return f"QuadField({self.p})"


class QuadInt:
    """a + b·θ0 in the maximal order of Q(√(εp))."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: QuadField, a: int, b: int = 0):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("QuadInt is immutable")

    @classmethod
    def from_int(cls, field: QuadField, value: int) -> QuadInt:
        return cls(field, value, 0)

    @classmethod
    def theta(cls, field: QuadField) -> QuadInt:
        return cls(field, 0, 1)

    @classmethod
    def sqrt_disc(cls, field: QuadField) -> QuadInt:
        """√(εp) = 2θ0 - 1."""
        return cls(field, -1, 2)

    def _coerce(self, other) -> QuadInt:
        if isinstance(other, QuadInt):
            if other.field != self.field:
                raise PrimeMismatch(f"cannot combine {self.field} with {other.field}")
            return other
        if isinstance(other, int):
            return QuadInt(self.field, other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadInt(self.field, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadInt(self.field, self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self) -> QuadInt:
        return QuadInt(self.field, -self.a, -self.b)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        k = self.field.theta_square_offset
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return QuadInt(self.field, a1 * a2 + k * b1 * b2, a1 * b2 + a2 * b1 + b1 * b2)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> QuadInt:
        if exponent < 0:
            raise ValueError("negative powers need a unit inverse, use conj")
        result = QuadInt(self.field, 1, 0)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadInt):
            return self.field == other.field and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def conj(self) -> QuadInt:
        """Galois conjugate, θ0 ↦ 1 - θ0."""
        return QuadInt(self.field, self.a + self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a + self.a * self.b - self.field.theta_square_offset * self.b * self.b

    def trace(self) -> int:
        return 2 * self.a + self.b

    def surd_form(self) -> Tuple[int, int]:
        """(a2, b2) with self = (a2 + b2·√(εp))/2."""
        return 2 * self.a + self.b, self.b

    def residue(self) -> int:
        """Image in F_p modulo the ramified prime (√(εp)), where θ0 ↦ 1/2."""
        p = self.field.p
        return (2 * self.a + self.b) * pow(2, -1, p) % p

    def approx(self) -> Tuple[float, float]:
        """Both real embeddings (real part, imaginary part for ε = -1) as floats."""
        root = math.sqrt(self.field.p)
        if self.field.is_real:
            return self.a + self.b * (1 + root) / 2, self.a + self.b * (1 - root) / 2
        return self.a + self.b / 2, self.b * root / 2

    def __repr__(self) -> str:
        return f"QuadInt({self.field.p}, a={self.a}, b={self.b})"

    def __str__(self) -> str:
        return f"{self.a} + {self.b}*θ0({self.field.p},{self.field.eps})"


def quad_add(x: QuadInt, y: QuadInt) -> QuadInt:
    return x + y


def quad_sub(x: QuadInt, y: QuadInt) -> QuadInt:
    return x - y


def quad_mul(x: QuadInt, y: QuadInt) -> QuadInt:
    return x * y


def quad_neg(x: QuadInt) -> QuadInt:
    return -x


def quad_conj(x: QuadInt) -> QuadInt:
    return x.conj()


def quad_norm(x: QuadInt) -> int:
    return x.norm()


def quad_trace(x: QuadInt) -> int:
    return x.trace()


def quad_from_surd(field: QuadField, a2: int, b2: int) -> QuadInt:
    """(a2 + b2·√(εp))/2, which must be integral."""
    if (a2 - b2) % 2:
        raise NotInSubfield(f"({a2} + {b2}√{field.disc})/2 is not an algebraic integer")
    return QuadInt(field, (a2 - b2) // 2, b2)


def quad_residue(x: QuadInt) -> int:
    return x.residue()


def quad_embed(x: CyclotomicInt, field: QuadField) -> QuadInt:
    """Identify an element of Z[ω] fixed by the squares with a QuadInt.

    On the basis ω, ..., ω^{p-1} the element is constant on residues and on
    non-residues; the residue period sums to θ0 - 1, the other to -θ0.
    """
    p = field.p
    if x.p != p:
        raise PrimeMismatch(f"Z[ω_{x.p}] element cannot embed into {field}")
    normal = x.normal_coefficients()
    on_residues = set()
    on_nonresidues = set()
    for k in range(1, p):
        (on_residues if legendre(k, p) == 1 else on_nonresidues).add(normal[k - 1])
    if len(on_residues) != 1 or len(on_nonresidues) != 1:
        raise NotInSubfield(f"{x} is not fixed by ω ↦ ω^u for squares u mod {p}")
    d_res = on_residues.pop()
    d_non = on_nonresidues.pop()
    return QuadInt(field, -d_res, d_res - d_non)


def quad_to_cyclotomic(x: QuadInt) -> CyclotomicInt:
    """Inverse of quad_embed: θ0 = 1 + Σ_{u square} ω^u."""
    p = x.field.p
    period = [0] * p
    for k in range(1, p):
        if legendre(k, p) == 1:
            period[k] = 1
    theta = cyc_from_poly(period, p) + 1
    return theta * x.b + x.a


def gauss_sum(g) -> Tuple[CyclotomicInt, QuadInt]:
    """Σ_i ω^{r^i} over i < n for n = (p-1)/2, as a cyclotomic and a quadratic integer."""
    p, r, n = g.p, g.r, g.n
    if 2 * n != p - 1:
        raise WrongShape(f"gauss_sum needs n = (p-1)/2, got p={p}, n={n}")
    poly = [0] * p
    for i in range(n):
        poly[pow(r, i, p)] += 1
    cyc = cyc_from_poly(poly, p)
    field = QuadField(p)
    quad = quad_embed(cyc, field)
    if quad != QuadInt(field, -1, 1):
        raise InternalInconsistency(f"Gauss sum for p={p} evaluated to {quad}")
    return cyc, quad


def fundamental_unit(field: QuadField, max_terms: int = 10_000) -> QuadInt:
    """Fundamental unit > 1 of a real quadratic field, from the continued fraction of θ0."""
    if not field.is_real:
        raise WrongShape(f"{field} is imaginary; its unit group is finite")
    d = field.disc
    root = math.isqrt(d)
    # θ0 = (P + √d) / Q
    P, Q = 1, 2
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    for _ in range(max_terms):
        term = (P + root) // Q
        h_prev, h = h, term * h + h_prev
        k_prev, k = k, term * k + k_prev
        candidate = QuadInt(field, h, -k)
        if abs(candidate.norm()) == 1:
            for unit in (candidate, -candidate, candidate.conj(), -candidate.conj()):
                if unit.approx()[0] > 1:
                    return unit
        P = term * Q - P
        Q = (d - P * P) // Q
        if Q <= 0:
            raise InternalInconsistency(f"continued fraction for {field} lost reduction")
    raise InternalInconsistency(f"no unit found for {field} in {max_terms} terms")
