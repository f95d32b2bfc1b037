"""
Cyclotomic integers Z[ω] for a prime p, reduced modulo Φ_p.
"""
from __future__ import annotations

from typing import Iterable, Sequence, Tuple, Union

from ..exceptions import BadIndex, NotInSubfield, PrimeMismatch


class CyclotomicInt:
    """Element Σ c_k ω^k, 0 <= k <= p-2, of Z[ω] with ω a primitive pth root of unity."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[int]):
        values = tuple(coeffs)
        if len(values) < p - 1:
            values = values + (0,) * (p - 1 - len(values))
        elif len(values) > p - 1:
            values = _reduce(p, values)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", values)

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicInt is immutable")

    @classmethod
    def from_int(cls, p: int, value: int) -> CyclotomicInt:
        return cls(p, (value,))

    @classmethod
    def omega(cls, p: int, k: int = 1) -> CyclotomicInt:
        """ω^k."""
        full = [0] * p
        full[k % p] = 1
        return cls(p, _reduce(p, full))

    def _coerce(self, other: Union[CyclotomicInt, int]) -> CyclotomicInt:
        if isinstance(other, CyclotomicInt):
            if other.p != self.p:
                raise PrimeMismatch(f"cannot combine Z[ω_{self.p}] with Z[ω_{other.p}]")
            return other
        if isinstance(other, int):
            return CyclotomicInt.from_int(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt(self.p, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt(self.p, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self) -> CyclotomicInt:
        return CyclotomicInt(self.p, (-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInt(self.p, (a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        product = [0] * p
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    product[(i + j) % p] += a * b
        return CyclotomicInt(p, _reduce(p, product))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> CyclotomicInt:
        if exponent < 0:
            raise ValueError("negative powers are not defined in Z[ω]")
        result = CyclotomicInt.from_int(self.p, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.is_rational_integer() and self.coeffs[0] == other
        if isinstance(other, CyclotomicInt):
            return self.p == other.p and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> int:
        """The integer value of a rational element."""
        if not self.is_rational_integer():
            raise NotInSubfield(f"{self} is not a rational integer")
        return self.coeffs[0]

    def normal_coefficients(self) -> Tuple[int, ...]:
        """Coefficients d_1..d_{p-1} on the integral basis ω, ω², ..., ω^{p-1}."""
        c0 = self.coeffs[0]
        return tuple(c - c0 for c in self.coeffs[1:]) + (-c0,)

    def __repr__(self) -> str:
        return f"CyclotomicInt({self.p}, {list(self.coeffs)})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                power = "ω" if k == 1 else f"ω^{k}"
                body = power if abs(c) == 1 else f"{abs(c)}*{power}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(terms) if terms else "0"


def _reduce(p: int, values: Sequence[int]) -> Tuple[int, ...]:
    """Reduce a coefficient list on 1..x^(len-1) modulo x^p - 1 and Φ_p."""
    full = [0] * p
    for k, c in enumerate(values):
        full[k % p] += c
    top = full[p - 1]
    return tuple(c - top for c in full[: p - 1])


def cyc_add(x: CyclotomicInt, y: CyclotomicInt) -> CyclotomicInt:
    return x + y


def cyc_sub(x: CyclotomicInt, y: CyclotomicInt) -> CyclotomicInt:
    return x - y


def cyc_mul(x: CyclotomicInt, y: CyclotomicInt) -> CyclotomicInt:
    return x * y


def cyc_neg(x: CyclotomicInt) -> CyclotomicInt:
    return -x


def cyc_pow(x: CyclotomicInt, exponent: int) -> CyclotomicInt:
    return x ** exponent


def is_rational_integer(x: CyclotomicInt) -> bool:
    return x.is_rational_integer()


def conjugate(x: CyclotomicInt, j: int) -> CyclotomicInt:
    """Image of x under the automorphism ω ↦ ω^j."""
    p = x.p
    if j % p == 0:
        raise BadIndex(f"conjugation index {j} is divisible by p={p}")
    full = [0] * p
    for k, c in enumerate(x.coeffs):
        full[(k * j) % p] += c
    return CyclotomicInt(p, _reduce(p, full))


def cyc_from_poly(poly: Sequence[int], p: int, j: int = 1) -> CyclotomicInt:
    """Evaluate the integer polynomial Σ poly[i] x^i at x = ω^j."""
    full = [0] * p
    for i, c in enumerate(poly):
        if c:
            full[(i * j) % p] += c
    return CyclotomicInt(p, _reduce(p, full))


def cyc_residue(x: CyclotomicInt) -> int:
    """Image in F_p under ω ↦ 1, i.e. x modulo the prime (1-ω)."""
    return sum(x.coeffs) % x.p
