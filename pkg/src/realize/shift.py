"""
Shifts F = G + t(X)(1 + Y + ... + Y^(n-1)) + m*h(X,Y) of a base element G.

A and every B(ω^j) of F are affine in t and m, so both can be predicted
from G alone: A from G(1,y), the blocks from B_G and the ones-row
determinant α of G.
"""
from typing import List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from ..detengine import block_B, circulant_det, circulant_values, ones_row_determinant
from ..exact import CyclotomicInt, conjugate, cyc_from_poly
from ..groups import GroupRingElement, GroupSpec, element_from_components, f_components, mul, y_power


class ShiftSpec(BaseModel):
    """F = G_base + t(X)(1 + Y + ... + Y^(n-1)) + m*h(X,Y)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    G_base: GroupRingElement
    t_poly: Tuple[int, ...] = ()
    m: int = 0

    @field_validator("t_poly", mode="before")
    @classmethod
    def _as_tuple(cls, value: Sequence[int]) -> Tuple[int, ...]:
        return tuple(int(c) for c in value)


def _reduced_t(t_poly: Sequence[int], p: int) -> List[int]:
    """t modulo x^p - 1 as a length p list."""
    t = [0] * p
    for i, c in enumerate(t_poly):
        t[i % p] += c
    return t


def shift_construct(spec: ShiftSpec, g: GroupSpec) -> GroupRingElement:
    """Add t(X) + m(1 + X + ... + X^(p-1)) to every component f_j of the base."""
    t = _reduced_t(spec.t_poly, g.p)
    fs = f_components(spec.G_base)
    shifted = [[a + c + spec.m for a, c in zip(f, t)] for f in fs]
    return element_from_components(shifted, g)


def units_product(e: GroupRingElement, g: GroupSpec) -> int:
    """Π_{y^n=1, y≠1} e(1, y), read off two circulant determinants."""
    values = circulant_values(e)
    bumped = [v + 1 for v in values]
    # Adding 1 to every f_j(1) changes only the y = 1 factor, by n
    difference = circulant_det(bumped) - circulant_det(values)
    return difference // g.n


def shift_predicted_A(spec: ShiftSpec, g: GroupSpec) -> int:
    """A = (G(1,1) + n t(1) + m n p) * Π_{y≠1} G(1,y)."""
    t_at_one = sum(spec.t_poly)
    g_at_one = sum(circulant_values(spec.G_base))
    return (g_at_one + g.n * t_at_one + spec.m * g.n * g.p) * units_product(spec.G_base, g)


def shift_predicted_blocks(spec: ShiftSpec, g: GroupSpec) -> Tuple[CyclotomicInt, ...]:
    """B_F(ω^j) = B_G(ω^j) + Σ_i α(ω^(j r^i)) t(ω^(j r^i)) for each coset representative j."""
    p = g.p
    t = _reduced_t(spec.t_poly, p)
    blocks = []
    for j in g.coset_reps:
        total = block_B(spec.G_base, g, j)
        if any(t):
            alpha = ones_row_determinant(spec.G_base, g, j)
            for twist in g.r_powers:
                total = total + conjugate(alpha, twist) * cyc_from_poly(t, p, j * twist % p)
        blocks.append(total)
    return tuple(blocks)


def neg_y(e: GroupRingElement, g: GroupSpec) -> GroupRingElement:
    """e * (-Y): A and every block change sign, D becomes -D."""
    return mul(e, y_power(g, 1, -1), g)


__all__ = [
    "ShiftSpec",
    "neg_y",
    "shift_construct",
    "shift_predicted_A",
    "shift_predicted_blocks",
    "units_product",
]
