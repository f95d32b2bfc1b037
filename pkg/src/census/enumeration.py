"""
Cursor order over bounded group ring elements.

Elements are ordered by support size, then by the positions of their
nonzero coefficients (combinations in lexicographic order), then by the
values on those positions, each running -c..-1, 1..c. A cursor is the
rank in this order, so any block can be started without walking the
ones before it.
"""
from math import comb
from typing import Iterator, Optional, Tuple


def support_count(positions: int, coeff_bound: int, k: int) -> int:
    """Number of elements with exactly k nonzero coefficients."""
    if k == 0:
        return 1
    return comb(positions, k) * (2 * coeff_bound) ** k


def total_cursors(positions: int, coeff_bound: int, support_bound: int,
                  max_elements: Optional[int] = None) -> int:
    top = min(support_bound, positions) if coeff_bound else 0
    total = sum(support_count(positions, coeff_bound, k) for k in range(top + 1))
    if max_elements is not None:
        total = min(total, max_elements)
    return total


def unrank_combination(positions: int, k: int, rank: int) -> Tuple[int, ...]:
    """The rank-th k-subset of range(positions) in lexicographic order."""
    combo = []
    x = 0
    for slot in range(k):
        while True:
            below = comb(positions - x - 1, k - slot - 1)
            if rank < below:
                break
            rank -= below
            x += 1
        combo.append(x)
        x += 1
    return tuple(combo)


def _digit_value(digit: int, coeff_bound: int) -> int:
    return digit - coeff_bound if digit < coeff_bound else digit - coeff_bound + 1


def unrank(cursor: int, positions: int, coeff_bound: int) -> Tuple[int, ...]:
    """Flat coefficient vector at the given cursor."""
    if cursor < 0:
        raise ValueError(f"cursor must be non-negative, got {cursor}")
    k = 0
    while True:
        count = support_count(positions, coeff_bound, k)
        if cursor < count:
            break
        cursor -= count
        k += 1
        if k > positions or not coeff_bound:
            raise ValueError("cursor lies beyond the enumeration")
    flat = [0] * positions
    if k == 0:
        return tuple(flat)
    width = (2 * coeff_bound) ** k
    combo = unrank_combination(positions, k, cursor // width)
    value_rank = cursor % width
    digits = []
    for _ in range(k):
        value_rank, digit = divmod(value_rank, 2 * coeff_bound)
        digits.append(digit)
    # first position is the most significant digit
    for position, digit in zip(combo, reversed(digits)):
        flat[position] = _digit_value(digit, coeff_bound)
    return tuple(flat)


def iter_cursors(positions: int, coeff_bound: int, start: int, stop: int) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    for cursor in range(start, stop):
        yield cursor, unrank(cursor, positions, coeff_bound)


def blocks(start: int, total: int, block_size: int) -> Iterator[Tuple[int, int]]:
    """Contiguous [lo, hi) cursor ranges covering [start, total)."""
    lo = start
    while lo < total:
        hi = min(lo + block_size, total)
        yield lo, hi
        lo = hi
