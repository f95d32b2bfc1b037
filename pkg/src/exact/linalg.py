"""
Exact determinants over ZZ and over Z[ω], and cyclotomic resultants.
"""
from typing import Any, Dict, Sequence

from sympy import Poly, Symbol
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from ..exceptions import OutOfRange

_x = Symbol("x")


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination over ZZ."""
    size = len(matrix)
    if size == 0:
        return 1
    if any(len(row) != size for row in matrix):
        raise ValueError("matrix is not square")
    rows = [[ZZ(int(entry)) for entry in row] for row in matrix]
    return int(DomainMatrix(rows, (size, size), ZZ).det())


def laplace_det(matrix: Sequence[Sequence[Any]], zero: Any = 0, one: Any = 1) -> Any:
    """Determinant over a commutative ring by Laplace expansion with memoized minors.

    Only ring operations are used, so this works for cyclotomic integers
    where division is unavailable. Cost is O(n * 2^n) ring multiplications.
    """
    size = len(matrix)
    if size == 0:
        return one
    full = (1 << size) - 1
    memo: Dict[int, Any] = {full: one}

    def minor(mask: int) -> Any:
        if mask in memo:
            return memo[mask]
        row = matrix[bin(mask).count("1")]
        total = zero
        position = 0
        for col in range(size):
            bit = 1 << col
            if mask & bit:
                continue
            entry = row[col]
            if entry:
                sub = minor(mask | bit)
                if sub:
                    term = entry * sub
                    total = total - term if position & 1 else total + term
            position += 1
        memo[mask] = total
        return total

    return minor(0)


def cyclo_resultant(s: int, n: int) -> int:
    """Res((x^s-1)/(x-1), (x^(n-s)-1)/(x-1)) as an exact integer."""
    if not 1 <= s < n:
        raise OutOfRange(f"cyclo_resultant needs 1 <= s < n, got s={s}, n={n}")
    if s == 1 or n - s == 1:
        return 1
    f = Poly([1] * s, _x, domain=ZZ)
    g = Poly([1] * (n - s), _x, domain=ZZ)
    return int(f.resultant(g))
