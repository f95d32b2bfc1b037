"""
Exact evaluators of the integer group determinant.

``direct_determinant`` is the oracle: Bareiss elimination on the |G|x|G|
matrix (a_{gh^-1}). ``factored_determinant`` computes D = A * B^n from the
n x n circulant A and the blocks B(ω^j) over Z[ω], one per coset
representative of <r> in (Z/p)^*.
"""
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from ..exact import CyclotomicInt, QuadField, bareiss_det, cyc_from_poly, laplace_det, quad_embed
from ..exceptions import BadIndex, InternalInconsistency
from ..groups import GroupRingElement, GroupSpec, f_components
from ..logging_config import get_logger

logger = get_logger(__name__)


class DetReport(BaseModel):
    """Factored group determinant: D = A * B^n, B = Π B(ω^j) over coset representatives."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    A: int
    B_blocks: Tuple[CyclotomicInt, ...]
    B: int
    D: int
    group: GroupSpec

    def block_quads(self) -> Optional[List[Any]]:
        """Blocks as QuadInt when n = (p-1)/2, else None."""
        if not self.group.is_half:
            return None
        field = QuadField(self.group.p)
        return [quad_embed(block, field) for block in self.B_blocks]

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "group": self.group.key,
            "A": self.A,
            "B_blocks": [str(block) for block in self.B_blocks],
            "B": self.B,
            "D": self.D,
        }
        quads = self.block_quads()
        if quads is not None:
            data["B_blocks_quad"] = [str(q) for q in quads]
        return data


def _element_index(g: GroupSpec) -> Dict[Tuple[int, int], int]:
    return {(i, j): i * g.n + j for i in range(g.p) for j in range(g.n)}


def group_matrix(e: GroupRingElement, g: GroupSpec) -> List[List[int]]:
    """The matrix (a_{uv^-1}) with rows and columns in (i, j) order of X^i Y^j."""
    p, n = g.p, g.n
    r_pow = g.r_powers
    elements = [(i, j) for i in range(p) for j in range(n)]
    # X^c Y^d has inverse X^(-c r^(-d)) Y^(-d)
    inverses = [((-c * r_pow[(-d) % n]) % p, (-d) % n) for c, d in elements]
    coeffs = e.coeffs
    matrix = []
    for a, b in elements:
        twist = r_pow[b]
        row = []
        for c, d in inverses:
            row.append(coeffs[(a + c * twist) % p][(b + d) % n])
        matrix.append(row)
    return matrix


def direct_determinant(e: GroupRingElement, g: GroupSpec) -> int:
    """det(a_{gh^-1}) by fraction-free elimination."""
    return bareiss_det(group_matrix(e, g))


def circulant_values(e: GroupRingElement) -> List[int]:
    """f_0(1), ..., f_{n-1}(1)."""
    return [sum(e.coeffs[i][j] for i in range(e.p)) for j in range(e.n)]


def circulant_det(values: List[int]) -> int:
    """Z_n circulant determinant with first row values; row k is the right shift by k."""
    n = len(values)
    return bareiss_det([[values[(c - k) % n] for c in range(n)] for k in range(n)])


def circulant_A(e: GroupRingElement, g: GroupSpec) -> int:
    """A = Π_{y^n=1} F(1, y) as the circulant determinant of the f_j(1)."""
    return circulant_det(circulant_values(e))


def block_matrix(e: GroupRingElement, g: GroupSpec, j: int = 1) -> List[List[CyclotomicInt]]:
    """Row i holds f_{(c-i) mod n}(ω^(j r^i)) in column c."""
    p, n = g.p, g.n
    if j % p == 0:
        raise BadIndex(f"block index {j} is divisible by p={p}")
    fs = f_components(e)
    rows = []
    for i, twist in enumerate(g.r_powers):
        point = j * twist % p
        values = [cyc_from_poly(f, p, point) for f in fs]
        rows.append([values[(c - i) % n] for c in range(n)])
    return rows


def _cyc_det(rows: List[List[CyclotomicInt]], p: int) -> CyclotomicInt:
    result = laplace_det(rows, zero=CyclotomicInt.from_int(p, 0), one=CyclotomicInt.from_int(p, 1))
    return result if isinstance(result, CyclotomicInt) else CyclotomicInt.from_int(p, result)


def block_B(e: GroupRingElement, g: GroupSpec, j: int = 1) -> CyclotomicInt:
    """B(ω^j), the determinant of the degree n representation twisted by ω ↦ ω^j."""
    return _cyc_det(block_matrix(e, g, j), g.p)


def ones_row_determinant(e: GroupRingElement, g: GroupSpec, j: int = 1) -> CyclotomicInt:
    """The block matrix with its first row replaced by ones.

    This is the coefficient of t(ω^j) when t(X)(1 + Y + ... + Y^(n-1)) is
    added to e.
    """
    rows = block_matrix(e, g, j)
    rows[0] = [CyclotomicInt.from_int(g.p, 1) for _ in range(g.n)]
    return _cyc_det(rows, g.p)


def factored_determinant(e: GroupRingElement, g: GroupSpec) -> DetReport:
    """D = A * B^n with B the product of the blocks over the coset representatives."""
    A = circulant_A(e, g)
    blocks = tuple(block_B(e, g, j) for j in g.coset_reps)
    product = CyclotomicInt.from_int(g.p, 1)
    for block in blocks:
        product = product * block
    if not product.is_rational_integer():
        logger.error("Block product is not rational", group=g.key, product=str(product))
        raise InternalInconsistency(f"block product {product} is not a rational integer for {g}")
    B = product.rational_value()
    return DetReport(A=A, B_blocks=blocks, B=B, D=A * B ** g.n, group=g)


def determinant_both(e: GroupRingElement, g: GroupSpec) -> Tuple[DetReport, int]:
    """Factored report and direct oracle value; raises if they disagree."""
    report = factored_determinant(e, g)
    direct = direct_determinant(e, g)
    if direct != report.D:
        logger.error("Oracle disagreement", group=g.key, factored=report.D, direct=direct)
        raise InternalInconsistency(f"factored D={report.D} but direct D={direct} for {g}")
    return report, direct


__all__ = [
    "DetReport",
    "bareiss_det",
    "block_B",
    "block_matrix",
    "circulant_A",
    "circulant_det",
    "circulant_values",
    "determinant_both",
    "direct_determinant",
    "factored_determinant",
    "group_matrix",
    "ones_row_determinant",
]
