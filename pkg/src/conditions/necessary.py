"""
Necessary divisibility and congruence conditions on (A, B, D).
"""
from typing import List, Optional

from pydantic import BaseModel

from ..exact import QuadField, cyc_residue, factorize, quad_embed
from ..groups import GroupSpec
from ..logging_config import get_logger

logger = get_logger(__name__)


class ConditionReport(BaseModel):
    """Outcome of the necessary-condition checks for one determinant."""

    zn_divisibility_ok: bool
    congruence_ok: bool
    p_power_ok: bool
    block_congruence_ok: Optional[bool] = None
    quad_congruence_ok: Optional[bool] = None
    details: List[str] = []

    @property
    def ok(self) -> bool:
        flags = [self.zn_divisibility_ok, self.congruence_ok, self.p_power_ok]
        flags += [flag for flag in (self.block_congruence_ok, self.quad_congruence_ok) if flag is not None]
        return all(flags)


def _required_power(q: int, k: int) -> int:
    """Exponent of q forced on A once q | A, for q^k || n."""
    if q == 2 and k >= 2:
        return k + 2
    return k + 1


def zn_violations(A: int, n: int) -> List[str]:
    """Human-readable failures of the Z_n divisibility rule for A."""
    if A == 0 or n == 1:
        return []
    problems = []
    for q, k in factorize(n).prime_powers:
        if A % q:
            continue
        need = _required_power(q, k)
        if A % q ** need:
            problems.append(f"{q} | A={A} but {q}^{need} does not (n={n})")
    return problems


def zn_divisibility(A: int, n: int) -> bool:
    """True iff A passes q | A => q^(k+1) | A for every q^k || n (2^(k+2) when q = 2, k >= 2)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return not zn_violations(A, n)


def check_values(A: int, B: int, D: int, g: GroupSpec) -> ConditionReport:
    """Integer-level checks: Z_n divisibility of A, B ≡ A^t mod p, p | D => p^(n+1) | D."""
    p, n, t = g.p, g.n, g.t
    details = zn_violations(A, n)
    zn_ok = not details

    congruence_ok = (B - pow(A, t, p)) % p == 0
    if not congruence_ok:
        details.append(f"B={B} is not congruent to A^t={A}^{t} mod {p}")

    p_power_ok = D == 0 or D % p != 0 or D % p ** (n + 1) == 0
    if not p_power_ok:
        details.append(f"{p} | D={D} but {p}^{n + 1} does not")

    return ConditionReport(
        zn_divisibility_ok=zn_ok,
        congruence_ok=congruence_ok,
        p_power_ok=p_power_ok,
        details=details,
    )


def check_necessary(rep) -> ConditionReport:
    """All necessary conditions for a DetReport, including the per-block congruences."""
    g = rep.group
    report = check_values(rep.A, rep.B, rep.D, g)
    details = list(report.details)

    block_ok = all((cyc_residue(block) - rep.A) % g.p == 0 for block in rep.B_blocks)
    if not block_ok:
        details.append("some B(ω^j) is not congruent to A modulo (1-ω)")

    quad_ok = None
    if g.is_half:
        field = QuadField(g.p)
        quad_ok = all((quad_embed(block, field).residue() - rep.A) % g.p == 0 for block in rep.B_blocks)
        if not quad_ok:
            details.append(f"B(ω) - A is not in {g.p}Z + ½({g.p}+√({field.disc}))Z")

    result = report.model_copy(
        update={"block_congruence_ok": block_ok, "quad_congruence_ok": quad_ok, "details": details}
    )
    if not result.ok:
        logger.warning("Necessary condition violated", group=g.key, A=rep.A, B=rep.B, details=details)
    return result
