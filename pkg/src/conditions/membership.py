"""
Achievability deciders built on the published characterizations.

Every decider enumerates the decompositions D = m * c^n allowed by the
factorization of D and searches for a B with the right congruence:
integers b ≡ m (mod p) with c = b for GA(1,p), quadratic integers
b ≡ m (mod √(εp)) with N(b) = c when n = (p-1)/2.
"""
import math
from enum import Enum
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from ..config import settings
from ..exact import QuadField, QuadInt, divisors_with_power, fundamental_unit
from ..exceptions import UnsupportedGroup, ZeroInput
from ..groups import GroupSpec, is_characterized, make_group
from ..logging_config import get_logger
from .necessary import zn_divisibility

logger = get_logger(__name__)


class DecisionStatus(str, Enum):
    ACHIEVABLE = "Achievable"
    NOT_ACHIEVABLE = "NotAchievable"
    UNKNOWN = "Unknown"


EXIT_CODES = {
    DecisionStatus.ACHIEVABLE: 0,
    DecisionStatus.NOT_ACHIEVABLE: 1,
    DecisionStatus.UNKNOWN: 2,
}


class Witness(BaseModel):
    """D = m * B^n with B = b (an integer) or B = N(b) (b a QuadInt)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    m: int
    b: Any
    ell: Optional[int] = None
    alpha: Optional[int] = None
    beta: Optional[int] = None

    @property
    def is_quadratic(self) -> bool:
        return isinstance(self.b, QuadInt)

    @property
    def B(self) -> int:
        return self.b.norm() if self.is_quadratic else self.b

    def value(self, n: int) -> int:
        return self.m * self.B ** n

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"m": self.m, "B": self.B}
        if self.is_quadratic:
            data.update(b=str(self.b), alpha=self.alpha, beta=self.beta)
        else:
            data.update(b=self.b, ell=self.ell)
        return data


class MembershipDecision(BaseModel):
    """Whether D is an integer group determinant of the group."""

    model_config = ConfigDict(frozen=True)

    status: DecisionStatus
    value: int
    group: str
    witness: Optional[Witness] = None
    reason: str

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "value": self.value,
            "group": self.group,
            "witness": self.witness.to_dict() if self.witness else None,
            "reason": self.reason,
        }


class UnitTable:
    """Fundamental units of real quadratic fields, computed on first use and cached per prime."""

    def __init__(self, primes: Tuple[int, ...] = ()):
        self._units: Dict[int, QuadInt] = {}
        for p in primes:
            self.get(QuadField(p))

    def get(self, field: QuadField) -> QuadInt:
        unit = self._units.get(field.p)
        if unit is None:
            unit = fundamental_unit(field)
            if abs(unit.norm()) != 1:
                raise ValueError(f"fundamental unit {unit} of {field} has norm {unit.norm()}")
            logger.debug("Fundamental unit computed", p=field.p, unit=str(unit), norm=unit.norm())
            self._units[field.p] = unit
        return unit


def _require_nonzero(D: int) -> None:
    if D == 0:
        raise ZeroInput("0 is not covered by the characterizations")


def _decision(status: DecisionStatus, D: int, g: GroupSpec, reason: str,
              witness: Optional[Witness] = None) -> MembershipDecision:
    return MembershipDecision(status=status, value=D, group=g.key, witness=witness, reason=reason)


# GA(1,p): D = m * b^(p-1), b ≡ m mod p


def _affine_witnesses(D: int, p: int, n: int) -> Iterator[Witness]:
    """All (m, b) with D = m * b^n and b ≡ m mod p, smallest |b| first."""
    for c in divisors_with_power(D, n):
        for b in (c, -c):
            m = D // b ** n
            if (b - m) % p == 0:
                yield Witness(m=m, b=b, ell=(b - m) // p)


def _decide_affine(D: int, g: GroupSpec, proven: Callable[[int], bool],
                   necessary: Callable[[int], bool], rule: str) -> MembershipDecision:
    _require_nonzero(D)
    fallback = None
    congruent = False
    for witness in _affine_witnesses(D, g.p, g.n):
        congruent = True
        if proven(witness.m):
            return _decision(
                DecisionStatus.ACHIEVABLE, D, g,
                f"D = m(m+{g.p}ℓ)^{g.n} with m={witness.m}, ℓ={witness.ell}", witness,
            )
        if fallback is None and necessary(witness.m):
            fallback = witness
    if fallback is not None:
        return _decision(
            DecisionStatus.UNKNOWN, D, g,
            f"m={fallback.m} passes the Z_{g.n} conditions but lies outside the proven set", fallback,
        )
    if congruent:
        return _decision(DecisionStatus.NOT_ACHIEVABLE, D, g, f"every decomposition has m violating {rule}")
    return _decision(
        DecisionStatus.NOT_ACHIEVABLE, D, g, f"no decomposition D = m*b^{g.n} with b ≡ m mod {g.p}"
    )


def _characterized_affine(D: int, p: int, r: int) -> MembershipDecision:
    g = make_group(p, r, p - 1)
    n = g.n
    rule = "m odd or 2^4 | m" if n == 4 else "m odd or 4 | m, and 3 ∤ m or 9 | m"
    admissible = lambda m: zn_divisibility(m, n)  # noqa: E731
    return _decide_affine(D, g, admissible, admissible, rule)


def member_ga5(D: int) -> MembershipDecision:
    """D = m(m+5ℓ)^4 with m a Z_4 determinant (m odd or 2^4 | m)."""
    return _characterized_affine(D, 5, 2)


def member_ga7(D: int) -> MembershipDecision:
    """D = m(m+7ℓ)^6 with m odd or 4 | m, and 3 ∤ m or 9 | m."""
    return _characterized_affine(D, 7, 3)


# n = (p-1)/2: D = m * N(b)^n, b ≡ m mod √(εp)


def _imaginary_solutions(field: QuadField, c: int) -> Iterator[QuadInt]:
    """All b with N(b) = c > 0 in an imaginary field; N(x + yθ0) = (x + y/2)^2 + p*y^2/4."""
    if c <= 0:
        return
    p = field.p
    y_max = math.isqrt(4 * c // p) + 1
    s = 2 * math.isqrt(c) + 2
    for y in range(-y_max, y_max + 1):
        for x in range((-s - y) // 2 - 1, (s - y) // 2 + 2):
            b = QuadInt(field, x, y)
            if b.norm() == c:
                yield b


def _real_representatives(field: QuadField, c_abs: int, unit: QuadInt) -> Iterator[QuadInt]:
    """Elements with |N(b)| = c_abs in the box |σ1| < ε√c, |σ2| <= √c; every associate class meets it."""
    root_d = math.sqrt(field.p)
    eps = unit.approx()[0]
    reach = (eps + 1) * math.sqrt(c_abs)
    y_max = int(reach / root_d) + 2
    s = int(reach) + 2
    for y in range(-y_max, y_max + 1):
        for x in range((-s - y) // 2 - 1, (s - y) // 2 + 2):
            b = QuadInt(field, x, y)
            if abs(b.norm()) == c_abs:
                yield b


def _residue_period(unit: QuadInt) -> int:
    """Length after which (±unit^k) residues and norm signs repeat."""
    p = unit.field.p
    base = unit.residue()
    order, value = 1, base
    while value != 1:
        value = value * base % p
        order += 1
    return order * 2 // math.gcd(order, 2)


class _QuadSearch:
    """Search for b ≡ m mod √(εp) with N(b) = c."""

    def __init__(self, field: QuadField, orbit_bound: int):
        self.field = field
        self.orbit_bound = orbit_bound
        self.truncated = False
        if field.is_real:
            self.unit = unit_table.get(field)
            self.period = _residue_period(self.unit)

    def find(self, m: int, c: int) -> Optional[QuadInt]:
        p = self.field.p
        target = m % p
        if not self.field.is_real:
            for b in _imaginary_solutions(self.field, c):
                if b.residue() == target:
                    return b
            return None
        steps = min(self.period, self.orbit_bound)
        if steps < self.period:
            self.truncated = True
        for rep in _real_representatives(self.field, abs(c), self.unit):
            current = rep
            for _ in range(steps):
                for b in (current, -current):
                    if b.norm() == c and b.residue() == target:
                        return b
                current = current * self.unit
        return None


def _norm_values(D: int, n: int, real: bool) -> Iterator[Tuple[int, int]]:
    """(m, c) with D = m * c^n; c > 0 for imaginary fields, both signs for real ones."""
    for c_abs in divisors_with_power(D, n):
        for c in ((c_abs, -c_abs) if real else (c_abs,)):
            yield D // c ** n, c


def _quad_witness(field: QuadField, m: int, b: QuadInt) -> Witness:
    diff = b - m
    beta = diff.b
    alpha = (diff.a - beta * (field.p - 1) // 2) // field.p
    return Witness(m=m, b=b, alpha=alpha, beta=beta)


def _decide_half(D: int, g: GroupSpec, proven: Callable[[int], bool],
                 necessary: Callable[[int], bool], rule: str,
                 orbit_bound: Optional[int] = None) -> MembershipDecision:
    _require_nonzero(D)
    field = QuadField(g.p)
    search = _QuadSearch(field, orbit_bound or settings.orbit_scan_bound)
    fallback = None
    rejected: List[int] = []
    for m, c in _norm_values(D, g.n, field.is_real):
        if not necessary(m):
            rejected.append(m)
            continue
        if not proven(m) and fallback is not None:
            continue
        b = search.find(m, c)
        if b is None:
            continue
        witness = _quad_witness(field, m, b)
        if proven(m):
            return _decision(
                DecisionStatus.ACHIEVABLE, D, g, f"D = m*N(b)^{g.n} with m={m}, b={b}", witness
            )
        fallback = witness
    if fallback is not None:
        return _decision(
            DecisionStatus.UNKNOWN, D, g,
            f"m={fallback.m} passes the Z_{g.n} conditions but lies outside the proven set", fallback,
        )
    if search.truncated:
        logger.info("Orbit scan truncated", group=g.key, value=D, bound=search.orbit_bound)
        return _decision(
            DecisionStatus.UNKNOWN, D, g, f"unit orbit scan exceeded the bound {search.orbit_bound}"
        )
    if rejected:
        return _decision(
            DecisionStatus.NOT_ACHIEVABLE, D, g,
            f"no admissible decomposition; m in {sorted(set(rejected))[:5]} violate {rule}",
        )
    return _decision(
        DecisionStatus.NOT_ACHIEVABLE, D, g,
        f"no b ≡ m mod √({field.disc}) with N(b)^{g.n} * m = D",
    )


_QUAD_RULES = {
    (7, 3): "3 ∤ m or 9 | m",
    (11, 5): "5 ∤ m or 25 | m",
    (13, 6): "m odd or 4 | m, and 3 ∤ m or 9 | m",
}


def member_quad(D: int, g: GroupSpec, orbit_bound: Optional[int] = None) -> MembershipDecision:
    """D = m * N(m + αp + ½(p+√(εp))β)^n with m a Z_n determinant, for the three characterized half groups."""
    key = (g.p, g.n)
    if key not in _QUAD_RULES:
        raise UnsupportedGroup(f"member_quad has no characterization for {g}")
    admissible = lambda m: zn_divisibility(m, g.n)  # noqa: E731
    return _decide_half(D, g, admissible, admissible, _QUAD_RULES[key], orbit_bound)


def member_general(D: int, g: GroupSpec) -> MembershipDecision:
    """Proven-sufficient decisions for GA(1,p) and n = (p-1)/2 beyond the characterized groups."""
    n = g.n
    necessary = lambda m: zn_divisibility(m, n)  # noqa: E731
    if g.is_affine:
        proven = lambda m: math.gcd(m, n) == 1 or m % (n * n) == 0  # noqa: E731
        return _decide_affine(D, g, proven, necessary, f"the Z_{n} divisibility conditions")
    if g.is_half:
        proven = lambda m: math.gcd(m, n) == 1  # noqa: E731
        return _decide_half(D, g, proven, necessary, f"the Z_{n} divisibility conditions")
    raise UnsupportedGroup(f"no achievability decider for {g}; only necessary conditions apply")


def decide(D: int, g: GroupSpec) -> MembershipDecision:
    """Route D to the decider for g."""
    if (g.p, g.n) == (5, 4):
        decision = member_ga5(D)
    elif (g.p, g.n) == (7, 6):
        decision = member_ga7(D)
    elif is_characterized(g):
        decision = member_quad(D, g)
    else:
        decision = member_general(D, g)
    if decision.group != g.key:
        decision = decision.model_copy(update={"group": g.key})
    return decision


# Global unit table; units are computed and norm-checked on first lookup
unit_table = UnitTable()
