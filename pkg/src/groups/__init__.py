"""
Metacyclic groups Z_p ⋊_r Z_n and exact arithmetic in their group rings.
"""
import re
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from ..exact.factor import is_probable_prime
from ..exceptions import ElementParseError, NotDivisor, NotPrime, OrderMismatch, OutOfRange
from ..logging_config import get_logger

logger = get_logger(__name__)


class GroupSpec(BaseModel):
    """The group <X, Y | X^p = Y^n = 1, YXY^-1 = X^r> with ord_p(r) = n."""

    model_config = ConfigDict(frozen=True)

    p: int
    r: int
    n: int
    t: int
    coset_reps: Tuple[int, ...]
    name: Optional[str] = None

    @property
    def order(self) -> int:
        return self.p * self.n

    @property
    def key(self) -> str:
        return f"{self.p},{self.r},{self.n}"

    @property
    def label(self) -> str:
        return self.name or self.key

    @property
    def r_powers(self) -> Tuple[int, ...]:
        """r^0, r^1, ..., r^(n-1) modulo p."""
        return tuple(pow(self.r, i, self.p) for i in range(self.n))

    @property
    def is_affine(self) -> bool:
        """n = p - 1, i.e. GA(1,p)."""
        return self.n == self.p - 1

    @property
    def is_half(self) -> bool:
        """n = (p - 1)/2, where B(ω) lies in Q(√(εp))."""
        return 2 * self.n == self.p - 1

    def __str__(self) -> str:
        return f"{self.label} (p={self.p}, r={self.r}, n={self.n})"


def multiplicative_order(r: int, p: int) -> int:
    """Order of r in (Z/p)^*."""
    value, order = r % p, 1
    while value != 1:
        value = value * r % p
        order += 1
        if order > p:
            raise OutOfRange(f"{r} is not a unit modulo {p}")
    return order


def _default_name(p: int, n: int) -> Optional[str]:
    if n == p - 1:
        return f"GA(1,{p})"
    if (p, n) in _SMALL_GROUP_IDS:
        return _SMALL_GROUP_IDS[(p, n)]
    if n == 2:
        return f"D{2 * p}"
    return None


def make_group(p: int, r: int, n: int, name: Optional[str] = None) -> GroupSpec:
    """Validate (p, r, n) and compute t and the canonical coset representatives."""
    if p < 3 or not is_probable_prime(p):
        raise NotPrime(f"p={p} is not an odd prime")
    if not 1 < r < p:
        raise OutOfRange(f"r={r} must satisfy 1 < r < p={p}")
    if n < 1 or (p - 1) % n:
        raise NotDivisor(f"n={n} does not divide p-1={p - 1}")
    order = multiplicative_order(r, p)
    if order != n:
        raise OrderMismatch(f"ord_{p}({r}) = {order}, not {n}")

    subgroup = {pow(r, i, p) for i in range(n)}
    covered = set()
    reps = []
    for j in range(1, p):
        if j in covered:
            continue
        reps.append(j)
        covered.update(j * h % p for h in subgroup)

    return GroupSpec(
        p=p,
        r=r,
        n=n,
        t=(p - 1) // n,
        coset_reps=tuple(reps),
        name=name or _default_name(p, n),
    )


_SMALL_GROUP_IDS: Dict[Tuple[int, int], str] = {
    (7, 3): "SmallGroup(21,1)",
    (11, 5): "SmallGroup(55,1)",
    (13, 6): "SmallGroup(78,1)",
}

# Groups with a complete description of their integer group determinants
CHARACTERIZED: Tuple[Tuple[int, int], ...] = ((5, 4), (7, 6), (7, 3), (11, 5), (13, 6))

KNOWN_GROUPS: Dict[str, Tuple[int, int, int]] = {
    "GA(1,5)": (5, 2, 4),
    "GA(1,7)": (7, 3, 6),
    "SmallGroup(21,1)": (7, 2, 3),
    "SmallGroup(55,1)": (11, 4, 5),
    "SmallGroup(78,1)": (13, 4, 6),
    "D14": (7, 6, 2),
}


def is_characterized(g: GroupSpec) -> bool:
    return (g.p, g.n) in CHARACTERIZED


def parse_group(text: str) -> GroupSpec:
    """Parse "p,r,n" or a known label such as "GA(1,5)"."""
    text = text.strip()
    if text in KNOWN_GROUPS:
        return make_group(*KNOWN_GROUPS[text], name=text)
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 3 or not all(re.fullmatch(r"-?\d+", part) for part in parts):
        raise ElementParseError(f"group must be 'p,r,n' or one of {sorted(KNOWN_GROUPS)}, got {text!r}")
    return make_group(*(int(part) for part in parts))


class GroupRingElement:
    """Σ a_ij X^i Y^j with 0 <= i < p, 0 <= j < n; coeffs[i][j] = a_ij."""

    __slots__ = ("p", "n", "coeffs")

    def __init__(self, p: int, n: int, coeffs: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(a) for a in row) for row in coeffs)
        if len(rows) != p or any(len(row) != n for row in rows):
            raise ValueError(f"coefficient array must be {p}x{n}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", rows)

    def __setattr__(self, name, value):
        raise AttributeError("GroupRingElement is immutable")

    @classmethod
    def zero(cls, g: GroupSpec) -> "GroupRingElement":
        return cls(g.p, g.n, [[0] * g.n for _ in range(g.p)])

    @classmethod
    def from_terms(cls, g: GroupSpec, terms: Mapping[Tuple[int, int], int]) -> "GroupRingElement":
        """Build from {(i, j): a_ij}; exponents are reduced modulo p and n."""
        grid = [[0] * g.n for _ in range(g.p)]
        for (i, j), c in terms.items():
            grid[i % g.p][j % g.n] += c
        return cls(g.p, g.n, grid)

    @classmethod
    def from_flat(cls, g: GroupSpec, values: Sequence[int]) -> "GroupRingElement":
        """Build from a length p*n vector in (i, j) lexicographic order."""
        n = g.n
        return cls(g.p, n, [values[i * n:(i + 1) * n] for i in range(g.p)])

    def flat(self) -> Tuple[int, ...]:
        return tuple(a for row in self.coeffs for a in row)

    def terms(self) -> Iterable[Tuple[int, int, int]]:
        """Nonzero (i, j, a_ij) in (i, j) order."""
        for i, row in enumerate(self.coeffs):
            for j, a in enumerate(row):
                if a:
                    yield i, j, a

    def coefficient(self, i: int, j: int) -> int:
        return self.coeffs[i % self.p][j % self.n]

    @property
    def support(self) -> int:
        return sum(1 for _ in self.terms())

    def _check(self, other: "GroupRingElement") -> None:
        if (self.p, self.n) != (other.p, other.n):
            raise ValueError("elements belong to different group rings")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        return GroupRingElement(
            self.p, self.n, [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        return GroupRingElement(
            self.p, self.n, [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self) -> "GroupRingElement":
        return self.scale(-1)

    def scale(self, k: int) -> "GroupRingElement":
        return GroupRingElement(self.p, self.n, [[k * a for a in row] for row in self.coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"GroupRingElement({format_element(self)!r})"

    def __str__(self) -> str:
        return format_element(self)


def identity(g: GroupSpec) -> GroupRingElement:
    return GroupRingElement.from_terms(g, {(0, 0): 1})


def x_power(g: GroupSpec, i: int, c: int = 1) -> GroupRingElement:
    return GroupRingElement.from_terms(g, {(i, 0): c})


def y_power(g: GroupSpec, j: int, c: int = 1) -> GroupRingElement:
    return GroupRingElement.from_terms(g, {(0, j): c})


def h_element(g: GroupSpec) -> GroupRingElement:
    """h(X,Y) = (1 + X + ... + X^(p-1))(1 + Y + ... + Y^(n-1))."""
    return GroupRingElement(g.p, g.n, [[1] * g.n for _ in range(g.p)])


def add(e1: GroupRingElement, e2: GroupRingElement) -> GroupRingElement:
    return e1 + e2


def sub(e1: GroupRingElement, e2: GroupRingElement) -> GroupRingElement:
    return e1 - e2


def neg(e: GroupRingElement) -> GroupRingElement:
    return -e


def scale(e: GroupRingElement, k: int) -> GroupRingElement:
    return e.scale(k)


def mul(e1: GroupRingElement, e2: GroupRingElement, g: GroupSpec) -> GroupRingElement:
    """Product in Z[G] using Y^j X^k = X^(k r^j) Y^j."""
    e1._check(e2)
    p, n = g.p, g.n
    r_pow = g.r_powers
    grid = [[0] * n for _ in range(p)]
    right = list(e2.terms())
    for i, j, a in e1.terms():
        twist = r_pow[j]
        for k, l, b in right:
            grid[(i + k * twist) % p][(j + l) % n] += a * b
    return GroupRingElement(p, n, grid)


def f_components(e: GroupRingElement) -> List[List[int]]:
    """f_j(x) = Σ_i a_ij x^i as coefficient lists of length p, j = 0..n-1."""
    return [[e.coeffs[i][j] for i in range(e.p)] for j in range(e.n)]


def element_from_components(fs: Sequence[Sequence[int]], g: GroupSpec) -> GroupRingElement:
    """Inverse of f_components; polynomials are reduced modulo x^p - 1."""
    if len(fs) > g.n:
        raise ValueError(f"expected at most {g.n} components, got {len(fs)}")
    terms: Dict[Tuple[int, int], int] = {}
    for j, poly in enumerate(fs):
        for i, c in enumerate(poly):
            if c:
                key = (i % g.p, j)
                terms[key] = terms.get(key, 0) + c
    return GroupRingElement.from_terms(g, terms)


_TERM = re.compile(r"([+-]?)([^+-]+)")
_FACTOR = re.compile(r"(?:(\d+)|([XYxy])(?:\^(\d+))?)")


def parse_element(text: str, g: GroupSpec) -> GroupRingElement:
    """Parse a sum of terms like "2 + Y - 3*X^2*Y^3" into a canonical element."""
    compact = "".join(text.split())
    if not compact:
        raise ElementParseError("empty element text")
    total = GroupRingElement.zero(g)
    position = 0
    for match in _TERM.finditer(compact):
        if match.start() != position:
            raise ElementParseError(f"unexpected text at position {position} in {text!r}")
        position = match.end()
        sign = -1 if match.group(1) == "-" else 1
        coefficient = sign
        monomial = identity(g)
        for factor in match.group(2).split("*"):
            found = _FACTOR.fullmatch(factor)
            if not found:
                raise ElementParseError(f"bad factor {factor!r} in {text!r}")
            if found.group(1) is not None:
                coefficient *= int(found.group(1))
                continue
            exponent = int(found.group(3)) if found.group(3) is not None else 1
            generator = x_power(g, exponent) if found.group(2) in "Xx" else y_power(g, exponent)
            monomial = mul(monomial, generator, g)
        total = total + monomial.scale(coefficient)
    if position != len(compact):
        raise ElementParseError(f"trailing text in {text!r}")
    return total


def _monomial_text(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("X" if i == 1 else f"X^{i}")
    if j:
        parts.append("Y" if j == 1 else f"Y^{j}")
    return "*".join(parts)


def format_element(e: GroupRingElement) -> str:
    """Canonical text: terms in (i, j) order, each written c*X^i*Y^j."""
    pieces = []
    for i, j, a in e.terms():
        monomial = _monomial_text(i, j)
        body = f"{abs(a)}*{monomial}" if monomial else str(abs(a))
        if not pieces:
            pieces.append(body if a > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if a > 0 else f"- {body}")
    return " ".join(pieces) if pieces else "0"


__all__ = [
    "GroupSpec",
    "GroupRingElement",
    "CHARACTERIZED",
    "KNOWN_GROUPS",
    "add",
    "element_from_components",
    "f_components",
    "format_element",
    "h_element",
    "identity",
    "is_characterized",
    "make_group",
    "mul",
    "multiplicative_order",
    "neg",
    "parse_element",
    "parse_group",
    "scale",
    "sub",
    "x_power",
    "y_power",
]
