"""
Golden values the library must reproduce exactly.
"""
from math import gcd
from typing import Callable, List, Tuple

from pydantic import BaseModel

from .conditions import DecisionStatus, member_ga5
from .detengine import block_B, direct_determinant, factored_determinant, ones_row_determinant
from .exact import QuadField, cyc_from_poly, cyclo_resultant, gauss_sum, quad_embed, quad_from_surd
from .groups import KNOWN_GROUPS, identity, make_group, parse_group
from .logging_config import get_logger
from .realize import TAG_GROUPS, ConstructionTag, construction_base, neg_y, realize_class

logger = get_logger(__name__)


class GoldenResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""


def _all_groups():
    return [parse_group(label) for label in KNOWN_GROUPS]


def _identity_and_neg_y() -> str:
    for g in _all_groups():
        one = identity(g)
        if factored_determinant(one, g).D != 1 or direct_determinant(one, g) != 1:
            return f"identity on {g.label}"
        minus_y = neg_y(one, g)
        if factored_determinant(minus_y, g).D != -1 or direct_determinant(minus_y, g) != -1:
            return f"-Y on {g.label}"
    return ""


def _p_power() -> str:
    for p, r in ((5, 2), (7, 3)):
        g = make_group(p, r, p - 1)
        D = realize_class(g, ConstructionTag.P_POWER).report.D
        if D != p ** p:
            return f"GA(1,{p}) gave {D}"
    return ""


def _base_block(tag: ConstructionTag, a2: int, b2: int) -> Callable[[], str]:
    def check() -> str:
        g = make_group(*TAG_GROUPS[tag])
        value = block_B(construction_base(tag, g), g)
        if g.is_affine:
            expected = a2 // 2
            return "" if value == expected else f"B_G = {value}"
        quad = quad_embed(value, QuadField(g.p))
        expected = quad_from_surd(QuadField(g.p), a2, b2)
        return "" if quad == expected else f"B_G = {quad}, expected {expected}"
    return check


def _alpha(tag: ConstructionTag, poly: List[int]) -> Callable[[], str]:
    def check() -> str:
        g = make_group(*TAG_GROUPS[tag])
        value = ones_row_determinant(construction_base(tag, g), g)
        expected = cyc_from_poly(poly, g.p)
        return "" if value == expected else f"α(ω) = {value}"
    return check


def _gauss_sums() -> str:
    for key in ((7, 2, 3), (11, 4, 5), (13, 4, 6)):
        gauss_sum(make_group(*key))
    return ""


def _resultants() -> str:
    for n in range(2, 25):
        for s in range(1, n):
            expected = 1 if gcd(s, n) == 1 else 0
            if cyclo_resultant(s, n) != expected:
                return f"Res(s={s}, n={n})"
    return ""


def _ga7_mult4() -> str:
    report = realize_class(make_group(7, 3, 6), ConstructionTag.GA7_MULT4).report
    if (report.A, report.B, report.D) != (4, -3, 4 * 3 ** 6):
        return f"A={report.A}, B={report.B}"
    return ""


def _ga5_two() -> str:
    status = member_ga5(2).status
    return "" if status is DecisionStatus.NOT_ACHIEVABLE else f"member_ga5(2) = {status.value}"


GOLDEN_CHECKS: List[Tuple[str, Callable[[], str]]] = [
    ("identity and -Y in the six groups", _identity_and_neg_y),
    ("(1+mn)p^p element with m=0", _p_power),
    ("B_G = -3 for GA(1,7)", _base_block(ConstructionTag.GA7_MULT4, -6, 0)),
    ("B_G = 2√-7 for (21,1)", _base_block(ConstructionTag.G21_MULT9, 0, 4)),
    ("B_G = ½(11+√-11)-11 for (55,1)", _base_block(ConstructionTag.G55_MULT25, -11, 1)),
    ("B_G = -13/2+√13/2 for (78,1)", _base_block(ConstructionTag.G78_MULT6, -13, 1)),
    ("α(ω) = 2ω^6+ω-ω^4 for GA(1,7)", _alpha(ConstructionTag.GA7_MULT4, [0, 1, 0, 0, -1, 0, 2])),
    ("α(ω) = -2ω^4-ω^2-ω for (21,1)", _alpha(ConstructionTag.G21_MULT9, [0, -1, -1, 0, -2, 0, 0])),
    ("Gauss sums for p = 7, 11, 13", _gauss_sums),
    ("cyclotomic resultants for n <= 24", _resultants),
    ("GA(1,7) multiples of 4: A=4, B=-3", _ga7_mult4),
    ("2 is not a GA(1,5) determinant", _ga5_two),
]


def run_selftest() -> List[GoldenResult]:
    results = []
    for name, check in GOLDEN_CHECKS:
        try:
            problem = check()
        except Exception as e:
            logger.error("Golden check raised", check=name, error=str(e))
            problem = f"{type(e).__name__}: {e}"
        results.append(GoldenResult(name=name, passed=not problem, detail=problem))
    return results
