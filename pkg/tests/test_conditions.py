"""
Tests for the necessary conditions and the achievability deciders.
"""
import pytest

from src.conditions import (
    DecisionStatus,
    UnitTable,
    check_necessary,
    check_values,
    decide,
    member_ga5,
    member_ga7,
    member_general,
    member_quad,
    zn_divisibility,
)
from src.detengine import DetReport, factored_determinant
from src.exact import CyclotomicInt, QuadField, QuadInt
from src.exceptions import UnsupportedGroup, ZeroInput
from src.groups import GroupRingElement, make_group, parse_element

ACHIEVABLE = DecisionStatus.ACHIEVABLE
NOT_ACHIEVABLE = DecisionStatus.NOT_ACHIEVABLE


@pytest.mark.parametrize(
    "A, n, expected",
    [(9, 6, True), (3, 6, False), (2, 4, False), (16, 4, True), (8, 4, False), (4, 6, True), (1, 12, True)],
)
def test_zn_divisibility(A, n, expected):
    assert zn_divisibility(A, n) is expected


def test_zn_divisibility_rejects_bad_n():
    with pytest.raises(ValueError):
        zn_divisibility(5, 0)


def test_check_necessary_on_p_power(ga5):
    report = factored_determinant(parse_element("2 + Y + Y^2 + Y^3", ga5), ga5)
    result = check_necessary(report)
    assert result.ok
    assert result.block_congruence_ok
    assert result.quad_congruence_ok is None


def test_zn_violation(ga5):
    result = check_values(2, 1, 2, ga5)
    assert not result.zn_divisibility_ok
    assert not result.ok


def test_congruence_violation(ga5):
    result = check_values(5, 6, 5 * 6**4, ga5)
    assert result.zn_divisibility_ok
    assert not result.congruence_ok
    assert not result.p_power_ok


def test_synthetic_block_violation(ga5):
    report = DetReport(A=1, B_blocks=(CyclotomicInt.from_int(5, 2),), B=2, D=16, group=ga5)
    result = check_necessary(report)
    assert not result.block_congruence_ok
    assert not result.ok


def test_quad_congruence_on_half_groups(g55, rng):
    e = GroupRingElement.from_flat(g55, [rng.randint(-1, 1) for _ in range(g55.order)])
    result = check_necessary(factored_determinant(e, g55))
    assert result.quad_congruence_ok is True
    assert result.ok


@pytest.mark.parametrize("D, status", [(3125, ACHIEVABLE), (7, NOT_ACHIEVABLE), (2, NOT_ACHIEVABLE),
                                       (-1, ACHIEVABLE), (85683, ACHIEVABLE), (3 * 5**4, NOT_ACHIEVABLE)])
def test_member_ga5(D, status):
    assert member_ga5(D).status is status


def test_member_ga5_witness():
    decision = member_ga5(85683)
    assert decision.witness.m == 3
    assert decision.witness.b == 13
    assert decision.witness.value(4) == 85683
    assert decision.exit_code == 0


@pytest.mark.parametrize("D, status", [(7**7, ACHIEVABLE), (-1, ACHIEVABLE), (12, NOT_ACHIEVABLE),
                                       (4 * 3**6, ACHIEVABLE), (3, NOT_ACHIEVABLE)])
def test_member_ga7(D, status):
    assert member_ga7(D).status is status


def test_member_ga7_multiples_of_7():
    decision = member_ga7(7**7)
    assert (decision.witness.m, decision.witness.b) == (7, 7)


def test_member_quad_g55(g55):
    """5 | m forces 25 | m."""
    decision = member_quad(5, g55)
    assert decision.status is NOT_ACHIEVABLE
    assert decision.exit_code == 1


def test_member_quad_g78_multiple_of_13(g78):
    decision = member_quad(13**7, g78)
    assert decision.status is ACHIEVABLE
    assert decision.witness.m == 13
    assert decision.witness.B == 13
    assert decision.witness.value(6) == 13**7


def test_member_quad_g21(g21):
    """7 | D forces 7⁴ | D; here m = 14 and b = ±√-7."""
    decision = member_quad(2 * 7**4, g21)
    assert decision.status is ACHIEVABLE
    witness = decision.witness
    assert witness.is_quadratic
    assert witness.m == 14
    assert witness.m * witness.b.norm() ** 3 == 2 * 7**4
    assert (witness.b - witness.m).residue() == 0


def test_member_quad_g21_rejects_3(g21):
    assert member_quad(3, g21).status is NOT_ACHIEVABLE


def test_member_quad_needs_characterized_group():
    with pytest.raises(UnsupportedGroup):
        member_quad(5, make_group(23, 2, 11))


def test_zero_is_rejected(ga5, g21):
    with pytest.raises(ZeroInput):
        member_ga5(0)
    with pytest.raises(ZeroInput):
        decide(0, g21)


def test_member_general_ga11():
    """gcd(m, 10) = 1 is proven; a 2 | m with 8 | m is only necessary."""
    g = make_group(11, 2, 10)
    assert member_general(1, g).status is ACHIEVABLE
    assert member_general(2, g).status is NOT_ACHIEVABLE
    unknown = member_general(8 * 3**10, g)
    assert unknown.status is DecisionStatus.UNKNOWN
    assert unknown.exit_code == 2


def test_member_general_unsupported(d14):
    with pytest.raises(UnsupportedGroup):
        member_general(5, d14)


def test_decide_reports_the_callers_group():
    g = make_group(5, 3, 4)
    decision = decide(85683, g)
    assert decision.status is ACHIEVABLE
    assert decision.group == "5,3,4"
    assert decision.to_dict()["witness"]["m"] == 3


def test_unit_table():
    table = UnitTable(primes=())
    unit = table.get(QuadField(13))
    assert unit == QuadInt(QuadField(13), 1, 1)
    assert table.get(QuadField(13)) is unit


@pytest.mark.parametrize("key", [(5, 2, 4), (7, 3, 6), (7, 2, 3), (11, 4, 5), (13, 4, 6)])
def test_small_determinants_are_achievable(key, rng):
    """Values of actual elements are never rejected."""
    g = make_group(*key)
    for _ in range(5):
        terms = {(rng.randrange(g.p), rng.randrange(g.n)): rng.choice((-1, 1)) for _ in range(3)}
        e = GroupRingElement.from_terms(g, terms)
        D = factored_determinant(e, g).D
        if D:
            assert decide(D, g).status is ACHIEVABLE


def _ga5_values(bound):
    """Every m * b^4 with |m * b^4| <= bound, b ≡ m mod 5 and m a Z_4 determinant."""
    values = set()
    b = 1
    while b ** 4 <= bound:
        for sign in (1, -1):
            for m in range(-(bound // b ** 4), bound // b ** 4 + 1):
                if m and (sign * b - m) % 5 == 0 and zn_divisibility(m, 4):
                    values.add(m * b ** 4)
        b += 1
    return values


def test_member_ga5_matches_brute_force():
    bound = 10 ** 4
    achieved = _ga5_values(bound)
    for D in range(-bound, bound + 1):
        if D == 0:
            continue
        expected = ACHIEVABLE if D in achieved else NOT_ACHIEVABLE
        assert member_ga5(D).status is expected, D


def test_unit_table_starts_empty():
    table = UnitTable()
    assert table._units == {}
    table.get(QuadField(13))
    assert list(table._units) == [13]
