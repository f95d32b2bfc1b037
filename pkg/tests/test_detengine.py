"""
Tests for the direct and factored determinant engines.
"""
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from src.detengine import (
    block_B,
    circulant_A,
    determinant_both,
    direct_determinant,
    factored_determinant,
    group_matrix,
    ones_row_determinant,
)
from src.exact import CyclotomicInt, QuadField, quad_embed, quad_from_surd
from src.exceptions import BadIndex
from src.groups import GroupRingElement, h_element, identity, make_group, mul, parse_element, y_power

GROUPS = [(5, 2, 4), (7, 3, 6), (7, 2, 3), (11, 4, 5), (13, 4, 6), (7, 6, 2)]


@pytest.mark.parametrize("key", GROUPS)
def test_identity_and_minus_y(key):
    g = make_group(*key)
    one = identity(g)
    report = factored_determinant(one, g)
    assert (report.A, report.D) == (1, 1)
    assert all(block == 1 for block in report.B_blocks)
    assert direct_determinant(one, g) == 1

    minus_y = y_power(g, 1, -1)
    report = factored_determinant(minus_y, g)
    assert (report.A, report.D) == (-1, -1)
    assert all(block == -1 for block in report.B_blocks)
    assert direct_determinant(minus_y, g) == -1


def test_group_matrix_is_a_permutation_for_monomials(ga5):
    matrix = group_matrix(parse_element("X^3*Y", ga5), ga5)
    assert all(sum(row) == 1 for row in matrix)
    assert all(sum(column) == 1 for column in zip(*matrix))


def test_p_power_element_ga5(ga5):
    """2 + Y + Y² + Y³ has A = B = 5 and D = 5⁵."""
    e = parse_element("2 + Y + Y^2 + Y^3", ga5)
    report = factored_determinant(e, ga5)
    assert report.A == 5
    assert report.B == 5
    assert report.D == 5**5
    assert direct_determinant(e, ga5) == 3125


def test_adding_h_changes_only_a(ga5):
    e = parse_element("2 + Y + Y^2 + Y^3", ga5) + h_element(ga5)
    assert circulant_A(e, ga5) == 25
    assert factored_determinant(e, ga5).D == 5 * 5**5


def test_block_b_ga7(ga7):
    """1 + (1 - X)Y + Y² has B(ω) = -3."""
    assert block_B(parse_element("1 + Y - X*Y + Y^2", ga7), ga7) == -3


def test_block_b_small_group_21(g21):
    """(X + X² - 1) - Y has B(ω) = 2√-7."""
    value = block_B(parse_element("X + X^2 - 1 - Y", g21), g21)
    field = QuadField(7)
    assert quad_embed(value, field) == quad_from_surd(field, 0, 4)


def test_block_b_small_group_78(g78):
    """1 - Y + (X^10 - 1)Y³ has B(ω) = -13/2 + √13/2."""
    value = block_B(parse_element("1 - Y + X^10*Y^3 - Y^3", g78), g78)
    field = QuadField(13)
    assert quad_embed(value, field) == quad_from_surd(field, -13, 1)


def test_blocks_of_half_groups_are_quadratic(g55):
    e = parse_element("1 + 2*X*Y - X^3*Y^2 + Y^4", g55)
    report = factored_determinant(e, g55)
    quads = report.block_quads()
    assert len(quads) == 2
    assert quads[0] * quads[1] == report.B
    assert "B_blocks_quad" in report.to_dict()


def test_block_index_divisible_by_p(ga5):
    with pytest.raises(BadIndex):
        block_B(identity(ga5), ga5, 5)


def test_ones_row_determinant_of_identity(ga5):
    """Replacing the first row of I by ones leaves determinant 1."""
    assert ones_row_determinant(identity(ga5), ga5) == CyclotomicInt.from_int(5, 1)


def test_determinant_both(g21, rng):
    e = GroupRingElement.from_flat(g21, [rng.randint(-2, 2) for _ in range(g21.order)])
    report, direct = determinant_both(e, g21)
    assert report.D == direct


def test_zero_element(d14):
    assert factored_determinant(GroupRingElement.zero(d14), d14).D == 0


@pytest.mark.parametrize("key", GROUPS)
def test_engines_agree_on_random_elements(key, rng):
    g = make_group(*key)
    for _ in range(3):
        e = GroupRingElement.from_flat(g, [rng.randint(-2, 2) for _ in range(g.order)])
        report = factored_determinant(e, g)
        assert report.D == report.A * report.B**g.n
        assert report.D == direct_determinant(e, g)


def small_elements(g):
    return st.lists(st.integers(-1, 1), min_size=g.order, max_size=g.order).map(
        lambda values: GroupRingElement.from_flat(g, values)
    )


@hyp_settings(max_examples=25, deadline=None)
@given(st.data())
def test_determinant_is_multiplicative(data):
    g = make_group(7, 2, 3)
    x = data.draw(small_elements(g))
    y = data.draw(small_elements(g))
    product = factored_determinant(mul(x, y, g), g)
    assert product.D == factored_determinant(x, g).D * factored_determinant(y, g).D


@hyp_settings(max_examples=25, deadline=None)
@given(st.data())
def test_factored_matches_direct_ga5(data):
    g = make_group(5, 2, 4)
    e = data.draw(small_elements(g))
    assert factored_determinant(e, g).D == direct_determinant(e, g)
