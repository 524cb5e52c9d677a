from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riskodds.engagement import (
    DiceRule,
    EngagementError,
    EnumerationTooLarge,
    LossDistribution,
    UnsupportedComparisons,
    closed_form_distribution,
    enumerate_engagement,
    max_dice_rule,
    prob_split,
    prob_top_attacker_wins,
    prob_top_defender_wins,
    prob_two_wins_attacker,
    prob_two_wins_defender,
    two_wins_defender_a_ge_d,
    two_wins_defender_a_le_d,
)
from riskodds.polynomials import POLYNOMIAL_ROWS, general_formula, polynomial_mismatches, polynomial_row


def naive_distribution(m, n, a, d, k):
    """Independent re-count that sorts inside the loop over joint rolls."""
    counts = [0] * (k + 1)
    for att in product(range(1, a + 1), repeat=m):
        for dfn in product(range(1, d + 1), repeat=n):
            top_a = sorted(att, reverse=True)
            top_d = sorted(dfn, reverse=True)
            counts[sum(top_a[i] > top_d[i] for i in range(k))] += 1
    return {l: F(c, a**m * d**n) for l, c in enumerate(counts)}


def test_standard_engagement_is_exact():
    dist = enumerate_engagement(DiceRule(3, 2, 6, 6, 2))
    assert dist.probs == {2: F(2890, 7776), 1: F(2611, 7776), 0: F(2275, 7776)}


def test_all_ties_go_to_defender():
    dist = enumerate_engagement(DiceRule(1, 1, 1, 1, 1))
    assert dist.probs == {1: 0, 0: 1}


def test_two_against_two():
    dist = enumerate_engagement(DiceRule(2, 2, 6, 6, 2))
    assert dist[2] == F(295, 1296)
    assert dist.probs == naive_distribution(2, 2, 6, 6, 2)
    assert dist[1] == F(420, 1296)


@pytest.mark.parametrize(
    "m, n, a, d, expected",
    [
        (1, 1, 6, 6, F(5, 12)),
        (1, 1, 1, 6, F(0)),
        (3, 1, 6, 6, F(95, 144)),
    ],
)
def test_top_attacker_wins(m, n, a, d, expected):
    assert prob_top_attacker_wins(m, n, a, d) == expected
    assert enumerate_engagement(DiceRule(m, n, a, d, 1))[1] == expected


@pytest.mark.parametrize(
    "m, n, a, d, expected",
    [(1, 1, 6, 6, F(7, 12)), (1, 1, 1, 1, F(1)), (1, 2, 6, 6, F(161, 216))],
)
def test_top_defender_wins(m, n, a, d, expected):
    assert prob_top_defender_wins(m, n, a, d) == expected


def test_two_wins_attacker_examples():
    assert prob_two_wins_attacker(3, 2, 6, 6) == F(2890, 7776)
    assert prob_two_wins_attacker(2, 2, 1, 6) == 0
    assert prob_two_wins_attacker(2, 2, 6, 6) == F(295, 1296)


def test_two_wins_defender_examples():
    assert prob_two_wins_defender(3, 2, 6, 6) == F(2275, 7776)
    assert prob_two_wins_defender(2, 2, 1, 1) == 1
    assert prob_two_wins_defender(2, 2, 6, 10) == enumerate_engagement(DiceRule(2, 2, 6, 10, 2))[0]


def test_split_examples():
    assert prob_split(3, 2, 6, 6) == F(2611, 7776)
    assert prob_split(2, 2, 1, 1) == 0
    assert prob_split(2, 2, 6, 6) == F(420, 1296)


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("s", range(1, 13))
def test_defender_branches_agree_on_equal_sides(m, s):
    assert two_wins_defender_a_ge_d(m, 2, s, s) == two_wins_defender_a_le_d(m, 2, s, s)


def test_defender_branches_reject_wrong_side():
    with pytest.raises(EngagementError):
        two_wins_defender_a_ge_d(2, 2, 3, 6)
    with pytest.raises(EngagementError):
        two_wins_defender_a_le_d(2, 2, 6, 3)


def test_rule_validation():
    with pytest.raises(UnsupportedComparisons):
        DiceRule(3, 3, 6, 6, 3)
    with pytest.raises(EngagementError):
        DiceRule(1, 2, 6, 6, 2)
    with pytest.raises(EngagementError):
        DiceRule(0, 2, 6, 6, 1)
    with pytest.raises(EngagementError):
        DiceRule(2, 2, 0, 6, 1)
    with pytest.raises(EngagementError):
        prob_two_wins_attacker(1, 2, 6, 6)


def test_enumeration_size_limit():
    with pytest.raises(EnumerationTooLarge):
        enumerate_engagement(DiceRule(5, 2, 6, 6, 2))
    with pytest.raises(EnumerationTooLarge):
        enumerate_engagement(DiceRule(4, 3, 20, 20, 2))


def test_loss_distribution_rejects_bad_mass():
    rule = DiceRule(1, 1, 6, 6, 1)
    with pytest.raises(EngagementError):
        LossDistribution(rule, {0: F(1, 2), 1: F(1, 3)})
    with pytest.raises(EngagementError):
        LossDistribution(rule, {0: F(1)})


def test_max_dice_rule():
    assert max_dice_rule(10, 5) == DiceRule(3, 2, 6, 6, 2)
    assert max_dice_rule(3, 5) == DiceRule(2, 2, 6, 6, 2)
    assert max_dice_rule(2, 5) == DiceRule(1, 2, 6, 6, 1)
    assert max_dice_rule(10, 1) == DiceRule(3, 1, 6, 6, 1)


@settings(max_examples=150, deadline=None)
@given(
    m=st.integers(1, 3),
    n=st.integers(1, 2),
    a=st.integers(1, 8),
    d=st.integers(1, 8),
    k=st.integers(1, 2),
)
def test_closed_forms_match_enumeration(m, n, a, d, k):
    if k > min(m, n):
        return
    rule = DiceRule(m, n, a, d, k)
    assert closed_form_distribution(rule).probs == enumerate_engagement(rule).probs


@settings(max_examples=60, deadline=None)
@given(m=st.integers(2, 4), n=st.integers(2, 3), a=st.integers(1, 6), d=st.integers(1, 6))
def test_closed_forms_beyond_standard_dice(m, n, a, d):
    rule = DiceRule(m, n, a, d, 2)
    assert closed_form_distribution(rule).probs == enumerate_engagement(rule).probs


@pytest.mark.parametrize("row", sorted(POLYNOMIAL_ROWS))
def test_table_rows_at_equal_sides(row):
    for s in range(1, 13):
        assert polynomial_row(*row, s, s, branch="ge") == polynomial_row(*row, s, s, branch="le")


def test_table_rows_match_general_forms():
    assert polynomial_mismatches(12) == []


def test_table_examples():
    assert polynomial_row(3, 2, 2, 2, 6, 6) == F(5780, 15552) == F(2890, 7776)
    for a in range(1, 13):
        assert polynomial_row(1, 1, 1, 1, a, a) == F(a - 1, 2 * a)
    assert polynomial_row(3, 2, 2, 0, 6, 8) == enumerate_engagement(DiceRule(3, 2, 6, 8, 2))[0]
    assert general_formula(3, 2, 2, 0, 6, 8) == prob_two_wins_defender(3, 2, 6, 8)


def test_table_rejects_unknown_row():
    with pytest.raises(EngagementError):
        polynomial_row(3, 3, 2, 1, 6, 6)
    with pytest.raises(EngagementError):
        polynomial_row(1, 1, 1, 1, 3, 6, branch="ge")
