"""Single-engagement loss distributions.

Every probability here is a :class:`fractions.Fraction`.  Two independent
routes are provided: :func:`enumerate_engagement` walks every equally likely
roll, and the ``prob_*`` functions evaluate the conditional-sum closed forms
obtained by conditioning on the defender's top dice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

MAX_ENUM_ATTACK_DICE = 4
MAX_ENUM_DEFEND_DICE = 3
MAX_ENUM_OUTCOMES = 5_000_000


class EngagementError(ValueError):
    """Invalid engagement parameters."""


class UnsupportedComparisons(EngagementError):
    """Raised for k >= 3 comparisons, which have no closed form here."""


class EnumerationTooLarge(EngagementError):
    """The outcome space is too large for the brute-force oracle."""


@dataclass(frozen=True)
class DiceRule:
    """Shape of one engagement.

    ``m`` attacker dice with ``a`` sides against ``n`` defender dice with
    ``d`` sides; the top ``k`` dice of each side are compared pairwise.
    """

    m: int
    n: int
    a: int
    d: int
    k: int

    def __post_init__(self):
        for name in ("m", "n", "a", "d", "k"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise EngagementError(f"{name} must be a positive integer, got {value!r}")
        if self.k >= 3:
            raise UnsupportedComparisons(f"k={self.k}: only 1 or 2 comparisons are supported")
        if self.k > min(self.m, self.n):
            raise EngagementError(
                f"k={self.k} exceeds the smaller dice count min(m, n)={min(self.m, self.n)}"
            )


@dataclass(frozen=True)
class LossDistribution:
    """Exact probabilities that the defender loses ``l`` units, l = 0..k."""

    rule: DiceRule
    probs: dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if set(self.probs) != set(range(self.rule.k + 1)):
            raise EngagementError(f"loss keys must be 0..{self.rule.k}, got {sorted(self.probs)}")
        for l, prob in self.probs.items():
            if not 0 <= prob <= 1:
                raise EngagementError(f"probability for l={l} outside [0, 1]: {prob}")
        if sum(self.probs.values()) != 1:
            raise EngagementError("loss probabilities do not sum to 1")

    def __getitem__(self, l: int) -> Fraction:
        return self.probs[l]


def _check_sides(m, n, a, d, min_dice=1):
    for name, value in (("m", m), ("n", n), ("a", a), ("d", d)):
        if not isinstance(value, int) or value < 1:
            raise EngagementError(f"{name} must be a positive integer, got {value!r}")
    if m < min_dice or n < min_dice:
        raise EngagementError(f"both sides need at least {min_dice} dice, got m={m}, n={n}")


def enumerate_engagement(rule: DiceRule) -> LossDistribution:
    """Brute-force loss distribution over all ``a**m * d**n`` outcomes.

    Each side's dice are sorted descending and the top ``k`` compared
    pairwise; ties go to the defender.
    """
    if rule.m > MAX_ENUM_ATTACK_DICE or rule.n > MAX_ENUM_DEFEND_DICE:
        raise EnumerationTooLarge(
            f"enumeration limited to m <= {MAX_ENUM_ATTACK_DICE}, n <= {MAX_ENUM_DEFEND_DICE}"
        )
    total = rule.a**rule.m * rule.d**rule.n
    if total > MAX_ENUM_OUTCOMES:
        raise EnumerationTooLarge(f"{total} outcomes exceeds the limit of {MAX_ENUM_OUTCOMES}")

    k = rule.k
    att_tops = [sorted(roll, reverse=True)[:k] for roll in product(range(1, rule.a + 1), repeat=rule.m)]
    def_tops = [sorted(roll, reverse=True)[:k] for roll in product(range(1, rule.d + 1), repeat=rule.n)]

    counts = [0] * (k + 1)
    for att in att_tops:
        for dfn in def_tops:
            losses = 0
            for x, y in zip(att, dfn):
                if x > y:
                    losses += 1
            counts[losses] += 1

    return LossDistribution(rule, {l: Fraction(c, total) for l, c in enumerate(counts)})


def prob_top_attacker_wins(m: int, n: int, a: int, d: int) -> Fraction:
    """P(attacker's highest die beats the defender's highest die)."""
    _check_sides(m, n, a, d)
    num = sum((a**m - y**m) * (y**n - (y - 1) ** n) for y in range(1, min(a, d) + 1))
    return Fraction(num, a**m * d**n)


def prob_top_defender_wins(m: int, n: int, a: int, d: int) -> Fraction:
    return 1 - prob_top_attacker_wins(m, n, a, d)


def _pair_weight(n, y2):
    # n * P(max of n-1 dice == y2), times d**(n-1); weight of Y(1)=y1 > Y(2)=y2
    return n * (y2 ** (n - 1) - (y2 - 1) ** (n - 1))


def _tie_weight(n, y1):
    # d**n * P(Y(1) == Y(2) == y1)
    return y1**n - (y1 - 1) ** n - n * (y1 - 1) ** (n - 1)


def prob_two_wins_attacker(m: int, n: int, a: int, d: int) -> Fraction:
    """P(both top-two comparisons favour the attacker); valid for any a, d."""
    _check_sides(m, n, a, d, min_dice=2)
    top = min(a, d)
    num = 0
    for y1 in range(2, top + 1):
        for y2 in range(1, y1):
            num += _pair_weight(n, y2) * (a**m - y1**m - m * (a - y1) * y2 ** (m - 1))
    for y1 in range(1, top + 1):
        num += _tie_weight(n, y1) * (a**m + (m - 1) * y1**m - a * m * y1 ** (m - 1))
    return Fraction(num, a**m * d**n)


def _two_defender_core(m, n, top):
    num = 0
    for y1 in range(2, top + 1):
        for y2 in range(1, y1):
            num += _pair_weight(n, y2) * (m * (y1 - y2) * y2 ** (m - 1) + y2**m)
    for y1 in range(1, top + 1):
        num += _tie_weight(n, y1) * y1**m
    return num


def two_wins_defender_a_ge_d(m: int, n: int, a: int, d: int) -> Fraction:
    """Both comparisons to the defender, branch valid for ``a >= d``."""
    _check_sides(m, n, a, d, min_dice=2)
    if a < d:
        raise EngagementError(f"branch requires a >= d, got a={a}, d={d}")
    return Fraction(_two_defender_core(m, n, d), a**m * d**n)


def two_wins_defender_a_le_d(m: int, n: int, a: int, d: int) -> Fraction:
    """Both comparisons to the defender, branch valid for ``a <= d``.

    Adds the cases where the defender's top die exceeds every attacker face.
    """
    _check_sides(m, n, a, d, min_dice=2)
    if a > d:
        raise EngagementError(f"branch requires a <= d, got a={a}, d={d}")
    num = _two_defender_core(m, n, a)
    for _y1 in range(a + 1, d + 1):
        for y2 in range(1, a + 1):
            num += _pair_weight(n, y2) * (m * (a - y2) * y2 ** (m - 1) + y2**m)
    num += a**m * d**n - n * (d - a) * a ** (n + m - 1) - a ** (m + n)
    return Fraction(num, a**m * d**n)


def prob_two_wins_defender(m: int, n: int, a: int, d: int) -> Fraction:
    """P(both top-two comparisons favour the defender)."""
    if a >= d:
        return two_wins_defender_a_ge_d(m, n, a, d)
    return two_wins_defender_a_le_d(m, n, a, d)


def prob_split(m: int, n: int, a: int, d: int) -> Fraction:
    """P(each side loses exactly one unit) with two comparisons."""
    return 1 - prob_two_wins_attacker(m, n, a, d) - prob_two_wins_defender(m, n, a, d)


def closed_form_distribution(rule: DiceRule) -> LossDistribution:
    """Loss distribution from the closed forms rather than enumeration."""
    m, n, a, d = rule.m, rule.n, rule.a, rule.d
    if rule.k == 1:
        win = prob_top_attacker_wins(m, n, a, d)
        probs = {0: 1 - win, 1: win}
    else:
        probs = {
            0: prob_two_wins_defender(m, n, a, d),
            1: prob_split(m, n, a, d),
            2: prob_two_wins_attacker(m, n, a, d),
        }
    return LossDistribution(rule, probs)


def max_dice_rule(att_units: int, def_units: int, a: int = 6, d: int = 6) -> DiceRule:
    """Dice rule when both sides roll the most dice they are allowed."""
    m = min(3, att_units - 1)
    n = min(2, def_units)
    return DiceRule(m, n, a, d, min(m, n))
