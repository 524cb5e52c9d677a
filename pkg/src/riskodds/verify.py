"""Property and oracle suites behind ``riskodds verify``.

Each suite returns a list of :class:`Check` results.  The brute-force
helpers here deliberately avoid the dynamic programs and closed forms they
are used to check.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from . import approx, battle, engagement, polynomials
from .battle import LossModel

SCOPES = ("engagement", "battle", "approx", "all")
K1_PROBS = (Fraction(1, 10), Fraction(1, 4), Fraction(417, 1000), Fraction(1, 2), Fraction(3, 4), Fraction(9, 10))


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


# -- independent oracles ------------------------------------------------------


def brute_force_conquer(att: int, dfn: int, a: int = 6, d: int = 6) -> Fraction:
    """Conquer odds by plain recursion over engagement outcomes.

    Engagement probabilities come from full enumeration of the dice.
    """
    if dfn == 0:
        return Fraction(1)
    if att == 1:
        return Fraction(0)
    rule = engagement.max_dice_rule(att, dfn, a, d)
    dist = _enumerated(rule)
    return sum(
        (prob * brute_force_conquer(att - (rule.k - l), dfn - l, a, d) for l, prob in dist.items()),
        Fraction(0),
    )


@lru_cache(maxsize=None)
def _enumerated_cached(m, n, a, d, k):
    return engagement.enumerate_engagement(engagement.DiceRule(m, n, a, d, k)).probs


def _enumerated(rule):
    return _enumerated_cached(rule.m, rule.n, rule.a, rule.d, rule.k)


def brute_force_vc_k1(A: int, D: int, p) -> Fraction:
    """Sum over every win/loss string of length ``A + D - 1``.

    Exactly one of "D wins" or "A losses" happens within that many
    engagements; the attacker succeeds when the string holds at least D wins.
    """
    q = 1 - p
    total = Fraction(0) if isinstance(p, Fraction) else 0.0
    n = A + D - 1
    for seq in product((0, 1), repeat=n):
        wins = sum(seq)
        if wins >= D:
            total += p**wins * q ** (n - wins)
    return total


def brute_force_vc_k2(A: int, D: int, model: LossModel, md_policy: str = "strict"):
    """Walk every engagement sequence until one side's tally is reached."""
    p, q, r = model.as_tuple()

    def walk(a_left, d_left):
        if d_left <= 0 or a_left <= 0:
            if d_left <= 0 and a_left <= 0:
                return 1 if md_policy == "lenient" else 0
            return 1 if d_left <= 0 else 0
        return p * walk(a_left, d_left - 2) + q * walk(a_left - 1, d_left - 1) + r * walk(a_left - 2, d_left)

    return walk(A, D)


def brute_force_Z(M: int, model: LossModel) -> list:
    """Distribution of the M-step sum by expanding every trinomial term."""
    p, q, r = model.as_tuple()
    dist = [Fraction(0)] * (2 * M + 1)
    for x in range(M + 1):
        for y in range(M - x + 1):
            z = M - x - y
            coeff = math.factorial(M) // (math.factorial(x) * math.factorial(y) * math.factorial(z))
            dist[2 * x + y] += coeff * Fraction(p) ** x * Fraction(q) ** y * Fraction(r) ** z
    return dist


# -- suites -------------------------------------------------------------------


def engagement_suite() -> list[Check]:
    checks = []

    bad = []
    count = 0
    for m in range(1, 4):
        for n in range(1, 3):
            for a in range(1, 9):
                for d in range(1, 9):
                    for k in (1, 2):
                        if k > min(m, n):
                            continue
                        rule = engagement.DiceRule(m, n, a, d, k)
                        count += 1
                        if engagement.closed_form_distribution(rule).probs != _enumerated(rule):
                            bad.append(rule)
    checks.append(Check("oracle equivalence m<=3 n<=2 a,d<=8", not bad, f"{count} rules, {len(bad)} mismatches"))

    sums_ok = all(sum(_enumerated_cached(*key).values()) == 1 for key in _enumerated_cached_keys())
    checks.append(Check("loss distributions sum to 1", sums_ok))

    branch_bad = []
    for row, (ge, le) in polynomials.POLYNOMIAL_ROWS.items():
        for s in range(1, 13):
            if ge(s, s) != le(s, s):
                branch_bad.append((row, s))
    for m in (2, 3):
        for s in range(1, 13):
            if engagement.two_wins_defender_a_ge_d(m, 2, s, s) != engagement.two_wins_defender_a_le_d(m, 2, s, s):
                branch_bad.append(((m, 2, 2, 0), s, "general"))
    checks.append(Check("branch agreement at a = d <= 12", not branch_bad, f"{len(branch_bad)} disagreements"))

    errata = polynomials.polynomial_mismatches(12)
    checks.append(Check("table polynomials equal general forms, a,d<=12", not errata, f"{len(errata)} cells differ"))

    complement_bad = []
    for m in range(1, 4):
        for n in range(1, 3):
            k = min(m, n)
            for a in range(1, 9):
                for d in range(1, 9):
                    if k == 1:
                        total = engagement.prob_top_attacker_wins(m, n, a, d) + engagement.prob_top_defender_wins(m, n, a, d)
                    else:
                        total = (engagement.prob_two_wins_attacker(m, n, a, d) + engagement.prob_split(m, n, a, d)
                                 + engagement.prob_two_wins_defender(m, n, a, d))
                    if total != 1:
                        complement_bad.append((m, n, a, d))
    checks.append(Check("complement identities", not complement_bad))

    one_sided = all(
        engagement.closed_form_distribution(engagement.DiceRule(m, n, 1, d, k))[k] == 0
        for m in range(1, 4) for n in range(1, 3) for d in range(1, 9) for k in (1, 2) if k <= min(m, n)
    )
    checks.append(Check("one-sided attacker dice never win a comparison", one_sided))
    return checks


def _enumerated_cached_keys():
    keys = []
    for m in range(1, 4):
        for n in range(1, 3):
            for a in range(1, 9):
                for d in range(1, 9):
                    for k in (1, 2):
                        if k <= min(m, n):
                            keys.append((m, n, a, d, k))
    return keys


def _grid_nondecreasing_in_first(table, lo, hi_a, hi_d, col_lo=1):
    for i in range(lo + 1, hi_a + 1):
        for j in range(col_lo, hi_d + 1):
            if table[i][j] < table[i - 1][j]:
                return False
    return True


def _grid_nonincreasing_in_second(table, lo, hi_a, hi_d, col_lo=1):
    for i in range(lo, hi_a + 1):
        for j in range(col_lo + 1, hi_d + 1):
            if table[i][j] > table[i][j - 1]:
                return False
    return True


def battle_suite() -> list[Check]:
    checks = []

    worst = 0.0
    exact_ok = True
    for p in K1_PROBS:
        for A in range(1, 31):
            for D in range(1, 31):
                if battle.vc_odds_k1_negbin(A, D, p) != battle.vc_odds_k1_lattice(A, D, p):
                    exact_ok = False
                pf = float(p)
                worst = max(worst, abs(battle.vc_odds_k1_negbin(A, D, pf) - battle.vc_odds_k1_lattice(A, D, pf)))
    checks.append(Check("negative binomial = lattice form (exact)", exact_ok))
    checks.append(Check("negative binomial = lattice form (float, 1e-12)", worst <= 1e-12, f"max diff {worst:.3e}"))

    small_ok = all(
        battle.vc_odds_k1_negbin(A, D, p) == brute_force_vc_k1(A, D, p)
        for p in (Fraction(1, 2), Fraction(15, 36)) for A in range(1, 7) for D in range(1, 7)
    )
    checks.append(Check("one-unit VC equals win/loss string enumeration", small_ok))

    bounds_ok = True
    for p in K1_PROBS:
        for A in range(1, 31):
            for D in range(1, 31):
                lo, hi = battle.vc_k1_bounds(A, D, p)
                if not lo < battle.vc_odds_k1_negbin(A, D, p) < hi:
                    bounds_ok = False
    checks.append(Check("one-unit binomial bounds are strict", bounds_ok))

    pascal_ok = True
    for p in (Fraction(15, 36), Fraction(2, 7)):
        q = 1 - p
        for A in range(1, 31):
            for D in range(1, 31):
                lhs = math.comb(A + D, D) * p**D * q**A
                rhs = (math.comb(A + D - 1, A - 1) + math.comb(A + D - 1, D - 1)) * p**D * q**A
                pascal_ok &= lhs == rhs
    checks.append(Check("mutual destruction Pascal split", pascal_ok))

    sign_ok = True
    for p in (0.3, 0.5, 0.7):
        for D in range(2, 21):
            threshold = battle.negbin_pmf_stats(D, p)[2]
            for A in range(1, int(4 * threshold) + 10):
                diff = battle.negbin_pmf(D, A, p) - battle.negbin_pmf(D, A - 1, p)
                if A < threshold - 1e-9 and not diff > 0:
                    sign_ok = False
                if A > threshold + 1e-9 and not diff < 0:
                    sign_ok = False
    checks.append(Check("pmf differential changes sign at (D-1)q/p", sign_ok))

    model = LossModel.standard()
    strict = battle.vc_table_k2(40, 40, model, "strict", exact=True)
    lenient = battle.vc_table_k2(40, 40, model, "lenient", exact=True)
    zs = [None] + [battle.distribution_of_Z(M, model) for M in range(1, 41)]
    order_bad = []
    for A in range(1, 41):
        for D in range(1, 41):
            dist = zs[battle.extended_length(A, D)]
            lower = sum(dist[D + 1:], Fraction(0))
            upper = sum(dist[D:], Fraction(0))
            if not lower <= strict[A][D] <= lenient[A][D] <= upper:
                order_bad.append((A, D))
    checks.append(Check("Z_M bounds bracket VC, A,D<=40", not order_bad, f"{len(order_bad)} violations"))

    checks.append(Check(
        "Z_M convolution equals trinomial expansion, M<=12",
        all(zs[M] == brute_force_Z(M, model) for M in range(1, 13)),
    ))
    checks.append(Check("Z_M distributions sum to 1", all(sum(zs[M]) == 1 for M in range(1, 41))))

    vc_oracle_ok = all(
        strict[A][D] == brute_force_vc_k2(A, D, model) and lenient[A][D] == brute_force_vc_k2(A, D, model, "lenient")
        for A in range(1, 8) for D in range(1, 8)
    )
    checks.append(Check("two-unit VC equals sequence enumeration, A,D<=7", vc_oracle_ok))

    ac = battle.conquer_table(41, 40, exact=False)
    vc_float = battle.vc_table_k2(40, 40, model.as_float())
    mono = (
        _grid_nondecreasing_in_first(ac, 2, 41, 40)
        and _grid_nonincreasing_in_second(ac, 2, 41, 40)
        and _grid_nondecreasing_in_first(vc_float, 1, 40, 40)
        and _grid_nonincreasing_in_second(vc_float, 1, 40, 40)
        and _grid_nondecreasing_in_first(strict, 1, 40, 40)
        and _grid_nonincreasing_in_second(strict, 1, 40, 40)
    )
    checks.append(Check("monotone in attackers and defenders, <=40", mono))

    oracle_bad = [
        (att, dfn)
        for att in range(2, 10)
        for dfn in range(1, 11 - att)
        if battle.conquer_odds_exact(att, dfn, exact=True) != brute_force_conquer(att, dfn)
    ]
    checks.append(Check("conquer DP equals outcome recursion, att+def<=10", not oracle_bad, f"{len(oracle_bad)} mismatches"))
    return checks


def approx_suite() -> list[Check]:
    checks = []
    rng = random.Random(20160101)
    worst = 0.0
    for _ in range(1000):
        cuts = sorted((rng.random(), rng.random()))
        model = LossModel(cuts[0], cuts[1] - cuts[0], 1 - cuts[1])
        worst = max(worst, abs(approx.variance_by_definition(model) - approx.loss_moments(model).sigma2))
    checks.append(Check("two variance forms agree", worst <= 1e-12, f"max diff {worst:.3e}"))

    params = approx.loss_moments()
    mu, sigma = float(params.mu), params.sigma
    back_ok = True
    shape_ok = True
    for D in (1, 5, 10, 25, 50, 100, 250, 500):
        for s in (0.5, 1, 2, 3):
            a1, a2 = approx.s_interval(D, s, params)
            for A, sign in ((a1, 1), (a2, -1)):
                rhs = (A + D) * mu / 2 + sign * s * sigma * math.sqrt((A + D) / 2)
                back_ok &= abs(rhs - D) <= 1e-9 * D
            centre = float(approx.a_star(D, params))
            shape_ok &= a1 < centre < a2
            shape_ok &= abs((a2 - a1) - approx.interval_width_formula(D, s, params)) <= 1e-9
            shape_ok &= abs((a1 + a2) / 2 - (centre + (s * sigma / mu) ** 2)) <= 1e-9
    checks.append(Check("interval endpoints solve the defining equation", back_ok))
    checks.append(Check("interval width and centre", shape_ok))

    shrink_ok = True
    for s in (1, 2):
        prev = math.inf
        for D in range(10, 501):
            a1, a2 = approx.s_interval(D, s, params)
            inc = a2 / a1 - 1
            shrink_ok &= inc < prev
            prev = inc
    checks.append(Check("percentage increase shrinks with D", shrink_ok))

    p_ok = (
        params.mu == Fraction(8391, 7776)
        and params.sigma2 == Fraction(4420535, 6718464)
        and approx.a_star_ratio(params) == Fraction(7161, 8391)
    )
    lo, hi = approx.clt_terms(params)
    p_ok &= (round(lo, 2), round(hi, 2)) == (10.17, 13.97)
    checks.append(Check("standard model point values", p_ok))

    model = LossModel.standard().as_float()
    table = battle.vc_table_k2(1000, 900, model)
    tipping = [table[10 * n - 3][9 * n - 1] for n in range(1, 11)]
    checks.append(Check(
        "10n vs 9n odds increase with n",
        all(x < y for x, y in zip(tipping, tipping[1:])),
        f"{tipping[0]:.4f} -> {tipping[-1]:.4f}",
    ))
    return checks


def approximation_error(limit: int = 200, min_total: int = 15) -> tuple[float, tuple[int, int]]:
    """Largest gap between the normal approximation and strict VC odds."""
    params = approx.loss_moments()
    table = battle.vc_table_k2(limit, limit, LossModel.standard().as_float())
    worst, where = 0.0, (0, 0)
    for A in range(1, limit + 1):
        for D in range(1, limit + 1):
            if A + D < min_total:
                continue
            gap = abs(approx.vc_normal_approx(A, D, params) - table[A][D])
            if gap > worst:
                worst, where = gap, (A, D)
    return worst, where


SUITES = {"engagement": engagement_suite, "battle": battle_suite, "approx": approx_suite}


def run(scope: str = "all") -> dict[str, list[Check]]:
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {SCOPES}, got {scope!r}")
    names = list(SUITES) if scope == "all" else [scope]
    return {name: SUITES[name]() for name in names}
