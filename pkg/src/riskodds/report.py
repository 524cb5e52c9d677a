"""Per-battle odds reports, threshold searches and table generation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .approx import DegenerateModel, clt_min_total, loss_moments, vc_normal_approx
from .battle import (
    RATIONAL_LIMIT,
    LossModel,
    _check_policy,
    _use_exact,
    conquer_odds_exact,
    conquer_table,
    distribution_of_Z,
    vc_bounds_k2,
    vc_odds_k2_exact,
    vc_table_k2,
)
from .reference import PUBLISHED_THRESHOLDS, TARGET_PERCENTS
from .polynomials import POLYNOMIAL_ROWS, polynomial_row


@dataclass(frozen=True)
class OddsReport:
    att_actual: int
    def_actual: int
    a: int
    d: int
    ac_exact: Fraction | float
    vc_exact_strict: Fraction | float
    vc_exact_lenient: Fraction | float
    vc_lower_bound: Fraction | float
    vc_upper_bound: Fraction | float
    vc_normal: float
    clt_ok: bool
    md_policy: str = "strict"

    @property
    def att_virtual(self) -> int:
        return self.att_actual - 3

    @property
    def def_virtual(self) -> int:
        return self.def_actual - 1

    @property
    def vc(self):
        return self.vc_exact_strict if self.md_policy == "strict" else self.vc_exact_lenient

    @property
    def is_exact(self) -> bool:
        return all(
            isinstance(v, (int, Fraction))
            for v in (self.ac_exact, self.vc_exact_strict, self.vc_exact_lenient,
                      self.vc_lower_bound, self.vc_upper_bound)
        )


def battle_report(att_actual: int, def_actual: int, a: int = 6, d: int = 6,
                  md_policy: str = "strict", exact: bool | None = None) -> OddsReport:
    """Conquer and virtual-conquer odds for one battle.

    Exact rationals are used while the actual units total at most
    :data:`~riskodds.battle.RATIONAL_LIMIT` unless ``exact`` says otherwise.
    """
    _check_policy(md_policy)
    exact = _use_exact(exact, att_actual + def_actual)
    ac = conquer_odds_exact(att_actual, def_actual, a, d, exact=exact)

    model = LossModel.from_dice(a, d)
    if not exact:
        model = model.as_float()
    A, D = att_actual - 3, def_actual - 1
    strict = vc_odds_k2_exact(A, D, model, "strict", exact=exact)
    lenient = vc_odds_k2_exact(A, D, model, "lenient", exact=exact)
    params = loss_moments(model)
    if A >= 1 and D >= 1:
        lower, upper = vc_bounds_k2(A, D, model)
        normal = vc_normal_approx(A, D, params)
        try:
            clt_ok = A + D > clt_min_total(params)
        except DegenerateModel:
            clt_ok = False
    else:
        # already terminal: no engagement is left to approximate
        lower, upper = strict, lenient
        normal = float(strict)
        clt_ok = False
    if exact:
        strict, lenient, lower, upper = (Fraction(v) for v in (strict, lenient, lower, upper))
    else:
        strict, lenient, lower, upper = (float(v) for v in (strict, lenient, lower, upper))
    return OddsReport(att_actual, def_actual, a, d, ac, strict, lenient, lower, upper,
                      normal, clt_ok, md_policy)


def _target(percent):
    if not 0 < percent < 100:
        raise ValueError(f"target percent must lie strictly between 0 and 100, got {percent}")
    return Fraction(percent) / 100


def min_attackers(def_actual: int, target_percent: float, mode: str = "ac", a: int = 6, d: int = 6,
                  md_policy: str = "strict") -> int:
    """Smallest actual attacker count whose odds reach ``target_percent``.

    ``mode`` selects exact conquer odds (``"ac"``) or virtual-conquer odds
    (``"vc"``).  Odds are nondecreasing in the attacker count, so the first
    hit in an upward scan is the answer.
    """
    if def_actual < 1:
        raise ValueError(f"def_actual must be >= 1, got {def_actual}")
    if mode not in ("ac", "vc"):
        raise ValueError(f"mode must be 'ac' or 'vc', got {mode!r}")
    _check_policy(md_policy)
    target = _target(target_percent)
    att_max = def_actual + 8
    while True:
        exact = att_max + def_actual <= RATIONAL_LIMIT
        goal = target if exact else float(target)
        if mode == "ac":
            table = conquer_table(att_max, def_actual, a, d, exact)
            odds = [table[att][def_actual] for att in range(att_max + 1)]
        else:
            model = LossModel.from_dice(a, d)
            if not exact:
                model = model.as_float()
            table = vc_table_k2(att_max - 3, def_actual - 1, model, md_policy, exact)
            odds = [0] * 4 + [table[att - 3][def_actual - 1] for att in range(4, att_max + 1)]
            if def_actual == 1 and md_policy == "lenient":
                odds[3] = 1  # zero virtual units each: mutual destruction
        for att in range(2, att_max + 1):
            if odds[att] >= goal:
                return att
        att_max *= 2


def threshold_table(defenders=range(2, 16), percents=TARGET_PERCENTS, a: int = 6, d: int = 6,
                    md_policy: str = "strict") -> dict[int, tuple[tuple[int, ...], tuple[int, ...]]]:
    """``{def_actual: (vc_row, ac_row)}`` of minimum attacker counts."""
    table = {}
    for dfn in defenders:
        vc_row = tuple(min_attackers(dfn, t, "vc", a, d, md_policy) for t in percents)
        ac_row = tuple(min_attackers(dfn, t, "ac", a, d) for t in percents)
        table[dfn] = (vc_row, ac_row)
    return table


def diff_published(md_policy: str = "strict") -> tuple[dict, list[dict]]:
    """Regenerate the published threshold table and list disagreeing cells.

    Each mismatch records both attacker counts together with the odds they
    achieve, so a reader can judge which side of the threshold the published
    value falls on.
    """
    computed = threshold_table(PUBLISHED_THRESHOLDS.keys(), TARGET_PERCENTS, md_policy=md_policy)
    model = LossModel.standard()
    mismatches = []
    for dfn, (pub_vc, pub_ac) in PUBLISHED_THRESHOLDS.items():
        ours_vc, ours_ac = computed[dfn]
        for i, percent in enumerate(TARGET_PERCENTS):
            for kind, published, ours in (("vc", pub_vc[i], ours_vc[i]), ("ac", pub_ac[i], ours_ac[i])):
                if published == ours:
                    continue
                if kind == "ac":
                    odds = {n: conquer_odds_exact(n, dfn) for n in (published, ours)}
                else:
                    odds = {n: vc_odds_k2_exact(n - 3, dfn - 1, model, md_policy) for n in (published, ours)}
                mismatches.append({
                    "kind": kind, "def_actual": dfn, "percent": percent,
                    "published": published, "computed": ours,
                    "odds_at_published": odds[published], "odds_at_computed": odds[ours],
                })
    return computed, mismatches


def engagement_table(a: int, d: int) -> list[dict]:
    """Every published polynomial row evaluated at ``(a, d)``."""
    rows = []
    for (m, n, k, l) in POLYNOMIAL_ROWS:
        rows.append({"m": m, "n": n, "k": k, "l": l,
                     "prob": polynomial_row(m, n, k, l, a, d)})
    return rows


def z_distribution_rows(M_max: int, model: LossModel | None = None) -> list[dict]:
    """Long-format rows of ``P(Z_M = j)`` and ``P(Z_M > j)`` for M = 1..M_max."""
    if M_max < 1:
        raise ValueError(f"M_max must be >= 1, got {M_max}")
    model = LossModel.standard() if model is None else model
    rows = []
    for M in range(1, M_max + 1):
        dist = distribution_of_Z(M, model)
        tail = Fraction(0) if model.is_exact else 0.0
        tails = []
        for mass in reversed(dist):
            tails.append(tail)
            tail += mass
        tails.reverse()
        for j, mass in enumerate(dist):
            rows.append({"M": M, "j": j, "prob": mass, "tail": tails[j]})
    return rows


def half_crossing(D: int, model: LossModel | None = None) -> int:
    """First extended-battle length ``M`` with ``P(Z_M >= D) >= 1/2``.

    At that length the box for ``D`` straddles the 50% line; ``2M - D`` is
    the matching virtual attacker count.
    """
    if D < 1:
        raise ValueError(f"D must be >= 1, got {D}")
    model = LossModel.standard() if model is None else model
    half = Fraction(1, 2) if model.is_exact else 0.5
    M = 1
    while True:
        dist = distribution_of_Z(M, model)
        if sum(dist[D:], 0 * half) >= half:
            return M
        M += 1
