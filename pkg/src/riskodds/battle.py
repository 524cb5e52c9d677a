"""Battle-level odds: exact conquer odds and virtual-conquer (VC) odds.

Unit conventions for the standard two-comparison battle: with ``att`` actual
attacking units and ``dfn`` actual defending units, the virtual counts are
``A = att - 3`` and ``D = dfn - 1``; they count the losses each side can absorb
before it must roll fewer dice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .engagement import DiceRule, closed_form_distribution, max_dice_rule

RATIONAL_LIMIT = 40  # exact rationals only while actual units total at most this
MD_POLICIES = ("strict", "lenient")


class StateSpaceTooLarge(ValueError):
    """Exact rational evaluation requested beyond :data:`RATIONAL_LIMIT`."""


@dataclass(frozen=True)
class BattleUnits:
    att_actual: int
    def_actual: int

    @property
    def att_virtual(self) -> int:
        return self.att_actual - 3

    @property
    def def_virtual(self) -> int:
        return self.def_actual - 1

    @classmethod
    def from_virtual(cls, A: int, D: int) -> BattleUnits:
        return cls(A + 3, D + 1)


@dataclass(frozen=True)
class LossModel:
    """Per-engagement outcome probabilities with two units at stake.

    ``p``: defender loses 2, ``q``: each side loses 1, ``r``: attacker loses 2.
    """

    p: Fraction | float
    q: Fraction | float
    r: Fraction | float

    def __post_init__(self):
        for name in ("p", "q", "r"):
            value = getattr(self, name)
            if not 0 <= value <= 1:
                raise ValueError(f"{name}={value} is not a probability")
        total = self.p + self.q + self.r
        if self.is_exact:
            if total != 1:
                raise ValueError(f"p + q + r = {total}, expected exactly 1")
        elif abs(total - 1) > 1e-12:
            raise ValueError(f"p + q + r = {total}, expected 1")

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in (self.p, self.q, self.r))

    @classmethod
    def from_dice(cls, a: int = 6, d: int = 6) -> LossModel:
        """Three attacker dice against two defender dice."""
        dist = closed_form_distribution(DiceRule(3, 2, a, d, 2))
        return cls(dist[2], dist[1], dist[0])

    @classmethod
    def standard(cls) -> LossModel:
        return cls.from_dice(6, 6)

    def as_float(self) -> LossModel:
        return LossModel(float(self.p), float(self.q), float(self.r))

    def as_tuple(self) -> tuple:
        return (self.p, self.q, self.r)


def _check_policy(md_policy):
    if md_policy not in MD_POLICIES:
        raise ValueError(f"md_policy must be one of {MD_POLICIES}, got {md_policy!r}")


def _use_exact(exact, unit_total):
    if exact is None:
        return unit_total <= RATIONAL_LIMIT
    if exact and unit_total > RATIONAL_LIMIT:
        raise StateSpaceTooLarge(
            f"exact mode limited to {RATIONAL_LIMIT} total units, got {unit_total}"
        )
    return exact


# -- exact conquer odds -------------------------------------------------------


@lru_cache(maxsize=None)
def _engagement_probs(m, n, a, d, k, exact):
    dist = closed_form_distribution(DiceRule(m, n, a, d, k))
    return tuple(dist[l] if exact else float(dist[l]) for l in range(k + 1))


def conquer_table(att_max: int, def_max: int, a: int = 6, d: int = 6, exact: bool = False) -> list[list]:
    """Conquer odds for every ``2 <= att <= att_max``, ``0 <= dfn <= def_max``.

    ``table[att][dfn]`` is the probability that ``att`` attacking units
    eliminate ``dfn`` defenders when both sides always roll the maximum
    number of dice.  Row 1 (a lone attacker cannot attack) is all zero
    except the ``dfn = 0`` column.
    """
    one = Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0
    table = [[zero] * (def_max + 1) for _ in range(att_max + 1)]
    for att in range(1, att_max + 1):
        table[att][0] = one
    for att in range(2, att_max + 1):
        for dfn in range(1, def_max + 1):
            rule = max_dice_rule(att, dfn, a, d)
            probs = _engagement_probs(rule.m, rule.n, a, d, rule.k, exact)
            k = rule.k
            table[att][dfn] = sum(
                (probs[l] * table[att - (k - l)][dfn - l] for l in range(k + 1)), zero
            )
    return table


def conquer_odds_exact(att_actual: int, def_actual: int, a: int = 6, d: int = 6, exact: bool | None = None):
    """Probability the attacker eliminates every defender.

    Returns a :class:`~fractions.Fraction` when evaluated exactly (the default
    while ``att_actual + def_actual <= RATIONAL_LIMIT``), else a float.
    """
    if att_actual < 2:
        raise ValueError("cannot attack with the last unit: att_actual must be >= 2")
    if def_actual < 1:
        raise ValueError("def_actual must be >= 1")
    exact = _use_exact(exact, att_actual + def_actual)
    return conquer_table(att_actual, def_actual, a, d, exact)[att_actual][def_actual]


# -- one unit at stake --------------------------------------------------------


def _check_k1(A, D, p):
    if A < 1 or D < 1:
        raise ValueError(f"A and D must be >= 1, got A={A}, D={D}")
    if not 0 <= p <= 1:
        raise ValueError(f"p={p} is not a probability")


def _binom_term(n, j, x, i, y, k):
    """``C(n, j) * x**i * y**k``, exactly for rationals, else in floats.

    Large float cases go through log-gamma so ``C(n, j)`` cannot overflow.
    """
    if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
        return math.comb(n, j) * Fraction(x) ** i * Fraction(y) ** k
    if n <= 1000:
        return math.comb(n, j) * x**i * y**k
    if (x == 0 and i > 0) or (y == 0 and k > 0):
        return 0.0
    log_c = math.lgamma(n + 1) - math.lgamma(j + 1) - math.lgamma(n - j + 1)
    log_x = i * math.log(x) if i else 0.0
    log_y = k * math.log(y) if k else 0.0
    return math.exp(log_c + log_x + log_y)


def _total(terms):
    terms = list(terms)
    if all(isinstance(t, Fraction) for t in terms):
        return sum(terms, Fraction(0))
    return math.fsum(terms)


def _complement(p):
    return 1 - p if isinstance(p, (int, Fraction)) else 1.0 - p


def vc_odds_k1_negbin(A: int, D: int, p):
    """P(win ``D`` engagements before losing ``A``): negative binomial CDF."""
    _check_k1(A, D, p)
    q = _complement(p)
    # C(D+j-1, D-1) p^D q^j
    return _total(_binom_term(D + j - 1, D - 1, p, D, q, j) for j in range(A))


def vc_odds_k1_lattice(A: int, D: int, p):
    """Same probability via extended battles of ``A + D`` engagements.

    A binomial tail plus the mutual-destruction paths whose final step is a
    defender loss.
    """
    _check_k1(A, D, p)
    q = _complement(p)
    n = A + D
    md_term = _binom_term(n - 1, A - 1, p, D, q, A)
    tail = [_binom_term(n, h, p, n - h, q, h) for h in range(A)]
    return _total([md_term, *tail])


def vc_k1_bounds(A: int, D: int, p) -> tuple:
    """Binomial sums strictly bracketing the one-unit VC odds for 0 < p < 1."""
    _check_k1(A, D, p)
    q = _complement(p)
    n = A + D
    terms = [_binom_term(n, h, p, n - h, q, h) for h in range(A + 1)]
    return _total(terms[:A]), _total(terms)


def negbin_pmf(D: int, A: int, p):
    """``C(D+A-1, D-1) p**D q**A``: exactly ``A`` losses before the ``D``-th win."""
    if A < 0:
        return 0
    return _binom_term(D + A - 1, D - 1, p, D, _complement(p), A)


def negbin_pmf_stats(D: int, p) -> tuple[float, float, float]:
    """Mean, standard deviation and mode threshold of the loss count.

    Below the threshold ``(D - 1) q / p`` the pmf is increasing in ``A``;
    above it, decreasing.
    """
    if D < 1:
        raise ValueError(f"D must be >= 1, got {D}")
    if not 0 < p < 1:
        raise ValueError(f"p must lie strictly between 0 and 1, got {p}")
    p = float(p)
    q = 1.0 - p
    return q * D / p, math.sqrt(q * D) / p, (D - 1) * q / p


# -- two units at stake -------------------------------------------------------


def vc_table_k2(A_max: int, D_max: int, model: LossModel, md_policy: str = "strict", exact: bool = False) -> list[list]:
    """First-passage VC odds for all ``0 <= A <= A_max``, ``0 <= D <= D_max``.

    ``table[A][D]`` is the probability the defender's loss tally reaches ``D``
    strictly before the attacker's reaches ``A``.  Entries with ``A = 0`` or
    ``D = 0`` hold the terminal values.
    """
    _check_policy(md_policy)
    if exact and not model.is_exact:
        raise ValueError("exact evaluation needs a rational loss model")
    if exact:
        p, q, r = (Fraction(v) for v in model.as_tuple())
        one, zero = Fraction(1), Fraction(0)
    else:
        p, q, r = (float(v) for v in model.as_tuple())
        one, zero = 1.0, 0.0
    md_value = one if md_policy == "lenient" else zero

    table = [[zero] * (D_max + 1) for _ in range(A_max + 1)]
    for A in range(1, A_max + 1):
        table[A][0] = one
    table[0][0] = md_value

    def at(A, D):
        if D <= 0:
            return one if A > 0 else md_value
        if A <= 0:
            return zero
        return table[A][D]

    for A in range(1, A_max + 1):
        for D in range(1, D_max + 1):
            table[A][D] = p * at(A, D - 2) + q * at(A - 1, D - 1) + r * at(A - 2, D)
    return table


def vc_odds_k2_exact(A: int, D: int, model: LossModel | None = None, md_policy: str = "strict", exact: bool | None = None):
    """VC odds with two units at stake per engagement.

    ``A`` and ``D`` are virtual units.  Non-positive values are accepted and
    resolve to the terminal outcome.
    """
    _check_policy(md_policy)
    model = LossModel.standard() if model is None else model
    if A <= 0 or D <= 0:
        if D <= 0 and A > 0:
            return 1
        if A <= 0 and D > 0:
            return 0
        return 1 if md_policy == "lenient" else 0
    if exact is None:
        exact = model.is_exact and A + D + 4 <= RATIONAL_LIMIT
    else:
        exact = _use_exact(exact, A + D + 4)
    return vc_table_k2(A, D, model, md_policy, exact)[A][D]


def extended_length(A: int, D: int) -> int:
    """Engagements in an extended battle: ``ceil((A + D - 1) / 2)``."""
    return -(-(A + D - 1) // 2)


def distribution_of_Z(M: int, model: LossModel | None = None) -> list:
    """``[P(Z_M = j) for j in 0..2M]`` where Z_M sums M i.i.d. defender losses."""
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    model = LossModel.standard() if model is None else model
    step = [model.r, model.q, model.p]  # index = defender losses
    zero = Fraction(0) if model.is_exact else 0.0
    dist = [zero + 1]
    for _ in range(M):
        nxt = [zero] * (len(dist) + 2)
        for j, mass in enumerate(dist):
            if mass == 0:
                continue
            for l, s in enumerate(step):
                nxt[j + l] += mass * s
        dist = nxt
    return dist


def vc_bounds_k2(A: int, D: int, model: LossModel | None = None) -> tuple:
    """``(P(Z_M > D), P(Z_M >= D))`` with ``M = ceil((A + D - 1) / 2)``."""
    if A < 1 or D < 1:
        raise ValueError(f"A and D must be >= 1, got A={A}, D={D}")
    model = LossModel.standard() if model is None else model
    dist = distribution_of_Z(extended_length(A, D), model)
    total = (lambda xs: sum(xs, Fraction(0))) if model.is_exact else math.fsum
    return total(dist[D + 1 :]), total(dist[D:])
