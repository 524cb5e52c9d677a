"""Normal approximation to VC odds and the rules of thumb derived from it."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .battle import LossModel


class DegenerateModel(ValueError):
    """The loss model has zero spread or a boundary mean."""


@dataclass(frozen=True)
class ApproxParams:
    """Mean and variance of defender losses in one engagement."""

    mu: Fraction | float
    sigma2: Fraction | float
    model: LossModel

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)


@dataclass(frozen=True)
class ThresholdReport:
    a_star: float
    a1: float
    a2: float
    s: float
    interval_width: float
    percent_increase: float
    clt_min_total: float


def loss_moments(model: LossModel | None = None) -> ApproxParams:
    model = LossModel.standard() if model is None else model
    p, q, r = model.as_tuple()
    return ApproxParams(2 * p + q, p * q + 4 * p * r + q * r, model)


def variance_by_definition(model: LossModel):
    """Variance of defender losses written as E[(X - mu)**2]."""
    p, q, r = model.as_tuple()
    mu = 2 * p + q
    return p * (2 - mu) ** 2 + q * (1 - mu) ** 2 + r * mu**2


def _params(params):
    return loss_moments() if params is None else params


def a_star_ratio(params: ApproxParams | None = None):
    """``(2 - mu) / mu``: expected attacker losses per defender loss."""
    params = _params(params)
    if params.mu == 0:
        raise DegenerateModel("mean defender loss is zero")
    return (2 - params.mu) / params.mu


def a_star(D: float, params: ApproxParams | None = None):
    """Virtual attackers at which the expected defender losses equal ``D``."""
    if D < 1:
        raise ValueError(f"D must be >= 1, got {D}")
    return a_star_ratio(params) * D


def s_interval(D: float, s: float, params: ApproxParams | None = None) -> tuple[float, float]:
    """Attacker counts putting ``D`` at ``s`` standard deviations either side of the mean.

    Solves ``D = (A + D) mu / 2 +- s sigma sqrt((A + D) / 2)`` for ``A``.
    """
    params = _params(params)
    if s <= 0:
        raise ValueError(f"s must be positive, got {s}")
    centre = float(a_star(D, params))
    mu = float(params.mu)
    ss = s * params.sigma
    root = math.sqrt(4 * D * mu + ss**2)
    return centre + ss / mu**2 * (ss - root), centre + ss / mu**2 * (ss + root)


def clt_min_total(params: ApproxParams | None = None) -> float:
    """Smallest ``A + D`` for which the normal approximation is considered safe.

    Requires zero and the maximum possible loss to sit three standard
    deviations away from the mean.
    """
    params = _params(params)
    mu = float(params.mu)
    if not 0 < mu < 2:
        raise DegenerateModel(f"mean defender loss must lie in (0, 2), got {mu}")
    sigma2 = float(params.sigma2)
    return max(18 * sigma2 / mu**2, 9 * sigma2 / (2 * (1 - mu / 2) ** 2))


def clt_terms(params: ApproxParams | None = None) -> tuple[float, float]:
    """The two lower bounds whose maximum is :func:`clt_min_total`."""
    params = _params(params)
    mu, sigma2 = float(params.mu), float(params.sigma2)
    return 18 * sigma2 / mu**2, 9 * sigma2 / (2 * (1 - mu / 2) ** 2)


def threshold_report(D: float, s: float, params: ApproxParams | None = None) -> ThresholdReport:
    params = _params(params)
    a1, a2 = s_interval(D, s, params)
    return ThresholdReport(
        a_star=float(a_star(D, params)),
        a1=a1,
        a2=a2,
        s=s,
        interval_width=a2 - a1,
        percent_increase=a2 / a1 - 1,
        clt_min_total=clt_min_total(params),
    )


def interval_width_formula(D: float, s: float, params: ApproxParams | None = None) -> float:
    params = _params(params)
    mu, ss = float(params.mu), s * params.sigma
    return 2 * ss / mu**2 * math.sqrt(4 * D * mu + ss**2)


def percent_increase_formula(D: float, s: float, params: ApproxParams | None = None) -> float:
    """Closed form of ``A2 / A1 - 1``."""
    params = _params(params)
    mu, ss = float(params.mu), s * params.sigma
    return 2 / ((2 - mu) / (2 * ss) * math.sqrt(D * mu) - 1)


def normal_sf(x: float, mean: float, sd: float) -> float:
    """``P(N(mean, sd) > x)`` via the complementary error function."""
    return 0.5 * math.erfc((x - mean) / (sd * math.sqrt(2)))


def vc_normal_approx(A: float, D: float, params: ApproxParams | None = None) -> float:
    """Normal approximation to VC odds: ``P(Z > D)`` with matched moments.

    With zero variance the step is deterministic and the result is 1 when
    the expected losses exceed ``D``, else 0.
    """
    params = _params(params)
    if A < 1 or D < 1:
        raise ValueError(f"A and D must be >= 1, got A={A}, D={D}")
    half = (A + D) / 2
    mean = half * float(params.mu)
    if params.sigma2 == 0:
        return 1.0 if mean > D else 0.0
    return normal_sf(D, mean, math.sqrt(half) * params.sigma)


def rule_86_plus_2(def_actual: float) -> float:
    """Actual attackers needed for an even chance of virtually conquering."""
    if def_actual < 1:
        raise ValueError(f"def_actual must be >= 1, got {def_actual}")
    return float(Fraction(7161, 8391) * (Fraction(def_actual) - 1) + 3)


def chain_rule(def_total: int, territories: int) -> float:
    """Attackers needed against defenders spread over a chain of territories.

    One unit stays behind in each conquered territory.
    """
    if territories < 1:
        raise ValueError(f"territories must be >= 1, got {territories}")
    if def_total < territories:
        raise ValueError("each territory holds at least one defender")
    return 0.86 * (def_total - territories - 1) + 3 + territories
