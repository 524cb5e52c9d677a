"""Exact and approximate conquer odds for RISK-style dice battles."""

__version__ = "0.1.0"

from .approx import (  # noqa: E402
    ApproxParams,
    ThresholdReport,
    a_star,
    chain_rule,
    clt_min_total,
    loss_moments,
    rule_86_plus_2,
    s_interval,
    threshold_report,
    vc_normal_approx,
)
from .battle import (  # noqa: E402
    BattleUnits,
    LossModel,
    conquer_odds_exact,
    distribution_of_Z,
    negbin_pmf_stats,
    vc_bounds_k2,
    vc_odds_k1_lattice,
    vc_odds_k1_negbin,
    vc_odds_k2_exact,
)
from .engagement import (  # noqa: E402
    DiceRule,
    LossDistribution,
    closed_form_distribution,
    enumerate_engagement,
    prob_split,
    prob_top_attacker_wins,
    prob_top_defender_wins,
    prob_two_wins_attacker,
    prob_two_wins_defender,
)
from .report import OddsReport, battle_report, min_attackers  # noqa: E402
from .polynomials import polynomial_row  # noqa: E402
