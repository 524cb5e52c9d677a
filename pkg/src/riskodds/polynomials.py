"""Polynomial specializations of the engagement closed forms.

Each row ``(m, n, k, l)`` carries two rational polynomials in the side counts:
one for ``a >= d`` and one for ``a <= d``.  They are transcribed as published
so they can be checked against :mod:`riskodds.engagement`.
"""

from __future__ import annotations

from fractions import Fraction as F

from .engagement import (
    EngagementError,
    _check_sides,
    prob_split,
    prob_top_attacker_wins,
    prob_top_defender_wins,
    prob_two_wins_attacker,
    prob_two_wins_defender,
)

# (m, n, k, l) -> (a >= d polynomial, a <= d polynomial)
POLYNOMIAL_ROWS = {
    (1, 1, 1, 1): (
        lambda a, d: F(2 * a - d - 1, 2 * a),
        lambda a, d: F(a - 1, 2 * d),
    ),
    (1, 1, 1, 0): (
        lambda a, d: F(d + 1, 2 * a),
        lambda a, d: F(2 * d - a + 1, 2 * d),
    ),
    (2, 1, 1, 1): (
        lambda a, d: F(6 * a**2 - 2 * d**2 - 3 * d - 1, 6 * a**2),
        lambda a, d: F(4 * a**2 - 3 * a - 1, 6 * a * d),
    ),
    (2, 1, 1, 0): (
        lambda a, d: F(2 * d**2 + 3 * d + 1, 6 * a**2),
        lambda a, d: F(6 * a * d - 4 * a**2 + 3 * a + 1, 6 * a * d),
    ),
    (3, 1, 1, 1): (
        lambda a, d: F(4 * a**3 - d**3 - 2 * d**2 - d, 4 * a**3),
        lambda a, d: F(3 * a**2 - 2 * a - 1, 4 * a * d),
    ),
    (3, 1, 1, 0): (
        lambda a, d: F(d**3 + 2 * d**2 + d, 4 * a**3),
        lambda a, d: F(4 * a * d - 3 * a**2 + 2 * a + 1, 4 * a * d),
    ),
    (1, 2, 1, 1): (
        lambda a, d: F(6 * a * d - 4 * d**2 - 3 * d + 1, 6 * a * d),
        lambda a, d: F(2 * a**2 - 3 * a + 1, 6 * d**2),
    ),
    (1, 2, 1, 0): (
        lambda a, d: F(4 * d**2 + 3 * d - 1, 6 * a * d),
        lambda a, d: F(6 * d**2 - 2 * a**2 + 3 * a - 1, 6 * d**2),
    ),
    (2, 2, 2, 2): (
        lambda a, d: F(6 * a**2 * d - 4 * a * d**2 - 6 * a * d - 2 * a + 2 * d**2 + 3 * d + 1, 6 * a**2 * d),
        lambda a, d: F(2 * a**3 - 4 * a**2 + a + 1, 6 * a * d**2),
    ),
    (2, 2, 2, 1): (
        lambda a, d: F(4 * a * d**2 + 6 * a * d + 2 * a - 2 * d**3 - 6 * d**2 - 4 * d, 6 * a**2 * d),
        lambda a, d: F(-2 * a**3 + 4 * a**2 * d + 6 * a**2 - 6 * a * d - 4 * a + 2 * d, 6 * a * d**2),
    ),
    (2, 2, 2, 0): (
        lambda a, d: F(2 * d**3 + 4 * d**2 + d - 1, 6 * a**2 * d),
        lambda a, d: F(-4 * a**2 * d - 2 * a**2 + 6 * a * d**2 + 6 * a * d + 3 * a - 2 * d - 1, 6 * a * d**2),
    ),
    (3, 2, 2, 2): (
        lambda a, d: F(
            12 * a**3 * d - 6 * a * d**3 - 12 * a * d**2 - 12 * a * d - 6 * a + 3 * d**3 + 10 * d**2 + 9 * d + 2,
            12 * a**3 * d,
        ),
        lambda a, d: F(6 * a**4 - 9 * a**3 - 2 * a**2 + 3 * a + 2, 12 * a**2 * d**2),
    ),
    (3, 2, 2, 1): (
        lambda a, d: F(
            30 * a * d**3 + 60 * a * d**2 + 60 * a * d + 30 * a - 12 * d**4 - 45 * d**3 - 70 * d**2 - 45 * d - 8,
            60 * a**3 * d,
        ),
        lambda a, d: F(
            -42 * a**4 + 60 * a**3 * d - 60 * a**2 * d + 75 * a**3 - 10 * a**2 - 15 * a - 8,
            60 * a**2 * d**2,
        ),
    ),
    (3, 2, 2, 0): (
        lambda a, d: F(6 * d**4 + 15 * d**3 + 10 * d**2 - 1, 30 * a**3 * d),
        lambda a, d: F(
            6 * a**4 - 30 * a**3 * d - 15 * a**3 + 30 * a**2 * d**2 + 30 * a**2 * d + 10 * a**2 - 1,
            30 * a**2 * d**2,
        ),
    ),
}


def polynomial_row(m: int, n: int, k: int, l: int, a: int, d: int, branch: str | None = None) -> F:
    """Evaluate the published polynomial for row ``(m, n, k, l)``.

    ``branch`` is ``"ge"`` (a >= d) or ``"le"`` (a <= d); by default it is
    chosen from ``a`` and ``d``, preferring ``"ge"`` when they are equal.
    """
    try:
        ge, le = POLYNOMIAL_ROWS[(m, n, k, l)]
    except KeyError:
        raise EngagementError(f"no table row for (m, n, k, l) = {(m, n, k, l)}") from None
    _check_sides(m, n, a, d)
    if branch is None:
        branch = "ge" if a >= d else "le"
    if branch == "ge":
        if a < d:
            raise EngagementError(f"'ge' branch requires a >= d, got a={a}, d={d}")
        return ge(a, d)
    if branch == "le":
        if a > d:
            raise EngagementError(f"'le' branch requires a <= d, got a={a}, d={d}")
        return le(a, d)
    raise EngagementError(f"unknown branch {branch!r}")


def general_formula(m: int, n: int, k: int, l: int, a: int, d: int) -> F:
    """The general closed form that row ``(m, n, k, l)`` specializes."""
    if k == 1:
        return prob_top_attacker_wins(m, n, a, d) if l == 1 else prob_top_defender_wins(m, n, a, d)
    return {2: prob_two_wins_attacker, 1: prob_split, 0: prob_two_wins_defender}[l](m, n, a, d)


def polynomial_mismatches(max_sides: int = 12) -> list[dict]:
    """Cells where a polynomial disagrees with the general closed form.

    Covers both branches of every row over ``1 <= a, d <= max_sides``.
    """
    found = []
    for row, _ in POLYNOMIAL_ROWS.items():
        for a in range(1, max_sides + 1):
            for d in range(1, max_sides + 1):
                expected = general_formula(*row, a, d)
                for branch in ("ge", "le"):
                    if (branch == "ge" and a < d) or (branch == "le" and a > d):
                        continue
                    got = polynomial_row(*row, a, d, branch=branch)
                    if got != expected:
                        found.append(
                            {"row": row, "a": a, "d": d, "branch": branch, "table": got, "oracle": expected}
                        )
    return found
