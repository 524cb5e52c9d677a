"""Published reference values used by ``table --diff`` and the test-suite."""

from fractions import Fraction

TARGET_PERCENTS = (20, 30, 40, 50, 60, 70, 80)

# Minimum attacking armies for each target conquer chance, keyed by the
# number of defending armies: (virtual-conquer row, actual-conquer row).
PUBLISHED_THRESHOLDS = {
    2: ((4, 4, 5, 5, 5, 5, 6), (3, 3, 4, 4, 4, 5, 6)),
    3: ((4, 4, 5, 6, 6, 6, 8), (3, 3, 4, 5, 5, 6, 7)),
    4: ((5, 5, 6, 6, 7, 8, 9), (4, 4, 5, 6, 6, 7, 8)),
    5: ((5, 6, 6, 7, 8, 9, 10), (4, 5, 5, 6, 7, 8, 9)),
    6: ((6, 7, 7, 8, 9, 10, 11), (5, 6, 6, 7, 8, 9, 10)),
    7: ((6, 7, 8, 9, 10, 11, 12), (5, 6, 7, 8, 9, 10, 11)),
    8: ((7, 8, 9, 10, 11, 12, 13), (6, 7, 8, 9, 10, 11, 12)),
    9: ((8, 8, 10, 10, 12, 13, 14), (7, 8, 9, 10, 11, 12, 13)),
    10: ((8, 9, 10, 11, 13, 14, 15), (7, 8, 10, 10, 12, 13, 15)),
    11: ((9, 10, 11, 12, 13, 15, 16), (8, 9, 10, 11, 13, 14, 16)),
    12: ((9, 11, 12, 13, 14, 16, 17), (9, 10, 11, 12, 14, 15, 17)),
    13: ((10, 12, 13, 14, 15, 17, 18), (9, 11, 12, 13, 15, 16, 18)),
    14: ((11, 12, 13, 15, 16, 18, 19), (10, 11, 13, 14, 15, 17, 19)),
    15: ((12, 13, 14, 16, 17, 18, 20), (11, 12, 13, 15, 16, 18, 20)),
}

# Three attacker dice against two defender dice, six sides each.
STANDARD_P = Fraction(2890, 7776)
STANDARD_Q = Fraction(2611, 7776)
STANDARD_R = Fraction(2275, 7776)
STANDARD_MU = Fraction(8391, 7776)
STANDARD_SIGMA2 = Fraction(4420535, 6718464)
STANDARD_A_STAR_RATIO = Fraction(7161, 8391)
STANDARD_CLT_TERMS = (10.17, 13.97)

# Rounded headline figures: (actual attackers, actual defenders, VC chance).
HEADLINE_VC = ((10, 9, 0.513), (100, 90, 0.923))
