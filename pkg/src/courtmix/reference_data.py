"""Transcribed reference values used as cross-checks.

Seatings are listed in global position order 0..23. Numeric tables carry
the precision they were published with; the tolerances used to compare
against them live with the checks, not here.
"""

from __future__ import annotations


def _seat(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split())


# Effect of each named sequence on the reference seating.
EFFECTS = {
    "X": _seat("1 0 2 4 7 8 5 3 6 9 10 11 12 13 14 15 16 17 18 19 20 21 22 23"),
    "F": _seat("1 0 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19 20 21 22 23"),
    "G": _seat("2 1 0 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19 20 21 22 23"),
    "H": _seat("8 1 2 3 4 5 6 7 0 9 10 11 12 13 14 15 16 17 18 19 20 21 22 23"),
    "EEEE": tuple(range(24)),
    "APERIODIC": tuple(range(24)),
}

# Step-by-step trajectory of X from the reference seating.
X_TRAJECTORY = (
    ("AE", _seat("6 0 1 3 4 5 14 13 12 7 8 2 15 16 17 11 10 9 18 19 20 21 22 23")),
    ("B^2D^3EEE", _seat("6 0 1 8 7 3 2 5 4 21 22 23 12 13 14 15 16 17 18 19 20 9 10 11")),
    ("A^2C^3E", _seat("5 2 6 8 7 3 18 19 20 4 1 0 15 16 17 23 22 21 14 13 12 9 10 11")),
    ("B^3D^3EEE", _seat("5 2 6 0 1 4 3 7 8 9 10 11 20 19 18 15 16 17 14 13 12 21 22 23")),
    ("A^5E", _seat("2 6 8 0 1 4 18 19 20 5 3 7 15 16 17 11 10 9 14 13 12 21 22 23")),
    ("B^5EEE", _seat("2 6 8 1 4 7 0 5 3 9 10 11 20 19 18 15 16 17 14 13 12 21 22 23")),
    ("AE", _seat("0 2 6 1 4 7 18 19 20 5 3 8 15 16 17 11 10 9 14 13 12 21 22 23")),
    ("B^5EEE", _seat("0 2 6 4 7 8 1 5 3 9 10 11 20 19 18 15 16 17 14 13 12 21 22 23")),
    ("AC^2EEEEC", _seat("1 0 2 4 7 8 5 3 6 9 10 11 12 13 14 15 16 17 18 19 20 21 22 23")),
)

# Trajectory of F = EEEE X X X EEEE, one entry per X.
F_TRAJECTORY = (
    ("EEEEX", _seat("1 0 2 4 7 8 5 3 6 9 10 11 12 13 14 15 16 17 18 19 20 21 22 23")),
    ("X", _seat("0 1 2 7 3 6 8 4 5 9 10 11 12 13 14 15 16 17 18 19 20 21 22 23")),
    ("XEEEE", _seat("1 0 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19 20 21 22 23")),
)

# Seating after each panel of the odd-length closed walk (see dsl.APERIODIC_PANELS).
APERIODIC_CHECKPOINTS = (
    _seat("14 7 6 3 4 5 0 21 22 8 2 1 23 15 16 18 11 10 19 20 9 13 12 17"),
    _seat("14 7 6 3 4 5 8 2 1 10 11 18 17 12 13 0 20 19 9 16 15 21 22 23"),
    _seat("11 10 14 3 4 5 9 16 15 8 2 1 17 12 0 13 7 6 18 19 20 21 22 23"),
    _seat("9 12 0 3 4 11 6 7 13 14 10 5 1 2 8 15 16 17 18 19 20 21 22 23"),
    _seat("0 7 6 1 2 8 4 9 3 10 5 11 12 13 14 15 16 17 18 19 20 21 22 23"),
    _seat("9 0 7 3 4 5 1 6 10 11 8 2 12 13 14 15 16 17 18 19 20 21 22 23"),
    _seat("0 2 8 3 4 5 6 1 7 9 10 11 12 13 14 15 16 17 18 19 20 21 22 23"),
    tuple(range(24)),
)
APERIODIC_PANEL_STEPS = (13, 19, 25, 10, 20, 12, 36, 28)

# Friend-chain transition matrix as printed, row -> {column: fraction text}.
TRANSCRIBED_FRIEND_ROWS: dict[str, dict[str, str]] = {
    "1+": {"1+": "1/4", "1-": "1/4", "2+": "1/4", "2-": "1/4"},
    "1-": {"1-": "1/4", "1T2": "1/36", "1T3": "2/36", "1T4": "3/36", "1T5": "2/36", "1T6": "1/36", "2O1": "3/36", "2O2": "2/36", "2O3": "1/36", "2O5": "1/36", "2O6": "2/36", "2-": "1/4"},
    "1T2": {"1T2": "1/3", "1O2": "1/6", "2T2": "1/3", "2O2": "1/6"},
    "1T3": {"1T3": "1/6", "1O3": "1/3", "2T3": "1/6", "2O3": "1/3"},
    "1T4": {"1O4": "1/2", "2O4": "1/2"},
    "1T5": {"1T5": "1/6", "1O5": "1/3", "2T5": "1/6", "2O5": "1/3"},
    "1T6": {"1T6": "1/3", "1O6": "1/6", "2T6": "1/3", "2O6": "1/6"},
    "1O1": {"1+": "1/12", "1O1": "1/4", "1O2": "1/12", "1O6": "1/12", "2T2": "1/24", "2T6": "1/24", "2+": "10/24"},
    "1O2": {"1+": "1/6", "1O1": "3/24", "1O2": "1/6", "1O3": "1/24", "2T2": "1/12", "2T3": "1/12", "2+": "1/3"},
    "1O3": {"1+": "1/3", "1O2": "1/12", "1O3": "1/12", "2T2": "1/24", "2T3": "1/6", "2T4": "1/8", "2+": "1/6"},
    "1O4": {"1+": "5/12", "1O3": "1/24", "1O5": "1/24", "2T3": "1/12", "2T4": "3/12", "2T5": "1/12", "2+": "1/12"},
    "1O5": {"1+": "1/3", "1O5": "1/12", "1O6": "1/12", "2T4": "3/24", "2T5": "1/6", "2T6": "1/24", "2+": "1/6"},
    "1O6": {"1+": "1/6", "1O1": "3/24", "1O5": "1/24", "1O6": "1/6", "2T5": "1/12", "2T6": "1/12", "2+": "1/3"},
    "2T2": {"1-": "1/6", "1T2": "1/3", "2T2": "1/3", "2+": "1/6"},
    "2T3": {"1-": "1/3", "1T3": "1/6", "2T3": "1/6", "2+": "1/3"},
    "2T4": {"1-": "1/2", "2+": "1/2"},
    "2T5": {"1-": "1/3", "1T5": "1/6", "2T5": "1/6", "2+": "1/3"},
    "2T6": {"1-": "1/6", "1T6": "1/3", "2T6": "1/3", "2+": "1/6"},
    "2O1": {"1+": "1/12", "1-": "5/12", "2T2": "1/24", "2T6": "1/24", "2O1": "1/4", "2O2": "1/12", "2O6": "1/12"},
    "2O2": {"1+": "1/6", "1-": "1/3", "2T2": "1/12", "2T3": "1/12", "2O1": "3/24", "2O2": "1/6", "2O3": "1/24"},
    "2O3": {"1+": "1/3", "1-": "1/6", "2T2": "1/24", "2T3": "1/6", "2T4": "3/24", "2O2": "1/12", "2O3": "1/12"},
    "2O4": {"1+": "5/12", "1-": "1/12", "2T3": "1/12", "2T4": "3/12", "2T5": "1/12", "2O3": "1/24", "2O5": "1/24"},
    "2O5": {"1+": "1/3", "1-": "1/6", "2T4": "3/24", "2T5": "1/6", "2T6": "1/24", "2O5": "1/12", "2O6": "1/12"},
    "2O6": {"1+": "1/6", "1-": "1/3", "2T5": "1/12", "2T6": "1/12", "2O1": "3/24", "2O5": "1/24", "2O6": "1/6"},
    "2+": {"1T2": "1/36", "1T3": "2/36", "1T4": "3/36", "1T5": "2/36", "1T6": "1/36", "1O1": "3/36", "1O2": "2/36", "1O3": "1/36", "1O5": "1/36", "1O6": "2/36", "2+": "1/4", "2-": "1/4"},
    "2-": {"1+": "1/4", "1O2": "1/36", "1O3": "2/36", "1O4": "3/36", "1O5": "2/36", "1O6": "1/36", "2O2": "1/36", "2O3": "2/36", "2O4": "3/36", "2O5": "2/36", "2O6": "1/36", "2-": "1/4"},
}

# Worst-start distances, n = 1..9.
FRIEND_DISTANCES = {
    "d_star": (0.957, 0.638, 0.375, 0.263, 0.180, 0.122, 0.083, 0.058, 0.040),
    "s_star": (1, 1, 1, 0.933, 0.508, 0.374, 0.297, 0.223, 0.160),
    "l2": (4.690, 2.254, 1.544, 1.05, 0.71, 0.492, 0.339, 0.233, 0.159),
}
BIG_FRIEND_DISTANCES = {
    "d_star": (0.978, 0.713, 0.520, 0.340, 0.242, 0.168, 0.125, 0.085, 0.058),
    "s_star": (1, 1, 1, 1, 0.827, 0.681, 0.461, 0.391, 0.272),
    "l2": (6.708, 2.977, 1.868, 1.228, 0.827, 0.563, 0.387, 0.266, 0.183),
}
LAZY_DISTANCES = {
    "d_star": (0.5, 0.25, 0.25, 0.125, 0.125, 0.0625, 0.0625, 0.0313, 0.0313),
}

# Mean number of games out of 8 with friend opposite (OT) / same team (ST).
MEAN_GAMES = {
    "1+": (1.607, 1.093), "1-": (1.962, 1.515),
    "1T2": (1.803, 3.773), "1T3": (2.107, 2.725), "1T4": (2.222, 2.314),
    "1T5": (2.107, 2.725), "1T6": (1.803, 3.773),
    "1O1": (3.059, 1.421), "1O2": (2.894, 1.499), "1O3": (2.606, 1.550),
    "1O4": (2.482, 1.523), "1O5": (2.606, 1.550), "1O6": (2.894, 1.499),
    "2T2": (1.493, 3.778), "2T3": (1.678, 2.698), "2T4": (1.700, 2.297),
    "2T5": (1.678, 2.698), "2T6": (1.493, 3.778),
    "2O1": (3.059, 1.421), "2O2": (2.894, 1.499), "2O3": (2.606, 1.550),
    "2O4": (2.482, 1.523), "2O5": (2.606, 1.550), "2O6": (2.894, 1.499),
    "2+": (1.962, 1.515), "2-": (1.940, 1.103),
}

# Probability friend is never an opponent / never a teammate over 8 games.
# Starts where the probability is structurally zero are omitted.
NEVER_OPPONENT = {
    "1+": 0.098, "1-": 0.057, "1T2": 0.141, "1T3": 0.026, "1T5": 0.026, "1T6": 0.141,
    "2T2": 0.168, "2T3": 0.081, "2T4": 0.082, "2T5": 0.081, "2T6": 0.168,
    "2+": 0.057, "2-": 0.057,
}
NEVER_TEAMMATE = {
    "1+": 0.403, "1-": 0.292, "1O1": 0.344, "1O2": 0.317, "1O3": 0.271,
    "1O4": 0.251, "1O5": 0.271, "1O6": 0.317,
    "2O1": 0.344, "2O2": 0.317, "2O3": 0.271, "2O4": 0.251, "2O5": 0.271,
    "2O6": 0.317, "2+": 0.292, "2-": 0.393,
}

# Encounter-everyone Monte Carlo estimates, (ego court, games) -> probability.
ENCOUNTER_ALL = {
    ("first", 8): 0.595,
    ("second", 8): 0.675,
    ("first", 10): 0.814,
    ("second", 10): 0.857,
}

# Friend label by friend position, ego at the canonical position (20 in C, 7 in A).
_RIGHT = {p: "+" for p in (3, 4, 5, 9, 10, 11)} | {p: "-" for p in (15, 16, 17, 21, 22, 23)}
FRIEND_POSITION_FIXTURE = {
    20: {
        0: "1O1", 1: "1O6", 2: "1O5", 6: "1O2", 7: "1O3", 8: "1O4",
        12: "1T4", 13: "1T3", 14: "1T2", 18: "1T5", 19: "1T6",
    } | {p: "1" + s for p, s in _RIGHT.items()},
    7: {
        0: "2T5", 1: "2T4", 2: "2T3", 6: "2T6", 8: "2T2",
        12: "2O2", 13: "2O1", 14: "2O6", 18: "2O3", 19: "2O4", 20: "2O5",
    } | {p: "2" + s for p, s in _RIGHT.items()},
}
