"""Mixing metrics and exact linear-system answers on reduced chains."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal

import numpy as np

from . import exact
from .chains import ReducedChain, UnknownState
from .exact import SingularSystem

__all__ = [
    "DistanceReport",
    "SingularSystem",
    "Unreachable",
    "UnknownState",
    "distance_table",
    "expected_hitting_time",
    "expected_occupancy",
    "first_passage_probability",
    "fundamental_matrix",
    "independent_baseline",
    "l2_distance_worst",
    "leave_time_distribution",
    "mean_first_passage_from_fundamental",
    "mean_games_table",
    "n_step_matrix",
    "never_probability",
    "never_table",
    "separation_distance_worst",
    "variation_distance_worst",
]


class Unreachable(ValueError):
    """The target cannot be reached almost surely, so the mean is infinite."""


def _check_n(n: int, low: int) -> None:
    if n < low:
        raise ValueError(f"n must be >= {low}, got {n}")


def n_step_matrix(chain: ReducedChain, n: int, exact_mode: bool = False):
    """``P**n`` as floats, or as exact Fractions when ``exact_mode`` (n <= 16)."""
    _check_n(n, 0)
    if exact_mode:
        if n > 16:
            raise ValueError("exact mode is limited to n <= 16")
        return exact.matpow(chain.P, n)
    return np.linalg.matrix_power(chain.matrix(), n)


def variation_distance_worst(chain: ReducedChain, n: int) -> float:
    _check_n(n, 1)
    Pn = n_step_matrix(chain, n)
    return float(np.max(0.5 * np.abs(Pn - chain.pi_vector()).sum(axis=1)))


def separation_distance_worst(chain: ReducedChain, n: int) -> float:
    _check_n(n, 1)
    Pn = n_step_matrix(chain, n)
    return float(np.max(1.0 - Pn / chain.pi_vector()))


def l2_distance_worst(chain: ReducedChain, n: int) -> float:
    _check_n(n, 1)
    Pn = n_step_matrix(chain, n)
    pi = chain.pi_vector()
    return float(np.max(np.sqrt(((Pn - pi) ** 2 / pi).sum(axis=1))))


@dataclass(frozen=True)
class DistanceReport:
    chain: str
    rows: tuple[tuple[int, float, float, float], ...]

    def column(self, name: str) -> tuple[float, ...]:
        k = {"d_star": 1, "s_star": 2, "l2": 3}[name]
        return tuple(r[k] for r in self.rows)

    def as_records(self) -> list[dict]:
        return [{"n": n, "d_star": d, "s_star": s, "l2": l2} for n, d, s, l2 in self.rows]


def distance_table(chain: ReducedChain, max_n: int = 9) -> DistanceReport:
    pi = chain.pi_vector()
    P = chain.matrix()
    Pn = np.eye(len(chain))
    rows = []
    for n in range(1, max_n + 1):
        Pn = Pn @ P
        d = float(np.max(0.5 * np.abs(Pn - pi).sum(axis=1)))
        s = float(np.max(1.0 - Pn / pi))
        l2 = float(np.max(np.sqrt(((Pn - pi) ** 2 / pi).sum(axis=1))))
        rows.append((n, d, s, l2))
    return DistanceReport(chain.name, tuple(rows))


def _mask(chain: ReducedChain, states: Iterable[str]) -> np.ndarray:
    m = np.zeros(len(chain), dtype=bool)
    m[chain.indices(states)] = True
    return m


def expected_occupancy(chain: ReducedChain, start: str, horizon: int, target_set: Iterable[str]) -> float:
    """Mean number of games among the first ``horizon`` (the starting game
    included) whose state lies in ``target_set``."""
    _check_n(horizon, 1)
    i = chain.index(start)
    target = _mask(chain, target_set)
    P = chain.matrix()
    row = np.zeros(len(chain))
    row[i] = 1.0
    total = 0.0
    for _ in range(horizon):
        total += row[target].sum()
        row = row @ P
    return float(total)


def never_probability(chain: ReducedChain, start: str, horizon: int, avoid_set: Iterable[str]) -> float:
    """Chance that none of the first ``horizon`` games is in ``avoid_set``."""
    _check_n(horizon, 1)
    avoid = _mask(chain, avoid_set)
    i = chain.index(start)
    if avoid[i]:
        return 0.0
    Q = chain.matrix()
    Q[:, avoid] = 0.0
    row = np.zeros(len(chain))
    row[i] = 1.0
    for _ in range(horizon - 1):
        row = row @ Q
    return float(row.sum())


def _reaches(chain: ReducedChain, goal: set[int], blocked: set[int]) -> set[int]:
    """States that can reach ``goal`` without passing through ``blocked``."""
    n = len(chain)
    seen = set(goal)
    frontier = list(goal)
    while frontier:
        j = frontier.pop()
        for i in range(n):
            if i not in seen and i not in blocked and chain.P[i][j] != 0:
                seen.add(i)
                frontier.append(i)
    return seen


def _forward(chain: ReducedChain, start: int, stop: set[int]) -> set[int]:
    seen = {start}
    frontier = [start]
    while frontier:
        i = frontier.pop()
        if i in stop:
            continue
        for j, p in enumerate(chain.P[i]):
            if p and j not in seen:
                seen.add(j)
                frontier.append(j)
    return seen


def expected_hitting_time(chain: ReducedChain, start: str, target_set: Iterable[str]) -> Fraction:
    """Mean number of steps until the chain first sits in ``target_set``."""
    target = set(chain.indices(target_set))
    i = chain.index(start)
    if i in target:
        return Fraction(0)
    live = sorted(_forward(chain, i, target) - target)
    can = _reaches(chain, target, set())
    if any(k not in can for k in live):
        raise Unreachable(f"target not reached almost surely from {start}")
    pos = {k: r for r, k in enumerate(live)}
    # (I - Q) t = 1 on the transient states
    A = [[Fraction(int(r == c)) - chain.P[k][m] for c, m in enumerate(live)] for r, k in enumerate(live)]
    t = exact.solve(A, [Fraction(1)] * len(live))
    return t[pos[i]]


def first_passage_probability(
    chain: ReducedChain, start: str, goal_set: Iterable[str], fail_set: Iterable[str]
) -> Fraction:
    """Chance of entering ``goal_set`` strictly before ``fail_set``."""
    goal = set(chain.indices(goal_set))
    fail = set(chain.indices(fail_set))
    if goal & fail:
        raise ValueError("goal_set and fail_set overlap")
    i = chain.index(start)
    if i in goal:
        return Fraction(1)
    if i in fail:
        return Fraction(0)
    live = sorted(_reaches(chain, goal, fail) - goal)
    if i not in live:
        return Fraction(0)
    A = [[Fraction(int(r == c)) - chain.P[k][m] for c, m in enumerate(live)] for r, k in enumerate(live)]
    b = [sum((chain.P[k][g] for g in goal), Fraction(0)) for k in live]
    h = exact.solve(A, b)
    return h[live.index(i)]


def fundamental_matrix(chain: ReducedChain) -> list[list[Fraction]]:
    """``Z = (I - P + 1 pi)^-1`` in exact arithmetic."""
    n = len(chain)
    M = [[Fraction(int(i == j)) - chain.P[i][j] + chain.pi[j] for j in range(n)] for i in range(n)]
    return exact.inverse(M)


def mean_first_passage_from_fundamental(chain: ReducedChain, Z=None) -> list[list[Fraction]]:
    """``m[i][j] = (Z[j][j] - Z[i][j]) / pi[j]``, zero on the diagonal."""
    Z = Z or fundamental_matrix(chain)
    n = len(chain)
    return [[(Z[j][j] - Z[i][j]) / chain.pi[j] for j in range(n)] for i in range(n)]


def leave_time_distribution(chain: ReducedChain, start: str, stay_set: Iterable[str], max_t: int) -> list[Fraction]:
    """Exact ``P(T = t)`` for t = 1..max_t, T the first step outside ``stay_set``."""
    stay = chain.indices(stay_set)
    i = chain.index(start)
    row = {i: Fraction(1)}
    out = []
    for _ in range(max_t):
        nxt: dict[int, Fraction] = {}
        left = Fraction(0)
        for k, p in row.items():
            for j, q in enumerate(chain.P[k]):
                if not q:
                    continue
                if j in stay:
                    nxt[j] = nxt.get(j, Fraction(0)) + p * q
                else:
                    left += p * q
        out.append(left)
        row = nxt
    return out


def independent_baseline(event: Literal["never_opposite", "never_same"], games: int) -> float:
    """Chance of the event if teams were redrawn uniformly every game."""
    _check_n(games, 1)
    base = {"never_opposite": Fraction(17, 23), "never_same": Fraction(18, 23)}
    if event not in base:
        raise ValueError(f"unknown event {event!r}")
    return float(base[event] ** (games - 1))


def mean_games_table(chain: ReducedChain, horizon: int = 8) -> list[dict]:
    opp, same = chain.states_matching("O"), chain.states_matching("T")
    return [
        {
            "start": s,
            "mean_OT": expected_occupancy(chain, s, horizon, opp),
            "mean_ST": expected_occupancy(chain, s, horizon, same),
        }
        for s in chain.states
    ]


def never_table(chain: ReducedChain, kind: Literal["opponent", "teammate"], horizon: int = 8) -> list[dict]:
    avoid = chain.states_matching({"opponent": "O", "teammate": "T"}[kind])
    return [
        {"start": s, "probability": never_probability(chain, s, horizon, avoid)}
        for s in chain.states
    ]


def records_to_csv(records: list[dict], digits: int = 3) -> str:
    if not records:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(records[0]), lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow({k: (f"{v:.{digits}f}" if isinstance(v, float) else v) for k, v in r.items()})
    return buf.getvalue()
