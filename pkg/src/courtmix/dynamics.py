"""The random game step: its exact law, sampling, and Monte Carlo observables.

On each court the top team rotates ``c1`` times, ``c1`` uniform on 0..5,
and the bottom team ``c2 = c1 - 1 + Binomial(2, 1/2)`` times (mod 6). The
two courts are independent. Top/bottom is a labelling choice only: the
offset law is symmetric.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal

import numpy as np

from . import kernels
from .court import COURT_OF, Configuration, N_PLAYERS, Quadrant, Step, SLOT_POSITIONS, reference_configuration

#: law of (c2 - c1) mod 6
OFFSET_LAW = {5: Fraction(1, 4), 0: Fraction(1, 2), 1: Fraction(1, 4)}

EGO_POSITION = {"first": SLOT_POSITIONS[Quadrant.C][1], "second": SLOT_POSITIONS[Quadrant.A][5]}

CHUNK = 100_000


@dataclass(frozen=True)
class StepDistribution:
    outcomes: tuple[tuple[Step, Fraction], ...]

    def __iter__(self):
        return iter(self.outcomes)

    def __len__(self) -> int:
        return len(self.outcomes)

    def total(self) -> Fraction:
        return sum((p for _, p in self.outcomes), Fraction(0))

    def court_marginal(self, top: Quadrant, bottom: Quadrant) -> dict[tuple[int, int], Fraction]:
        out: dict[tuple[int, int], Fraction] = {}
        for step, p in self.outcomes:
            key = (step.count(top), step.count(bottom))
            out[key] = out.get(key, Fraction(0)) + p
        return out


def court_law() -> dict[tuple[int, int], Fraction]:
    """Exact law of (c1, c2) on one court."""
    return {
        (c1, (c1 + off) % 6): Fraction(1, 6) * p
        for c1 in range(6)
        for off, p in OFFSET_LAW.items()
    }


@lru_cache(maxsize=None)
def enumerate_step_distribution() -> StepDistribution:
    """All 324 steps with exact probabilities."""
    law = court_law()
    outcomes = []
    for (a, c), pl in law.items():
        for (b, d), pr in law.items():
            outcomes.append((Step(a, b, c, d), pl * pr))
    return StepDistribution(tuple(outcomes))


def _draw_court(rng: np.random.Generator, size) -> tuple[np.ndarray, np.ndarray]:
    c1 = rng.integers(0, 6, size=size)
    c2 = (c1 + rng.binomial(2, 0.5, size=size) - 1) % 6
    return c1, c2


def sample_step_indices(rng: np.random.Generator, size) -> np.ndarray:
    """Dense ``Step.index`` values of independent random game steps."""
    a, c = _draw_court(rng, size)
    b, d = _draw_court(rng, size)
    return (((a * 6 + b) * 6 + c) * 6 + d).astype(np.int16)


def sample_game_step(rng: np.random.Generator) -> Step:
    a, c = _draw_court(rng, None)
    b, d = _draw_court(rng, None)
    return Step(int(a), int(b), int(c), int(d))


@dataclass(frozen=True)
class Trajectory:
    configurations: tuple[Configuration, ...]
    seed: int | None
    steps: tuple[Step, ...] = ()

    def __len__(self) -> int:
        return len(self.configurations)


def simulate_session(c0: Configuration, games: int, rng: np.random.Generator | int | None = None) -> Trajectory:
    """Starting seatings of ``games`` consecutive games, the first being ``c0``."""
    if games < 1:
        raise ValueError("games must be >= 1")
    seed = rng if isinstance(rng, int) else None
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    configs = [c0]
    steps = []
    for _ in range(games - 1):
        step = sample_game_step(rng)
        steps.append(step)
        configs.append(configs[-1].move(step.position_map()))
    return Trajectory(tuple(configs), seed, tuple(steps))


@dataclass(frozen=True)
class Estimate:
    observable: str
    games: int
    trials: int
    seed: int
    workers: int
    estimate: float
    std_error: float
    ego_court: str = "first"

    def as_dict(self) -> dict:
        return {
            "observable": self.observable,
            "ego_court": self.ego_court,
            "games": self.games,
            "trials": self.trials,
            "seed": self.seed,
            "workers": self.workers,
            "estimate": self.estimate,
            "std_error": self.std_error,
        }


def _encounter_worker(args) -> int:
    seed_seq, trials, games, ego_court, backend = args
    rng = np.random.default_rng(seed_seq)
    c0 = reference_configuration()
    ego = c0[EGO_POSITION[ego_court]]
    where = c0.where()
    impl = kernels.backends()[backend] if backend else None
    hits = 0
    done = 0
    while done < trials:
        n = min(CHUNK, trials - done)
        steps = sample_step_indices(rng, (n, games - 1))
        hits += kernels.encounter_all(where, ego, steps, backend=impl)
        done += n
    return hits


def _split(trials: int, workers: int) -> list[int]:
    base, extra = divmod(trials, workers)
    return [base + (i < extra) for i in range(workers)]


def estimate_encounter_all(
    ego_court: Literal["first", "second"],
    games: int,
    trials: int,
    seed: int = 0,
    workers: int = 1,
    backend: str | None = None,
) -> Estimate:
    """Chance that ego shares a court with each of the 23 others at least once.

    Co-court presence in game 1 counts. Ego starts in quadrant C ("first")
    or A ("second"). The estimate depends only on (seed, workers).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if games < 1:
        raise ValueError("games must be >= 1")
    if ego_court not in EGO_POSITION:
        raise ValueError(f"ego_court must be 'first' or 'second', not {ego_court!r}")
    children = np.random.SeedSequence(seed).spawn(workers)
    jobs = [(ss, n, games, ego_court, backend) for ss, n in zip(children, _split(trials, workers)) if n]
    if workers == 1:
        hits = sum(_encounter_worker(j) for j in jobs)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(_encounter_worker, jobs))
    p = hits / trials
    return Estimate(
        observable="encounter-all",
        games=games,
        trials=trials,
        seed=seed,
        workers=workers,
        estimate=p,
        std_error=math.sqrt(p * (1 - p) / trials),
        ego_court=ego_court,
    )


def players_on_court(c: Configuration, court: int) -> set[int]:
    return {c[p] for p in range(N_PLAYERS) if COURT_OF[p] == court}
