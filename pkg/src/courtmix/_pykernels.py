"""Interpreted fallbacks for the compiled kernels in ``_ckernels.pyx``."""

import numpy as np


def apply_steps(maps, seating, steps):
    where = np.empty(24, dtype=np.int64)
    where[np.asarray(seating, dtype=np.int64)] = np.arange(24)
    for s in np.asarray(steps, dtype=np.int64):
        where = maps[s][where]
    out = np.empty(24, dtype=np.int64)
    out[where] = np.arange(24)
    return out.tolist()


def encounter_all(maps, court_of, start_where, ego, steps):
    steps = np.asarray(steps, dtype=np.int64)
    maps = np.asarray(maps, dtype=np.int64)
    court_of = np.asarray(court_of, dtype=np.int64)
    trials, games = steps.shape[0], steps.shape[1] + 1
    where = np.broadcast_to(np.asarray(start_where, dtype=np.int64), (trials, 24)).copy()
    seen = np.zeros((trials, 24), dtype=bool)
    rows = np.arange(trials)[:, None]
    for g in range(games):
        if g > 0:
            where = maps[steps[:, g - 1][:, None], where]
        courts = court_of[where]
        seen |= courts == courts[rows[:, 0], ego][:, None]
    return int(seen.all(axis=1).sum())
