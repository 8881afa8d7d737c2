# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Semantics match ``_pykernels`` exactly."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def apply_steps(const signed char[:, ::1] maps, seating, const short[::1] steps):
    """Apply position maps ``maps[steps[i]]`` in order to a 24-seat array."""
    cdef signed char cur[24]
    cdef signed char nxt[24]
    cdef Py_ssize_t i, p, n = steps.shape[0]
    cdef const signed char[::1] m
    for p in range(24):
        cur[p] = seating[p]
    for i in range(n):
        m = maps[steps[i]]
        for p in range(24):
            nxt[m[p]] = cur[p]
        for p in range(24):
            cur[p] = nxt[p]
    return [int(cur[p]) for p in range(24)]


def encounter_all(
    const signed char[:, ::1] maps,
    const signed char[::1] court_of,
    const signed char[::1] start_where,
    int ego,
    const short[:, ::1] steps,
):
    """Count trials in which ``ego`` shares a court with all 23 others.

    ``start_where[i]`` is player i's position at game 1; row t of ``steps``
    holds the step indices taken between consecutive games of trial t.
    """
    cdef Py_ssize_t trials = steps.shape[0], games = steps.shape[1] + 1
    cdef Py_ssize_t t, g, i
    cdef signed char where[24]
    cdef const signed char[::1] m
    cdef int met, ego_court, hits = 0
    cdef unsigned int full = (1u << 24) - 1
    cdef unsigned int seen
    for t in range(trials):
        for i in range(24):
            where[i] = start_where[i]
        seen = 0
        for g in range(games):
            if g > 0:
                m = maps[steps[t, g - 1]]
                for i in range(24):
                    where[i] = m[where[i]]
            ego_court = court_of[where[ego]]
            for i in range(24):
                if court_of[where[i]] == ego_court:
                    seen |= (1u << i)
            if seen == full:
                break
        if seen == full:
            hits += 1
    return hits
