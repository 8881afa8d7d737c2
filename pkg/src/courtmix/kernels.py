"""Backend selection for the hot loops.

The compiled extension ``_ckernels`` is used when it was built; otherwise,
or when ``COURTMIX_PURE_PYTHON=1`` is set, the numpy fallback in
``_pykernels`` is used. Both produce identical results for identical input.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from . import _pykernels
from .court import COURT_OF, N_PLAYERS, Step

try:
    if os.environ.get("COURTMIX_PURE_PYTHON") == "1":
        raise ImportError("pure-Python backend forced")
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"

#: position maps of all 6**4 rotation-count combinations, indexed by Step.index
STEP_MAPS = np.zeros((6**4, N_PLAYERS), dtype=np.int8)
for _a in range(6):
    for _b in range(6):
        for _c in range(6):
            for _d in range(6):
                _s = Step(_a, _b, _c, _d)
                STEP_MAPS[_s.index] = _s.position_map()
COURTS = np.asarray(COURT_OF, dtype=np.int8)


def apply_steps(seating: Sequence[int], steps: Sequence[int], backend=None) -> list[int]:
    """Seating after applying the steps with the given dense indices."""
    impl = backend or _impl
    return impl.apply_steps(STEP_MAPS, list(seating), np.asarray(steps, dtype=np.int16))


def encounter_all(start_where: Sequence[int], ego: int, steps: np.ndarray, backend=None) -> int:
    """Number of trials (rows of ``steps``) in which ego meets everyone."""
    impl = backend or _impl
    return impl.encounter_all(
        STEP_MAPS,
        COURTS,
        np.asarray(start_where, dtype=np.int8),
        int(ego),
        np.ascontiguousarray(steps, dtype=np.int16),
    )


def backends() -> dict[str, object]:
    out: dict[str, object] = {"python": _pykernels}
    if BACKEND == "cython":
        out["cython"] = _impl
    return out
