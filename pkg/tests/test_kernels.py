import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from courtmix import _pykernels, kernels
from courtmix.court import Configuration, Step, reference_configuration
from courtmix.dynamics import sample_step_indices

BACKENDS = kernels.backends()


def test_active_backend_is_known():
    assert kernels.BACKEND in BACKENDS
    assert kernels.STEP_MAPS.shape == (1296, 24)


@settings(max_examples=100, deadline=None)
@given(st.permutations(list(range(24))), st.lists(st.integers(0, 1295), max_size=60))
def test_apply_steps_matches_court_core(seating, idx):
    c = Configuration(tuple(seating))
    for i in idx:
        a, rest = divmod(i, 216)
        b, rest = divmod(rest, 36)
        cc, d = divmod(rest, 6)
        c_ = Step(a, b, cc, d)
        assert c_.index == i
        c = c.move(c_.position_map())
    for impl in BACKENDS.values():
        assert kernels.apply_steps(seating, idx, backend=impl) == list(c.seating)


@pytest.mark.skipif("cython" not in BACKENDS, reason="compiled extension not built")
@pytest.mark.parametrize("games", [1, 2, 8, 10])
def test_encounter_all_backends_agree(games):
    rng = np.random.default_rng(games)
    steps = sample_step_indices(rng, (5000, games - 1))
    where = reference_configuration().where()
    counts = {name: kernels.encounter_all(where, 20, steps, backend=impl) for name, impl in BACKENDS.items()}
    assert counts["cython"] == counts["python"]


def test_python_fallback_is_selectable(monkeypatch):
    import importlib

    monkeypatch.setenv("COURTMIX_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python" and mod._impl is _pykernels
    finally:
        monkeypatch.delenv("COURTMIX_PURE_PYTHON")
        importlib.reload(kernels)
