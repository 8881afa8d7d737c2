import json

from courtmix import verify
from courtmix.verify import EFFECT_ASSERTIONS, EffectAssertion

KEYS = {"check", "pass", "details", "seed", "sequence_lengths"}


def test_certificate_shape_is_json():
    cert = verify.certificate("x", True, {"a": 1}, seed=3)
    assert set(cert) == KEYS and json.loads(json.dumps(cert)) == cert


def test_effect_assertions_pass():
    for name in ("X", "F", "G", "H", "EEEE"):
        cert = verify.verify_effect(EFFECT_ASSERTIONS[name])
        assert cert["pass"] and not cert["details"]["illegal_steps"], name


def test_corrupted_macro_is_caught():
    a = EFFECT_ASSERTIONS["F"]
    cert = verify.verify_effect(EffectAssertion("F", a.expected, a.source, "EEE X X X EEEE"))
    assert not cert["pass"] and cert["details"]["diff"]
    suite = verify.verify_irreducibility_suite(trials=2, overrides={"F": "EEE X X X EEEE"})
    assert not suite["pass"] and not suite["details"]["effect_F"]["pass"]


def test_aperiodicity_certificate_reports_literal_merges():
    cert = verify.verify_aperiodicity()
    assert cert["pass"]
    assert [d["index"] for d in cert["details"]["literal_illegal_steps"]] == [691, 903]
    assert cert["sequence_lengths"] == {"APERIODIC": 995, "APERIODIC_LEGAL": 1003, "EEEE": 4}


def test_transpositions_certificate():
    cert = verify.verify_transpositions()
    assert cert["pass"] and len(cert["sequence_lengths"]) == 15


def test_small_irreducibility_suite():
    cert = verify.verify_irreducibility_suite(trials=5, seed=1)
    assert cert["pass"] and cert["seed"] == 1
    assert cert["sequence_lengths"] == {"X": 20, "F": 68, "G": 212, "H": 340}
    assert cert["details"]["plans"]["plans"] == 1 + 15 + 5


def test_friend_matrix_lumpability_structure():
    assert verify.verify_friend_matrix()["pass"]
    lump = verify.verify_lumpability()
    assert lump["pass"] and not lump["details"]["negative_control"]["pass"]
    assert verify.verify_structure(samples=500)["pass"]
