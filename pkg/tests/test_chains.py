from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from courtmix import chains
from courtmix.court import Configuration, half_turn, reference_configuration
from courtmix.reference_data import FRIEND_POSITION_FIXTURE, TRANSCRIBED_FRIEND_ROWS

REF = reference_configuration()
FRIEND = chains.build_friend_chain()
BIG = chains.build_big_friend_chain()
LAZY = chains.build_lazy_cyclic_walk_chain()


def test_state_orders():
    assert len(chains.FRIEND_STATES) == 26 and len(chains.BIG_FRIEND_STATES) == 52
    assert chains.FRIEND_STATES[:3] == ("1+", "1-", "1T2")
    assert chains.FRIEND_STATES[-2:] == ("2+", "2-")
    assert chains.BIG_FRIEND_STATES[26:29] == ("3+", "3-", "3T2")
    assert chains.BIG_FRIEND_STATES[-2:] == ("4+", "4-")


def test_projection_examples():
    assert chains.project_friend_state(REF, 20, 0) == "1O1"
    assert chains.project_friend_state(REF, 20, 14) == "1T2"
    with pytest.raises(chains.SamePlayer):
        chains.project_friend_state(REF, 3, 3)


@pytest.mark.parametrize("ego", [20, 7])
def test_projection_matches_position_fixture(ego):
    assert chains.friend_position_table(ego) == FRIEND_POSITION_FIXTURE[ego]


def test_right_court_pairs_map_through_half_turn():
    # ego in B, friend in D: half-turned, ego lands in C and friend in A
    assert chains.project_friend_state(REF, 3, 21) == chains.project_friend_state(half_turn(REF), 3, 21)
    assert chains.project_friend_state(REF, 3, 21)[0] == "1"


@settings(max_examples=100, deadline=None)
@given(st.permutations(list(range(24))), st.integers(0, 23), st.integers(0, 23))
def test_projection_is_half_turn_invariant(seating, ego, friend):
    if ego == friend:
        return
    c = Configuration(tuple(seating))
    assert chains.project_friend_state(c, ego, friend) == chains.project_friend_state(half_turn(c), ego, friend)
    big = chains.project_big_friend_state(c, ego, friend)
    assert big[1:] == chains.project_friend_state(c, ego, friend)[1:]


def test_friend_matrix_examples():
    assert FRIEND.entry("1T2", "1T2") == Fraction(1, 3)
    assert FRIEND.entry("1T2", "1O2") == Fraction(1, 6)
    assert FRIEND.entry("1O1", "2+") == Fraction(10, 24)
    assert FRIEND.entry("1−", "1−") == Fraction(1, 4)  # typographic minus accepted


def test_friend_matrix_matches_transcription():
    assert chains.compare_with_transcription(TRANSCRIBED_FRIEND_ROWS) == []


def test_corrupted_transcription_is_reported():
    rows = {r: dict(c) for r, c in TRANSCRIBED_FRIEND_ROWS.items()}
    rows["1T3"]["1O3"] = "1/4"
    (d,) = chains.compare_with_transcription(rows)
    assert (d.row, d.column, d.printed, d.derived) == ("1T3", "1O3", Fraction(1, 4), Fraction(1, 3))


@pytest.mark.parametrize("chain", [FRIEND, BIG, LAZY], ids=lambda c: c.name)
def test_rows_sum_to_one_and_pi_is_stationary(chain):
    assert all(sum(r) == 1 for r in chain.P)
    assert chain.is_stationary()


def test_stationary_masses():
    assert FRIEND.pi[FRIEND.index("1+")] == Fraction(6, 46) and FRIEND.pi[FRIEND.index("1T2")] == Fraction(1, 46)
    assert BIG.pi[BIG.index("4-")] == Fraction(6, 92) and BIG.pi[BIG.index("3O1")] == Fraction(1, 92)


def test_big_chain_blocks_match_enumeration():
    assert chains.derive_big_friend_chain().P == BIG.P
    blocks = chains.friend_blocks()
    assert tuple(r[:13] for r in BIG.P[:13]) == blocks["T11"]


def test_big_chain_merges_back_to_friend_chain():
    # quadrant 3 and 4 labels fold onto 1 and 2 under the half-turn
    fold = {s: ("1" if s[0] in "13" else "2") + s[1:] for s in BIG.states}
    for i, s in enumerate(BIG.states):
        merged = {}
        for j, t in enumerate(BIG.states):
            merged[fold[t]] = merged.get(fold[t], 0) + BIG.P[i][j]
        row = FRIEND.P[FRIEND.index(fold[s])]
        assert all(merged.get(t, 0) == row[k] for k, t in enumerate(FRIEND.states))


def test_friend_chain_court_projection_is_lazy_walk():
    # ego changes court with probability 1/2 from every state
    for i, s in enumerate(FRIEND.states):
        same_quadrant = sum(p for t, p in zip(FRIEND.states, FRIEND.P[i]) if t[0] == s[0])
        assert same_quadrant == Fraction(1, 2)


def test_lazy_walk():
    assert LAZY.entry("A", "A") == LAZY.entry("A", "B") == Fraction(1, 2)
    assert LAZY.entry("A", "C") == 0
    assert chains.derive_lazy_walk().P == LAZY.P


def test_lumpability_and_negative_control():
    for proj, chain in (
        (chains.project_friend_state, FRIEND),
        (chains.project_big_friend_state, BIG),
        (chains.project_ego_quadrant, LAZY),
    ):
        report = chains.check_lumpability(proj, chain, seed=3)
        assert report.passed, report.violations[:2]
        assert report.min_representatives() >= 3
    bad = chains.check_lumpability(chains.mirrored_friend_projection, FRIEND, seed=3)
    assert not bad.passed and bad.violations


def test_json_and_csv_export():
    back = chains.ReducedChain.from_json(FRIEND.to_json(), "friend")
    assert back.P == FRIEND.P and back.pi == FRIEND.pi and back.states == FRIEND.states
    lines = FRIEND.to_csv().splitlines()
    assert lines[0].split(",")[:3] == ["from", "1+", "1-"]
    assert lines[3].split(",")[3] == "0.333"  # 1T2 -> 1T2


def test_unknown_state():
    with pytest.raises(chains.UnknownState):
        FRIEND.index("5T2")


def test_invalid_chain_rejected():
    with pytest.raises(ValueError):
        chains.ReducedChain("bad", ("x",), ((Fraction(1, 2),),), (Fraction(1),))
