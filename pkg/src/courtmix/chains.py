"""Lumped chains: the friend chain, its 52-state refinement, the lazy walk.

A friend state records where ``friend`` sits relative to ``ego``. Ego is
first brought to the left court by the half-turn (a symmetry of the
dynamics). Quadrant 1 is C, quadrant 2 is A. Inside ego's team, ``Tk``
means friend sits ``k - 1`` slots behind ego in rotation order; ``Ok``
measures the same offset from ego*, the opponent in ego's slot. Friend on
the other court gives ``+`` (quadrant B) or ``-`` (quadrant D).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .court import (
    COURT_OF,
    HALF_TURN_MAP,
    N_PLAYERS,
    QUADRANT_OF,
    SLOT_OF,
    Configuration,
    Quadrant,
    reference_configuration,
)
from .dynamics import enumerate_step_distribution


class SamePlayer(ValueError):
    pass


class UnknownState(KeyError):
    pass


def _friend_labels() -> tuple[str, ...]:
    one = ["1+", "1-"] + [f"1T{k}" for k in range(2, 7)] + [f"1O{k}" for k in range(1, 7)]
    two = [f"2T{k}" for k in range(2, 7)] + [f"2O{k}" for k in range(1, 7)] + ["2+", "2-"]
    return tuple(one + two)


FRIEND_STATES = _friend_labels()
_BLOCK1, _BLOCK2 = FRIEND_STATES[:13], FRIEND_STATES[13:]
BIG_FRIEND_STATES = (
    FRIEND_STATES
    + tuple("3" + s[1:] for s in _BLOCK1)
    + tuple("4" + s[1:] for s in _BLOCK2)
)
LAZY_STATES = ("A", "B", "D", "C")

_EGO_QUADRANT_NUMBER = {Quadrant.C: "1", Quadrant.A: "2", Quadrant.B: "3", Quadrant.D: "4"}

#: where ego sits when a state's representative is built
CANONICAL_EGO = {"1": 20, "2": 7, "3": 3, "4": 16}


@dataclass(frozen=True)
class ReducedChain:
    name: str
    states: tuple[str, ...]
    P: tuple[tuple[Fraction, ...], ...]
    pi: tuple[Fraction, ...]
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.states)})
        n = len(self.states)
        if len(self.P) != n or any(len(r) != n for r in self.P) or len(self.pi) != n:
            raise ValueError("P and pi must match the number of states")
        for s, row in zip(self.states, self.P):
            if any(x < 0 for x in row) or sum(row) != 1:
                raise ValueError(f"row {s} is not a probability vector")

    def __len__(self) -> int:
        return len(self.states)

    def index(self, state: str) -> int:
        try:
            return self._index[normalize_label(state)]
        except KeyError:
            raise UnknownState(state) from None

    def indices(self, states: Iterable[str]) -> list[int]:
        return [self.index(s) for s in states]

    def entry(self, i: str, j: str) -> Fraction:
        return self.P[self.index(i)][self.index(j)]

    def matrix(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.P])

    def pi_vector(self) -> np.ndarray:
        return np.array([float(x) for x in self.pi])

    def is_stationary(self) -> bool:
        n = len(self)
        return all(
            sum((self.pi[i] * self.P[i][j] for i in range(n)), Fraction(0)) == self.pi[j]
            for j in range(n)
        ) and sum(self.pi) == 1

    def states_matching(self, kind: str) -> tuple[str, ...]:
        """Labels whose relation letter is ``kind`` (``T``, ``O``, ``+`` or ``-``)."""
        return tuple(s for s in self.states if s[1] == kind)

    def to_dict(self) -> dict:
        frac = lambda x: [x.numerator, x.denominator]  # noqa: E731
        return {
            "states": list(self.states),
            "P": [[frac(x) for x in row] for row in self.P],
            "pi": [frac(x) for x in self.pi],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str, name: str = "chain") -> "ReducedChain":
        d = json.loads(text)
        P = tuple(tuple(Fraction(n, m) for n, m in row) for row in d["P"])
        pi = tuple(Fraction(n, m) for n, m in d["pi"])
        return cls(name, tuple(d["states"]), P, pi)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["from"] + list(self.states))
        for s, row in zip(self.states, self.P):
            w.writerow([s] + [f"{float(x):.3f}" for x in row])
        return buf.getvalue()


def normalize_label(label: str) -> str:
    """Accept the typographic minus as well as ``-``."""
    return label.replace("−", "-")


# -- projection ------------------------------------------------------------


def _relation(pe: int, pf: int) -> str:
    """Suffix (``Tk``, ``Ok``, ``+``, ``-``) for ego at ``pe`` in the left court."""
    qe, qf = QUADRANT_OF[pe], QUADRANT_OF[pf]
    k = (SLOT_OF[pe] - SLOT_OF[pf]) % 6 + 1
    if qf is qe:
        return f"T{k}"
    if COURT_OF[pf] == COURT_OF[pe]:
        return f"O{k}"
    return "+" if qf is Quadrant.B else "-"


def classify_positions(pe: int, pf: int) -> str:
    """Friend-chain label for ego at position ``pe`` and friend at ``pf``."""
    if pe == pf:
        raise SamePlayer("ego and friend occupy the same position")
    if COURT_OF[pe] == 1:
        pe, pf = HALF_TURN_MAP[pe], HALF_TURN_MAP[pf]
    return _EGO_QUADRANT_NUMBER[QUADRANT_OF[pe]] + _relation(pe, pf)


def classify_positions_big(pe: int, pf: int) -> str:
    """Big-friend label: ego's actual quadrant plus the friend-chain suffix."""
    return _EGO_QUADRANT_NUMBER[QUADRANT_OF[pe]] + classify_positions(pe, pf)[1:]


def project_friend_state(c: Configuration, ego: int, friend: int) -> str:
    if ego == friend:
        raise SamePlayer(f"ego and friend are both player {ego}")
    return classify_positions(c.position_of(ego), c.position_of(friend))


def project_big_friend_state(c: Configuration, ego: int, friend: int) -> str:
    if ego == friend:
        raise SamePlayer(f"ego and friend are both player {ego}")
    return classify_positions_big(c.position_of(ego), c.position_of(friend))


def project_ego_quadrant(c: Configuration, ego: int, friend: int | None = None) -> str:
    return QUADRANT_OF[c.position_of(ego)].value


def friend_position_table(ego_position: int) -> dict[int, str]:
    """Label of every friend position with ego fixed at ``ego_position``."""
    return {p: classify_positions(ego_position, p) for p in range(N_PLAYERS) if p != ego_position}


# -- construction ------------------------------------------------------------


@lru_cache(maxsize=None)
def _step_maps() -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    return tuple((s.position_map(), p) for s, p in enumerate_step_distribution())


def _representative(label: str, classify: Callable[[int, int], str]) -> tuple[int, int]:
    pe = CANONICAL_EGO[label[0]]
    for pf in range(N_PLAYERS):
        if pf != pe and classify(pe, pf) == label:
            return pe, pf
    raise AssertionError(f"no representative for {label}")


def _derive(states: Sequence[str], classify: Callable[[int, int], str]) -> tuple[tuple[Fraction, ...], ...]:
    index = {s: i for i, s in enumerate(states)}
    rows = []
    for label in states:
        pe, pf = _representative(label, classify)
        row = [Fraction(0)] * len(states)
        for m, p in _step_maps():
            row[index[classify(m[pe], m[pf])]] += p
        rows.append(tuple(row))
    return tuple(rows)


def _friend_pi(states: Sequence[str], total: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(6 if s[1] in "+-" else 1, total) for s in states)


@lru_cache(maxsize=None)
def build_friend_chain() -> ReducedChain:
    """The 26-state chain, derived by pushing one representative per state
    through all 324 step outcomes."""
    P = _derive(FRIEND_STATES, classify_positions)
    return ReducedChain("friend", FRIEND_STATES, P, _friend_pi(FRIEND_STATES, 46))


def friend_blocks(chain: ReducedChain | None = None) -> dict[str, tuple[tuple[Fraction, ...], ...]]:
    """The four 13x13 blocks T11, T12, T21, T22."""
    P = (chain or build_friend_chain()).P
    cut = lambda rows, cols: tuple(tuple(P[i][j] for j in cols) for i in rows)  # noqa: E731
    one, two = range(13), range(13, 26)
    return {"T11": cut(one, one), "T12": cut(one, two), "T21": cut(two, one), "T22": cut(two, two)}


@lru_cache(maxsize=None)
def build_big_friend_chain() -> ReducedChain:
    """The 52-state chain assembled from the friend-chain blocks."""
    b = friend_blocks()
    zero = tuple((Fraction(0),) * 13 for _ in range(13))
    layout = (
        (b["T11"], b["T12"], zero, zero),
        (zero, b["T22"], b["T21"], zero),
        (zero, zero, b["T11"], b["T12"]),
        (b["T21"], zero, zero, b["T22"]),
    )
    P = tuple(
        sum((blk[r] for blk in block_row), ())
        for block_row in layout
        for r in range(13)
    )
    return ReducedChain("big-friend", BIG_FRIEND_STATES, P, _friend_pi(BIG_FRIEND_STATES, 92))


def derive_big_friend_chain() -> ReducedChain:
    """The 52-state chain by direct enumeration (cross-check of the blocks)."""
    P = _derive(BIG_FRIEND_STATES, classify_positions_big)
    return ReducedChain("big-friend", BIG_FRIEND_STATES, P, _friend_pi(BIG_FRIEND_STATES, 92))


@lru_cache(maxsize=None)
def build_lazy_cyclic_walk_chain() -> ReducedChain:
    half = Fraction(1, 2)
    P = tuple(
        tuple(half if j in (i, (i + 1) % 4) else Fraction(0) for j in range(4))
        for i in range(4)
    )
    return ReducedChain("lazy-walk", LAZY_STATES, P, (Fraction(1, 4),) * 4)


lazy_cyclic_walk_chain = build_lazy_cyclic_walk_chain


def derive_lazy_walk() -> ReducedChain:
    """Ego's quadrant process marginalized from the enumerated step law."""
    classify = lambda pe, pf: QUADRANT_OF[pe].value  # noqa: E731
    P = _derive_single(LAZY_STATES, classify)
    return ReducedChain("lazy-walk", LAZY_STATES, P, (Fraction(1, 4),) * 4)


def _derive_single(states, classify):
    index = {s: i for i, s in enumerate(states)}
    rows = []
    for label in states:
        pe = next(p for p in range(N_PLAYERS) if classify(p, None) == label)
        row = [Fraction(0)] * len(states)
        for m, p in _step_maps():
            row[index[classify(m[pe], None)]] += p
        rows.append(tuple(row))
    return tuple(rows)


# -- lumpability -------------------------------------------------------------


@dataclass(frozen=True)
class Representative:
    seating: tuple[int, ...]
    ego: int
    friend: int


@dataclass
class LumpabilityReport:
    chain: str
    representatives: dict[str, int]
    violations: list[dict]

    @property
    def passed(self) -> bool:
        return not self.violations and all(n >= 3 for n in self.representatives.values())

    def min_representatives(self) -> int:
        return min(self.representatives.values())

    def as_dict(self) -> dict:
        return {
            "chain": self.chain,
            "pass": self.passed,
            "states": len(self.representatives),
            "min_representatives": self.min_representatives(),
            "violations": self.violations[:20],
        }


Projection = Callable[[Configuration, int, int], str]


def _gather(
    projection: Projection,
    configs: Sequence[Configuration],
    rng: np.random.Generator,
    per_config: int,
) -> dict[str, list[tuple[Configuration, int, int]]]:
    """Up to ``per_config`` (configuration, ego, friend) triples per label and
    configuration, spreading ego over both courts when possible."""
    pairs = [(e, f) for e in range(N_PLAYERS) for f in range(N_PLAYERS) if e != f]
    reps: dict[str, list] = {}
    for c in configs:
        found: dict[tuple[str, int], tuple] = {}
        for k in rng.permutation(len(pairs)):
            e, f = pairs[k]
            key = (projection(c, e, f), COURT_OF[c.position_of(e)])
            found.setdefault(key, (c, e, f))
        per_label: dict[str, list] = {}
        for (label, _), rep in sorted(found.items(), key=lambda kv: kv[0]):
            per_label.setdefault(label, []).append(rep)
        for label, bucket in per_label.items():
            reps.setdefault(label, []).extend(bucket[:per_config])
    return reps


def check_lumpability(
    projection: Projection,
    chain: ReducedChain,
    configurations: int = 3,
    per_config: int = 2,
    seed: int = 0,
) -> LumpabilityReport:
    """Push several representatives of every reduced state through the full
    step law and compare each projected one-step law with the chain's row."""
    rng = np.random.default_rng(seed)
    configs = [reference_configuration()] + [
        Configuration(tuple(int(x) for x in rng.permutation(N_PLAYERS))) for _ in range(configurations - 1)
    ]
    reps = _gather(projection, configs, rng, per_config)
    steps = _step_maps()
    violations: list[dict] = []
    counts: dict[str, int] = {}
    for state in chain.states:
        counts[state] = len(reps.get(state, []))
    for label, bucket in reps.items():
        if label not in chain._index:
            violations.append({"state": label, "reason": "projection produced an unknown label"})
            continue
        expected = chain.P[chain.index(label)]
        for c, e, f in bucket:
            law: dict[str, Fraction] = {}
            for m, p in steps:
                nxt = projection(c.move(m), e, f)
                law[nxt] = law.get(nxt, Fraction(0)) + p
            bad = {
                s: (str(law.get(s, 0)), str(expected[chain.index(s)] if s in chain._index else None))
                for s in set(law) | {s for s, x in zip(chain.states, expected) if x}
                if s not in chain._index or law.get(s, 0) != expected[chain.index(s)]
            }
            if bad:
                violations.append({
                    "state": label,
                    "seating": list(c.seating),
                    "ego": e,
                    "friend": f,
                    "mismatch": {k: {"observed": v[0], "chain": v[1]} for k, v in sorted(bad.items())},
                })
    return LumpabilityReport(chain.name, counts, violations)


def mirrored_friend_projection(c: Configuration, ego: int, friend: int) -> str:
    """A wrong projection: right-court egos are reflected left-to-right
    instead of half-turned. Useful only as a negative control."""
    pe, pf = c.position_of(ego), c.position_of(friend)
    if COURT_OF[pe] == 1:
        mirror = lambda p: (p // 6) * 6 + (p % 6 + 3) % 6  # noqa: E731
        pe, pf = mirror(pe), mirror(pf)
    return _EGO_QUADRANT_NUMBER[QUADRANT_OF[pe]] + _relation(pe, pf)


# -- comparison with the printed matrix ---------------------------------------


@dataclass(frozen=True)
class Discrepancy:
    row: str
    column: str
    printed: Fraction
    derived: Fraction


def parse_transcribed(rows: Mapping[str, Mapping[str, str]], states: Sequence[str] = FRIEND_STATES):
    index = {s: i for i, s in enumerate(states)}
    P = [[Fraction(0)] * len(states) for _ in states]
    for r, cols in rows.items():
        for col, text in cols.items():
            P[index[normalize_label(r)]][index[normalize_label(col)]] = Fraction(text)
    return P


def compare_with_transcription(
    rows: Mapping[str, Mapping[str, str]], chain: ReducedChain | None = None
) -> list[Discrepancy]:
    chain = chain or build_friend_chain()
    printed = parse_transcribed(rows, chain.states)
    out = []
    for i, r in enumerate(chain.states):
        for j, col in enumerate(chain.states):
            if printed[i][j] != chain.P[i][j]:
                out.append(Discrepancy(r, col, printed[i][j], chain.P[i][j]))
    return out
