"""Court geometry and single-step dynamics of the 24-player mixing chain.

Global positions follow the gym picture, six columns by four rows::

     0  1  2 |  3  4  5        A | B
     6  7  8 |  9 10 11
    ---------+---------      (net)
    12 13 14 | 15 16 17
    18 19 20 | 21 22 23        C | D

A and B face the net below them, C and D the net above, so the front row
of A/B is their lower row and the front row of C/D their upper row.

Within a quadrant every position is one of six team-relative slots, stored
in serve-rotation order ``FR, BR, BC, BL, FL, FC``: one rotation moves each
player to the next slot of that cycle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

N_PLAYERS = 24

SLOT_NAMES = ("FR", "BR", "BC", "BL", "FL", "FC")
FRONT_SLOTS = (0, 4, 5)
BACK_SLOTS = (1, 2, 3)


class Quadrant(str, Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"

    @property
    def court(self) -> int:
        """0 for the left court (A, C), 1 for the right court (B, D)."""
        return 0 if self in (Quadrant.A, Quadrant.C) else 1

    @property
    def next(self) -> "Quadrant":
        """The quadrant that receives this quadrant's front row on migration."""
        return _CLOCKWISE[self]

    @property
    def antipode(self) -> "Quadrant":
        return _ANTIPODE[self]


_CLOCKWISE = {
    Quadrant.A: Quadrant.B,
    Quadrant.B: Quadrant.D,
    Quadrant.D: Quadrant.C,
    Quadrant.C: Quadrant.A,
}
_ANTIPODE = {
    Quadrant.A: Quadrant.D,
    Quadrant.D: Quadrant.A,
    Quadrant.B: Quadrant.C,
    Quadrant.C: Quadrant.B,
}

QUADRANTS = (Quadrant.A, Quadrant.B, Quadrant.C, Quadrant.D)

#: positions of each quadrant indexed by slot (FR, BR, BC, BL, FL, FC)
SLOT_POSITIONS: dict[Quadrant, tuple[int, ...]] = {
    Quadrant.A: (6, 0, 1, 2, 8, 7),
    Quadrant.B: (9, 3, 4, 5, 11, 10),
    Quadrant.C: (14, 20, 19, 18, 12, 13),
    Quadrant.D: (17, 23, 22, 21, 15, 16),
}

#: position -> (quadrant, slot)
POSITION_SLOT: dict[int, tuple[Quadrant, int]] = {
    p: (q, s) for q, ps in SLOT_POSITIONS.items() for s, p in enumerate(ps)
}

QUADRANT_OF = tuple(POSITION_SLOT[p][0] for p in range(N_PLAYERS))
SLOT_OF = tuple(POSITION_SLOT[p][1] for p in range(N_PLAYERS))
COURT_OF = tuple(QUADRANT_OF[p].court for p in range(N_PLAYERS))


def position(q: Quadrant, slot: int) -> int:
    return SLOT_POSITIONS[q][slot % 6]


def is_front(p: int) -> bool:
    return SLOT_OF[p] in FRONT_SLOTS


class IllegalStep(ValueError):
    """A step whose opposing rotation counts differ by more than one."""

    def __init__(self, step: "Step", index: int | None = None):
        self.step = step
        self.index = index
        where = "" if index is None else f" at step {index}"
        super().__init__(f"illegal step {step.code()}{where}")


class InvalidConfiguration(ValueError):
    """Seating that is not a permutation of the 24 players."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        super().__init__(message)


# Position maps: a map m sends the occupant of position p to position m[p].

def _rotation_map(q: Quadrant, k: int) -> tuple[int, ...]:
    m = list(range(N_PLAYERS))
    ps = SLOT_POSITIONS[q]
    for s in range(6):
        m[ps[s]] = ps[(s + k) % 6]
    return tuple(m)


def _migration_map() -> tuple[int, ...]:
    m = list(range(N_PLAYERS))
    for q in QUADRANTS:
        for s in FRONT_SLOTS:
            m[position(q, s)] = position(q.next, s)
    return tuple(m)


ROTATION_MAPS = {(q, k): _rotation_map(q, k) for q in QUADRANTS for k in range(6)}
MIGRATION_MAP = _migration_map()
HALF_TURN_MAP = tuple(N_PLAYERS - 1 - p for p in range(N_PLAYERS))


def compose(first: Sequence[int], second: Sequence[int]) -> tuple[int, ...]:
    """Position map for applying ``first`` then ``second``."""
    return tuple(second[first[p]] for p in range(len(first)))


def invert(m: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(m)
    for p, t in enumerate(m):
        inv[t] = p
    return tuple(inv)


@dataclass(frozen=True)
class Configuration:
    """Immutable seating: ``seating[p]`` is the player at position ``p``."""

    seating: tuple[int, ...]

    def __post_init__(self) -> None:
        seating = tuple(int(x) for x in self.seating)
        object.__setattr__(self, "seating", seating)
        validate_seating(seating)

    def __getitem__(self, p: int) -> int:
        return self.seating[p]

    def __len__(self) -> int:
        return N_PLAYERS

    def where(self) -> tuple[int, ...]:
        """Inverse seating: position of every player."""
        return invert(self.seating)

    def position_of(self, player: int) -> int:
        return self.seating.index(player)

    def move(self, m: Sequence[int]) -> "Configuration":
        """Apply a position map."""
        out = [0] * N_PLAYERS
        for p, player in enumerate(self.seating):
            out[m[p]] = player
        return Configuration(tuple(out))

    def to_json(self) -> str:
        return json.dumps(list(self.seating))

    @classmethod
    def from_json(cls, text: str) -> "Configuration":
        data = json.loads(text)
        if not isinstance(data, list):
            raise InvalidConfiguration("state must be a JSON array of 24 integers")
        return cls(tuple(_as_player(x, i) for i, x in enumerate(data)))

    def rows(self, q: Quadrant) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """The two picture rows of quadrant ``q``, top row first."""
        col = 0 if q in (Quadrant.A, Quadrant.C) else 3
        row = 0 if q in (Quadrant.A, Quadrant.B) else 2
        top = self.seating[6 * row + col: 6 * row + col + 3]
        bottom = self.seating[6 * (row + 1) + col: 6 * (row + 1) + col + 3]
        return tuple(top), tuple(bottom)

    def pretty(self) -> str:
        lines = []
        for r in range(4):
            left = " ".join(f"{x:2d}" for x in self.seating[6 * r: 6 * r + 3])
            right = " ".join(f"{x:2d}" for x in self.seating[6 * r + 3: 6 * r + 6])
            lines.append(f"{left} | {right}")
            if r == 1:
                lines.append("---------+---------")
        return "\n".join(lines)


def _as_player(x, i: int) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InvalidConfiguration(f"entry {i} is not an integer: {x!r}", i)
    return x


def validate_seating(seating: Sequence[int]) -> None:
    if len(seating) != N_PLAYERS:
        raise InvalidConfiguration(
            f"expected {N_PLAYERS} positions, got {len(seating)}",
            min(len(seating), N_PLAYERS),
        )
    seen: set[int] = set()
    for p, player in enumerate(seating):
        if not 0 <= player < N_PLAYERS:
            raise InvalidConfiguration(f"position {p}: player {player} out of range", p)
        if player in seen:
            raise InvalidConfiguration(f"position {p}: player {player} seated twice", p)
        seen.add(player)


@dataclass(frozen=True)
class Step:
    """Rotation counts (mod 6) of the four teams, followed by one migration."""

    a: int = 0
    b: int = 0
    c: int = 0
    d: int = 0

    def __post_init__(self) -> None:
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % 6)

    @classmethod
    def from_counts(cls, counts: dict[Quadrant, int]) -> "Step":
        return cls(*(counts.get(q, 0) for q in QUADRANTS))

    def count(self, q: Quadrant) -> int:
        return getattr(self, q.value.lower())

    @property
    def legal(self) -> bool:
        return (self.a - self.c) % 6 in (0, 1, 5) and (self.b - self.d) % 6 in (0, 1, 5)

    def rotation_map(self) -> tuple[int, ...]:
        """The rotations alone, without the closing migration."""
        m = tuple(range(N_PLAYERS))
        for q in QUADRANTS:
            k = self.count(q)
            if k:
                m = compose(m, ROTATION_MAPS[q, k])
        return m

    def position_map(self) -> tuple[int, ...]:
        return compose(self.rotation_map(), MIGRATION_MAP)

    @property
    def index(self) -> int:
        """Dense index in 0..1295 (legal or not)."""
        return ((self.a * 6 + self.b) * 6 + self.c) * 6 + self.d

    def code(self) -> str:
        """Compact step code, e.g. ``A^5C^4BE``."""
        parts = []
        for q in (Quadrant.A, Quadrant.C, Quadrant.B, Quadrant.D):
            k = self.count(q)
            if k == 1:
                parts.append(q.value)
            elif k:
                parts.append(f"{q.value}^{k}")
        return "".join(parts) + "E"


def reference_configuration() -> Configuration:
    return Configuration(tuple(range(N_PLAYERS)))


def rotate_quadrant(c: Configuration, q: Quadrant | str, k: int) -> Configuration:
    return c.move(ROTATION_MAPS[Quadrant(q), k % 6])


def migrate(c: Configuration) -> Configuration:
    return c.move(MIGRATION_MAP)


def apply_step(c: Configuration, s: Step) -> Configuration:
    if not s.legal:
        raise IllegalStep(s)
    return c.move(s.position_map())


def half_turn(c: Configuration) -> Configuration:
    return c.move(HALF_TURN_MAP)


def legal_steps() -> Iterable[Step]:
    for a in range(6):
        for c in range(6):
            if (a - c) % 6 not in (0, 1, 5):
                continue
            for b in range(6):
                for d in range(6):
                    if (b - d) % 6 in (0, 1, 5):
                        yield Step(a, b, c, d)
