"""Constructive walk from any seating to the reference seating.

Rows are fixed one at a time: the back rows of D and C, the front row of D
(staged on B's back row), the front row of C (staged the same way while the
D front row rides along as a protected block), the back row of B, the front
row of B (staged on A's back row via transpositions), and finally quadrant A
is sorted by transpositions.

Every emitted step is a complete legal step, so the plan's text can be
re-parsed and replayed without rotations merging across boundaries.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field
from functools import lru_cache

from .court import (
    BACK_SLOTS,
    FRONT_SLOTS,
    N_PLAYERS,
    QUADRANT_OF,
    SLOT_OF,
    SLOT_POSITIONS,
    Configuration,
    Quadrant,
    Step,
    compose,
    reference_configuration,
)
from .dsl import Sequence, apply_sequence, compile_steps, parse

A, B, C, D = Quadrant.A, Quadrant.B, Quadrant.C, Quadrant.D
FR, BR, BC, BL = 0, 1, 2, 3

MAX_STEPS = 10**6

#: base transposition per within-team slot distance; each swaps slot 1 with slot 1 + d of A
_BASE_TRANSPOSITION = {1: "F", 2: "G", 3: "H"}


class PlanningError(RuntimeError):
    """Internal failure of the planner (never expected on valid input)."""


@dataclass(frozen=True)
class Plan:
    start: Configuration
    steps: tuple[Step, ...]
    provenance: tuple[tuple[str, int, int], ...]

    @property
    def moves(self) -> Sequence:
        return parse(self.text())

    def text(self) -> str:
        return " ".join(s.code() for s in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def verify(self) -> bool:
        """Replay through the sequence parser and check the reference is reached."""
        if not self.steps:
            return self.start == reference_configuration()
        end = apply_sequence(self.start, self.text()).configuration
        return end == reference_configuration()


def _pure_rotation(q: Quadrant, k: int) -> list[Step]:
    """Steps rotating ``q`` by ``k`` with every other player back in place."""
    k %= 6
    one = Step.from_counts({q: 1 if k <= 3 else 5})
    plain = Step(0, 0, 0, 0)
    return ([one, plain, plain, plain]) * min(k, 6 - k)


@lru_cache(maxsize=None)
def _transposition_text(s: int, d: int) -> str:
    base = _BASE_TRANSPOSITION[d]
    k = (1 - s) % 6
    if k == 0:
        return base
    pre = "AEEEE" * k if k <= 3 else "A^5EEEE" * (6 - k)
    post = "AEEEE" * (6 - k) if 6 - k <= 3 else "A^5EEEE" * k
    return f"{pre} {base} {post}"


def transpose_in_A(i: int, j: int) -> Sequence:
    """A sequence swapping whoever sits at positions ``i`` and ``j`` of A."""
    if i == j or QUADRANT_OF[i] is not A or QUADRANT_OF[j] is not A:
        raise ValueError("need two distinct positions of quadrant A")
    si, sj = SLOT_OF[i], SLOT_OF[j]
    d = (sj - si) % 6
    if d > 3:
        si, d = sj, 6 - d
    return parse(_transposition_text(si, d))


@lru_cache(maxsize=None)
def _transposition_steps(i: int, j: int) -> tuple[tuple[Step, ...], tuple[int, ...]]:
    steps, pending = compile_steps(transpose_in_A(i, j))
    assert not pending
    m = tuple(range(N_PLAYERS))
    for st in steps:
        m = compose(m, st.position_map())
    return tuple(steps), m


@dataclass
class _Planner:
    config: Configuration
    steps: list[Step] = field(default_factory=list)
    provenance: list[tuple[str, int, int]] = field(default_factory=list)
    protected: frozenset[int] = frozenset()
    where: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.where = list(self.config.where())

    # -- primitives ---------------------------------------------------------

    def _emit(self, steps, m=None) -> None:
        if not steps:
            return
        if m is None:
            m = tuple(range(N_PLAYERS))
            for st in steps:
                m = compose(m, st.position_map())
        self.steps.extend(steps)
        if len(self.steps) > MAX_STEPS:
            raise PlanningError(f"plan exceeded {MAX_STEPS} steps")
        self.config = self.config.move(m)
        self.where = list(self.config.where())

    def migrate(self, n: int = 1) -> None:
        self._emit([Step(0, 0, 0, 0)] * n)

    def rotate(self, q: Quadrant, k: int) -> None:
        if k % 6 == 0:
            return
        front = {self.config[p] for p in self.front_positions(q)}
        if front & self.protected:
            raise PlanningError(f"rotation of {q.value} would move a protected front row")
        self._emit(_pure_rotation(q, k))

    def transpose(self, i: int, j: int) -> None:
        steps, m = _transposition_steps(i, j)
        self._emit(list(steps), m)

    @contextmanager
    def label(self, name: str):
        start = len(self.steps)
        yield
        if len(self.steps) > start:
            self.provenance.append((name, start, len(self.steps)))

    # -- queries ------------------------------------------------------------

    @staticmethod
    def front_positions(q: Quadrant) -> list[int]:
        return [SLOT_POSITIONS[q][s] for s in FRONT_SLOTS]

    def quadrant(self, player: int) -> Quadrant:
        return QUADRANT_OF[self.where[player]]

    def slot(self, player: int) -> int:
        return SLOT_OF[self.where[player]]

    def in_front(self, player: int) -> bool:
        return self.slot(player) in FRONT_SLOTS

    def front_is_protected(self, q: Quadrant) -> bool:
        return any(self.config[p] in self.protected for p in self.front_positions(q))

    def migrate_until(self, ok) -> None:
        for _ in range(4):
            if ok():
                return
            self.migrate()
        raise PlanningError("no migration count satisfies the constraint")

    def migrate_to(self, player: int, q: Quadrant) -> None:
        """Front-row ``player`` to quadrant ``q`` by the fewest migrations."""
        self.migrate_until(lambda: self.quadrant(player) is q)

    # -- Procedure P ----------------------------------------------------------

    def bring_to_front_right(self, x: int, p: Quadrant, tag: str) -> None:
        with self.label(tag):
            if not self.in_front(x):
                q = self.quadrant(x)
                self.migrate_until(lambda: not self.front_is_protected(q))
                self.rotate(q, 4 - self.slot(x))
            if self.slot(x) != FR:
                self.migrate_to(x, A)
                self.rotate(A, -self.slot(x))
            self.migrate_to(x, p)

    def _bring_partner(self, x: int, p: Quadrant, placed: list[int], choices: range, tag: str) -> None:
        """Actions 4 and 6: get ``x`` to P's front right, keeping ``placed``
        in P's back row."""
        if self.quadrant(x) is not p:
            self.bring_to_front_right(x, p, tag + "a")
            return
        with self.label(tag + "b"):
            if not self.in_front(x):
                self.migrate_until(lambda: not self.front_is_protected(p))
            r = next(
                r for r in choices
                if (self.slot(x) + r) % 6 in FRONT_SLOTS
                and all((self.slot(y) + r) % 6 in BACK_SLOTS for y in placed)
            )
            self.rotate(p, r)
            self.migrate_until(
                lambda: self.quadrant(x) is not p and not self.front_is_protected(p)
            )
            self.rotate(p, -r)
        self.bring_to_front_right(x, p, tag + "b")

    def procedure(self, p: Quadrant, a: int, b: int, c: int, tag: str) -> None:
        """Move ``a``, ``b``, ``c`` to the back left, back centre and back right of ``p``."""
        self.bring_to_front_right(a, p, f"{tag}:2")
        with self.label(f"{tag}:3"):
            self.rotate(p, 1)
        self._bring_partner(b, p, [a], range(3), f"{tag}:4")
        with self.label(f"{tag}:5"):
            self.rotate(p, 1)
        self._bring_partner(c, p, [a, b], range(2), f"{tag}:6")
        with self.label(f"{tag}:7"):
            self.rotate(p, 1)
        want = {a: BL, b: BC, c: BR}
        if any(self.quadrant(x) is not p or self.slot(x) != s for x, s in want.items()):
            raise PlanningError(f"procedure {tag} left {a},{b},{c} misplaced")

    # -- the algorithm --------------------------------------------------------

    def _done(self, players) -> bool:
        return all(self.where[x] == x for x in players)

    def run(self) -> None:
        # rows already in place are left alone
        if not self._done((21, 22, 23)):
            self.procedure(D, 21, 22, 23, "8:D")
        if not self._done((18, 19, 20)):
            self.procedure(C, 18, 19, 20, "8:C")

        # front row of D staged on B's back row
        if not self._done((15, 16, 17)):
            self.procedure(B, 17, 16, 15, "9:B")
            with self.label("10"):
                self.rotate(B, 3)
            with self.label("11"):
                self.migrate()

        z1 = frozenset((15, 16, 17))
        self.protected = z1
        if not self._done((12, 13, 14)):
            self.procedure(B, 14, 13, 12, "12:B")
            with self.label("13"):
                self.migrate_to(17, A)
                self.rotate(B, 3)
                self.migrate(2)

        z2 = frozenset((12, 13, 14))
        self.protected = z1 | z2
        if not self._done((3, 4, 5)):
            self.procedure(B, 5, 4, 3, "14:B")
            with self.label("14"):
                self.migrate_to(17, D)

        if not self._done((9, 10, 11)):
            # front row of B staged on A's back row: 11, 10, 9 at 0, 1, 2
            targets = {11: 0, 10: 1, 9: 2}
            with self.label("15"):
                self._place_in_A(targets)
                if any(self.where[x] != t for x, t in targets.items()):
                    self.migrate(3)
                    self._place_in_A(targets)
                    self.migrate(1)
            self.protected = frozenset()
            with self.label("16"):
                self.migrate(3)
                self.rotate(A, 3)
                self.migrate(1)
        self.protected = frozenset()
        with self.label("17"):
            self._place_in_A({x: x for x in (0, 1, 2, 6, 7, 8)})

    def _place_in_A(self, targets: dict[int, int]) -> None:
        for x, t in targets.items():
            here = self.where[x]
            if here != t and QUADRANT_OF[here] is A:
                self.transpose(here, t)


def plan_to_reference(c: Configuration) -> Plan:
    planner = _Planner(c)
    planner.run()
    if planner.config != reference_configuration():
        raise PlanningError("planner finished away from the reference seating")
    return Plan(c, tuple(planner.steps), tuple(planner.provenance))
