"""Move-sequence notation: lexer, macro expansion and evaluation.

Grammar::

    sequence := item*
    item     := rotation | "E" | macro | whitespace
    rotation := ("A"|"B"|"C"|"D") ("^" digit)?      digit in 1..5
    macro    := "X" | "F" | "G" | "H" | "APERIODIC"

Rotations accumulate until the next ``E``, which closes one chain step.
Rotations left over at the end of a sequence stay *pending*: they are
applied to the configuration and merge into the first step of whatever
sequence follows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .court import (
    QUADRANTS,
    Configuration,
    IllegalStep,
    Quadrant,
    Step,
    invert,
)
from . import kernels

__all__ = [
    "Rotation",
    "Migration",
    "MacroRef",
    "Sequence",
    "MacroTable",
    "SequenceSyntaxError",
    "UnknownMacro",
    "BUILTIN_MACROS",
    "parse",
    "expand",
    "step_count",
    "compile_steps",
    "apply_sequence",
    "illegal_steps",
]


@dataclass(frozen=True)
class Rotation:
    quadrant: Quadrant
    exponent: int = 1

    def __str__(self) -> str:
        q = self.quadrant.value
        return q if self.exponent == 1 else f"{q}^{self.exponent}"


@dataclass(frozen=True)
class Migration:
    def __str__(self) -> str:
        return "E"


@dataclass(frozen=True)
class MacroRef:
    name: str

    def __str__(self) -> str:
        return self.name


Token = Rotation | Migration | MacroRef

E = Migration()


@dataclass(frozen=True)
class Sequence:
    tokens: tuple[Token, ...] = ()
    name: str | None = None

    def __add__(self, other: "Sequence") -> "Sequence":
        return Sequence(self.tokens + other.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    def text(self) -> str:
        return "".join(str(t) for t in self.tokens)

    def __str__(self) -> str:
        return self.text()


class SequenceSyntaxError(ValueError):
    def __init__(self, position: int, char: str, reason: str = "unexpected character"):
        self.position = position
        self.char = char
        super().__init__(f"{reason} {char!r} at offset {position}")


class UnknownMacro(KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(name)

    def __str__(self) -> str:
        return f"unknown macro {self.name!r}"


# Trajectory of X with the 20-migration tail ``AC^2EEEE C``.
_X_TEXT = "AE B^2D^3EEE A^2C^3E B^3D^3EEE A^5E B^5EEE AE B^5EEE AC^2EEEE C"

APERIODIC_PANELS = (
    "AEEEE AEAE CE DEEEE DEDE",
    "EEDEEEE DEEEE DEE CEEEE CEEE D",
    "CEEEE CEEEE CEEE AEEEE AEEE CEEE CEEEE C",
    "EAEEEE AEBEE AE BBBBBE",
    "BAEEEE AEBEEE AEBE BEEEE BEEEE BEE",
    "BEEEE BEBEEE AEBEEE",
    "AEEEE AEEEE AGAEEEE AEEEE AEEEE AEEE AEEEE AEEEE AEEEE AE",
    "AEEEE AHA AGA AEEEE AEEEE AEEEE AFAEEEE AEEEE AEEEE",
)

# The last panel above merges "A" with the next macro's leading "A" across a
# macro boundary, giving two A^2E steps, which are illegal. Splitting each as
# AEEEE AE keeps the effect, makes every step legal and adds 8 steps (1003, odd).
APERIODIC_LEGAL_TEXT = " ".join(
    APERIODIC_PANELS[:-1]
    + ("AEEEE AHAEEEE AGAEEEE AEEEE AEEEE AEEEE AFAEEEE AEEEE AEEEE",)
)

BUILTIN_MACROS: Mapping[str, str] = {
    "X": _X_TEXT,
    "F": "EEEE X X X EEEE",
    "G": "EEEE A^5FA F A^5FA EEEE",
    "H": "FA^5 FA^5 FAFAF",
    "APERIODIC": " ".join(APERIODIC_PANELS),
}


class MacroTable:
    """Macro name -> definition text. The built-ins cannot be redefined."""

    def __init__(self, extra: Mapping[str, str] | None = None):
        self._user: dict[str, str] = {}
        for name, text in (extra or {}).items():
            self.define(name, text)

    def define(self, name: str, text: str) -> None:
        if name in BUILTIN_MACROS:
            raise ValueError(f"built-in macro {name!r} is read-only")
        if not name.isalpha() or not name.isupper() or name in ("A", "B", "C", "D", "E"):
            raise ValueError(f"invalid macro name {name!r}")
        self._user[name] = text
        _expand_cached.cache_clear()

    def names(self) -> list[str]:
        # longest first so the lexer prefers APERIODIC over A
        return sorted({*BUILTIN_MACROS, *self._user}, key=lambda n: (-len(n), n))

    def __getitem__(self, name: str) -> str:
        if name in BUILTIN_MACROS:
            return BUILTIN_MACROS[name]
        try:
            return self._user[name]
        except KeyError:
            raise UnknownMacro(name) from None

    def __contains__(self, name: str) -> bool:
        return name in BUILTIN_MACROS or name in self._user


DEFAULT_MACROS = MacroTable()


def _tokenize(text: str, macros: MacroTable) -> Iterator[Token]:
    names = [n for n in macros.names() if len(n) > 1]
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        for name in names:
            if text.startswith(name, i):
                yield MacroRef(name)
                i += len(name)
                break
        else:
            if ch in "ABCD":
                i += 1
                k = 1
                if i < n and text[i] == "^":
                    if i + 1 >= n or text[i + 1] not in "12345":
                        bad = text[i + 1] if i + 1 < n else "<end>"
                        raise SequenceSyntaxError(i + 1, bad, "exponent must be 1..5, got")
                    k = int(text[i + 1])
                    i += 2
                yield Rotation(Quadrant(ch), k)
            elif ch == "E":
                i += 1
                yield E
            elif ch in macros:
                i += 1
                yield MacroRef(ch)
            elif ch.isalpha() and ch.isupper():
                raise UnknownMacro(ch)
            else:
                raise SequenceSyntaxError(i, ch)


def parse(text: str, macros: MacroTable | None = None, name: str | None = None) -> Sequence:
    """Tokenize ``text``; macro names are kept as references."""
    return Sequence(tuple(_tokenize(text, macros or DEFAULT_MACROS)), name)


def _normalize(tokens: Iterable[Token]) -> tuple[Token, ...]:
    """Merge the rotations between migrations, in coding order A, C, B, D."""
    out: list[Token] = []
    pending = {q: 0 for q in QUADRANTS}

    def flush() -> None:
        for q in (Quadrant.A, Quadrant.C, Quadrant.B, Quadrant.D):
            if pending[q] % 6:
                out.append(Rotation(q, pending[q] % 6))
            pending[q] = 0

    for tok in tokens:
        if isinstance(tok, Rotation):
            pending[tok.quadrant] += tok.exponent
        else:
            flush()
            out.append(tok)
    flush()
    return tuple(out)


def _expand_tokens(tokens: Iterable[Token], macros: MacroTable, stack: tuple[str, ...]) -> Iterator[Token]:
    for tok in tokens:
        if isinstance(tok, MacroRef):
            if tok.name in stack:
                raise ValueError(f"recursive macro {tok.name!r}")
            if tok.name in BUILTIN_MACROS:
                yield from _expand_cached(tok.name)
            else:
                body = parse(macros[tok.name], macros).tokens
                yield from _expand_tokens(body, macros, stack + (tok.name,))
        else:
            yield tok


@lru_cache(maxsize=None)
def _expand_cached(name: str) -> tuple[Token, ...]:
    body = parse(BUILTIN_MACROS[name]).tokens
    return _normalize(_expand_tokens(body, DEFAULT_MACROS, (name,)))


def expand(s: Sequence | str, macros: MacroTable | None = None) -> Sequence:
    """Macro-free form of ``s`` with rotations merged and zero exponents dropped."""
    macros = macros or DEFAULT_MACROS
    if isinstance(s, str):
        s = parse(s, macros)
    return Sequence(_normalize(_expand_tokens(s.tokens, macros, ())), s.name)


def builtin(name: str) -> Sequence:
    return Sequence(_expand_cached(name), name)


def step_count(s: Sequence | str, macros: MacroTable | None = None) -> int:
    return sum(1 for t in expand(s, macros).tokens if isinstance(t, Migration))


def compile_steps(
    s: Sequence | str, macros: MacroTable | None = None, check: bool = True
) -> tuple[list[Step], dict[Quadrant, int]]:
    """Split ``s`` into completed steps plus trailing pending rotations.

    Raises IllegalStep carrying the 0-based index of the first bad step,
    unless ``check`` is false.
    """
    steps: list[Step] = []
    counts = {q: 0 for q in QUADRANTS}
    for tok in expand(s, macros).tokens:
        if isinstance(tok, Rotation):
            counts[tok.quadrant] = (counts[tok.quadrant] + tok.exponent) % 6
        else:
            step = Step.from_counts(counts)
            if check and not step.legal:
                raise IllegalStep(step, len(steps))
            steps.append(step)
            counts = {q: 0 for q in QUADRANTS}
    return steps, {q: k for q, k in counts.items() if k}


@dataclass(frozen=True)
class Applied:
    configuration: Configuration
    pending: dict[Quadrant, int] = field(default_factory=dict)
    steps: int = 0

    def __iter__(self):
        return iter((self.configuration, self.pending))


def apply_sequence(
    c: Configuration,
    s: Sequence | str,
    macros: MacroTable | None = None,
    pending: Mapping[Quadrant, int] | None = None,
    check: bool = True,
) -> Applied:
    """Apply every step of ``s`` to ``c``; trailing rotations are applied too.

    ``pending`` names rotations already applied to ``c`` by an earlier
    sequence; they count towards the legality of the first step here. The
    result unpacks as ``(configuration, pending)``. With ``check=False``
    illegal steps are applied as plain permutations (for auditing).
    """
    if isinstance(s, str):
        s = parse(s, macros)
    if pending:
        c = c.move(invert(Step.from_counts(dict(pending)).rotation_map()))
        s = concat_pending(pending, s)
    steps, left = compile_steps(s, macros, check)
    out = kernels.apply_steps(c.seating, [st.index for st in steps])
    final = Configuration(tuple(out))
    if left:
        final = final.move(Step.from_counts(left).rotation_map())
    return Applied(final, left, len(steps))


def illegal_steps(s: Sequence | str, macros: MacroTable | None = None) -> list[tuple[int, Step]]:
    """(index, step) for every completed step violating legality."""
    steps, _ = compile_steps(s, macros, check=False)
    return [(i, st) for i, st in enumerate(steps) if not st.legal]


def concat_pending(pending: Mapping[Quadrant, int], s: Sequence | str) -> Sequence:
    """Prefix ``s`` with rotations left pending by an earlier sequence."""
    if isinstance(s, str):
        s = parse(s)
    head = tuple(Rotation(q, k) for q, k in pending.items() if k % 6)
    return Sequence(head + s.tokens)
