"""Finite words, eventually periodic infinite words, and run-limited shifts.

Digit strings drive everything here: expansions in a non-integer base are
binary or signed words, slice coordinates are ternary words. Infinite words
are always eventually periodic and kept in a canonical form (minimal period,
preperiod rolled back as far as possible) so equality is structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Union

from .algebraic import AlgebraicNumber, FieldElement


class WordSyntaxError(ValueError):
    pass


class Alphabet(Enum):
    BINARY = (0, 1)
    TERNARY = (0, 1, 2)
    SIGNED = (-1, 0, 1)

    @property
    def symbols(self) -> tuple[int, ...]:
        return self.value


@dataclass(frozen=True)
class Word:
    """A finite digit string over a fixed alphabet."""

    alphabet: Alphabet
    symbols: tuple[int, ...]

    def __post_init__(self):
        allowed = set(self.alphabet.symbols)
        if any(s not in allowed for s in self.symbols):
            raise WordSyntaxError(f"symbols outside {self.alphabet.name} alphabet")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.alphabet, self.symbols[i])
        return self.symbols[i]

    def __add__(self, other: "Word") -> "Word":
        if other.alphabet != self.alphabet:
            raise WordSyntaxError("cannot concatenate across alphabets")
        return Word(self.alphabet, self.symbols + other.symbols)

    def __mul__(self, n: int) -> "Word":
        return Word(self.alphabet, self.symbols * n)

    def startswith(self, prefix: "Word") -> bool:
        return self.symbols[: len(prefix)] == prefix.symbols

    def is_prefix_of(self, other: "Word") -> bool:
        return other.startswith(self)

    def comparable(self, other: "Word") -> bool:
        """True iff one word is a prefix of the other."""
        return self.is_prefix_of(other) or other.is_prefix_of(self)

    def __repr__(self) -> str:
        return f"Word({self.alphabet.name}, {''.join(map(str, self.symbols))!r})"


def word(symbols: Iterable[int], alphabet: Alphabet | None = None) -> Word:
    syms = tuple(int(s) for s in symbols)
    if alphabet is None:
        if any(s < 0 for s in syms):
            alphabet = Alphabet.SIGNED
        elif any(s > 1 for s in syms):
            alphabet = Alphabet.TERNARY
        else:
            alphabet = Alphabet.BINARY
    return Word(alphabet, syms)


def _minimal_period(per: tuple[int, ...]) -> tuple[int, ...]:
    n = len(per)
    for p in range(1, n + 1):
        if n % p == 0 and per == per[:p] * (n // p):
            return per[:p]
    return per


@dataclass(frozen=True)
class Tail:
    """An eventually periodic infinite word, canonical form.

    Canonical means: the period is primitive (no shorter repeating block)
    and the preperiod is as short as possible (any symbol at the end of
    the preperiod matching the period's last symbol is absorbed by
    rotating the period).
    """

    alphabet: Alphabet
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def symbol_at(self, i: int) -> int:
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def prefix(self, n: int) -> Word:
        return Word(self.alphabet, tuple(self.symbol_at(i) for i in range(n)))

    def shift(self, n: int = 1) -> "Tail":
        if n <= len(self.preperiod):
            return tail(self.preperiod[n:], self.period, self.alphabet)
        r = (n - len(self.preperiod)) % len(self.period)
        return tail((), self.period[r:] + self.period[:r], self.alphabet)

    def ends_with_cycle(self, block: Word | tuple[int, ...]) -> bool:
        """True iff the word eventually repeats `block` forever."""
        syms = block.symbols if isinstance(block, Word) else tuple(block)
        u = _minimal_period(syms)
        if len(u) != len(self.period):
            return False
        doubled = self.period + self.period
        return any(doubled[i : i + len(u)] == u for i in range(len(u)))

    def __repr__(self) -> str:
        pre = "".join(map(str, self.preperiod))
        per = "".join(map(str, self.period))
        return f"Tail({self.alphabet.name}, {pre!r}({per!r})*)"


def tail(
    preperiod: Iterable[int], period: Iterable[int], alphabet: Alphabet | None = None
) -> Tail:
    pre = tuple(int(s) for s in preperiod)
    per = tuple(int(s) for s in period)
    if not per:
        raise WordSyntaxError("period must be nonempty")
    if alphabet is None:
        syms = pre + per
        if any(s < 0 for s in syms):
            alphabet = Alphabet.SIGNED
        elif any(s > 1 for s in syms):
            alphabet = Alphabet.TERNARY
        else:
            alphabet = Alphabet.BINARY
    per = _minimal_period(per)
    while pre and pre[-1] == per[-1]:
        per = per[-1:] + per[:-1]
        pre = pre[:-1]
    allowed = set(alphabet.symbols)
    if any(s not in allowed for s in pre + per):
        raise WordSyntaxError(f"symbols outside {alphabet.name} alphabet")
    return Tail(alphabet, pre, per)


def constant_tail(prefix: Word, value: int = 0) -> Tail:
    return tail(prefix.symbols, (value,), prefix.alphabet)


WordLike = Union[Word, Tail]


# ---------------------------------------------------------------------------
# factor avoidance and shift membership
# ---------------------------------------------------------------------------


def avoids(w: WordLike, factor: Word) -> bool:
    """True iff `factor` never occurs as a block of consecutive symbols."""
    f = factor.symbols
    if not f:
        return False
    if isinstance(w, Word):
        window = w.symbols
    else:
        # an occurrence inside the periodic part repeats with the period,
        # so one full period past the preperiod decides everything
        n = len(w.preperiod) + len(w.period) + len(f)
        window = tuple(w.symbol_at(i) for i in range(n))
    return all(window[i : i + len(f)] != f for i in range(len(window) - len(f) + 1))


class ShiftFamily(Enum):
    # binary sequences without 01^k or 10^k: a run bounded by k-1 whenever
    # it follows the opposite symbol
    RUN_LIMITED = "run-limited"
    # additionally bars the extremal alternating tails (01^(k-1))* / (10^(k-1))*
    RUN_LIMITED_STRICT = "run-limited-strict"
    # bars 0^k and 1^k outright (all runs short), plus the extremal tails
    UNIFORM_RUN_LIMITED = "uniform-run-limited"


@dataclass(frozen=True)
class SubshiftSpec:
    family: ShiftFamily
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise WordSyntaxError("run bound k must be at least 2")


def run_limited(k: int) -> SubshiftSpec:
    return SubshiftSpec(ShiftFamily.RUN_LIMITED, k)


def run_limited_strict(k: int) -> SubshiftSpec:
    return SubshiftSpec(ShiftFamily.RUN_LIMITED_STRICT, k)


def uniform_run_limited(k: int) -> SubshiftSpec:
    return SubshiftSpec(ShiftFamily.UNIFORM_RUN_LIMITED, k)


def _forbidden_factors(spec: SubshiftSpec) -> list[Word]:
    k = spec.k
    if spec.family is ShiftFamily.UNIFORM_RUN_LIMITED:
        return [word((0,) * k), word((1,) * k)]
    return [word((0,) + (1,) * k), word((1,) + (0,) * k)]


def _barred_cycles(spec: SubshiftSpec) -> list[tuple[int, ...]]:
    if spec.family is ShiftFamily.RUN_LIMITED:
        return []
    k = spec.k
    return [(0,) + (1,) * (k - 1), (1,) + (0,) * (k - 1)]


def member(spec: SubshiftSpec, t: WordLike) -> bool:
    """Membership for infinite words; finite words are tested for
    extendability (factor avoidance alone decides it for these shifts)."""
    if isinstance(t, Word) and t.alphabet is not Alphabet.BINARY and len(t) > 0:
        raise WordSyntaxError("shift membership is for binary words")
    if isinstance(t, Tail) and t.alphabet is not Alphabet.BINARY:
        raise WordSyntaxError("shift membership is for binary words")
    if not all(avoids(t, f) for f in _forbidden_factors(spec)):
        return False
    if isinstance(t, Tail):
        for cyc in _barred_cycles(spec):
            if t.ends_with_cycle(cyc):
                return False
    return True


def reflect(w: WordLike) -> WordLike:
    """Symbolwise complement: 0<->1 on binary, 0<->2 on ternary, negation
    on signed digits."""
    hi = {Alphabet.BINARY: 1, Alphabet.TERNARY: 2, Alphabet.SIGNED: 0}[w.alphabet]
    flip = lambda s: hi - s
    if isinstance(w, Word):
        return Word(w.alphabet, tuple(flip(s) for s in w.symbols))
    return Tail(
        w.alphabet,
        tuple(flip(s) for s in w.preperiod),
        tuple(flip(s) for s in w.period),
    )


def lex_consecutive(a: Word, b: Word) -> bool:
    """True iff b is the immediate numeric successor of a (equal length):
    a = u 0 1^m and b = u 1 0^m for some (possibly empty) u."""
    if a.alphabet is not Alphabet.BINARY or b.alphabet is not Alphabet.BINARY:
        raise WordSyntaxError("lex_consecutive compares binary words")
    if len(a) != len(b) or len(a) == 0:
        return False
    va = int("".join(map(str, a.symbols)), 2)
    vb = int("".join(map(str, b.symbols)), 2)
    return vb == va + 1


def word_successor(w: Word) -> Word | None:
    """Next word of the same length in numeric order; None on overflow."""
    base = len(w.alphabet.symbols)
    if w.alphabet is Alphabet.SIGNED:
        raise WordSyntaxError("successor not defined for signed words")
    syms = list(w.symbols)
    i = len(syms) - 1
    while i >= 0:
        if syms[i] < base - 1:
            syms[i] += 1
            for j in range(i + 1, len(syms)):
                syms[j] = 0
            return Word(w.alphabet, tuple(syms))
        i -= 1
    return None


# ---------------------------------------------------------------------------
# projections: digit strings -> numbers
# ---------------------------------------------------------------------------


def project_ternary(t: WordLike) -> Fraction:
    """Value of a ternary digit string: sum of s_i / 3^i, i from 1."""
    if isinstance(t, Word):
        acc = Fraction(0)
        for s in reversed(t.symbols):
            acc = (acc + s) / 3
        return acc
    pre, per = t.preperiod, t.period
    per_val = Fraction(0)
    for s in reversed(per):
        per_val = (per_val + s) / 3
    tail_val = per_val * Fraction(3 ** len(per), 3 ** len(per) - 1)
    acc = tail_val
    for s in reversed(pre):
        acc = (acc + s) / 3
    return acc


def _as_field(q: AlgebraicNumber | FieldElement) -> FieldElement:
    if isinstance(q, AlgebraicNumber):
        return q.gen()
    return q


def project_q(q: AlgebraicNumber | FieldElement, t: WordLike) -> FieldElement:
    """Value of a digit string in base q: sum of s_i q^(-i), exact."""
    g = _as_field(q)
    ginv = g.inverse()
    if isinstance(t, Word):
        acc = g.base.zero()
        for s in reversed(t.symbols):
            acc = (acc + s) * ginv
        return acc
    pre, per = t.preperiod, t.period
    per_val = g.base.zero()
    for s in reversed(per):
        per_val = (per_val + s) * ginv
    tail_val = per_val / (1 - ginv ** len(per))
    acc = tail_val
    for s in reversed(pre):
        acc = (acc + s) * ginv
    return acc


def cylinder_interval(
    q: AlgebraicNumber | FieldElement, w: Word
) -> tuple[FieldElement, FieldElement]:
    """Exact hull of the values of all infinite extensions of w in base q."""
    g = _as_field(q)
    lo = project_q(g, w)
    span = g ** (-len(w)) / (g - 1)
    dmin = min(w.alphabet.symbols)
    dmax = max(w.alphabet.symbols)
    return lo + span * dmin, lo + span * dmax


# ---------------------------------------------------------------------------
# word syntax: parse / print
# ---------------------------------------------------------------------------


def parse_word(s: str, alphabet: Alphabet | None = None) -> WordLike:
    """Parse compact word syntax: digits, grouping, powers, trailing star.

    Examples: "102", "1(0^3)^2", "1(0^3)^2(01)*", "10*".
    A starred unit (infinite repetition) must end the string and yields a
    Tail; otherwise the result is a finite Word.
    """
    pos = 0
    items: list[list[int]] = []
    star: list[int] | None = None

    def read_int() -> int:
        nonlocal pos
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if start == pos:
            raise WordSyntaxError(f"expected integer at position {start} in {s!r}")
        return int(s[start:pos])

    while pos < len(s):
        ch = s[pos]
        if ch in "012":
            unit = [int(ch)]
            pos += 1
        elif ch == "(":
            pos += 1
            depth_unit: list[int] = []
            while pos < len(s) and s[pos] != ")":
                c = s[pos]
                if c in "012":
                    depth_unit.append(int(c))
                    pos += 1
                elif c == "^":
                    if not depth_unit:
                        raise WordSyntaxError(f"misplaced ^ in {s!r}")
                    pos += 1
                    n = read_int()
                    depth_unit = depth_unit[:-1] + [depth_unit[-1]] * n
                else:
                    raise WordSyntaxError(f"unexpected {c!r} in group in {s!r}")
            if pos >= len(s):
                raise WordSyntaxError(f"unclosed group in {s!r}")
            pos += 1
            unit = depth_unit
            if not unit:
                raise WordSyntaxError(f"empty group in {s!r}")
        else:
            raise WordSyntaxError(f"unexpected {ch!r} in {s!r}")
        if pos < len(s) and s[pos] == "^":
            pos += 1
            n = read_int()
            if n < 1:
                raise WordSyntaxError("power must be positive")
            unit = unit * n
        if pos < len(s) and s[pos] == "*":
            pos += 1
            if pos != len(s):
                raise WordSyntaxError("starred unit must end the word")
            star = unit
            break
        items.append(unit)

    flat = [x for unit in items for x in unit]
    if star is not None:
        return tail(flat, star, alphabet)
    return word(flat, alphabet) if alphabet else word(flat)


def format_word(w: WordLike) -> str:
    """Deterministic inverse of parse_word on canonical values."""
    if w.alphabet is Alphabet.SIGNED:
        raise WordSyntaxError("signed words have no compact syntax")
    if isinstance(w, Word):
        return "".join(map(str, w.symbols))
    pre = "".join(map(str, w.preperiod))
    per = "".join(map(str, w.period))
    return f"{pre}({per})*"
