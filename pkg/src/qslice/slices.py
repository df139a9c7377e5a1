"""Horizontal slices of the self-affine graph, computed two independent ways.

A height y meets the attractor in the set of x whose ternary digits label a
surviving branch sequence of the expansion dynamics at y/(q-1). This module
enumerates those sequences exactly, classifies the cardinality of the slice,
and cross-checks against a purely geometric box-descent oracle that never
touches the dynamics.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from .algebraic import AlgebraicNumber, FieldElement
from .dynamics import (
    PointLike,
    ternary_branch_system,
    unique_orbit_check,
    UniqueOrbitResult,
    UniqueOrbitStatus,
)
from .words import Alphabet, Word, word_successor


class SliceInputError(ValueError):
    pass


class ClaimKind(Enum):
    ExactlyN = "ExactlyN"
    AtLeastN = "AtLeastN"
    UncountablePattern = "UncountablePattern"
    Unknown = "Unknown"


@dataclass(frozen=True)
class CardinalityClaim:
    """What the enumeration proves about the number of slice points.

    ExactlyN with certified=True: every surviving orbit carries an eternal
    uniqueness certificate and the cylinders are pairwise non-adjacent, so
    the slice has exactly n points. certified=False weakens the last step
    to "single branch through the probe horizon": exactly n points at this
    resolution. AtLeastN counts pairwise-disjoint groups of cylinders, each
    guaranteed to hold a point. UncountablePattern reports an observed
    doubling pattern (two disjoint subtrees that both branch again).
    """

    kind: ClaimKind
    n: Optional[int] = None
    certified: Optional[bool] = None
    witness: Optional[tuple] = None


def exactly(n: int, certified: bool) -> CardinalityClaim:
    return CardinalityClaim(ClaimKind.ExactlyN, n=n, certified=certified)


def at_least(n: int) -> CardinalityClaim:
    return CardinalityClaim(ClaimKind.AtLeastN, n=n)


def uncountable_pattern(witness: tuple) -> CardinalityClaim:
    return CardinalityClaim(ClaimKind.UncountablePattern, witness=witness)


def unknown_cardinality() -> CardinalityClaim:
    return CardinalityClaim(ClaimKind.Unknown)


@dataclass(frozen=True)
class SliceResult:
    base: AlgebraicNumber
    y: FieldElement
    depth: int
    cylinders: tuple[Word, ...]
    claim: CardinalityClaim
    branch_events: tuple[tuple[int, tuple[int, ...]], ...]
    truncated: bool
    leaf_probes: tuple[UniqueOrbitResult, ...] = ()


def _lift_unit_value(q: AlgebraicNumber, y: PointLike) -> FieldElement:
    g = q.gen()
    if isinstance(y, FieldElement):
        v = y if (y.base is q or y.base == q) else None
        if v is None:
            raise SliceInputError("height belongs to a different field")
    else:
        v = g.base.rational(Fraction(y))
    if not (0 <= v and v <= 1):
        raise SliceInputError("height must lie in [0, 1]")
    return v


def _doubling_witness(events) -> Optional[tuple]:
    for s, p in events:
        seen_children = set()
        for s2, p2 in events:
            if s2 > s and len(p2) > len(p) and p2[: len(p)] == p:
                seen_children.add(p2[len(p)])
                if len(seen_children) >= 2:
                    return (s, p, tuple(sorted(seen_children)))
    return None


def _adjacency_groups(words: list[Word]) -> int:
    if not words:
        return 0
    ordered = sorted(words, key=lambda w: w.symbols)
    groups = 1
    for prev, cur in zip(ordered, ordered[1:]):
        succ = word_successor(prev)
        if succ is None or succ.symbols != cur.symbols:
            groups += 1
    return groups


def compute_slice(
    q: AlgebraicNumber,
    y: PointLike,
    depth: int,
    max_cylinders: int = 4096,
) -> SliceResult:
    """Enumerate every surviving ternary branch sequence at height y.

    The frontier is expanded breadth-first with exact arithmetic. If it
    outgrows max_cylinders the enumeration stops early and only pattern
    claims are made.
    """
    yv = _lift_unit_value(q, y)
    sys = ternary_branch_system(q)
    x0 = yv / (sys.q() - 1)

    frontier: list[tuple[tuple[int, ...], FieldElement]] = [((), x0)]
    events: list[tuple[int, tuple[int, ...]]] = []
    truncated = False
    for step in range(depth):
        nxt: list[tuple[tuple[int, ...], FieldElement]] = []
        for path, p in frontier:
            labels = sys.applicable(p)
            if len(labels) >= 2:
                events.append((step, path))
            for lab in labels:
                nxt.append((path + (lab,), sys.branch(lab)(p)))
        frontier = nxt
        if len(frontier) > max_cylinders:
            truncated = True
            break

    cylinders = tuple(Word(Alphabet.TERNARY, path) for path, _ in frontier)
    witness = _doubling_witness(events)

    if witness is not None:
        claim = uncountable_pattern(witness)
        return SliceResult(
            q, yv, depth, cylinders, claim, tuple(events), truncated
        )
    if truncated:
        return SliceResult(
            q, yv, depth, cylinders, unknown_cardinality(), tuple(events), True
        )

    n = len(frontier)
    groups = _adjacency_groups(list(cylinders))
    probes = tuple(
        unique_orbit_check(q, point, depth) for _, point in frontier
    )
    branched = any(
        r.status == UniqueOrbitStatus.BranchFoundAt for r in probes
    )
    if branched or groups < n:
        claim = at_least(groups)
    elif all(r.status == UniqueOrbitStatus.UniqueCertified for r in probes):
        claim = exactly(n, certified=True)
    else:
        claim = exactly(n, certified=False)
    return SliceResult(
        q, yv, depth, cylinders, claim, tuple(events), False, probes
    )


def classify_cardinality(
    q: AlgebraicNumber, y: PointLike, depth: int, max_cylinders: int = 4096
) -> CardinalityClaim:
    return compute_slice(q, y, depth, max_cylinders).claim


# ---------------------------------------------------------------------------
# geometric oracle: pure box descent, no dynamics
# ---------------------------------------------------------------------------


def geometric_slice_oracle(
    q: AlgebraicNumber, y: PointLike, depth: int
) -> set[Word]:
    """Words whose closed box (depth-fold image of the unit square) meets
    the horizontal line at y.

    Independent of the branch dynamics: only the three vertical affine
    contractions are iterated, with exact interval endpoints. Because boxes
    are closed, a slice point sitting on a box corner appears under both of
    its ternary spellings; the dynamics keeps only the lower spelling's
    successor, so callers comparing against compute_slice should accept a
    box-only word exactly when its numeric successor survives dynamically.
    """
    yv = _lift_unit_value(q, y)
    g = q.gen()
    inv = 1 / g
    flip_scale = 2 * inv - 1  # slope magnitude of the middle contraction
    # vertical parts as (slope, offset); the middle one reverses orientation
    parts = ((inv, g.base.zero()), (-flip_scale, inv), (inv, 1 - inv))

    # a word's box height range is the composed map applied to [0, 1], so
    # appending a digit composes on the inside: slope and offset update by
    # (a, b) . (s, o) = (a*s, a*o + b)
    frontier: list[tuple[tuple[int, ...], FieldElement, FieldElement]] = [
        ((), g.base.one(), g.base.zero())
    ]
    for _ in range(depth):
        nxt = []
        for path, a, b in frontier:
            for lab, (s, o) in enumerate(parts):
                ca, cb = a * s, a * o + b
                lo, hi = (cb, ca + cb) if ca > 0 else (ca + cb, cb)
                if lo <= yv <= hi:
                    nxt.append((path + (lab,), ca, cb))
        frontier = nxt
    return {Word(Alphabet.TERNARY, path) for path, _, _ in frontier}


def slice_matches_oracle(result: SliceResult, boxes: set[Word]) -> bool:
    """The exact agreement law between the two routes: every surviving
    sequence has a box, and a box without a surviving sequence is the
    doomed spelling of a corner whose successor spelling survives."""
    alive = set(result.cylinders)
    if not alive <= boxes:
        return False
    for w in boxes - alive:
        succ = word_successor(w)
        if succ is None or succ not in alive:
            return False
    return True


# ---------------------------------------------------------------------------
# pointwise evaluation of the graph
# ---------------------------------------------------------------------------


def ternary_digits(x: Union[Fraction, FieldElement], n: int) -> Word:
    """First n digits of the canonical ternary expansion (the one that never
    ends in all twos, except at x = 1)."""
    digits = []
    for _ in range(n):
        if x == 1:
            digits.append(2)
            continue
        x = x * 3
        d = 0
        if x >= 2:
            d = 2
        elif x >= 1:
            d = 1
        digits.append(d)
        x = x - d
    return Word(Alphabet.TERNARY, tuple(digits))


def eval_okamoto(
    q: AlgebraicNumber, x: Union[Fraction, FieldElement, int], depth: int
) -> tuple[FieldElement, FieldElement]:
    """Exact enclosure of the graph value above x, following the canonical
    ternary digits of x. Width contracts at least like
    max(1/q, 2/q - 1)^depth."""
    g = q.gen()
    if isinstance(x, FieldElement):
        xv = x
    else:
        xv = g.base.rational(Fraction(x))
    if not (0 <= xv and xv <= 1):
        raise SliceInputError("abscissa must lie in [0, 1]")
    digits = ternary_digits(xv, depth)

    inv = 1 / g
    flip_scale = 2 * inv - 1
    lo, hi = g.base.zero(), g.base.one()
    for d in reversed(digits.symbols):
        if d == 0:
            lo, hi = lo * inv, hi * inv
        elif d == 1:
            lo, hi = (
                flip_scale * (1 - hi) + (1 - inv),
                flip_scale * (1 - lo) + (1 - inv),
            )
        else:
            lo, hi = lo * inv + (1 - inv), hi * inv + (1 - inv)
    return lo, hi
