"""Branch dynamics of base-q digit expansions.

A point can carry several digit expansions in a non-integer base because
inverse branches of x -> qx (mod digits) have overlapping domains. This
module builds the branch systems exactly, enumerates orbit trees, walks
single orbits with cycle detection, and certifies uniqueness either by exact
periodicity outside the overlap region or by membership of a known expansion
in a run-limited shift.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from .algebraic import (
    AlgebraicNumber,
    FieldElement,
    Ordering,
    bonacci_root,
    compare_reals,
)
from .words import Alphabet, Tail, Word, member, project_q, run_limited, run_limited_strict, tail, word

PointLike = Union[FieldElement, Fraction, int]


class InvalidBase(ValueError):
    pass


class OutOfDomain(ValueError):
    """Raised when a branch map is applied outside its domain.

    `endpoint` names the violated side: "lo" or "hi".
    """

    def __init__(self, branch: int, endpoint: str):
        super().__init__(f"branch {branch} not applicable ({endpoint} side)")
        self.branch = branch
        self.endpoint = endpoint


@dataclass(frozen=True)
class BranchMap:
    label: int
    slope: FieldElement
    offset: FieldElement
    lo: FieldElement
    hi: FieldElement
    lo_closed: bool
    hi_closed: bool

    def contains(self, x: FieldElement) -> bool:
        above = x > self.lo or (self.lo_closed and x == self.lo)
        below = x < self.hi or (self.hi_closed and x == self.hi)
        return above and below

    def violated_side(self, x: FieldElement) -> str:
        if not (x > self.lo or (self.lo_closed and x == self.lo)):
            return "lo"
        return "hi"

    def __call__(self, x: FieldElement) -> FieldElement:
        return self.slope * x + self.offset


@dataclass(frozen=True)
class ExpansionSystem:
    """A finite family of expanding affine branches with exact domains."""

    base: AlgebraicNumber
    maps: tuple[BranchMap, ...]
    hull_lo: FieldElement
    hull_hi: FieldElement
    digit_alphabet: Alphabet
    # smallest interval containing every point with >= 2 applicable branches
    switch_lo: FieldElement
    switch_hi: FieldElement

    def q(self) -> FieldElement:
        return self.base.gen()

    def lift(self, x: PointLike) -> FieldElement:
        if isinstance(x, FieldElement):
            if x.base is self.base or x.base == self.base:
                return x
            raise InvalidBase("point belongs to a different field")
        return self.base.rational(Fraction(x))

    def branch(self, label: int) -> BranchMap:
        for m in self.maps:
            if m.label == label:
                return m
        raise KeyError(label)

    def applicable(self, x: PointLike) -> list[int]:
        p = self.lift(x)
        return [m.label for m in self.maps if m.contains(p)]

    def in_switch_region(self, x: PointLike, strict: bool = False) -> bool:
        p = self.lift(x)
        if strict:
            return self.switch_lo < p < self.switch_hi
        return self.switch_lo <= p <= self.switch_hi


def _check_base(q: AlgebraicNumber) -> None:
    one = AlgebraicNumber.from_rational(1)
    two = AlgebraicNumber.from_rational(2)
    if compare_reals(q, one) != Ordering.Greater or compare_reals(q, two) != Ordering.Less:
        raise InvalidBase("base must lie strictly between 1 and 2")


def ternary_branch_system(q: AlgebraicNumber) -> ExpansionSystem:
    """Three branches labelled by ternary digits on [0, 1/(q-1)].

    Labels 0 and 2 scale by q (minus a unit for 2); label 1 is the
    orientation-reversing middle branch defined only on the switch region
    (1/q, 1/(q(q-1))], which is where expansions become ambiguous.
    """
    _check_base(q)
    g = q.gen()
    one = g.base.one()
    zero = g.base.zero()
    top = 1 / (g - 1)
    merge = 1 / (g * (g - 1))
    f0 = BranchMap(0, g, zero, zero, merge, True, False)
    f1 = BranchMap(
        1, -g / (2 - g), top + 1 / (2 - g), 1 / g, merge, False, True
    )
    f2 = BranchMap(2, g, -one, 1 / g, top, True, True)
    return ExpansionSystem(
        q, (f0, f1, f2), zero, top, Alphabet.TERNARY, 1 / g, merge
    )


def merged_branch_system(q: AlgebraicNumber) -> ExpansionSystem:
    """Two branches labelled by binary digits, both with closed domains.

    Compared to the ternary system the middle branch is dropped and the
    outer two domains are closed; orbit counts here lower-bound the ternary
    ones and agree on uniqueness.
    """
    _check_base(q)
    g = q.gen()
    one = g.base.one()
    zero = g.base.zero()
    top = 1 / (g - 1)
    merge = 1 / (g * (g - 1))
    f0 = BranchMap(0, g, zero, zero, merge, True, True)
    f1 = BranchMap(1, g, -one, 1 / g, top, True, True)
    return ExpansionSystem(q, (f0, f1), zero, top, Alphabet.BINARY, 1 / g, merge)


def signed_digit_system(q: AlgebraicNumber) -> ExpansionSystem:
    """Three branches for signed digits {-1, 0, 1} on the symmetric interval
    [-1/(q-1), 1/(q-1)], all domains closed."""
    _check_base(q)
    g = q.gen()
    one = g.base.one()
    zero = g.base.zero()
    top = 1 / (g - 1)
    merge = 1 / (g * (g - 1))
    edge = (2 - g) / (g * (g - 1))
    fm = BranchMap(-1, g, one, -top, edge, True, True)
    f0 = BranchMap(0, g, zero, -merge, merge, True, True)
    f1 = BranchMap(1, g, -one, -edge, top, True, True)
    return ExpansionSystem(
        q, (fm, f0, f1), -top, top, Alphabet.SIGNED, -merge, merge
    )


def apply_map(sys: ExpansionSystem, label: int, x: PointLike) -> FieldElement:
    p = sys.lift(x)
    m = sys.branch(label)
    if not m.contains(p):
        raise OutOfDomain(label, m.violated_side(p))
    return m(p)


def apply_word(sys: ExpansionSystem, w: Word, x: PointLike) -> FieldElement:
    p = sys.lift(x)
    for s in w:
        p = apply_map(sys, s, p)
    return p


def word_is_applicable(sys: ExpansionSystem, w: Word, x: PointLike) -> bool:
    try:
        apply_word(sys, w, x)
        return True
    except OutOfDomain:
        return False


# ---------------------------------------------------------------------------
# orbit trees
# ---------------------------------------------------------------------------


@dataclass
class OrbitNode:
    point: FieldElement
    path: tuple[int, ...]
    children: list["OrbitNode"] = field(default_factory=list)
    alive: bool = False


@dataclass
class OrbitTree:
    system: ExpansionSystem
    root: OrbitNode
    depth: int

    def alive_leaves(self) -> list[tuple[Word, FieldElement]]:
        out: list[tuple[Word, FieldElement]] = []

        def walk(node: OrbitNode):
            if len(node.path) == self.depth:
                if node.alive:
                    out.append(
                        (Word(self.system.digit_alphabet, node.path), node.point)
                    )
                return
            for c in node.children:
                walk(c)

        walk(self.root)
        return out

    def alive_leaf_count(self) -> int:
        return len(self.alive_leaves())

    def dead_end_count(self) -> int:
        n = 0

        def walk(node: OrbitNode):
            nonlocal n
            if not node.alive:
                n += 1
                return  # children of dead nodes are all dead too
            for c in node.children:
                walk(c)

        walk(self.root)
        return n


def enumerate_orbits(sys: ExpansionSystem, x: PointLike, depth: int) -> OrbitTree:
    """The complete tree of applicable branch sequences from x.

    A node is alive iff some continuation reaches the full depth; leaves at
    the full depth are alive, interior nodes with no applicable branch are
    dead ends.
    """
    root = OrbitNode(sys.lift(x), ())

    def grow(node: OrbitNode) -> bool:
        if len(node.path) == depth:
            node.alive = True
            return True
        any_alive = False
        for label in sys.applicable(node.point):
            child = OrbitNode(
                sys.branch(label)(node.point), node.path + (label,)
            )
            node.children.append(child)
            if grow(child):
                any_alive = True
        node.alive = any_alive
        return any_alive

    grow(root)
    return OrbitTree(sys, root, depth)


# ---------------------------------------------------------------------------
# uniqueness certification
# ---------------------------------------------------------------------------


class UniqueOrbitStatus(Enum):
    UniqueCertified = "UniqueCertified"
    BranchFoundAt = "BranchFoundAt"
    UnknownAtDepth = "UnknownAtDepth"


@dataclass(frozen=True)
class UniqueOrbitResult:
    status: UniqueOrbitStatus
    branch_step: Optional[int] = None
    digits: Optional[Word] = None
    cycle_start: Optional[int] = None
    cycle_length: Optional[int] = None
    route: Optional[str] = None  # "periodic-trajectory" | "shift-membership"
    shift_k: Optional[int] = None


_SHIFT_CERT_MAX_K = 12


def _shift_certificate_k(q: AlgebraicNumber, expansion: Tail) -> Optional[int]:
    """Smallest k such that the expansion provably has no sibling: the
    expansion lies in the k-run-limited shift and q exceeds the k-th
    bonacci root (equality allowed for the strict family)."""
    for k in range(2, _SHIFT_CERT_MAX_K + 1):
        rel = compare_reals(q, bonacci_root(k))
        if rel == Ordering.Greater and member(run_limited(k), expansion):
            return k
        if rel == Ordering.Equal and member(run_limited_strict(k), expansion):
            return k
    return None


def unique_orbit_check(
    q: AlgebraicNumber,
    x: PointLike,
    depth: int,
    expansion: Optional[Tail] = None,
) -> UniqueOrbitResult:
    """Decide whether x has a single branch sequence in the ternary system.

    Certification routes: a known binary expansion of x lying in a
    run-limited shift below the base (eternal), or an exactly periodic
    trajectory that never meets the switch region (eternal). Otherwise the
    walk reports the first branch point or gives up at the depth bound.
    """
    sys = ternary_branch_system(q)
    p = sys.lift(x)

    if expansion is not None:
        if expansion.alphabet is not Alphabet.BINARY:
            raise ValueError("expansion must be a binary word")
        if project_q(q, expansion) != p:
            raise ValueError("expansion does not evaluate to x")
        k = _shift_certificate_k(q, expansion)
        if k is not None:
            return UniqueOrbitResult(
                UniqueOrbitStatus.UniqueCertified,
                route="shift-membership",
                shift_k=k,
            )

    seen: dict[FieldElement, int] = {}
    digits: list[int] = []
    for step in range(depth):
        labels = sys.applicable(p)
        if len(labels) == 0:
            raise ValueError("point escaped the expansion interval")
        if len(labels) > 1:
            return UniqueOrbitResult(
                UniqueOrbitStatus.BranchFoundAt,
                branch_step=step,
                digits=Word(Alphabet.TERNARY, tuple(digits)),
            )
        if p in seen:
            start = seen[p]
            return UniqueOrbitResult(
                UniqueOrbitStatus.UniqueCertified,
                digits=Word(Alphabet.TERNARY, tuple(digits)),
                cycle_start=start,
                cycle_length=step - start,
                route="periodic-trajectory",
            )
        seen[p] = step
        digits.append(labels[0])
        p = sys.branch(labels[0])(p)

    return UniqueOrbitResult(
        UniqueOrbitStatus.UnknownAtDepth,
        digits=Word(Alphabet.TERNARY, tuple(digits)),
    )


# ---------------------------------------------------------------------------
# binary -> ternary path transport
# ---------------------------------------------------------------------------


def d_map(t: Tail) -> Tail:
    """Transport a binary branch path of the merged system to a ternary
    branch path: digits double, except that a suffix 0 1^inf becomes 1 0^inf
    (the doubled form would violate the half-open middle domain)."""
    if t.alphabet is not Alphabet.BINARY:
        raise ValueError("d_map acts on binary words")
    if t.period == (1,) and t.preperiod:
        # canonical form guarantees the preperiod ends in 0 here
        head = tuple(2 * s for s in t.preperiod[:-1])
        return tail(head + (1,), (0,), Alphabet.TERNARY)
    return tail(
        tuple(2 * s for s in t.preperiod),
        tuple(2 * s for s in t.period),
        Alphabet.TERNARY,
    )


def tail_is_orbit(sys: ExpansionSystem, t: Tail, x: PointLike) -> bool:
    """Check exactly whether the infinite digit string t is an applicable
    branch sequence at x: walk the preperiod, then confirm the period closes
    into an exact cycle."""
    p = sys.lift(x)
    try:
        for i in range(len(t.preperiod)):
            p = apply_map(sys, t.symbol_at(i), p)
        first = p
        while True:
            for j in range(len(t.period)):
                p = apply_map(
                    sys, t.symbol_at(len(t.preperiod) + j), p
                )
            if p == first:
                return True
            # expanding maps push any non-closing trajectory out of the
            # bounded domains, so the walk is guaranteed to terminate
    except OutOfDomain:
        return False
