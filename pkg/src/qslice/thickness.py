"""Gap structure and thickness of digit-set fractals, with certificates.

The signed-digit attractor of x -> (x + d)/q, d in {-1, 0, 1}, fills an
interval once double digits are grouped: five two-digit maps cover the hull.
That cover drives a canonical expansion of 1, whose zero pattern seeds a
family of binary sequences with controlled gaps. Together with a run-limited
shift this yields two linked Cantor sets whose thickness product exceeds 1,
certifying nonempty intersection and, downstream, a three-point slice.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .algebraic import (
    AlgebraicNumber,
    FieldElement,
    Ordering,
    bonacci_root,
    compare_reals,
)
from .certificates import (
    Certificate,
    CertificateError,
    IntervalCheck,
    bracket,
    exact_check,
)
from .slices import SliceResult, compute_slice, ClaimKind
from .words import Alphabet, Tail, Word, project_q, tail


class ThicknessError(ValueError):
    pass


class CoverFailure(ThicknessError):
    pass


class BaseTooSmall(ThicknessError):
    pass


class NotInterleaved(ThicknessError):
    pass


class ThicknessTooSmall(ThicknessError):
    pass


class RefinementBudgetExceeded(ThicknessError):
    pass


# ---------------------------------------------------------------------------
# signed-digit hull and the five-map double-digit cover
# ---------------------------------------------------------------------------

# double digits (first, second) with at most one nonzero entry, in increasing
# order of the value first*q + second
W2 = ((-1, 0), (0, -1), (0, 0), (0, 1), (1, 0))


def h_q_interval(q: AlgebraicNumber) -> tuple[FieldElement, FieldElement]:
    """Hull [-h, h] of the signed-digit attractor, h = q/(q^2 - 1)."""
    g = q.gen()
    h = g / (g * g - 1)
    return -h, h


def w2_cover_check(q: AlgebraicNumber) -> Certificate:
    """Prove that the five double-digit images tile the signed hull.

    Each pair w = (i1, i2) maps the hull to (hull + i2 + q*i1)/q^2; the
    certificate records that consecutive images overlap and the ends match
    the hull exactly.
    """
    g = q.gen()
    lo, hi = h_q_interval(q)
    qq = g * g
    pieces = []
    for i1, i2 in W2:
        shift = i2 + g * i1
        pieces.append(((lo + shift) / qq, (hi + shift) / qq))

    checks = []
    try:
        checks.append(exact_check("left-end-flush", "le", pieces[0][0] - lo, 0))
        checks.append(exact_check("left-end-flush-rev", "le", lo - pieces[0][0], 0))
        checks.append(exact_check("right-end-flush", "le", pieces[-1][1] - hi, 0))
        checks.append(exact_check("right-end-flush-rev", "le", hi - pieces[-1][1], 0))
        for i in range(len(pieces) - 1):
            checks.append(
                exact_check(
                    f"overlap-{i}-{i + 1}", "le", pieces[i + 1][0] - pieces[i][1], 0
                )
            )
    except CertificateError as e:
        raise CoverFailure(str(e)) from e

    return Certificate(
        claim="double-digit-cover",
        hypotheses=("base strictly between 1 and 2",),
        checks=tuple(checks),
        data={
            "base": bracket(g),
            "hull": [bracket(lo), bracket(hi)],
            "pieces": [[bracket(a), bracket(b)] for a, b in pieces],
        },
    )


# ---------------------------------------------------------------------------
# canonical signed expansion of 1
# ---------------------------------------------------------------------------


def prefix_run_length(q: AlgebraicNumber) -> int:
    """Length of the leading run of ones in the canonical expansion of 1.

    Zero up to the golden ratio, then constant k between consecutive
    k-bonacci roots. Resolved by exact root comparisons, never by floats.
    """
    if compare_reals(q, bonacci_root(2)) != Ordering.Greater:
        return 0
    k = 2
    while compare_reals(q, bonacci_root(k + 1)) == Ordering.Greater:
        k += 1
        if k > 64:
            raise ThicknessError("base too close to 2 for the prefix table")
    return k


def fixed_expansion_of_one(q: AlgebraicNumber, length: int) -> Word:
    """Deterministic signed-digit expansion c with sum c_i q^-i = 1.

    A run of ones brings the residual into the hull, then double digits are
    consumed greedily in the fixed W2 order. The residual x_n satisfies
    1 - sum_{i<=n} c_i q^-i = q^-n x_n with |x_n| <= h throughout the
    double-digit phase.
    """
    g = q.gen()
    _, h = h_q_interval(q)
    m = prefix_run_length(q)
    digits: list[int] = []
    x = g.base.one()
    for _ in range(m):
        digits.append(1)
        x = g * x - 1
    if not (-h <= x <= h):
        raise ThicknessError("prefix run failed to enter the hull")
    while len(digits) < length:
        for i1, i2 in W2:
            nxt = g * (g * x - i1) - i2
            if -h <= nxt <= h:
                digits.extend((i1, i2))
                x = nxt
                break
        else:
            raise ThicknessError("no double digit applies; cover violated")
    return Word(Alphabet.SIGNED, tuple(digits[:length]))


# ---------------------------------------------------------------------------
# the branching family built on the zeros of the canonical expansion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AqTemplate:
    """Binary sequences a with a_j = 1 where c_j = 1, a_j = 0 where
    c_j = -1, prescribed bits at odd-numbered zeros and free bits at
    even-numbered zeros of c."""

    base: AlgebraicNumber
    c: Word
    bits: tuple[Optional[int], ...]  # None marks a free position
    free_positions: tuple[int, ...]  # 0-indexed

    def free_below(self, k: int) -> tuple[int, ...]:
        return tuple(p for p in self.free_positions if p < k)

    def count(self, k: int) -> int:
        return 2 ** len(self.free_below(k))

    def prefixes(self, k: int) -> list[Word]:
        """All admissible length-k prefixes, in increasing value order of
        the free bits read most-significant-first."""
        free = self.free_below(k)
        out = []
        for mask in range(2 ** len(free)):
            symbols = list(self.bits[:k])
            for idx, pos in enumerate(free):
                symbols[pos] = (mask >> (len(free) - 1 - idx)) & 1
            out.append(Word(Alphabet.BINARY, tuple(symbols)))
        return out


def build_aq_prefixes(q: AlgebraicNumber, k: int, margin: int = 16) -> AqTemplate:
    """Template for the branching family; needs the base large enough that
    the family avoids both forbidden runs of length 9."""
    if compare_reals(q, bonacci_root(9)) != Ordering.Greater:
        raise BaseTooSmall("base must exceed the 9-bonacci root")
    c = fixed_expansion_of_one(q, k + margin)
    bits: list[Optional[int]] = []
    free: list[int] = []
    zeros = 0
    for pos, d in enumerate(c.symbols):
        if d == 1:
            bits.append(1)
        elif d == -1:
            bits.append(0)
        else:
            zeros += 1
            if zeros % 2 == 0:
                bits.append(None)
                free.append(pos)
            elif zeros % 4 == 1:
                bits.append(1)
            else:
                bits.append(0)
    return AqTemplate(q, c, tuple(bits), tuple(free))


def shifted_partner(template: AqTemplate, a: Word) -> Word:
    """Digitwise difference b = a - c, the run-limited sequence whose value
    sits exactly one unit below a's."""
    n = len(a)
    if n > len(template.c):
        raise ThicknessError("prefix longer than the stored expansion")
    out = []
    for ai, ci in zip(a.symbols, template.c.symbols):
        bi = ai - ci
        if bi not in (0, 1):
            raise ThicknessError("prefix is not admissible for this template")
        out.append(bi)
    return Word(Alphabet.BINARY, tuple(out))


# ---------------------------------------------------------------------------
# follower-state analysis of the run-limited shift
# ---------------------------------------------------------------------------

_START = ("start",)


class ShiftSetAnalysis:
    """Exact interval, gap and thickness data for the projection of the
    run-limited shift (no 01^k, no 10^k) at a fixed base.

    The shift has finitely many follower states, so every geometric
    question reduces to finitely many exact computations: min/max tails
    are eventually periodic, and every gap of the projection is a scaled
    copy of one of the per-state gaps.
    """

    def __init__(self, q: AlgebraicNumber, k: int):
        if k < 2:
            raise ThicknessError("run bound must be at least 2")
        self.q = q
        self.k = k
        self.g = q.gen()
        self._vmin: dict = {}
        self._vmax: dict = {}
        self._ecl: dict = {}
        self._ecr: dict = {}
        self._maxgap: dict = {}

    # -- automaton ----------------------------------------------------------

    def successors(self, state) -> tuple[tuple[int, tuple], ...]:
        k = self.k
        if state == _START:
            return ((0, ("init", 0)), (1, ("init", 1)))
        if state[0] == "init":
            d = state[1]
            moves = [(d, state), (1 - d, ("run", 1 - d, 1))]
            return tuple(sorted(moves))
        _, d, r = state
        moves = [(1 - d, ("run", 1 - d, 1))]
        if r + 1 <= k - 1:
            moves.append((d, ("run", d, r + 1)))
        return tuple(sorted(moves))

    def states(self) -> list[tuple]:
        seen = [_START]
        i = 0
        while i < len(seen):
            for _, s in self.successors(seen[i]):
                if s not in seen:
                    seen.append(s)
            i += 1
        return seen

    # -- extremal tails -----------------------------------------------------

    def _extremal_tail(self, state, prefer: int) -> Tail:
        path = []
        digits = []
        s = state
        while s not in path:
            path.append(s)
            moves = self.successors(s)
            move = moves[0] if prefer == 0 else moves[-1]
            digits.append(move[0])
            s = move[1]
        start = path.index(s)
        return tail(digits[:start], digits[start:], Alphabet.BINARY)

    def vmin(self, state) -> FieldElement:
        if state not in self._vmin:
            self._vmin[state] = project_q(self.q, self._extremal_tail(state, 0))
        return self._vmin[state]

    def vmax(self, state) -> FieldElement:
        if state not in self._vmax:
            self._vmax[state] = project_q(self.q, self._extremal_tail(state, 1))
        return self._vmax[state]

    def diam(self, state) -> FieldElement:
        return self.vmax(state) - self.vmin(state)

    def own_gap(self, state) -> Optional[FieldElement]:
        """Width of the split between the digit-0 and digit-1 child copies,
        None when the state is deterministic or the copies overlap."""
        moves = self.successors(state)
        if len(moves) < 2:
            return None
        (_, s0), (_, s1) = moves
        gap = (1 + self.vmin(s1) - self.vmax(s0)) / self.g
        return gap if gap > 0 else None

    # -- largest gap --------------------------------------------------------

    def _depths_from(self, root) -> dict:
        depth = {root: 0}
        queue = [root]
        while queue:
            s = queue.pop(0)
            for _, t in self.successors(s):
                if t not in depth:
                    depth[t] = depth[s] + 1
                    queue.append(t)
        return depth

    def max_gap(self, state=_START) -> FieldElement:
        """Exact largest gap of the subtree rooted at a state: the biggest
        per-state gap discounted by the shallowest occurrence depth."""
        if state not in self._maxgap:
            best = self.g.base.zero()
            for s, d in self._depths_from(state).items():
                gap = self.own_gap(s)
                if gap is not None:
                    cand = gap / self.g**d
                    if cand > best:
                        best = cand
            self._maxgap[state] = best
        return self._maxgap[state]

    # -- edge clearances and thickness --------------------------------------

    def _clearance(self, state, theta: FieldElement, from_left: bool) -> FieldElement:
        """Distance from one edge of the state's interval to the first gap
        of size >= theta, or the full diameter when none exists. Treats
        every child gap as a gap of the union, which can only shorten the
        answer, keeping thickness bounds on the safe side."""
        memo = self._ecl if from_left else self._ecr
        key = (state, theta)
        if key in memo:
            return memo[key]
        if theta > self.max_gap(state):
            memo[key] = self.diam(state)
            return memo[key]
        moves = self.successors(state)
        g = self.g
        if len(moves) == 1:
            _, child = moves[0]
            memo[key] = self._clearance(child, theta * g, from_left) / g
            return memo[key]
        (_, s0), (_, s1) = moves
        lo0 = self.vmin(s0) / g
        hi0 = self.vmax(s0) / g
        lo1 = (1 + self.vmin(s1)) / g
        hi1 = (1 + self.vmax(s1)) / g
        gap = self.own_gap(state)
        if from_left:
            cands = [self._clearance(s0, theta * g, True) / g]
            if gap is not None and gap >= theta:
                cands.append(hi0 - lo0)
            cands.append((lo1 - lo0) + self._clearance(s1, theta * g, True) / g)
        else:
            cands = [self._clearance(s1, theta * g, False) / g]
            if gap is not None and gap >= theta:
                cands.append(hi1 - lo1)
            cands.append((hi1 - hi0) + self._clearance(s0, theta * g, False) / g)
        memo[key] = min(cands)
        return memo[key]

    def thickness_bound(self) -> tuple[FieldElement, dict]:
        """Certified lower bound for the thickness of the projection.

        For each per-state gap the flanking bridges are measured inside the
        adjacent child copies only; any real bridge is at least as long.
        """
        g = self.g
        best = None
        details = {}
        for s in self.states():
            gap = self.own_gap(s)
            if gap is None:
                continue
            (_, s0), (_, s1) = self.successors(s)
            bridge_l = self._clearance(s0, gap * g, False) / g
            bridge_r = self._clearance(s1, gap * g, True) / g
            ratio = min(bridge_l, bridge_r) / gap
            details[str(s)] = bracket(ratio)
            if best is None or ratio < best:
                best = ratio
        if best is None:
            raise ThicknessError("shift has no gaps; thickness undefined")
        return best, details


# ---------------------------------------------------------------------------
# gap enumeration across the three set families
# ---------------------------------------------------------------------------


class GapFamily(Enum):
    AqSet = "aq"
    SkSet = "sk"
    ScaledShiftedSk = "scaled-shifted-sk"


@dataclass(frozen=True)
class GapRecord:
    level: int
    left: tuple[FieldElement, FieldElement]
    right: tuple[FieldElement, FieldElement]
    size: tuple[FieldElement, FieldElement]
    bridge_lb: FieldElement
    meta: dict


@dataclass(frozen=True)
class GapStructure:
    family: GapFamily
    k: int
    level: int
    hull: tuple[tuple[FieldElement, FieldElement], tuple[FieldElement, FieldElement]]
    gaps: tuple[GapRecord, ...]


def _aq_value_bracket(
    template: AqTemplate, assignment: dict, upto: int, fill: int
) -> tuple[FieldElement, FieldElement]:
    """Enclosure of sup (fill=1) or inf (fill=0) of values with the given
    bits through position upto-1 and extremal free bits beyond."""
    q = template.base
    g = q.gen()
    ginv = 1 / g
    depth = len(template.bits)
    acc = g.base.zero()
    for pos in range(depth - 1, -1, -1):
        bit = template.bits[pos]
        if bit is None:
            bit = assignment.get(pos, fill) if pos < upto else fill
        acc = acc * ginv + bit
    acc = acc * ginv
    # digits past the stored template can contribute at most a full tail
    tail_bound = ginv**depth / (g - 1)
    return acc, acc + tail_bound


def _enumerate_aq_gaps(q: AlgebraicNumber, level: int, margin: int = 14) -> GapStructure:
    template = build_aq_prefixes(q, level, margin=margin)
    g = q.gen()
    free = template.free_below(level)
    records = []
    for idx, pos in enumerate(free):
        earlier = free[:idx]
        for mask in range(2 ** len(earlier)):
            assignment = {
                p: (mask >> (len(earlier) - 1 - i)) & 1
                for i, p in enumerate(earlier)
            }
            low = dict(assignment)
            low[pos] = 0
            high = dict(assignment)
            high[pos] = 1
            left = _aq_value_bracket(template, low, pos + 1, 1)
            right = _aq_value_bracket(template, high, pos + 1, 0)
            size = (right[0] - left[1], right[1] - left[0])
            records.append(
                GapRecord(
                    level=pos + 2,
                    left=left,
                    right=right,
                    size=size,
                    bridge_lb=g.base.zero(),  # filled in below
                    meta={"free_position": pos, "mask": mask},
                )
            )
    hull_lo = _aq_value_bracket(template, {}, 0, 0)
    hull_hi = _aq_value_bracket(template, {}, 0, 1)

    # bridges: distance to the nearest gap of at least equal size, or to the
    # hull end; a gap's level orders its size, smaller level = larger gap
    records.sort(key=lambda r: r.left[0])
    finished = []
    for i, rec in enumerate(records):
        best = None
        for j in range(i - 1, -1, -1):
            if records[j].level <= rec.level:
                cand = rec.left[0] - records[j].right[1]
                best = cand if best is None else min(best, cand)
                break
        cand = rec.left[0] - hull_lo[1]
        best = cand if best is None else min(best, cand)
        for j in range(i + 1, len(records)):
            if records[j].level <= rec.level:
                cand = records[j].left[0] - rec.right[1]
                best = min(best, cand)
                break
        else:
            best = min(best, hull_hi[0] - rec.right[1])
        finished.append(
            GapRecord(rec.level, rec.left, rec.right, rec.size, best, rec.meta)
        )
    finished.sort(key=lambda r: (-float(r.size[0]), float(r.left[0])))
    return GapStructure(
        GapFamily.AqSet, 9, level, (hull_lo, hull_hi), tuple(finished)
    )


def _enumerate_sk_gaps(
    q: AlgebraicNumber,
    k: int,
    level: int,
    scale: Optional[FieldElement] = None,
    shift: Optional[FieldElement] = None,
    cap: int = 4096,
) -> GapStructure:
    ana = ShiftSetAnalysis(q, k)
    g = q.gen()
    one = g.base.one()
    scale = one if scale is None else scale
    shift = g.base.zero() if shift is None else shift

    records = []
    frontier = [(_START, g.base.zero(), one, 0)]
    while frontier and len(records) < cap:
        state, off, sc, d = frontier.pop(0)
        if d >= level:
            continue
        moves = ana.successors(state)
        gap = ana.own_gap(state)
        if gap is not None and len(moves) == 2:
            (_, s0), (_, s1) = moves
            gl = off + sc * (ana.vmax(s0) / g)
            gr = off + sc * ((1 + ana.vmin(s1)) / g)
            bridge_l = sc * (ana._clearance(s0, gap * g, False) / g)
            bridge_r = sc * (ana._clearance(s1, gap * g, True) / g)
            size = sc * gap
            records.append(
                GapRecord(
                    level=d,
                    left=(gl, gl),
                    right=(gr, gr),
                    size=(size, size),
                    bridge_lb=min(bridge_l, bridge_r),
                    meta={"state": str(state)},
                )
            )
        for dig, child in moves:
            frontier.append((child, off + sc * (dig / g), sc / g, d + 1))

    hull_lo = shift + scale * ana.vmin(_START)
    hull_hi = shift + scale * ana.vmax(_START)
    out = []
    for r in records:
        left = shift + scale * r.left[0]
        right = shift + scale * r.right[0]
        size = scale * r.size[0]
        out.append(
            GapRecord(
                r.level,
                (left, left),
                (right, right),
                (size, size),
                scale * r.bridge_lb,
                r.meta,
            )
        )
    out.sort(key=lambda r: (-float(r.size[0]), float(r.left[0])))
    fam = GapFamily.SkSet if scale == 1 and shift == 0 else GapFamily.ScaledShiftedSk
    return GapStructure(fam, k, level, ((hull_lo, hull_lo), (hull_hi, hull_hi)), tuple(out))


def enumerate_gaps(
    q: AlgebraicNumber,
    family: GapFamily,
    level: int,
    k: int = 9,
    cap: int = 4096,
) -> GapStructure:
    """Gaps of one of the three projected digit families, largest first.

    Every record carries exact (or bracketed) endpoints, a size enclosure
    and a sound lower bound on the flanking bridges.
    """
    if family == GapFamily.AqSet:
        return _enumerate_aq_gaps(q, level)
    if family == GapFamily.SkSet:
        return _enumerate_sk_gaps(q, k, level, cap=cap)
    g = q.gen()
    return _enumerate_sk_gaps(q, k, level, scale=2 - g, shift=g.base.one(), cap=cap)


def thickness_lower_bound(gs: GapStructure) -> FieldElement:
    """Worst bridge-to-gap ratio among the enumerated gaps."""
    best = None
    for r in gs.gaps:
        ratio = r.bridge_lb / r.size[1]
        if best is None or ratio < best:
            best = ratio
    if best is None:
        raise ThicknessError("no gaps enumerated")
    return best


# ---------------------------------------------------------------------------
# interleaving and the thickness certificate
# ---------------------------------------------------------------------------


def interleaving_check(
    aq: GapStructure, scaled: GapStructure
) -> list[IntervalCheck]:
    """Neither set can hide in a gap of the other.

    The scaled shift set attains both of its hull endpoints, which bracket
    the branching family's hull; and the branching family's hull is wider
    than the scaled set's largest gap, so it cannot sink into one.
    """
    checks = []
    try:
        checks.append(
            exact_check(
                "hull-left-contained", "le", scaled.hull[0][1], aq.hull[0][0]
            )
        )
        checks.append(
            exact_check(
                "hull-right-contained", "le", aq.hull[1][1], scaled.hull[1][0]
            )
        )
        big = scaled.gaps[0].size[1] if scaled.gaps else None
        width = aq.hull[1][0] - aq.hull[0][1]
        if big is not None:
            checks.append(exact_check("hull-wider-than-gap", "lt", big, width))
    except CertificateError as e:
        raise NotInterleaved(str(e)) from e
    return checks


def newhouse_certify(q: AlgebraicNumber, level: int = 40) -> Certificate:
    """Certificate that the branching family meets the scaled shift set.

    Verifies the gap laws of the branching family to the stated level, the
    exact thickness bound of the shift projection, interleaving, and the
    thickness product; the level-independent tail of the gap laws follows
    from the verified block structure and is recorded as a hypothesis.
    """
    if compare_reals(q, bonacci_root(9)) != Ordering.Greater:
        raise BaseTooSmall("base must exceed the 9-bonacci root")
    g = q.gen()
    checks = []

    cover = w2_cover_check(q)
    checks.extend(cover.checks)

    aq = enumerate_gaps(q, GapFamily.AqSet, level)
    for i, r in enumerate(aq.gaps):
        k = r.level
        try:
            checks.append(
                exact_check(f"aq-gap-{i}-below", "lt", r.size[1], g ** (1 - k))
            )
            checks.append(
                exact_check(f"aq-gap-{i}-above", "lt", g ** (-k), r.size[0])
            )
            checks.append(
                exact_check(
                    f"aq-gap-{i}-bridge", "lt", g ** (-k - 4), r.bridge_lb
                )
            )
        except CertificateError as e:
            raise ThicknessTooSmall(str(e)) from e

    ana = ShiftSetAnalysis(q, 9)
    tau_s, tau_detail = ana.thickness_bound()
    scaled = enumerate_gaps(q, GapFamily.ScaledShiftedSk, 12)
    try:
        checks.append(exact_check("sk-largest-gap", "lt", ana.max_gap(), g**-8))
        checks.append(exact_check("sk-thickness", "lt", g**6, tau_s))
        # branching-family thickness: bridge > q^(-k-4), gap < q^(-k+1)
        checks.append(
            exact_check("product-exceeds-one", "lt", 1, g**-5 * tau_s)
        )
    except CertificateError as e:
        raise ThicknessTooSmall(str(e)) from e
    checks.extend(interleaving_check(aq, scaled))

    return Certificate(
        claim="thick-linked-intersection",
        hypotheses=(
            "gap laws verified exactly to the stated level",
            "deeper levels obey the same laws by the double-digit block structure",
            "thickness of the branching family is at least q^-5 by the gap laws",
            "affine images preserve thickness",
        ),
        level=level,
        checks=tuple(checks),
        data={
            "base": bracket(g),
            "aq-gap-count": len(aq.gaps),
            "shift-thickness": bracket(tau_s),
            "shift-thickness-per-state": tau_detail,
            "aq-thickness-enumerated": bracket(thickness_lower_bound(aq)),
        },
    )


# ---------------------------------------------------------------------------
# locating a three-orbit height
# ---------------------------------------------------------------------------


def _aq_node_bracket(template, chosen: dict, upto: int):
    lo = _aq_value_bracket(template, chosen, upto, 0)
    hi = _aq_value_bracket(template, chosen, upto, 1)
    return lo[0], hi[1]


def find_slice3_witness(
    q: AlgebraicNumber,
    depth: int = 48,
    budget: int = 1000,
    retries: int = 5,
) -> tuple[tuple[str, str], SliceResult]:
    """Locate a height whose slice shows exactly three expansion orbits.

    Refines a pair of enclosures, one inside the branching family and one
    inside the scaled shift set, keeping their overlap nonempty; the
    midpoint, pulled back to a height, is checked by the slice engine.
    """
    g = q.gen()
    template = build_aq_prefixes(q, depth + 40, margin=16)
    ana = ShiftSetAnalysis(q, 9)
    two_minus = 2 - g
    one = g.base.one()

    def b_bracket(state, off, sc):
        lo = one + two_minus * (off + sc * ana.vmin(state))
        hi = one + two_minus * (off + sc * ana.vmax(state))
        return lo, hi

    free_all = template.free_positions
    target_width = g ** (-(depth + 12))

    for attempt in range(retries):
        # depth-first over pairs (free-bit assignment, shift-set node),
        # keeping only pairs with overlapping value enclosures
        stack = [({}, 0, _START, g.base.zero(), one, 0)]
        steps = 0
        allowance = budget * 2**attempt
        found = None
        while stack:
            chosen, na, state, off, sc, nb = stack.pop()
            steps += 1
            if steps > allowance:
                break
            upto = free_all[na] + 1 if na < len(free_all) else len(template.bits)
            alo, ahi = _aq_node_bracket(template, chosen, upto)
            blo, bhi = b_bracket(state, off, sc)
            if max(alo, blo) > min(ahi, bhi):
                continue
            if ahi - alo < target_width and bhi - blo < target_width:
                found = (max(alo, blo), min(ahi, bhi))
                break
            if (na <= nb or nb >= 200) and na < len(free_all):
                pos = free_all[na]
                for bit in (1, 0):
                    nxt = dict(chosen)
                    nxt[pos] = bit
                    stack.append((nxt, na + 1, state, off, sc, nb))
            else:
                for dig, child in reversed(ana.successors(state)):
                    stack.append(
                        (chosen, na, child, off + sc * (dig / g), sc / g, nb + 1)
                    )
        if found is None:
            target_width = target_width * g**2
            continue
        lo, hi = found
        mid = (lo + hi) / 2
        height = mid * (g - 1) / g
        result = compute_slice(q, height, depth)
        if result.claim.kind == ClaimKind.ExactlyN and result.claim.n == 3:
            hb = bracket(height)
            return (hb[0], hb[1]), result
        target_width = target_width * g**-6
    raise RefinementBudgetExceeded("no verified three-orbit height found")
