import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from qslice.algebraic import AlgebraicNumber, bonacci_root
from qslice.dynamics import enumerate_orbits, ternary_branch_system
from qslice.slices import (
    ClaimKind,
    SliceInputError,
    compute_slice,
    eval_okamoto,
    geometric_slice_oracle,
    slice_matches_oracle,
    ternary_digits,
)
from qslice.words import Alphabet, Word, reflect, tail, word_successor


Q53 = AlgebraicNumber.from_rational(F(5, 3))

rational_bases = st.fractions(min_value=F(21, 20), max_value=F(39, 20), max_denominator=20)
heights = st.fractions(min_value=0, max_value=1, max_denominator=32)


def test_single_point_slice_certified():
    r = compute_slice(Q53, F(3, 8), 24)
    assert r.claim.kind == ClaimKind.ExactlyN
    assert r.claim.n == 1 and r.claim.certified
    assert len(r.cylinders) == 1
    # the unique point is 1/4, whose ternary expansion repeats 02
    limit = tail((), (0, 2), Alphabet.TERNARY)
    assert r.cylinders[0] == limit.prefix(24)
    assert r.branch_events == ()
    assert not r.truncated


def test_mirrored_single_point():
    r = compute_slice(Q53, F(5, 8), 24)
    assert r.claim.kind == ClaimKind.ExactlyN
    assert r.claim.n == 1 and r.claim.certified
    assert r.cylinders[0] == tail((), (2, 0), Alphabet.TERNARY).prefix(24)


def test_endpoint_slices():
    lo = compute_slice(Q53, 0, 10)
    hi = compute_slice(Q53, 1, 10)
    for r, digit in ((lo, 0), (hi, 2)):
        assert r.claim.kind == ClaimKind.ExactlyN
        assert r.claim.n == 1 and r.claim.certified
        assert r.cylinders[0].symbols == (digit,) * 10


def test_corner_height_keeps_one_spelling():
    # at y = 3/5 the slice contains x = 1/3; the box oracle sees both
    # ternary spellings of 1/3 but the dynamics keeps only 10^k
    r = compute_slice(Q53, F(3, 5), 10)
    boxes = geometric_slice_oracle(Q53, F(3, 5), 10)
    extra = boxes - set(r.cylinders)
    assert extra == {Word(Alphabet.TERNARY, (0,) + (2,) * 9)}
    doomed = next(iter(extra))
    assert word_successor(doomed) in set(r.cylinders)
    assert word_successor(doomed).symbols == (1,) + (0,) * 9
    assert slice_matches_oracle(r, boxes)


def test_oracle_agreement_random_bases():
    rng = random.Random(20260825)
    for _ in range(20):
        q = AlgebraicNumber.from_rational(F(rng.randint(26, 38), 20))
        y = F(rng.randint(0, 64), 64)
        r = compute_slice(q, y, 8)
        assert slice_matches_oracle(r, geometric_slice_oracle(q, y, 8))


def test_oracle_agreement_algebraic_base():
    q = bonacci_root(3)
    r = compute_slice(q, F(1, 2), 6)
    assert slice_matches_oracle(r, geometric_slice_oracle(q, F(1, 2), 6))


@settings(max_examples=30, deadline=None)
@given(rational_bases, heights)
def test_oracle_reflection_symmetry(qf, y):
    # the attractor is invariant under (x, y) -> (1-x, 1-y), and closed
    # boxes mirror exactly
    q = AlgebraicNumber.from_rational(qf)
    left = geometric_slice_oracle(q, y, 5)
    right = geometric_slice_oracle(q, 1 - y, 5)
    assert right == {reflect(w) for w in left}


def test_uncountable_pattern_small_base():
    r = compute_slice(AlgebraicNumber.from_rational(F(3, 2)), F(1, 2), 8)
    assert r.claim.kind == ClaimKind.UncountablePattern
    step, path, children = r.claim.witness
    assert len(children) >= 2
    assert len(r.cylinders) > 64
    assert r.leaf_probes == ()


def test_truncation_without_pattern_is_unknown():
    r = compute_slice(Q53, F(3, 5), 6, max_cylinders=1)
    assert r.truncated
    assert r.claim.kind == ClaimKind.Unknown


def test_truncated_doubling_still_reports_pattern():
    r = compute_slice(AlgebraicNumber.from_rational(F(3, 2)), F(1, 2), 12, max_cylinders=32)
    assert r.truncated
    assert r.claim.kind == ClaimKind.UncountablePattern


def test_leaf_count_matches_orbit_tree():
    for qf, y, depth in ((F(5, 3), F(3, 5), 8), (F(3, 2), F(1, 2), 6)):
        q = AlgebraicNumber.from_rational(qf)
        r = compute_slice(q, y, depth)
        sys = ternary_branch_system(q)
        x0 = sys.lift(y) / (sys.q() - 1)
        tree = enumerate_orbits(sys, x0, depth)
        assert len(r.cylinders) == tree.alive_leaf_count()


def test_input_validation():
    with pytest.raises(SliceInputError):
        compute_slice(Q53, F(3, 2), 4)
    with pytest.raises(SliceInputError):
        compute_slice(Q53, bonacci_root(3).gen() - 1, 4)
    with pytest.raises(SliceInputError):
        eval_okamoto(Q53, F(7, 5), 4)


def test_ternary_digit_examples():
    assert ternary_digits(F(1, 3), 5).symbols == (1, 0, 0, 0, 0)
    assert ternary_digits(F(2, 3), 5).symbols == (2, 0, 0, 0, 0)
    assert ternary_digits(F(1), 4).symbols == (2, 2, 2, 2)
    assert ternary_digits(F(1, 4), 8).symbols == (0, 2, 0, 2, 0, 2, 0, 2)
    assert ternary_digits(F(5, 9), 4).symbols == (1, 2, 0, 0)


@settings(max_examples=60, deadline=None)
@given(st.fractions(min_value=0, max_value=1, max_denominator=200))
def test_ternary_digits_bracket_the_point(x):
    w = ternary_digits(x, 8)
    lo = sum(F(d, 3 ** (i + 1)) for i, d in enumerate(w.symbols))
    assert lo <= x <= lo + F(1, 3**8)
    # a triadic point below 1 is hit exactly, with no carried tail of twos
    if x < 1 and (x * 3**8).denominator == 1:
        assert lo == x


def test_eval_okamoto_known_values():
    lo, hi = eval_okamoto(Q53, F(1, 3), 20)
    assert lo <= F(3, 5) <= hi
    assert hi - lo <= F(3, 5) ** 20
    # the point above 1/4 sits at 1/(q+1)
    lo, hi = eval_okamoto(Q53, F(1, 4), 20)
    assert lo <= F(3, 8) <= hi
    for x, y in ((F(0), F(0)), (F(1), F(1))):
        lo, hi = eval_okamoto(Q53, x, 12)
        assert lo <= y <= hi


def test_eval_okamoto_nesting():
    shallow = eval_okamoto(Q53, F(2, 7), 8)
    deep = eval_okamoto(Q53, F(2, 7), 16)
    assert shallow[0] <= deep[0] and deep[1] <= shallow[1]
    assert deep[1] - deep[0] < shallow[1] - shallow[0]


def test_eval_matches_slice():
    # the enclosure at x = 1/4 pins y = 3/8, and the slice there recovers x
    lo, hi = eval_okamoto(Q53, F(1, 4), 30)
    assert lo <= F(3, 8) <= hi
    r = compute_slice(Q53, F(3, 8), 12)
    assert r.claim.n == 1
    assert r.cylinders[0].symbols == ternary_digits(F(1, 4), 12).symbols
