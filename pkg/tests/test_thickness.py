from fractions import Fraction as F

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from qslice.algebraic import AlgebraicNumber, bonacci_root
from qslice.certificates import check, from_json, to_json, verify
from qslice.slices import ClaimKind
from qslice.thickness import (
    BaseTooSmall,
    GapFamily,
    ShiftSetAnalysis,
    W2,
    build_aq_prefixes,
    enumerate_gaps,
    find_slice3_witness,
    fixed_expansion_of_one,
    h_q_interval,
    interleaving_check,
    newhouse_certify,
    prefix_run_length,
    shifted_partner,
    thickness_lower_bound,
    w2_cover_check,
)
from qslice.words import member, run_limited

QBIG = AlgebraicNumber.from_rational(F(1999, 1000))

mid_bases = st.fractions(min_value=F(21, 20), max_value=F(39, 20), max_denominator=40)


def test_hull_endpoints():
    lo, hi = h_q_interval(AlgebraicNumber.from_rational(F(5, 3)))
    assert hi.as_fraction() == F(15, 16)
    assert lo == -hi
    g = bonacci_root(3).gen()
    lo, hi = h_q_interval(bonacci_root(3))
    assert hi * (g * g - 1) == g


@settings(max_examples=25, deadline=None)
@given(mid_bases)
def test_cover_certificate_random_bases(qf):
    cert = w2_cover_check(AlgebraicNumber.from_rational(qf))
    assert check(cert)
    assert len(cert.data["pieces"]) == len(W2) == 5


def test_cover_certificate_algebraic_base():
    assert check(w2_cover_check(bonacci_root(3)))


def test_prefix_run_length_table():
    cases = [
        (AlgebraicNumber.from_rational(F(3, 2)), 0),
        (bonacci_root(2), 0),
        (AlgebraicNumber.from_rational(F(5, 3)), 2),
        (bonacci_root(3), 2),
        (AlgebraicNumber.from_rational(F(19, 10)), 3),
        (QBIG, 9),
    ]
    for q, expected in cases:
        assert prefix_run_length(q) == expected


def test_fixed_expansion_frozen_prefix():
    c = fixed_expansion_of_one(QBIG, 24)
    assert c.symbols == (
        1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, -1, 0, 1, 1, 0, 0, 1, 0, 1, 0,
    )


@settings(max_examples=30, deadline=None)
@given(mid_bases)
def test_fixed_expansion_invariant(qf):
    q = AlgebraicNumber.from_rational(qf)
    g = q.gen()
    n = 40
    c = fixed_expansion_of_one(q, n)
    _, h = h_q_interval(q)
    value = sum((F(ci) * (1 / qf) ** (i + 1) for i, ci in enumerate(c.symbols)), F(0))
    defect = (1 - value) * qf**n
    assert abs(defect) <= h.as_fraction() if h.base.degree == 1 else -h <= defect <= h
    m = prefix_run_length(q)
    assert c.symbols[:m] == (1,) * m
    for i in range(m, n - 1, 2):
        assert (c.symbols[i], c.symbols[i + 1]) in W2


def test_template_structure():
    tpl = build_aq_prefixes(QBIG, 40)
    assert tpl.free_below(40) == (11, 13, 18, 21, 25, 29, 31, 34, 37)
    assert tpl.count(40) == 512
    assert len(tpl.prefixes(12)) == 2
    spec = run_limited(9)
    words = tpl.prefixes(40)
    assert len(words) == 512
    assert all(member(spec, w) for w in words)


def test_partner_identity():
    tpl = build_aq_prefixes(QBIG, 40)
    spec = run_limited(9)
    qf = F(1999, 1000)
    cval = sum(F(s) * (1 / qf) ** (i + 1) for i, s in enumerate(tpl.c.symbols[:40]))
    for a in tpl.prefixes(40)[::97]:
        b = shifted_partner(tpl, a)
        assert member(spec, b)
        pa = sum(F(s) * (1 / qf) ** (i + 1) for i, s in enumerate(a.symbols))
        pb = sum(F(s) * (1 / qf) ** (i + 1) for i, s in enumerate(b.symbols))
        assert pa - pb == cval


def test_base_too_small_rejected():
    with pytest.raises(BaseTooSmall):
        build_aq_prefixes(bonacci_root(9), 20)
    with pytest.raises(BaseTooSmall):
        newhouse_certify(AlgebraicNumber.from_rational(F(3, 2)))


def test_shift_analysis_exact_extremes():
    ana = ShiftSetAnalysis(QBIG, 9)
    g = QBIG.gen()
    assert len(ana.states()) == 19
    assert ana.vmin(("start",)) == 0
    assert ana.vmax(("start",)) == 1 / (g - 1)
    assert ana.max_gap() < g**-8
    tau, detail = ana.thickness_bound()
    assert tau > g**6
    assert detail


def test_aq_gap_laws():
    g = QBIG.gen()
    gs = enumerate_gaps(QBIG, GapFamily.AqSet, 28)
    by_level = {}
    for r in gs.gaps:
        by_level.setdefault(r.level, []).append(r)
    assert sorted((k, len(v)) for k, v in by_level.items()) == [
        (13, 1), (15, 2), (20, 4), (23, 8), (27, 16),
    ]
    for r in gs.gaps:
        assert g ** (-r.level) < r.size[0]
        assert r.size[1] < g ** (1 - r.level)
        assert r.bridge_lb > g ** (-r.level - 4)
    for rs in by_level.values():
        sizes = {(rr.size[0].as_fraction(), rr.size[1].as_fraction()) for rr in rs}
        assert len(sizes) == 1
    assert thickness_lower_bound(gs) > g**-5


def test_scaled_family_is_affine_image():
    g = QBIG.gen()
    plain = enumerate_gaps(QBIG, GapFamily.SkSet, 6)
    scaled = enumerate_gaps(QBIG, GapFamily.ScaledShiftedSk, 6)
    assert len(plain.gaps) == len(scaled.gaps)
    for p, s in zip(plain.gaps, scaled.gaps):
        assert s.left[0] == 1 + (2 - g) * p.left[0]
        assert s.right[0] == 1 + (2 - g) * p.right[0]
        assert s.size[0] == (2 - g) * p.size[0]
    assert scaled.hull[0][0] == 1
    assert scaled.hull[1][0] == 1 / (g - 1)


def test_interleaving_holds():
    aq = enumerate_gaps(QBIG, GapFamily.AqSet, 28)
    scaled = enumerate_gaps(QBIG, GapFamily.ScaledShiftedSk, 10)
    checks = interleaving_check(aq, scaled)
    assert all(c.holds() for c in checks)


def test_newhouse_certificate_round_trip():
    cert = newhouse_certify(QBIG, level=30)
    assert cert.claim == "thick-linked-intersection"
    assert cert.level == 30
    assert verify(cert) == []
    again = from_json(to_json(cert))
    assert check(again)


def test_find_slice3_witness_shallow():
    (ylo, yhi), res = find_slice3_witness(QBIG, depth=30)
    assert F(ylo) <= F(yhi)
    assert 0 < F(ylo) and F(yhi) < 1
    assert res.claim.kind == ClaimKind.ExactlyN
    assert res.claim.n == 3 and res.claim.certified is False
    assert len(res.cylinders) == 3
    assert [w.symbols[0] for w in res.cylinders] == [0, 1, 2]
    assert res.branch_events == ((0, ()),)
