from fractions import Fraction

import pytest

from qslice.algebraic import AlgebraicNumber, bonacci_root
from qslice.bonacci import (
    C2Outcome,
    CertificationFailed,
    DeltaNotInSTilde,
    c2_probe,
    funnel_check,
    null_infinite_probe,
    periodic_expansions_of_one,
    two_orbit_base,
    verify_odd_cardinality,
    x_m_witness,
)
from qslice.certificates import check, from_json, to_json, verify
from qslice.dynamics import tail_is_orbit, ternary_branch_system
from qslice.words import Alphabet, project_q, tail


def test_x_m_value_closed_form():
    q, x, t = x_m_witness(3, 1)
    g = q.gen()
    # one, three zeros, then the alternating tail
    assert t.preperiod == (1, 0, 0, 0)
    assert t.period == (0, 1)
    assert x == g**-1 + g**-4 * (1 / (g**2 - 1))


def test_x_m_rejects_bad_tails():
    with pytest.raises(DeltaNotInSTilde):
        x_m_witness(3, 1, tail((0, 0, 0), (0, 1)))
    with pytest.raises(DeltaNotInSTilde):
        x_m_witness(3, 1, tail((), (0, 1, 1)))  # barred cycle
    with pytest.raises(DeltaNotInSTilde):
        x_m_witness(2, 1)  # the k=2 shift is empty


@pytest.mark.parametrize("m", [0, 1, 2, 3, 4])
def test_odd_cardinality_counts(m):
    cert = verify_odd_cardinality(3, m)
    assert cert.data["count"] == 2 * m + 1
    assert cert.level == m
    assert verify(cert) == []


def test_odd_cardinality_other_tail():
    cert = verify_odd_cardinality(3, 2, tail((), (0, 0, 1, 1)))
    assert cert.data["count"] == 5
    assert check(cert)


def test_odd_cardinality_json_round_trip():
    cert = verify_odd_cardinality(3, 1)
    again = from_json(to_json(cert))
    assert again.claim == cert.claim
    assert again.checks == cert.checks
    assert again.data["count"] == 3
    assert verify(again) == []


def test_funnel_applies_for_long_runs():
    q3 = bonacci_root(3)
    alt = tail((), (0, 1))
    assert funnel_check(q3, 2, alt).applies
    assert funnel_check(q3, 5, alt).applies


def test_funnel_refuses_single_one():
    r = funnel_check(bonacci_root(3), 1, tail((), (0, 1)))
    assert not r.applies
    assert "overlap" in r.reason


def test_funnel_detects_competing_branches():
    # at a small base two leading ones still sit where several maps apply
    r = funnel_check(AlgebraicNumber.from_rational(Fraction(3, 2)), 2, tail((), (0,)))
    assert not r.applies
    assert "branches" in r.reason


def test_null_infinite_probe_structure():
    cert = null_infinite_probe(3, depth=30)
    assert cert.data["branches-at-depth"] == 11
    assert cert.data["loop-digits"] == [0, 2, 2]
    assert verify(cert) == []
    assert verify(from_json(to_json(cert))) == []


def test_null_infinite_probe_other_k():
    cert = null_infinite_probe(4, depth=30)
    # one fork per completed loop, plus the path still looping
    assert cert.data["branches-at-depth"] == (30 - 1) // 4 + 2
    assert check(cert)


def test_c2_tribonacci_branches():
    q3 = bonacci_root(3)
    r = c2_probe(q3)
    assert r.outcome == C2Outcome.NotTwo
    assert r.branch_step == 2
    a, b = r.exhibited_pair
    assert a != b
    sys = ternary_branch_system(q3)
    one = sys.lift(1)
    assert tail_is_orbit(sys, a, one)
    assert tail_is_orbit(sys, b, one)


def test_c2_tribonacci_pair_values():
    # both exhibited routes use only the two translation branches, so they
    # double as binary expansions of 1
    q3 = bonacci_root(3)
    r = c2_probe(q3)
    for t in r.exhibited_pair:
        binary = tail(
            tuple(d // 2 for d in t.preperiod),
            tuple(d // 2 for d in t.period),
            Alphabet.BINARY,
        )
        assert project_q(q3, binary) == 1


def test_c2_certified_at_planted_cubic():
    qs = two_orbit_base()
    g = qs.gen()
    # the defining cubic makes the third step close the two-cycle
    assert g**3 - g**2 - 2 * g + 1 == 0
    assert g - 1 == g / (g**2 - 1)
    r = c2_probe(qs)
    assert r.outcome == C2Outcome.TwoOrbitsCertified
    assert "shift-membership(k=2)" in r.route
    cert = r.certificate
    assert cert.data["digits"] == [2, 2, 0]
    assert cert.data["cycle-start"] == 1
    assert cert.data["cycle-length"] == 2
    assert verify(cert) == []
    assert verify(from_json(to_json(cert))) == []


@pytest.mark.parametrize("num,den", [(9, 5), (19, 10), (199, 100), (1999, 1000)])
def test_c2_rational_never_certifies(num, den):
    r = c2_probe(AlgebraicNumber.from_rational(Fraction(num, den)), depth=60)
    assert r.outcome != C2Outcome.TwoOrbitsCertified
    if r.outcome == C2Outcome.NotTwo:
        assert r.branch_step is not None


def test_c2_rational_unknown_is_honest():
    r = c2_probe(AlgebraicNumber.from_rational(Fraction(199, 100)), depth=60)
    assert r.outcome == C2Outcome.Unknown
    assert r.certificate is None


def test_periodic_expansion_search():
    found = periodic_expansions_of_one(bonacci_root(2), 4)
    assert [(w.symbols, ok) for w, ok in found] == [((1, 0), True)]
    found3 = periodic_expansions_of_one(bonacci_root(3), 4)
    assert [(w.symbols, ok) for w, ok in found3] == [((1, 1, 0), True)]
    assert periodic_expansions_of_one(two_orbit_base(), 5) == []


@pytest.mark.parametrize("k", range(2, 13))
def test_base_identity_links_deficit_to_power(k):
    g = bonacci_root(k).gen()
    assert sum(g**i for i in range(k)) == g**k
    assert 2 - g == g**-k


def test_odd_cardinality_depth_too_shallow():
    with pytest.raises(CertificationFailed):
        verify_odd_cardinality(3, 3, depth=4)
