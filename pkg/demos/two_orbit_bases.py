"""
Bases where 1 has exactly two expansions
========================================

The count of expansions of 1/q always exceeds the count for 1 by exactly
one, so "exactly two orbits of 1" is the certificate-worthy boundary case.
A fork anywhere in the trajectory of 1 rules it out forever; certifying it
requires following the trajectory of 1 into an exact cycle that stays
clear of the switch region.
"""

from fractions import Fraction

from qslice import (
    AlgebraicNumber,
    bonacci_root,
    c2_probe,
    format_word,
    periodic_expansions_of_one,
    two_orbit_base,
    verify,
)

# at the tribonacci base the trajectory of 1 forks early: more than two
rep = c2_probe(bonacci_root(3))
print("tribonacci outcome:", rep.outcome.value, "fork at step", rep.branch_step)
a, b = rep.exhibited_pair
print("two distinct expansions of 1:", format_word(a), "and", format_word(b))

# the cubic base q^3 = q^2 + 2q - 1 certifies: the cycle {q-1, q^2-q-1}
# stays outside the switch region and the digit tail lives in a
# run-limited shift that guarantees uniqueness
qs = two_orbit_base()
rep = c2_probe(qs)
print("cubic base outcome:", rep.outcome.value)
print("route:", rep.route)
print("certificate verifies:", verify(rep.certificate) == [])

# rational bases can never close an exact cycle (their orbits' denominators
# grow without bound), so probes stay honest there
for nm, dn in ((9, 5), (199, 100)):
    rep = c2_probe(AlgebraicNumber.from_rational(Fraction(nm, dn)))
    print(f"{nm}/{dn}:", rep.outcome.value)

# brute-force search for purely periodic expansions of 1. The golden base
# has one; the cubic base above does not (its trajectory only becomes
# periodic after a preperiod, which is what the certificate route records).
print("golden base, purely periodic:", periodic_expansions_of_one(bonacci_root(2), 4))
print("cubic base, purely periodic:", periodic_expansions_of_one(qs, 10))
