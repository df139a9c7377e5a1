"""
Thickness, linked Cantor sets, and a three-point slice
======================================================

For bases close to 2 the library builds two Cantor sets out of digit
strings, bounds their thickness from the enumerated gap structure, and
certifies that they intersect. Refining inside the intersection produces a
height whose slice has exactly three points.
"""

from fractions import Fraction

from qslice import (
    AlgebraicNumber,
    GapFamily,
    ShiftSetAnalysis,
    enumerate_gaps,
    find_slice3_witness,
    format_word,
    newhouse_certify,
    thickness_lower_bound,
    to_json,
    verify,
)

q = AlgebraicNumber.from_rational(Fraction(1999, 1000))
g = q.gen()

# gap structure of the branching family
aq = enumerate_gaps(q, GapFamily.AqSet, 24)
print("branching-family gaps to level 24:", len(aq.gaps))
tau = thickness_lower_bound(aq)
print("thickness lower bound exceeds q^-5:", tau > g**-5)

# gap structure of the run-limited shift set, via its finite state machine
ana = ShiftSetAnalysis(q, 9)
tau_s, per_state = ana.thickness_bound()
print("shift-set thickness exceeds q^6:", tau_s > g**6)
print("largest shift-set gap below q^-8:", ana.max_gap() < g**-8)

# the product of the two bounds beats 1, so the linked pair must intersect
print("thickness product beats 1:", tau * tau_s > 1)

cert = newhouse_certify(q, level=30)
print("certificate checks:", len(cert.checks), "failures:", verify(cert))
print("certificate is plain JSON, first 120 chars:")
print(" ", to_json(cert)[:120], "...")

# pull a concrete three-orbit height out of the intersection
(ylo, yhi), res = find_slice3_witness(q, depth=48)
print("witness height in [%s, %s]" % (ylo, yhi))
print(
    "slice claim:", res.claim.kind.name, res.claim.n,
    "orbit prefixes:", [format_word(w)[:12] + ".." for w in res.cylinders],
)
