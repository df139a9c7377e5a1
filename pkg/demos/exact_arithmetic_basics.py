"""
Exact arithmetic on algebraic bases
===================================

Every computation in the library runs over Q(q) for an exact base q:
rationals embed directly, irrational bases are roots of integer
polynomials isolated in an interval. Nothing is ever decided by floats.
"""

from fractions import Fraction

from qslice import (
    algebraic_from_poly,
    bonacci_root,
    compare_reals,
    AlgebraicNumber,
    Ordering,
)

# a rational base: the field is just Q
q = AlgebraicNumber.from_rational(Fraction(3, 2))
g = q.gen()
print("3/2 squared:", g * g)

# the tribonacci base: root of x^3 = x^2 + x + 1 in (1,2)
q3 = bonacci_root(3)
g3 = q3.gen()
print("q3 enclosure:", q3.refine_to(Fraction(1, 10**12)))
print("minimal polynomial check:", g3**3 - g3**2 - g3 - 1 == 0)

# arbitrary algebraic numbers come from ascending coefficients + bracket
qstar = algebraic_from_poly([1, -2, -1, 1], Fraction(3, 2), Fraction(19, 10))
gs = qstar.gen()
print("cubic base satisfies its polynomial:", gs**3 - gs**2 - 2 * gs + 1 == 0)

# cross-field comparisons are exact (sign by refinement, never rounding)
print("q3 vs cubic base:", compare_reals(q3, qstar))
assert compare_reals(q3, qstar) == Ordering.Greater

# the multinacci identity: 2 - q_k equals q_k^(-k), exactly
for k in range(2, 8):
    gk = bonacci_root(k).gen()
    assert 2 - gk == gk**-k
print("window identity 2 - q_k = q_k^-k verified for k = 2..7")
