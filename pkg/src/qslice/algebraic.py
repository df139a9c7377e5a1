"""Exact real algebraic numbers and arithmetic in the field they generate.

Every number the library reasons about is either a rational or a real root
of an integer polynomial, pinned down by an isolating interval with rational
endpoints. All decisions (signs, comparisons, domain membership) are made in
exact rational arithmetic; floating point appears only when a caller asks
for a printable approximation.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


class AlgebraicError(ValueError):
    """Base class for construction and arithmetic failures."""


class NonSquareFree(AlgebraicError):
    """The defining polynomial shares a factor with its derivative."""


class NoRoot(AlgebraicError):
    """The defining polynomial has no root in the given interval."""


class MultipleRoots(AlgebraicError):
    """The given interval contains more than one root."""


class MixedField(AlgebraicError):
    """Arithmetic attempted between elements of different fields."""


class Ordering(Enum):
    Less = "Less"
    Equal = "Equal"
    Greater = "Greater"


# ---------------------------------------------------------------------------
# dense polynomial helpers, coefficients ascending
# ---------------------------------------------------------------------------


def _trim(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    i = len(p)
    while i > 0 and p[i - 1] == 0:
        i -= 1
    return tuple(p[:i])


def _eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _deriv(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(c * i for i, c in enumerate(p) if i > 0)


def _divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [Fraction(0)] * max(len(a) - db, 0)
    while len(_trim(a)) - 1 >= db and _trim(a):
        a = list(_trim(a))
        if len(a) - 1 < db:
            break
        k = len(a) - 1 - db
        f = a[-1] / lb
        q[k] = f
        for i, c in enumerate(b):
            a[k + i] -= f * c
        a = a[:-1]
    return _trim(q), _trim(a)


def _sturm_chain(p: Sequence[Fraction]) -> list[tuple[Fraction, ...]]:
    chain = [_trim(p), _trim(_deriv(p))]
    while chain[-1] and len(chain[-1]) > 1:
        _, r = _divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append(tuple(-c for c in r))
    return chain


def _sign_changes(chain: list[tuple[Fraction, ...]], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = _eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count_roots(p: Sequence[Fraction], lo: Fraction, hi: Fraction) -> int:
    # roots in (lo, hi]; callers guarantee p(lo) != 0
    chain = _sturm_chain(p)
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


def _primitive(coeffs: Iterable[int]) -> tuple[int, ...]:
    from math import gcd

    cs = [int(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    g = 0
    for c in cs:
        g = gcd(g, abs(c))
    if g > 1:
        cs = [c // g for c in cs]
    if cs and cs[-1] < 0:
        cs = [-c for c in cs]
    return tuple(cs)


def _irreducible_factors(coeffs: tuple[int, ...]) -> list[tuple[int, ...]]:
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x, domain="ZZ")
    _, factors = poly.factor_list()
    out = []
    for fac, _mult in factors:
        cs = [int(c) for c in reversed(fac.all_coeffs())]
        out.append(_primitive(cs))
    return out


# ---------------------------------------------------------------------------
# algebraic numbers
# ---------------------------------------------------------------------------


class AlgebraicNumber:
    """A real algebraic number: irreducible integer polynomial + isolating
    interval. The interval only ever narrows, so sharing instances between
    computations is safe."""

    __slots__ = ("min_poly", "_lo", "_hi", "_frac_poly", "_red_table", "_gen_inv")

    def __init__(self, min_poly: tuple[int, ...], lo: Fraction, hi: Fraction):
        self.min_poly = min_poly
        self._lo = lo
        self._hi = hi
        self._frac_poly = tuple(Fraction(c) for c in min_poly)
        self._red_table = None
        self._gen_inv = None

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_rational(r: Rational) -> "AlgebraicNumber":
        r = Fraction(r)
        return AlgebraicNumber((-r.numerator, r.denominator), r, r)

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    @property
    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise AlgebraicError("not a rational number")
        return Fraction(-self.min_poly[0], self.min_poly[1])

    # -- interval management -----------------------------------------------

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return self._lo, self._hi

    def _bisect(self) -> None:
        if self._lo == self._hi:
            return
        mid = (self._lo + self._hi) / 2
        v = _eval(self._frac_poly, mid)
        if v == 0:
            # only reachable for degree-1 polynomials
            self._lo = self._hi = mid
            return
        vlo = _eval(self._frac_poly, self._lo)
        if (vlo > 0) != (v > 0):
            self._hi = mid
        else:
            self._lo = mid

    def refine_to(self, eps: Rational) -> tuple[Fraction, Fraction]:
        eps = Fraction(eps)
        while self._hi - self._lo > eps:
            self._bisect()
        return self._lo, self._hi

    def __float__(self) -> float:
        lo, hi = self.refine_to(Fraction(1, 10**20))
        return float((lo + hi) / 2)

    # -- identity ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        if self.min_poly != other.min_poly:
            return False
        if self.is_rational:
            return True
        lo = min(self._lo, other._lo)
        hi = max(self._hi, other._hi)
        # hull of two isolating intervals holds exactly one root iff same root
        return _count_roots(self._frac_poly, lo, hi) == 1

    def __hash__(self) -> int:
        return hash(self.min_poly)

    def __repr__(self) -> str:
        return f"AlgebraicNumber({self.min_poly}, ~{float(self):.6f})"

    # -- field scaffolding ---------------------------------------------------

    def _reduction_table(self) -> list[tuple[Fraction, ...]]:
        # x^(d+j) mod min_poly for j = 0..d-2
        if self._red_table is None:
            d = self.degree
            lead = self._frac_poly[-1]
            base = tuple(-c / lead for c in self._frac_poly[:-1])
            table = [base]
            for _ in range(d - 2):
                prev = table[-1]
                shifted = [Fraction(0)] + list(prev)
                overflow = shifted.pop()
                row = tuple(c + overflow * b for c, b in zip(shifted, base))
                table.append(row)
            self._red_table = table
        return self._red_table

    def element(self, coeffs: Sequence[Rational]) -> "FieldElement":
        d = self.degree
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > d:
            raise AlgebraicError("coefficient vector longer than field degree")
        cs += [Fraction(0)] * (d - len(cs))
        return FieldElement(self, tuple(cs))

    def zero(self) -> "FieldElement":
        return self.element([])

    def one(self) -> "FieldElement":
        return self.element([1])

    def rational(self, r: Rational) -> "FieldElement":
        return self.element([Fraction(r)])

    def gen(self) -> "FieldElement":
        """The number itself, as an element of its own field."""
        if self.is_rational:
            return self.element([self.rational_value])
        return self.element([0, 1])


def algebraic_from_poly(
    coeffs: Sequence[int], lo: Rational, hi: Rational
) -> AlgebraicNumber:
    """Isolate the unique root of an integer polynomial in (lo, hi).

    The polynomial must be square-free. Internally the irreducible factor
    owning the root is selected as the stored minimal polynomial, which is
    what makes exact zero tests on field elements sound.
    """
    p = _primitive(coeffs)
    if len(p) < 2:
        raise AlgebraicError("polynomial must have degree at least 1")
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise AlgebraicError("empty interval")

    fp = tuple(Fraction(c) for c in p)
    g = _poly_gcd(fp, _deriv(fp))
    if len(g) > 1:
        raise NonSquareFree(f"gcd with derivative has degree {len(g) - 1}")

    total = 0
    owner: tuple[int, ...] | None = None
    owner_root: Fraction | None = None
    for fac in _irreducible_factors(p):
        if len(fac) == 2:
            r = Fraction(-fac[0], fac[1])
            if lo < r < hi:
                total += 1
                owner, owner_root = fac, r
        else:
            ffac = tuple(Fraction(c) for c in fac)
            # irreducible of degree >= 2 cannot vanish at rational endpoints
            n = _count_roots(ffac, lo, hi)
            if n:
                total += n
                owner, owner_root = fac, None
    if total == 0:
        raise NoRoot(f"no root in ({lo}, {hi})")
    if total > 1:
        raise MultipleRoots(f"{total} roots in ({lo}, {hi})")

    assert owner is not None
    if owner_root is not None:
        return AlgebraicNumber.from_rational(owner_root)
    return AlgebraicNumber(owner, lo, hi)


def _poly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return a


# ---------------------------------------------------------------------------
# field elements
# ---------------------------------------------------------------------------


class FieldElement:
    """An element of Q(q), stored as a coefficient vector modulo the minimal
    polynomial of q. Supports exact ring arithmetic, division, and total
    ordering (sign decided by interval refinement, never by floats)."""

    __slots__ = ("base", "coeffs")

    def __init__(self, base: AlgebraicNumber, coeffs: tuple[Fraction, ...]):
        self.base = base
        self.coeffs = coeffs

    # -- coercion ------------------------------------------------------------

    def _lift(self, other) -> "FieldElement | None":
        if isinstance(other, FieldElement):
            if other.base is self.base or other.base == self.base:
                return other
            raise MixedField("elements belong to different fields")
        if isinstance(other, (int, Fraction)):
            return self.base.rational(other)
        return None

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FieldElement(
            self.base, tuple(a + b for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.base, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FieldElement(
            self.base, tuple(a - b for a, b in zip(self.coeffs, o.coeffs))
        )

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        d = self.base.degree
        if d == 1:
            return FieldElement(self.base, (self.coeffs[0] * o.coeffs[0],))
        a, b = self.coeffs, o.coeffs
        prod = [Fraction(0)] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        table = self.base._reduction_table()
        out = list(prod[:d])
        for j in range(d, 2 * d - 1):
            c = prod[j]
            if c:
                row = table[j - d]
                for k in range(d):
                    out[k] += c * row[k]
        return FieldElement(self.base, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("field element is zero")
        d = self.base.degree
        if d == 1:
            return FieldElement(self.base, (1 / self.coeffs[0],))
        # extended Euclid in Q[x]: self * u = 1 mod min_poly
        a = _trim(self.coeffs)
        b = self.base._frac_poly
        r0, r1 = b, a
        s0, s1 = (), (Fraction(1),)
        while len(r1) > 1:
            q, r = _divmod(r0, r1)
            r0, r1 = r1, r
            s_new = _poly_sub(s0, _poly_mul(q, s1))
            s0, s1 = s1, s_new
            if not r1:
                raise AlgebraicError("element not invertible (modulus not irreducible?)")
        c = r1[0]
        u = tuple(x / c for x in s1)
        u = (_trim(u) + (Fraction(0),) * d)[:d]
        return FieldElement(self.base, tuple(u))

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.base.one()
        acc = self
        while n:
            if n & 1:
                result = result * acc
            acc = acc * acc
            n >>= 1
        return result

    # -- ordering ------------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def sign(self) -> int:
        if self.is_zero():
            return 0
        if self.base.degree == 1:
            return 1 if self.coeffs[0] > 0 else -1
        while True:
            lo, hi = self.base.interval
            vlo, vhi = _interval_eval(self.coeffs, lo, hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            self.base._bisect()

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except MixedField:
            return False
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.base, self.coeffs))

    def __lt__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def __bool__(self):
        return not self.is_zero()

    # -- output --------------------------------------------------------------

    def to_interval(self, eps: Rational) -> tuple[Fraction, Fraction]:
        """Enclosing interval of width at most eps, exact endpoints."""
        eps = Fraction(eps)
        if self.base.degree == 1:
            v = self.coeffs[0]
            return v, v
        while True:
            lo, hi = self.base.interval
            vlo, vhi = _interval_eval(self.coeffs, lo, hi)
            if vhi - vlo <= eps:
                return vlo, vhi
            self.base._bisect()

    def as_fraction(self) -> Fraction:
        if self.base.degree != 1:
            raise AlgebraicError("element is not rational")
        return self.coeffs[0]

    def __float__(self) -> float:
        lo, hi = self.to_interval(Fraction(1, 10**20))
        return float((lo + hi) / 2)

    def __repr__(self) -> str:
        return f"FieldElement({list(self.coeffs)}, ~{float(self):.9f})"


def _poly_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _trim(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _interval_eval(
    coeffs: Sequence[Fraction], lo: Fraction, hi: Fraction
) -> tuple[Fraction, Fraction]:
    vlo = vhi = Fraction(0)
    for c in reversed(coeffs):
        cands = (vlo * lo, vlo * hi, vhi * lo, vhi * hi)
        vlo, vhi = min(cands) + c, max(cands) + c
    return vlo, vhi


# ---------------------------------------------------------------------------
# comparisons
# ---------------------------------------------------------------------------


def compare(a: FieldElement, b: FieldElement) -> Ordering:
    """Exact trichotomy for elements of the same field."""
    s = (a - b).sign()
    return Ordering.Less if s < 0 else Ordering.Greater if s > 0 else Ordering.Equal


def compare_reals(a: AlgebraicNumber, b: AlgebraicNumber) -> Ordering:
    """Exact trichotomy across different fields (used when a base must be
    located relative to the family of k-bonacci roots)."""
    if a == b:
        return Ordering.Equal
    while True:
        alo, ahi = a.interval
        blo, bhi = b.interval
        if ahi < blo:
            return Ordering.Less
        if bhi < alo:
            return Ordering.Greater
        # distinct numbers: intervals must eventually separate
        a._bisect()
        b._bisect()


def refine(a: "AlgebraicNumber | FieldElement", eps: Rational) -> tuple[Fraction, Fraction]:
    """Narrow to an enclosing interval of width at most eps."""
    if isinstance(a, AlgebraicNumber):
        return a.refine_to(eps)
    return a.to_interval(eps)


def bonacci_root(k: int) -> AlgebraicNumber:
    """The root in (1, 2) of x^k = x^(k-1) + ... + x + 1.

    k=2 gives the golden ratio; the family increases to 2. Satisfies the
    exact identity 2 - root = root^(-k).
    """
    if k < 2:
        raise AlgebraicError("k must be at least 2")
    if k not in _BONACCI_CACHE:
        _BONACCI_CACHE[k] = algebraic_from_poly([-1] * k + [1], 1, 2)
    return _BONACCI_CACHE[k]


_BONACCI_CACHE: dict[int, AlgebraicNumber] = {}
