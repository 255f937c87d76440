"""Exact arithmetic in the rational function field Q(q).

Polynomials are tuples of ``gmpy2.mpq`` coefficients, lowest degree first,
with no trailing zeros (the zero polynomial is the empty tuple).  A
:class:`RatQ` keeps ``num/den`` reduced with a monic denominator, so two
values are equal exactly when their stored tuples are equal.
"""
from __future__ import annotations

from functools import reduce
from math import gcd, isqrt, lcm
from typing import Iterable, Mapping, Union

from gmpy2 import mpq, mpz

from .errors import DivisionByZero

Poly = tuple

_ZERO = mpq(0)
_ONE = mpq(1)


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q
# ---------------------------------------------------------------------------

def _trim(c: list) -> Poly:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def poly(coeffs: Iterable) -> Poly:
    return _trim([mpq(c) for c in coeffs])


def poly_add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, x in enumerate(b):
        c[i] += x
    return _trim(c)


def poly_sub(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    c = list(a) + [_ZERO] * (n - len(a))
    for i, x in enumerate(b):
        c[i] -= x
    return _trim(c)


def poly_neg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def poly_scale(a: Poly, s) -> Poly:
    if not s:
        return ()
    return tuple(x * s for x in a)


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    if len(a) == 1:
        return poly_scale(b, a[0])
    if len(b) == 1:
        return poly_scale(a, b[0])
    if len(a) < 8 or len(b) < 8:
        c = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    c[i + j] += x * y
        return _trim(c)
    return _kronecker_mul(a, b)


def _int_parts(a: Poly) -> tuple[list, mpz]:
    d = reduce(lcm, (x.denominator for x in a), mpz(1))
    return [int(x * d) for x in a], d


def _kronecker_mul(a: Poly, b: Poly) -> Poly:
    """Multiply by packing integer coefficients into one big integer."""
    A, da = _int_parts(a)
    B, db = _int_parts(b)
    bound = max(map(abs, A)) * max(map(abs, B)) * min(len(A), len(B))
    bits = bound.bit_length() + 2
    pa = pb = 0
    for c in reversed(A):
        pa = (pa << bits) + c
    for c in reversed(B):
        pb = (pb << bits) + c
    prod = pa * pb
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    den = da * db
    out = []
    for _ in range(len(A) + len(B) - 1):
        d = prod & mask
        if d >= half:
            d -= mask + 1
        out.append(mpq(d, den))
        prod = (prod - d) >> bits
    return _trim(out)


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    r = list(a)
    db = len(b) - 1
    lead = b[-1]
    quo = [_ZERO] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        t = r[k + db]
        if t:
            t = t / lead
            quo[k] = t
            for j in range(db + 1):
                r[k + j] -= t * b[j]
    return _trim(quo), _trim(r[:db])


def poly_monic(a: Poly) -> Poly:
    if not a or a[-1] == 1:
        return a
    inv = 1 / a[-1]
    return tuple(x * inv for x in a)


def _euclid_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return poly_monic(a)


def _integral(a: Poly) -> list:
    """Primitive integer polynomial proportional to ``a``."""
    c = _int_parts(a)[0]
    g = reduce(gcd, c)
    return [x // g for x in c]


def _int_divides(f: list, g: list) -> bool:
    """Exact divisibility of integer polynomials, ``f | g``."""
    r = list(g)
    df, lead = len(f) - 1, f[-1]
    for k in range(len(g) - 1 - df, -1, -1):
        t, rem = divmod(r[k + df], lead)
        if rem:
            return False
        if t:
            for j in range(df + 1):
                r[k + j] -= t * f[j]
    return not any(r[:df])


def _heuristic_gcd(f: list, g: list) -> list | None:
    """GCDHEU: gcd of integer evaluations, lifted back by balanced base-x digits.

    A candidate is accepted only if it divides both inputs, which makes the
    answer exact whenever the evaluation point exceeds twice the norm bound.
    Returns None if no evaluation point succeeded.
    """
    nf = max(abs(x) for x in f)
    ng = max(abs(x) for x in g)
    b = 2 * min(nf, ng) + 29
    x = max(min(b, 99 * isqrt(b)), 2 * min(nf // abs(f[-1]), ng // abs(g[-1])) + 2)
    for _ in range(6):
        ff = gg = 0
        for c in reversed(f):
            ff = ff * x + c
        for c in reversed(g):
            gg = gg * x + c
        h = gcd(ff, gg)
        cand = []
        while h:
            d = h % x
            if d > x // 2:
                d -= x
            cand.append(d)
            h = (h - d) // x
        if cand:
            cont = reduce(gcd, cand)
            cand = [c // cont for c in cand]
            if cand[-1] < 0:
                cand = [-c for c in cand]
            if _int_divides(cand, f) and _int_divides(cand, g):
                return cand
        x = x * 73794 * isqrt(isqrt(x)) // 27011
    return None


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q.

    Uses the heuristic integer gcd for nonconstant inputs and falls back to
    the Euclidean algorithm over Q when it gives up.
    """
    if not a:
        return poly_monic(b)
    if not b:
        return poly_monic(a)
    if len(a) == 1 or len(b) == 1:
        return (_ONE,)
    # strip common powers of q first: they are cheap and very frequent here
    za = next(i for i, x in enumerate(a) if x)
    zb = next(i for i, x in enumerate(b) if x)
    z = min(za, zb)
    a, b = a[za:], b[zb:]
    if len(a) == 1 or len(b) == 1:
        g = (_ONE,)
    else:
        h = _heuristic_gcd(_integral(a), _integral(b))
        g = _euclid_gcd(a, b) if h is None else poly_monic(tuple(mpq(c) for c in h))
    return (_ZERO,) * z + g if z else g


def poly_exact_div(a: Poly, b: Poly) -> Poly:
    quo, rem = poly_divmod(a, b)
    assert not rem, "inexact polynomial division"
    return quo


def poly_degree(a: Poly) -> int:
    return len(a) - 1


# ---------------------------------------------------------------------------
# the field Q(q)
# ---------------------------------------------------------------------------

Coercible = Union["RatQ", int, mpq]


class RatQ:
    """An element of Q(q) in reduced form with monic denominator.

    >>> q = RatQ.q()
    >>> (q**2 - 1) / (q - 1)
    q + 1
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly = (), den: Poly = (_ONE,), *, _reduced: bool = False):
        if not _reduced:
            num, den = _canonical(tuple(num), tuple(den))
        self.num = num
        self.den = den
        self._hash = None

    # construction ------------------------------------------------------

    @classmethod
    def q(cls) -> "RatQ":
        return _Q

    @classmethod
    def from_int(cls, n) -> "RatQ":
        n = mpq(n)
        if not n:
            return ZERO
        return cls((n,), (_ONE,), _reduced=True)

    @classmethod
    def from_laurent(cls, terms: Mapping[int, object]) -> "RatQ":
        """Build ``sum c * q**e`` where exponents may be negative."""
        return canonicalize(terms, {0: 1})

    @staticmethod
    def coerce(x: Coercible) -> "RatQ":
        if isinstance(x, RatQ):
            return x
        return RatQ.from_int(x)

    # predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def constant_value(self) -> mpq:
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        return self.num[0] if self.num else _ZERO

    def __eq__(self, other) -> bool:
        if isinstance(other, RatQ):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, type(_ONE))):
            return self.num == poly((other,)) and self.den == (_ONE,)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # arithmetic --------------------------------------------------------

    def __neg__(self) -> "RatQ":
        return RatQ(poly_neg(self.num), self.den, _reduced=True)

    def __add__(self, other: Coercible) -> "RatQ":
        other = _co(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            if len(self.den) == 1:
                return RatQ(poly_add(self.num, other.num), self.den, _reduced=True)
            return RatQ(poly_add(self.num, other.num), self.den)
        if len(self.den) == 1:
            num = poly_add(poly_mul(self.num, other.den), other.num)
            return RatQ(num, other.den, _reduced=True)
        if len(other.den) == 1:
            num = poly_add(self.num, poly_mul(other.num, self.den))
            return RatQ(num, self.den, _reduced=True)
        g = poly_gcd(self.den, other.den)
        if len(g) == 1:
            num = poly_add(poly_mul(self.num, other.den), poly_mul(other.num, self.den))
            return RatQ(num, poly_mul(self.den, other.den), _reduced=True)
        a = poly_exact_div(other.den, g)
        b = poly_exact_div(self.den, g)
        num = poly_add(poly_mul(self.num, a), poly_mul(other.num, b))
        return RatQ(num, poly_mul(self.den, a))

    __radd__ = __add__

    def __sub__(self, other: Coercible) -> "RatQ":
        other = _co(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: Coercible) -> "RatQ":
        return (-self) + other

    def __mul__(self, other: Coercible) -> "RatQ":
        other = _co(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return ZERO
        if len(self.den) == 1 and len(other.den) == 1:
            return RatQ(poly_mul(self.num, other.num), self.den, _reduced=True)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1, d2 = self.num, other.den
        if len(g1) > 1:
            n1, d2 = poly_exact_div(n1, g1), poly_exact_div(d2, g1)
        n2, d1 = other.num, self.den
        if len(g2) > 1:
            n2, d1 = poly_exact_div(n2, g2), poly_exact_div(d1, g2)
        return _from_coprime(poly_mul(n1, n2), poly_mul(d1, d2))

    __rmul__ = __mul__

    def inverse(self) -> "RatQ":
        if not self.num:
            raise DivisionByZero("inverse of zero in Q(q)")
        return _from_coprime(self.den, self.num)

    def __truediv__(self, other: Coercible) -> "RatQ":
        other = _co(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other: Coercible) -> "RatQ":
        return RatQ.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "RatQ":
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # inspection --------------------------------------------------------

    def degree_key(self) -> int:
        """Total numerator degree, used to break pivot ties."""
        return len(self.num) - 1

    def evaluate(self, value):
        """Substitute an exact rational for q (``None`` at a pole)."""
        value = mpq(value)
        d = _horner(self.den, value)
        if not d:
            return None
        return _horner(self.num, value) / d

    def __repr__(self) -> str:
        from .exprio import format_ratq
        return format_ratq(self)

    __str__ = __repr__


def _horner(p: Poly, x):
    acc = _ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _co(x):
    if isinstance(x, RatQ):
        return x
    if isinstance(x, (int, type(_ONE))):
        return RatQ.from_int(x)
    return NotImplemented


def _from_coprime(num: Poly, den: Poly) -> RatQ:
    if not num:
        return ZERO
    lead = den[-1]
    if lead != 1:
        inv = 1 / lead
        num = tuple(x * inv for x in num)
        den = tuple(x * inv for x in den)
    return RatQ(num, den, _reduced=True)


def _canonical(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    num = _trim([mpq(c) for c in num])
    den = _trim([mpq(c) for c in den])
    if not den:
        raise DivisionByZero("zero denominator")
    if not num:
        return (), (_ONE,)
    g = poly_gcd(num, den)
    if len(g) > 1:
        num, den = poly_exact_div(num, g), poly_exact_div(den, g)
    r = _from_coprime(num, den)
    return r.num, r.den


def _laurent_to_poly(terms: Mapping[int, object]) -> tuple[Poly, int]:
    """Return (polynomial, shift) with ``sum c q^e == poly * q^shift``."""
    terms = {e: mpq(c) for e, c in terms.items() if c}
    if not terms:
        return (), 0
    low = min(terms)
    c = [_ZERO] * (max(terms) - low + 1)
    for e, v in terms.items():
        c[e - low] = v
    return tuple(c), low


def canonicalize(num, den) -> RatQ:
    """Reduce ``num/den`` to canonical form.

    Both arguments may be coefficient sequences (lowest degree first) or
    mappings ``{exponent: coefficient}`` whose exponents may be negative;
    negative powers of q are cleared into the fraction.
    """
    if isinstance(num, Mapping):
        n, ns = _laurent_to_poly(num)
    else:
        n, ns = tuple(num), 0
    if isinstance(den, Mapping):
        d, ds = _laurent_to_poly(den)
    else:
        d, ds = tuple(den), 0
    if not _trim([mpq(c) for c in d]):
        raise DivisionByZero("zero denominator")
    shift = ns - ds
    if shift > 0:
        n = (_ZERO,) * shift + n
    elif shift < 0:
        d = (_ZERO,) * (-shift) + d
    return RatQ(n, d)


def ratq_sum(values: Iterable[RatQ]) -> RatQ:
    return reduce(lambda a, b: a + b, values, ZERO)


ZERO = RatQ((), (_ONE,), _reduced=True)
ONE = RatQ((_ONE,), (_ONE,), _reduced=True)
_Q = RatQ((_ZERO, _ONE), (_ONE,), _reduced=True)


def qpow(n: int) -> RatQ:
    """q**n for any integer n."""
    return canonicalize({n: 1}, {0: 1})
