"""Quantum generalized Weyl algebras K[h^{+-1}](sigma, a).

Relations: ``y x = a(h)``, ``x y = a(rho h)``, ``x h = rho h x``,
``y h = rho^-1 h y``.  Elements are sparse maps ``(i, j) -> coeff`` where
``(i, j)`` stands for ``h^i x^j`` when ``j >= 0`` and ``h^i y^-j`` when
``j < 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .coeffq import ONE, ZERO, RatQ
from .errors import NotADerivation, ObstructedShape
from .pbw import _add_into

q = RatQ.q()


def _lp_shift(p: Mapping[int, RatQ], factor: RatQ) -> dict:
    """p(factor * h) for a Laurent polynomial p."""
    return {e: c * factor**e for e, c in p.items()}


def _lp_mul(a: Mapping[int, RatQ], b: Mapping[int, RatQ]) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            _add_into(out, e1 + e2, c1 * c2)
    return out


class GwaElem:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: "GwaAlgebra", terms: Mapping[tuple, RatQ] | None = None):
        self.alg = alg
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    def items(self):
        return sorted(self.terms.items(), key=lambda t: (abs(t[0][0]) + abs(t[0][1]), t[0]))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coeff(self, i: int, j: int) -> RatQ:
        return self.terms.get((i, j), ZERO)

    def _lift(self, other):
        if isinstance(other, GwaElem):
            return other
        return self.alg.scalar(other)

    def __add__(self, other) -> "GwaElem":
        other = self._lift(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(acc, k, c)
        return GwaElem(self.alg, acc)

    __radd__ = __add__

    def __neg__(self) -> "GwaElem":
        return GwaElem(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "GwaElem":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "GwaElem":
        return (-self) + other

    def scale(self, c) -> "GwaElem":
        c = RatQ.coerce(c)
        return GwaElem(self.alg, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other) -> "GwaElem":
        if isinstance(other, GwaElem):
            return self.alg.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "GwaElem":
        return self.scale(other)

    def __pow__(self, n: int) -> "GwaElem":
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, GwaElem):
            return self.terms == other.terms
        if isinstance(other, (int, RatQ)):
            return self == self.alg.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        from .exprio import print_canonical
        return print_canonical(self)


class GwaAlgebra:
    """K[h^{+-1}](sigma, a) with sigma(h) = rho * h.

    ``a`` is a Laurent polynomial in h given as ``{exponent: coeff}``.
    """

    def __init__(self, a: Mapping[int, object], rho: RatQ | None = None, name: str = "gwa"):
        self.a = {e: RatQ.coerce(c) for e, c in a.items() if c}
        if not self.a:
            raise ValueError("a must be nonzero")
        self.rho = q**2 if rho is None else RatQ.coerce(rho)
        if self.rho.is_zero() or self.rho.is_constant():
            raise ValueError("rho must be a nonconstant element (not a root of unity)")
        self.name = name
        self._xy = {0: {0: ONE}}
        self._yx = {0: {0: ONE}}
        self._mono_cache: dict = {}

    def __repr__(self) -> str:
        return f"GwaAlgebra(a={self.laurent_text(self.a)}, rho={self.rho})"

    @staticmethod
    def laurent_text(p) -> str:
        from .exprio import format_terms, gwa_mono_text
        terms = sorted(((e, 0), c) for e, c in p.items())[::-1]
        return format_terms(terms, gwa_mono_text)

    def sigma(self, p: Mapping[int, RatQ], k: int = 1) -> dict:
        return _lp_shift(p, self.rho**k)

    # --- elements -----------------------------------------------------------

    def element(self, terms: Mapping[tuple, object]) -> GwaElem:
        return GwaElem(self, {tuple(k): RatQ.coerce(c) for k, c in terms.items()})

    def zero(self) -> GwaElem:
        return GwaElem(self)

    def one(self) -> GwaElem:
        return GwaElem(self, {(0, 0): ONE})

    def scalar(self, c) -> GwaElem:
        return GwaElem(self, {(0, 0): RatQ.coerce(c)})

    def h(self, power: int = 1) -> GwaElem:
        return GwaElem(self, {(power, 0): ONE})

    def x(self, power: int = 1) -> GwaElem:
        return GwaElem(self, {(0, power): ONE})

    def y(self, power: int = 1) -> GwaElem:
        return GwaElem(self, {(0, -power): ONE})

    def laurent(self, p: Mapping[int, object]) -> GwaElem:
        return GwaElem(self, {(e, 0): RatQ.coerce(c) for e, c in p.items()})

    # --- multiplication -------------------------------------------------------

    def _xnyn(self, n: int) -> dict:
        """x^n y^n = prod_{k=1..n} sigma^k(a)."""
        while max(self._xy) < n:
            m = max(self._xy)
            self._xy[m + 1] = _lp_mul(self._xy[m], self.sigma(self.a, m + 1))
        return self._xy[n]

    def _ynxn(self, n: int) -> dict:
        """y^n x^n = prod_{k=0..n-1} sigma^-k(a)."""
        while max(self._yx) < n:
            m = max(self._yx)
            self._yx[m + 1] = _lp_mul(self._yx[m], self.sigma(self.a, -m))
        return self._yx[n]

    def _xy_power(self, j: int, l: int):
        """X^j X^l as (Laurent polynomial placed left of X^r, r)."""
        if j == 0 or l == 0 or (j > 0) == (l > 0):
            return {0: ONE}, j + l
        if j > 0:
            a, b = j, -l
            if a >= b:
                return self.sigma(self._xnyn(b), a - b), a - b
            return self._xnyn(a), -(b - a)
        a, b = -j, l
        if a >= b:
            return self.sigma(self._ynxn(b), -(a - b)), -(a - b)
        return self._ynxn(a), b - a

    def mono_mul(self, u: tuple, v: tuple) -> dict:
        key = (u, v)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        i, j = u
        k, l = v
        twist = self.rho ** (j * k)
        poly, r = self._xy_power(j, l)
        out = {(i + k + e, r): twist * c for e, c in poly.items()}
        self._mono_cache[key] = out
        return out

    def multiply(self, u: GwaElem, v: GwaElem) -> GwaElem:
        out: dict = {}
        for k1, c1 in u.terms.items():
            for k2, c2 in v.terms.items():
                cc = c1 * c2
                for k, c in self.mono_mul(k1, k2).items():
                    _add_into(out, k, cc * c)
        return GwaElem(self, out)

    def commutator(self, u: GwaElem, v: GwaElem) -> GwaElem:
        return self.multiply(u, v) - self.multiply(v, u)

    # --- derivations ------------------------------------------------------------

    def apply_derivation(self, images: Mapping[str, GwaElem], word) -> GwaElem:
        """Leibniz extension of ``images`` (keys 'h', 'x', 'y') to a word.

        ``word`` is a sequence of ``(symbol, power)``; negative powers of h
        use D(h^-1) = -h^-1 D(h) h^-1.
        """
        letters = []
        for s, e in word:
            if e < 0 and s != "h":
                raise ValueError(f"{s} is not invertible")
            letters.extend([(s, 1 if e > 0 else -1)] * abs(e))
        gens = {"h": self.h(), "x": self.x(), "y": self.y()}
        hinv = self.h(-1)
        total = self.zero()
        for pos, (s, sign) in enumerate(letters):
            left = self.one()
            for t, sg in letters[:pos]:
                left = left * (gens[t] if sg > 0 else hinv)
            right = self.one()
            for t, sg in letters[pos + 1:]:
                right = right * (gens[t] if sg > 0 else hinv)
            d = images[s] if sign > 0 else -(hinv * images["h"] * hinv)
            total = total + left * d * right
        return total

    def apply_to_laurent(self, images, p: Mapping[int, RatQ]) -> GwaElem:
        total = self.zero()
        for e, c in p.items():
            if e:
                total = total + self.apply_derivation(images, [("h", e)]).scale(c)
        return total

    def derivation_residuals(self, Dh: GwaElem, Dx: GwaElem, Dy: GwaElem) -> list:
        img = {"h": Dh, "x": Dx, "y": Dy}
        D = lambda w: self.apply_derivation(img, w)  # noqa: E731
        sa = self.sigma(self.a)
        rho = self.rho
        return [
            ("yx = a", D([("y", 1), ("x", 1)]) - self.apply_to_laurent(img, self.a)),
            ("xy = sigma(a)", D([("x", 1), ("y", 1)]) - self.apply_to_laurent(img, sa)),
            ("xh = rho hx", D([("x", 1), ("h", 1)]) - D([("h", 1), ("x", 1)]).scale(rho)),
            ("yh = rho^-1 hy", D([("y", 1), ("h", 1)]) - D([("h", 1), ("y", 1)]).scale(rho.inverse())),
        ]

    def ad(self, w: GwaElem) -> tuple:
        return (self.commutator(w, self.h()), self.commutator(w, self.x()),
                self.commutator(w, self.y()))

    def delta(self, lam) -> tuple:
        """The scalar derivation h -> 0, x -> lam x, y -> -lam y."""
        lam = RatQ.coerce(lam)
        return (self.zero(), self.x().scale(lam), self.y().scale(-lam))


def gwa_multiply(A: GwaAlgebra, u: GwaElem, v: GwaElem) -> GwaElem:
    return A.multiply(u, v)


def gwa_derivation_check(A: GwaAlgebra, Dh: GwaElem, Dx: GwaElem, Dy: GwaElem) -> bool:
    """True iff h, x, y -> Dh, Dx, Dy respects all four defining relations."""
    return all(r.is_zero() for _, r in A.derivation_residuals(Dh, Dx, Dy))


@dataclass(frozen=True)
class GwaDecomp:
    w: GwaElem
    lam: RatQ


def gwa_decompose(A: GwaAlgebra, Dh: GwaElem, Dx: GwaElem, Dy: GwaElem) -> GwaDecomp:
    """Write a derivation as ``ad_w + delta_lam``.

    The inner part is solved for in two passes: terms of D(h) off the
    Laurent stripe fix the x- and y-parts of w, then the remaining
    ``D(x) = p(h) x`` fixes the Laurent part of w up to a constant, which is
    set to zero.  The constant term of p is lam.
    """
    if not gwa_derivation_check(A, Dh, Dx, Dy):
        raise NotADerivation("images do not satisfy the Leibniz rule on the GWA relations")
    rho = A.rho
    w: dict = {}
    for (i, j), c in Dh.terms.items():
        if j == 0:
            raise ObstructedShape(f"D(h) has a Laurent component h^{i}")
        _add_into(w, (i - 1, j), c / (rho**j - 1))
    W = GwaElem(A, w)
    adh, adx, ady = A.ad(W)
    Dx1, Dy1 = Dx - adx, Dy - ady
    if (Dh - adh):
        raise ObstructedShape("D(h) is not matched by an inner derivation")
    p = {}
    for (i, j), c in Dx1.terms.items():
        if j != 1:
            raise ObstructedShape("D(x) - ad_w(x) is not of the form p(h) x")
        p[i] = c
    expected_y = {(i, -1): -c * rho ** (-i) for i, c in p.items()}
    if Dy1.terms != {k: v for k, v in expected_y.items() if v}:
        raise ObstructedShape("D(y) - ad_w(y) does not match -p(rho^-1 h) y")
    lam = p.get(0, ZERO)
    s = {(i, 0): c / (1 - rho**i) for i, c in p.items() if i != 0}
    W = W + GwaElem(A, s)
    rh, rx, ry = A.ad(W)
    dh, dx, dy = A.delta(lam)
    if rh + dh != Dh or rx + dx != Dx or ry + dy != Dy:
        raise ObstructedShape("reconstruction ad_w + delta_lam does not reproduce D")
    return GwaDecomp(W, lam)


def so5_gwa(alpha) -> GwaAlgebra:
    """The GWA with a = alpha + q/(q^2+1)^2 h^2 and rho = q^2."""
    alpha = RatQ.coerce(alpha)
    return GwaAlgebra({0: alpha, 2: q / (q**2 + 1) ** 2}, rho=q**2,
                      name=f"gwa(alpha={alpha})")
