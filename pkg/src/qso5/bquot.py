"""The simple quotients B_{alpha,beta} and their localization R = B[e4^-1].

B is presented on e1 < e2 < e4.  The so5 straightening rules are kept with
e3 eliminated through ``e3 = k1 beta - k1 e2 e4``, and ``e2^2`` is reduced by
``e2^2 = alpha k2 - beta k1 k2 e1 + k1 k2 e1 e2 e4``.  Normal monomials are
therefore e1^i e2^d e4^j with d in {0, 1}.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .coeffq import ONE, RatQ, qpow
from .errors import BetaZero, BothParamsZero
from .gwa import GwaAlgebra, GwaElem, so5_gwa
from .pbw import Elem, Presentation, derive_inverse_rules, rewrite_word
from .so5 import CONSTANTS, make_so5

q = RatQ.q()

B_GENERATORS = ("e1", "e2", "e4")


@dataclass(frozen=True)
class Params:
    alpha: RatQ
    beta: RatQ

    def __post_init__(self):
        object.__setattr__(self, "alpha", RatQ.coerce(self.alpha))
        object.__setattr__(self, "beta", RatQ.coerce(self.beta))
        if self.alpha.is_zero() and self.beta.is_zero():
            raise BothParamsZero("(alpha, beta) must not be (0, 0)")

    def __str__(self) -> str:
        return f"alpha={self.alpha}, beta={self.beta}"


def _as_params(params) -> Params:
    if isinstance(params, Params):
        return params
    alpha, beta = params
    return Params(alpha, beta)


def _e3_image(params: Params) -> dict:
    """e3 in B coordinates, as a map over (e1, e2, e4) exponents."""
    k1 = CONSTANTS.k1
    return {(0, 0, 0): k1 * params.beta, (0, 1, 1): -k1}


def _translate_rule(rhs: dict, params: Params) -> dict:
    """Rewrite an so5 rule right-hand side with e3 eliminated."""
    out: dict = {}
    for (a, b, c, d), coeff in rhs.items():
        if c == 0:
            terms = {(a, b, d): coeff}
        elif c == 1 and b == 0:
            terms = {}
            for (x, y, z), v in _e3_image(params).items():
                terms[(a + x, y, d + z)] = coeff * v
        else:
            raise AssertionError("unexpected so5 rule shape")
        for m, v in terms.items():
            out[m] = out.get(m, RatQ()) + v
    return {m: v for m, v in out.items() if v}


@lru_cache(maxsize=None)
def _make_b(params: Params) -> Presentation:
    u_rules = make_so5().base_rules
    keep = {0: 0, 1: 1, 3: 2}
    rules = {}
    for (j, i), rhs in u_rules.items():
        if j in keep and i in keep:
            rules[(keep[j], keep[i])] = _translate_rule(rhs, params)
    c = CONSTANTS
    e2_square = {
        (0, 0, 0): params.alpha * c.k2,
        (1, 0, 0): -params.beta * c.k1 * c.k2,
        (1, 1, 1): c.k1 * c.k2,
    }
    alg = Presentation(
        B_GENERATORS, rules, power_rules={1: (2, {m: v for m, v in e2_square.items() if v})},
        name=f"B({params})")
    alg.params = params
    return alg


def make_b(params) -> Presentation:
    """B_{alpha,beta}; ``params`` is a :class:`Params` or an (alpha, beta) pair."""
    return _make_b(_as_params(params))


@lru_cache(maxsize=None)
def _make_r(params: Params) -> Presentation:
    if params.beta.is_zero():
        raise BetaZero("R = B[e4^-1] is only built for beta != 0")
    r = derive_inverse_rules(_make_b(params), "e4", name=f"R({params})")
    r.params = params
    return r


def make_r(params) -> Presentation:
    return _make_r(_as_params(params))


def b_generators(alg: Presentation) -> tuple:
    """(e1, e2, e3, e4) as elements of B or R, with e3 = k1 beta - k1 e2 e4."""
    e1, e2, e4 = alg.gens()
    e3 = alg.element(_e3_image(alg.params))
    return e1, e2, e3, e4


def nf_b(alg: Presentation, factors) -> Elem:
    """Normal form in B (or R) of a product of powers of e1, e2, e3, e4."""
    gens = dict(zip(("e1", "e2", "e3", "e4"), b_generators(alg)))
    out = alg.one()
    for g, e in factors:
        if g == "e3":
            if e < 0:
                from .errors import NegativePowerNotInvertible
                raise NegativePowerNotInvertible("e3 is not invertible in B")
            out = out * gens["e3"] ** e
        else:
            out = out * alg.gen(g, e)
    return out


def is_basis_supported(z: Elem, localized: bool = False) -> bool:
    """Whether every monomial of z lies in the basis E (or E' when localized)."""
    for a, d, j in z.terms:
        if a < 0 or d not in (0, 1) or (j < 0 and not localized):
            return False
    return True


def basis_monomials(max_degree: int, localized_range: int | None = None) -> list:
    """Basis monomials e1^i e2^d e4^j of degree i + d + |j| <= max_degree."""
    out = []
    for deg in range(max_degree + 1):
        for d in (0, 1):
            for i in range(deg - d + 1):
                rest = deg - d - i
                js = [rest] if localized_range is None else sorted({rest, -rest})
                for j in js:
                    out.append((i, d, j))
    return sorted(set(out), key=lambda m: (abs(m[0]) + m[1] + abs(m[2]), m))


def intro_presentation_check(params, lead: RatQ | None = None) -> bool:
    """The single-relation description of e2^2 from the introduction.

    ``lead`` replaces the factor q^6/(q^4-1); anything else should fail.
    """
    alg = make_b(params)
    p = alg.params
    lead = q**6 / (q**4 - 1) if lead is None else RatQ.coerce(lead)
    e1, e2, e3, e4 = b_generators(alg)
    rhs = alg.scalar(-(q + qpow(-1)) / (1 - qpow(-2)) * p.alpha) - e1 * p.beta + e1 * e2 * e4
    return (e2 * e2 * lead - rhs).is_zero()


def quotient_identities(params) -> list:
    """``(name, residual)`` pairs that vanish in B_{alpha,beta}."""
    alg = make_b(params)
    p = alg.params
    c = CONSTANTS
    e1, e2, e3, e4 = b_generators(alg)
    serre = (q - q**3) / (1 + q**2)
    return [
        ("e2 e1 = q^-2 e1 e2", e2 * e1 - e1 * e2 * qpow(-2)),
        ("e4 e1 = q^2 e1 e4 - q^2 e2", e4 * e1 - e1 * e4 * q**2 + e2 * q**2),
        ("e3 e1 = e1 e3 + (q-q^3)/(1+q^2) e2^2", e3 * e1 - e1 * e3 - e2 * e2 * serre),
        ("e4 e2 = e2 e4 - (q+q^-1) e3", e4 * e2 - e2 * e4 + e3 * (q + qpow(-1))),
        ("e3 e2 = q^-2 e2 e3", e3 * e2 - e2 * e3 * qpow(-2)),
        ("e4 e3 = q^-2 e3 e4", e4 * e3 - e3 * e4 * qpow(-2)),
        ("e3 = k1 beta - k1 e2 e4", e3 - (alg.scalar(c.k1 * p.beta) - e2 * e4 * c.k1)),
        ("e2^2 = alpha k2 - beta k1 k2 e1 + k1 k2 e1 e2 e4",
         e2 * e2 - (alg.scalar(p.alpha * c.k2) - e1 * (p.beta * c.k1 * c.k2)
                    + e1 * e2 * e4 * (c.k1 * c.k2))),
        ("chi1 -> alpha", e1 * e3 + e2 * e2 * c.p4 - p.alpha),
        ("chi2 -> beta", e2 * e4 + e3 * c.p3 - p.beta),
        ("e4 e2 = q^-2 e2 e4 + (1 - q^-2) beta",
         e4 * e2 - e2 * e4 * qpow(-2) - (1 - qpow(-2)) * p.beta),
    ]


def bounded_center(alg: Presentation, max_degree: int) -> list:
    """Basis of the elements of degree <= max_degree commuting with e1, e2, e4.

    Solved as a linear system in the coefficients over the basis E, so the
    answer covers every element of bounded degree, not a random sample.
    """
    from .linalg import LinSystem, kernel
    monos = basis_monomials(max_degree)
    rows: dict = {}
    for col, m in enumerate(monos):
        z = alg.element({m: 1})
        for g in alg.gens():
            for mono, v in alg.commutator(z, g).terms.items():
                rows.setdefault((g.support()[0], mono), {})[col] = v
    system = LinSystem(labels=monos)
    for key in sorted(rows):
        system.add_row(rows[key])
    return [alg.element({monos[c]: v for c, v in vec.items()}) for vec in kernel(system)]


def reduction_order_agrees(alg: Presentation, word) -> bool:
    """Compare the cached engine with leftmost and rightmost word rewriting."""
    main = alg.normal_form(word)
    return all(rewrite_word(alg, word, strategy=s) == main for s in ("leftmost", "rightmost"))


# ---------------------------------------------------------------------------
# the GWA picture of R
# ---------------------------------------------------------------------------

def f_elements(algR: Presentation) -> tuple:
    """f1 = e1 + p1 e2 e4^-1 + p2 e3 e4^-2 and f2 = e2 + p3 e3 e4^-1 in R."""
    c = CONSTANTS
    e1, e2, e3, e4 = b_generators(algR)
    e4i = algR.gen("e4", -1)
    f1 = e1 + e2 * e4i * c.p1 + e3 * e4i * e4i * c.p2
    f2 = e2 + e3 * e4i * c.p3
    return f1, f2


def f_relations(algR: Presentation) -> list:
    """Residuals of the four relations presenting R on f1, f2^{+-1}, e3."""
    p = algR.params
    f1, f2 = f_elements(algR)
    e3 = b_generators(algR)[2]
    return [
        ("f1 f2 = q^2 f2 f1", f1 * f2 - f2 * f1 * q**2),
        ("e3 f2 = q^-2 f2 e3", e3 * f2 - f2 * e3 * qpow(-2)),
        ("e3 f1 = f1 e3 + (q-q^3)/(1+q^2) f2^2",
         e3 * f1 - f1 * e3 - f2 * f2 * ((q - q**3) / (1 + q**2))),
        ("f1 e3 - q^5/(1+q^2)^2 f2^2 = alpha",
         f1 * e3 - f2 * f2 * (q**5 / (1 + q**2) ** 2) - p.alpha),
        ("f2 e4 = beta", f2 * algR.gen("e4") - p.beta),
    ]


class GwaBridge:
    """The isomorphism between R and K[h^{+-1}](sigma_q, alpha + q/(q^2+1)^2 h^2).

    h, x, y correspond to f2, f1, e3; in the other direction
    e4 -> beta h^-1, e2 -> h - p3 y (beta^-1 h), and
    e1 -> x - p1 e2 (beta^-1 h) - p2 y (beta^-2 h^2).
    """

    def __init__(self, algR: Presentation):
        self.R = algR
        self.params = algR.params
        self.gwa: GwaAlgebra = so5_gwa(self.params.alpha)
        c = CONSTANTS
        A = self.gwa
        b = self.params.beta
        binv = b.inverse()
        h, x, y = A.h(), A.x(), A.y()
        e4inv = h.scale(binv)
        self.e4 = A.h(-1).scale(b)
        self.e4inv = e4inv
        self.e2 = h - y * e4inv * c.p3
        self.e1 = x - self.e2 * e4inv * c.p1 - y * e4inv * e4inv * c.p2
        f1, f2 = f_elements(algR)
        self.f1, self.f2 = f1, f2
        self.f2inv = algR.gen("e4").scale(binv)
        self.e3 = b_generators(algR)[2]
        self._to_cache: dict = {}
        self._from_cache: dict = {}

    def _pow(self, cache, key, base, n, one):
        hit = cache.get((key, n))
        if hit is None:
            hit = one if n == 0 else self._pow(cache, key, base, n - 1, one) * base
            cache[(key, n)] = hit
        return hit

    def to_gwa(self, z: Elem) -> GwaElem:
        A = self.gwa
        out = A.zero()
        one = A.one()
        for m, c in z.terms.items():
            t = self._to_cache.get(m)
            if t is None:
                i, d, j = m
                t = self._pow(self._to_cache, "e1", self.e1, i, one)
                if d:
                    t = t * self.e2
                if j > 0:
                    t = t * self._pow(self._to_cache, "e4", self.e4, j, one)
                elif j < 0:
                    t = t * self._pow(self._to_cache, "e4inv", self.e4inv, -j, one)
                self._to_cache[m] = t
            out = out + t.scale(c)
        return out

    def from_gwa(self, g: GwaElem) -> Elem:
        R = self.R
        out = R.zero()
        one = R.one()
        for m, c in g.terms.items():
            t = self._from_cache.get(m)
            if t is None:
                i, j = m
                if i >= 0:
                    t = self._pow(self._from_cache, "f2", self.f2, i, one)
                else:
                    t = self._pow(self._from_cache, "f2inv", self.f2inv, -i, one)
                if j > 0:
                    t = t * self._pow(self._from_cache, "f1", self.f1, j, one)
                elif j < 0:
                    t = t * self._pow(self._from_cache, "e3", self.e3, -j, one)
                self._from_cache[m] = t
            out = out + t.scale(c)
        return out


@lru_cache(maxsize=None)
def gwa_bridge(params) -> GwaBridge:
    return GwaBridge(make_r(params))


def to_gwa(algR: Presentation, z: Elem) -> GwaElem:
    return gwa_bridge(algR.params).to_gwa(z)


def from_gwa(algR: Presentation, g: GwaElem) -> Elem:
    return gwa_bridge(algR.params).from_gwa(g)
