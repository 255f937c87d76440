"""Derivations of B_{alpha,beta}: checking, innerization and bounded solving.

A derivation is given by its images on e1, e2, e4.  The image of e3 is never
supplied; it follows from ``e3 = k1 beta - k1 e2 e4``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .bquot import (
    b_generators,
    basis_monomials,
    gwa_bridge,
    make_b,
    make_r,
)
from .coeffq import RatQ, qpow
from .errors import BetaZero, NotInner
from .linalg import LinSystem, kernel, rank
from .pbw import Elem, Presentation
from .so5 import CONSTANTS

q = RatQ.q()
_SERRE = (q - q**3) / (1 + q**2)


def transfer(z: Elem, alg: Presentation) -> Elem:
    """Reinterpret an element over the same generators in another presentation."""
    if z.alg is alg:
        return z
    return alg.element(z.terms)


@dataclass
class DerivSpec:
    De1: Elem
    De2: Elem
    De4: Elem

    def De3(self) -> Elem:
        alg = self.De2.alg
        e4 = alg.gen("e4")
        e2 = alg.gen("e2")
        return (self.De2 * e4 + e2 * self.De4).scale(-CONSTANTS.k1)

    def images(self) -> dict:
        return {"e1": self.De1, "e2": self.De2, "e3": self.De3(), "e4": self.De4}

    def over(self, alg: Presentation) -> "DerivSpec":
        return DerivSpec(transfer(self.De1, alg), transfer(self.De2, alg), transfer(self.De4, alg))

    def is_zero(self) -> bool:
        return self.De1.is_zero() and self.De2.is_zero() and self.De4.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, DerivSpec):
            return NotImplemented
        return (self.De1.terms == other.De1.terms and self.De2.terms == other.De2.terms
                and self.De4.terms == other.De4.terms)

    @classmethod
    def zero(cls, alg: Presentation) -> "DerivSpec":
        return cls(alg.zero(), alg.zero(), alg.zero())

    @classmethod
    def ad(cls, b: Elem) -> "DerivSpec":
        """Images of u -> b u - u b on the generators."""
        alg = b.alg
        e1, e2, e4 = alg.gens()
        return cls(alg.commutator(b, e1), alg.commutator(b, e2), alg.commutator(b, e4))

    def __add__(self, other: "DerivSpec") -> "DerivSpec":
        return DerivSpec(self.De1 + other.De1, self.De2 + other.De2, self.De4 + other.De4)

    def __sub__(self, other: "DerivSpec") -> "DerivSpec":
        return DerivSpec(self.De1 - other.De1, self.De2 - other.De2, self.De4 - other.De4)


def _relations(params) -> list:
    """Defining relations of B as ``(name, [(coeff, word), ...])``."""
    c = CONSTANTS
    a, b = params.alpha, params.beta
    one = RatQ.from_int(1)
    return [
        ("e2e1", [(one, ("e2", "e1")), (-qpow(-2), ("e1", "e2"))]),
        ("e4e1", [(one, ("e4", "e1")), (-q**2, ("e1", "e4")), (q**2, ("e2",))]),
        ("e3e1", [(one, ("e3", "e1")), (-one, ("e1", "e3")), (-_SERRE, ("e2", "e2"))]),
        ("e4e2", [(one, ("e4", "e2")), (-one, ("e2", "e4")), (q + qpow(-1), ("e3",))]),
        ("e3e2", [(one, ("e3", "e2")), (-qpow(-2), ("e2", "e3"))]),
        ("e4e3", [(one, ("e4", "e3")), (-qpow(-2), ("e3", "e4"))]),
        ("e3 elim", [(one, ("e3",)), (-c.k1 * b, ()), (c.k1, ("e2", "e4"))]),
        ("e2^2", [(one, ("e2", "e2")), (-a * c.k2, ()), (b * c.k1 * c.k2, ("e1",)),
                  (-c.k1 * c.k2, ("e1", "e2", "e4"))]),
    ]


def _gen_table(alg: Presentation) -> dict:
    e1, e2, e3, e4 = b_generators(alg)
    table = {"e1": e1, "e2": e2, "e3": e3, "e4": e4}
    if "e4" in alg.names and alg.index("e4") in alg.invertible:
        table["e4^-1"] = alg.gen("e4", -1)
    return table


def apply_derivation(images: dict, word, gens: dict, alg: Presentation) -> Elem:
    """Leibniz rule on a word of generator names (``"e4^-1"`` allowed)."""
    total = alg.zero()
    for pos, g in enumerate(word):
        left = alg.one()
        for h in word[:pos]:
            left = left * gens[h]
        right = alg.one()
        for h in word[pos + 1:]:
            right = right * gens[h]
        total = total + left * images[g] * right
    return total


def relation_residuals(alg: Presentation, spec: DerivSpec) -> list:
    gens = _gen_table(alg)
    images = spec.over(alg).images()
    if "e4^-1" in gens:
        inv = gens["e4^-1"]
        images["e4^-1"] = -(inv * images["e4"] * inv)
    out = []
    for name, rel in _relations(alg.params):
        acc = alg.zero()
        for c, word in rel:
            if word:
                acc = acc + apply_derivation(images, word, gens, alg).scale(c)
        out.append((name, acc))
    if "e4^-1" in gens:
        out.append(("e4 e4^-1 = 1", apply_derivation(images, ("e4", "e4^-1"), gens, alg)))
        out.append(("e4^-1 e4 = 1", apply_derivation(images, ("e4^-1", "e4"), gens, alg)))
    return out


def b_derivation_check(alg: Presentation, spec: DerivSpec) -> bool:
    """True iff the derivation data respects every defining relation of B (or R)."""
    return all(r.is_zero() for _, r in relation_residuals(alg, spec))


@dataclass
class RDerivation:
    """A derivation of R given on e1, e2, e3, e4 and e4^-1."""

    images: dict

    def restrict(self, algB: Presentation) -> DerivSpec:
        return DerivSpec(*(transfer(self.images[g], algB) for g in ("e1", "e2", "e4")))


def extend_to_r(algR: Presentation, spec: DerivSpec) -> RDerivation:
    """Extend a derivation of B to R using D(e4^-1) = -e4^-1 D(e4) e4^-1."""
    if algR.params.beta.is_zero():
        raise BetaZero("R requires beta != 0")
    s = spec.over(algR)
    if not b_derivation_check(algR, s):
        from .errors import NotADerivation
        raise NotADerivation("spec is not a derivation")
    images = s.images()
    inv = algR.gen("e4", -1)
    images["e4^-1"] = -(inv * images["e4"] * inv)
    return RDerivation(images)


@dataclass
class Innerization:
    x: Elem
    lam: RatQ
    w: object


def innerize_full(alg: Presentation, spec: DerivSpec) -> Innerization:
    """Find x in B with D = ad_x, going through the GWA picture of R."""
    p = alg.params
    if p.alpha.is_zero() or p.beta.is_zero():
        raise ValueError("innerization needs alpha * beta != 0")
    if not b_derivation_check(alg, spec):
        from .errors import NotADerivation
        raise NotADerivation("spec is not a derivation of B")
    R = make_r(p)
    bridge = gwa_bridge(p)
    D = extend_to_r(R, spec).images
    c = CONSTANTS
    gens = _gen_table(R)
    D_f2 = apply_derivation(D, ("e2",), gens, R) \
        + apply_derivation(D, ("e3", "e4^-1"), gens, R).scale(c.p3)
    D_f1 = apply_derivation(D, ("e1",), gens, R) \
        + apply_derivation(D, ("e2", "e4^-1"), gens, R).scale(c.p1) \
        + apply_derivation(D, ("e3", "e4^-1", "e4^-1"), gens, R).scale(c.p2)
    from .gwa import gwa_decompose
    dec = gwa_decompose(bridge.gwa, bridge.to_gwa(D_f2), bridge.to_gwa(D_f1),
                        bridge.to_gwa(D["e3"]))
    if dec.lam:
        raise NotInner(lam=dec.lam)
    x = bridge.from_gwa(dec.w)
    negative = {m: v for m, v in x.terms.items() if m[2] < 0}
    if negative:
        raise NotInner(negative_part=R.element(negative))
    x = transfer(x, alg)
    x = x - x.constant_term()
    if DerivSpec.ad(x) != spec.over(alg):
        raise AssertionError("innerization postcondition D = ad_x failed")
    return Innerization(x, dec.lam, dec.w)


def innerize(alg: Presentation, spec: DerivSpec) -> Elem:
    """x in B with zero constant term such that D = ad_x."""
    return innerize_full(alg, spec).x


# ---------------------------------------------------------------------------
# degree-bounded derivation spaces
# ---------------------------------------------------------------------------

def _unknowns(N: int) -> list:
    monos = basis_monomials(N)
    return [(g, m) for g in ("e1", "e2", "e4") for m in monos]


def derivation_system(alg: Presentation, N: int) -> tuple:
    """Linear constraints on the coefficients of De1, De2, De4 of degree <= N."""
    unknowns = _unknowns(N)
    rows: dict = {}
    zero = alg.zero()
    for col, (g, m) in enumerate(unknowns):
        unit = alg.element({m: 1})
        spec = DerivSpec(*(unit if g == h else zero for h in ("e1", "e2", "e4")))
        for name, res in relation_residuals(alg, spec):
            for mono, v in res.terms.items():
                rows.setdefault((name, mono), {})[col] = v
    system = LinSystem(labels=unknowns)
    for key in sorted(rows, key=lambda k: (k[0], k[1])):
        system.add_row(rows[key])
    return system, unknowns


def _spec_from_vector(alg: Presentation, vec: dict, unknowns: list) -> DerivSpec:
    parts = {"e1": {}, "e2": {}, "e4": {}}
    for col, v in vec.items():
        g, m = unknowns[col]
        parts[g][m] = v
    return DerivSpec(*(alg.element(parts[g]) for g in ("e1", "e2", "e4")))


def _vector_from_spec(spec: DerivSpec, index: dict) -> dict | None:
    vec = {}
    for g, z in (("e1", spec.De1), ("e2", spec.De2), ("e4", spec.De4)):
        for m, v in z.terms.items():
            col = index.get((g, m))
            if col is None:
                return None
            vec[col] = v
    return vec


def solve_derivation_space(alg: Presentation, N: int) -> list:
    """Basis of the derivations whose generator images have degree <= N."""
    if N < 1:
        raise ValueError("degree bound must be at least 1")
    system, unknowns = derivation_system(alg, N)
    return [_spec_from_vector(alg, v, unknowns) for v in kernel(system)]


@dataclass
class HH1Estimate:
    degree: int
    dim_derivations: int
    dim_inner: int
    dim_outer: int
    inner_bound: int
    note: str = ("truncated estimate: derivations with images of degree <= N modulo "
                 "ad_b for basis monomials b of degree <= N + 2; not an exact "
                 "cohomology computation")


def hh1_details(alg: Presentation, N: int) -> HH1Estimate:
    if N < 2:
        raise ValueError("degree bound must be at least 2")
    system, unknowns = derivation_system(alg, N)
    index = {u: i for i, u in enumerate(unknowns)}
    V = kernel(system)
    W = []
    for m in basis_monomials(N + 2):
        if m == (0, 0, 0):
            continue
        vec = _vector_from_spec(DerivSpec.ad(alg.element({m: 1})), index)
        if vec:
            W.append(vec)
    n = len(unknowns)
    rv, rw = len(V), rank(W, n)
    both = rank(V + W, n)
    inter = rv + rw - both
    return HH1Estimate(N, rv, inter, rv - inter, N + 2)


def hh1_bounded(alg: Presentation, N: int) -> int:
    """dim V - dim(V meet W) at truncation degree N (see :class:`HH1Estimate`)."""
    return hh1_details(alg, N).dim_outer
