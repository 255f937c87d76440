"""The positive part U_q^+(so_5) and its deleting-derivation data.

Generators E1 < E2 < E3 < E4 with the six PBW straightening rules.  E2 and E3
are the root vectors built from E1, E4 by q-commutators.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .coeffq import ONE, RatQ, qpow
from .errors import NotQCommuting
from .pbw import Elem, Presentation, derive_inverse_rules

q = RatQ.q()

GENERATORS = ("E1", "E2", "E3", "E4")


@dataclass(frozen=True)
class So5Constants:
    p1: RatQ
    p2: RatQ
    p3: RatQ
    p4: RatQ
    k1: RatQ
    k2: RatQ

    @staticmethod
    def d(i: int) -> RatQ:
        """Coefficient of e1^(i-1) e2^2 in e3 e1^i."""
        return (q - q**3) * (1 - qpow(-4 * i)) / ((1 - qpow(-4)) * (1 + q**2))

    @staticmethod
    def f(i: int) -> RatQ:
        """Minus the coefficient of e1^(i-1) e2 in e4 e1^i."""
        return qpow(2 * i) * (1 - qpow(-4 * i)) / (1 - qpow(-4))


def _make_constants() -> So5Constants:
    p1 = q**2 / (1 - q**2)
    p2 = q**3 / (q**2 - 1) ** 2
    p3 = -(q**3 + q) / (q**2 - 1)
    p4 = -q**5 / (1 + q**2) ** 2
    return So5Constants(p1, p2, p3, p4, p3.inverse(), p4.inverse())


CONSTANTS = _make_constants()


def constant_forms() -> dict:
    """Each constant in both of its displayed shapes, for cross-checking."""
    return {
        "p1": (1 / (qpow(-2) - 1), q**2 / (1 - q**2)),
        "p2": ((qpow(-1) + qpow(-3)) / ((1 + qpow(-2)) * (1 - qpow(-2)) ** 2),
               q**3 / (q**2 - 1) ** 2),
        "p3": (-(q + qpow(-1)) / (1 - qpow(-2)), -(q**3 + q) / (q**2 - 1)),
        "p4": ((q - q**3) / ((1 - qpow(-4)) * (1 + q**2)), -q**5 / (1 + q**2) ** 2),
        "k1": (CONSTANTS.p3.inverse(), (1 - q**2) / (q**3 + q)),
        "k2": (CONSTANTS.p4.inverse(), -qpow(-5) * (1 + q**2) ** 2),
    }


def _m(e1=0, e2=0, e3=0, e4=0):
    return (e1, e2, e3, e4)


SERRE_COEFF = (q - q**3) / (1 + q**2)


@lru_cache(maxsize=None)
def make_so5() -> Presentation:
    rules = {
        (1, 0): {_m(1, 1): qpow(-2)},
        (3, 0): {_m(1, 0, 0, 1): q**2, _m(0, 1): -q**2},
        (2, 0): {_m(1, 0, 1): ONE, _m(0, 2): SERRE_COEFF},
        (3, 1): {_m(0, 1, 0, 1): ONE, _m(0, 0, 1): -(q + qpow(-1))},
        (2, 1): {_m(0, 1, 1): qpow(-2)},
        (3, 2): {_m(0, 0, 1, 1): qpow(-2)},
    }
    return Presentation(GENERATORS, rules, name="so5")


@lru_cache(maxsize=None)
def localized_e4() -> Presentation:
    return derive_inverse_rules(make_so5(), "E4", name="so5[E4^-1]")


@lru_cache(maxsize=None)
def localized_e4_e3() -> Presentation:
    return derive_inverse_rules(localized_e4(), "E3", name="so5[E4^-1,E3^-1]")


def serre_check(alg: Presentation | None = None) -> list:
    """Evaluate the defining identities of the PBW presentation.

    Returns ``(name, residual)`` pairs; every residual should be zero.
    """
    alg = alg or make_so5()
    E1, E2, E3, E4 = alg.gens()
    c2 = q**2 + qpow(-2)
    c3 = q**2 + 1 + qpow(-2)
    E2p = E1 * E4 - E4 * E1 * qpow(-2)
    E3p = (E2p * E4 - E4 * E2p) * (q + qpow(-1)).inverse()
    return [
        ("E2 = E1 E4 - q^-2 E4 E1", E2p - E2),
        ("E3 = (E2 E4 - E4 E2)/(q + q^-1)", E3p - E3),
        ("serre E1^2 E4", E1 * E1 * E4 - E1 * E4 * E1 * c2 + E4 * E1 * E1),
        ("serre E4^3 E1", E4 * E4 * E4 * E1 - E4 * E4 * E1 * E4 * c3
         + E4 * E1 * E4 * E4 * c3 - E1 * E4 * E4 * E4),
    ]


def chi(index: int, alg: Presentation | None = None) -> Elem:
    """The central elements chi_1 = E1E3 + p4 E2^2 and chi_2 = E2E4 + p3 E3."""
    alg = alg or make_so5()
    E1, E2, E3, E4 = alg.gens()
    if index == 1:
        return E1 * E3 + E2 * E2 * CONSTANTS.p4
    if index == 2:
        return E2 * E4 + E3 * CONSTANTS.p3
    raise ValueError("chi index must be 1 or 2")


def centrality_check(z: Elem) -> bool:
    """True iff z commutes with every generator of its algebra."""
    alg = z.alg
    return all(alg.commutator(z, g).is_zero() for g in alg.gens())


@dataclass
class DdaElements:
    E14: Elem
    E24: Elem
    E13: Elem
    T: tuple
    hosts: dict = field(default_factory=dict)

    @property
    def T1(self):
        return self.T[0]

    @property
    def T2(self):
        return self.T[1]

    @property
    def T3(self):
        return self.T[2]

    @property
    def T4(self):
        return self.T[3]


def _e14_e24(alg: Presentation):
    c = CONSTANTS
    E1, E2, E3, E4 = alg.gens()
    E4i = alg.gen("E4", -1)
    E14 = E1 + E2 * E4i * c.p1 + E3 * alg.gen("E4", -2) * c.p2
    E24 = E2 + E3 * E4i * c.p3
    return E14, E24


@lru_cache(maxsize=None)
def dda_elements() -> DdaElements:
    """First and second deleting-derivation steps and the variables T1..T4."""
    c = CONSTANTS
    u4 = localized_e4()
    E14, E24 = _e14_e24(u4)
    u43 = localized_e4_e3()
    E14b, E24b = _e14_e24(u43)
    E13 = E14b + E24b * E24b * u43.gen("E3", -1) * c.p4
    T = (E13, E24b, u43.gen("E3"), u43.gen("E4"))
    hosts = {"E14": u4.name, "E24": u4.name, "E13": u43.name, "T": u43.name}
    return DdaElements(E14, E24, E13, T, hosts)


def dda_identities() -> list:
    """``(name, lhs, rhs)`` triples for the identities the DDA elements satisfy."""
    dd = dda_elements()
    c = CONSTANTS
    u4 = localized_e4()
    u43 = localized_e4_e3()
    chi1_u4, chi2_u4 = chi(1, u4), chi(2, u4)
    chi1_u43 = chi(1, u43)
    E14, E24 = dd.E14, dd.E24
    return [
        ("chi1 = E14 E3 + p4 E24^2", E14 * u4.gen("E3") + E24 * E24 * c.p4, chi1_u4),
        ("chi2 = E24 E4", E24 * u4.gen("E4"), chi2_u4),
        ("chi1 = T1 T3", dd.T1 * dd.T3, chi1_u43),
        ("chi2 = T2 T4", dd.T2 * dd.T4, chi(2, u43)),
    ]


def t_commutation() -> list:
    """Matrix lam with T_j T_i = lam[i][j] T_i T_j (0-based indices)."""
    T = dda_elements().T
    lam = [[None] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            lhs = T[j] * T[i]
            rhs = T[i] * T[j]
            c = lhs.scalar_multiple_of(rhs)
            if c is None or c.is_zero():
                raise NotQCommuting(f"T{j + 1} T{i + 1} is not a scalar multiple of T{i + 1} T{j + 1}")
            lam[i][j] = c
    return lam


def lemma_d_f(i: int, alg: Presentation | None = None) -> list:
    """Residuals of e3 e1^i = e1^i e3 + d[i] e1^(i-1) e2^2 and
    e4 e1^i = q^(2i) e1^i e4 - f[i] e1^(i-1) e2.

    ``alg`` may be any presentation with generators named like U's
    (upper case) or B's (lower case, with e3 expressed through e2, e4).
    """
    if i < 0:
        raise ValueError("i must be nonnegative")
    c = CONSTANTS
    alg = alg or make_so5()
    if "E1" in alg.names:
        e1, e2, e3, e4 = alg.gens()
    else:
        from .bquot import b_generators
        e1, e2, e3, e4 = b_generators(alg)
    e1i = e1**i
    e1im = e1 ** (i - 1) if i >= 1 else alg.zero()
    first = e3 * e1i - e1i * e3 - e1im * e2 * e2 * c.d(i)
    second = e4 * e1i - e1i * e4 * qpow(2 * i) + e1im * e2 * c.f(i)
    return [(f"e3 e1^{i}", first), (f"e4 e1^{i}", second)]
