"""Self-contained verification of every identity the package implements.

Each check yields a :class:`Check` carrying the identity name, a short
anchor describing where the identity comes from, pass/fail, and the
nonzero residual when it fails.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .bquot import (
    Params,
    basis_monomials,
    bounded_center,
    f_relations,
    gwa_bridge,
    intro_presentation_check,
    is_basis_supported,
    make_b,
    make_r,
    quotient_identities,
)
from .coeffq import ONE, RatQ, qpow
from .deriv import DerivSpec, hh1_details, innerize_full
from .errors import AlgebraError
from .gwa import GwaElem, gwa_decompose, so5_gwa
from .pbw import rewrite_word
from .so5 import (
    CONSTANTS,
    centrality_check,
    chi,
    constant_forms,
    dda_identities,
    lemma_d_f,
    localized_e4,
    make_so5,
    serre_check,
    t_commutation,
)

q = RatQ.q()

DEFAULT_PARAMS = ((ONE, ONE), (q, ONE), (RatQ(), ONE), (ONE, RatQ()))


@dataclass
class Check:
    identity: str
    anchor: str
    passed: bool
    residual: object = None
    detail: str = ""

    def to_obj(self) -> dict:
        from .exprio import element_to_obj, ratq_to_json
        obj = {"identity": self.identity, "anchor": self.anchor,
               "status": "pass" if self.passed else "fail"}
        if not self.passed and self.residual is not None:
            if isinstance(self.residual, RatQ):
                obj["residual"] = {"terms": [{"exp": [], "coeff": ratq_to_json(self.residual)}]}
            else:
                obj["residual"] = element_to_obj(self.residual)
        if self.detail:
            obj["detail"] = self.detail
        return obj


@dataclass
class VerifyReport:
    checks: list = field(default_factory=list)

    def add(self, identity, anchor, residual=None, passed=None, detail=""):
        if passed is None:
            passed = not residual
        self.checks.append(Check(identity, anchor, bool(passed),
                                 None if passed else residual, detail))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_obj(self) -> list:
        return [c.to_obj() for c in self.checks]


def _ptag(p: Params) -> str:
    return f"(alpha={p.alpha}, beta={p.beta})"


# --- U_q^+(so5) ----------------------------------------------------------------

def check_serre(rep: VerifyReport) -> None:
    for name, res in serre_check():
        rep.add(f"serre: {name}", "quantum Serre relations and root vectors", res)


def check_centrality(rep: VerifyReport) -> None:
    for alg in (make_so5(), localized_e4()):
        for k in (1, 2):
            z = chi(k, alg)
            for g, gen in zip(alg.names, alg.gens()):
                rep.add(f"central: [chi{k}, {g}] in {alg.name}", "Z = K[chi1, chi2]",
                        alg.commutator(z, gen))


def check_constants(rep: VerifyReport, imax: int = 20) -> None:
    for name, (a, b) in constant_forms().items():
        rep.add(f"constants: two forms of {name}", "constants display", a - b)
    for i in range(imax + 1):
        d = CONSTANTS.d(i) * CONSTANTS.k2 - (1 - qpow(-4 * i))
        rep.add(f"constants: d[{i}] k2 = 1 - q^-{4 * i}", "lemma d[i], f[i]", d)
    rep.add("constants: d[0] = f[0] = 0", "lemma d[i], f[i]",
            passed=CONSTANTS.d(0).is_zero() and CONSTANTS.f(0).is_zero())
    rep.add("constants: f[1] = q^2", "lemma d[i], f[i]", CONSTANTS.f(1) - q**2)


def check_dda(rep: VerifyReport) -> None:
    for name, lhs, rhs in dda_identities():
        rep.add(f"dda: {name}", "deleting derivation algorithm", lhs - rhs)
    try:
        lam = t_commutation()
    except AlgebraError as exc:
        rep.add("dda: T_i pairwise q-commute", "Cauchon variables", passed=False, detail=str(exc))
        return
    rep.add("dda: T_i pairwise q-commute", "Cauchon variables", passed=True)
    for i in range(4):
        for j in range(4):
            rep.add(f"dda: lambda[{i + 1}{j + 1}] lambda[{j + 1}{i + 1}] = 1", "Cauchon variables",
                    lam[i][j] * lam[j][i] - 1)
    rep.add("dda: E_{3,4} read as E3", "display lists E_{3,4}=E_4; chi1 = T1 T3 forces E3",
            passed=True, detail="the printed E_{3,4}=E_4 is treated as a typo for E3")


def check_lemma_u(rep: VerifyReport, imax: int = 10) -> None:
    for i in range(imax + 1):
        for name, res in lemma_d_f(i):
            rep.add(f"lemma in U: {name}", "lemma d[i], f[i]", res)


# --- B_{alpha,beta} and R ------------------------------------------------------

def check_quotient(rep: VerifyReport, p: Params, imax: int = 6) -> None:
    tag = _ptag(p)
    for name, res in quotient_identities(p):
        rep.add(f"quotient {tag}: {name}", "relations of B_{alpha,beta}", res)
    rep.add(f"quotient {tag}: introduction presentation of e2^2", "introduction display",
            passed=intro_presentation_check(p))
    B = make_b(p)
    for i in range(imax + 1):
        for name, res in lemma_d_f(i, B):
            rep.add(f"quotient {tag}: lemma {name}", "lemma d[i], f[i]", res)


def check_basis(rep: VerifyReport, p: Params, max_degree: int = 3) -> None:
    B = make_b(p)
    tag = _ptag(p)
    monos = basis_monomials(max_degree)
    bad_support = []
    disagree = []
    for m1 in monos:
        for m2 in monos:
            word = [(g, e) for g, e in enumerate(m1) if e] + [(g, e) for g, e in enumerate(m2) if e]
            main = B.multiply(B.element({m1: 1}), B.element({m2: 1}))
            if not is_basis_supported(main):
                bad_support.append((m1, m2))
            for strategy in ("leftmost", "rightmost"):
                if rewrite_word(B, word, strategy=strategy) != main:
                    disagree.append((m1, m2, strategy))
    rep.add(f"basis {tag}: products of E-monomials of degree <= {max_degree} stay in E",
            "basis E of B_{alpha,beta}", passed=not bad_support, detail=str(bad_support[:3]))
    rep.add(f"basis {tag}: reduction orders agree on degree <= {max_degree} products",
            "basis E of B_{alpha,beta}", passed=not disagree, detail=str(disagree[:3]))


def check_center(rep: VerifyReport, p: Params, max_degree: int = 4) -> None:
    basis = bounded_center(make_b(p), max_degree)
    rep.add(f"center {_ptag(p)}: elements of degree <= {max_degree} commuting with e1, e2, e4 are scalars",
            "the center of B_{alpha,beta} is K",
            passed=len(basis) == 1 and basis[0].support() == [(0, 0, 0)])


def random_ratq(rng: random.Random) -> RatQ:
    num = {rng.randint(-2, 2): rng.randint(-3, 3) for _ in range(rng.randint(1, 2))}
    c = RatQ.from_laurent(num)
    if c.is_zero():
        c = ONE
    if rng.random() < 0.3:
        c = c / (q**rng.randint(1, 2) + rng.choice((-1, 1, 2)))
    return c


def random_r_element(R, rng: random.Random, max_degree: int = 5, nterms: int = 4):
    monos = basis_monomials(max_degree, localized_range=max_degree)
    picks = rng.sample(monos, min(nterms, len(monos)))
    return R.element({m: random_ratq(rng) for m in picks})


def random_b_element(B, rng: random.Random, max_degree: int = 4, nterms: int = 3):
    picks = rng.sample(basis_monomials(max_degree), nterms)
    return B.element({m: random_ratq(rng) for m in picks})


def check_gwa_bridge(rep: VerifyReport, p: Params, n_round: int = 200, n_pairs: int = 50,
                     seed: int = 7) -> None:
    tag = _ptag(p)
    R = make_r(p)
    for name, res in f_relations(R):
        rep.add(f"R {tag}: {name}", "presentation of R on f1, f2, e3", res)
    br = gwa_bridge(p)
    rng = random.Random(seed)
    bad = 0
    for _ in range(n_round):
        z = random_r_element(R, rng)
        if br.from_gwa(br.to_gwa(z)) != z:
            bad += 1
    rep.add(f"R {tag}: from_gwa(to_gwa(z)) = z on {n_round} random z", "R is isomorphic to the GWA",
            passed=bad == 0, detail=f"{bad} mismatches" if bad else "")
    bad = 0
    for _ in range(n_pairs):
        u = random_r_element(R, rng, max_degree=3, nterms=2)
        v = random_r_element(R, rng, max_degree=3, nterms=2)
        if br.to_gwa(u * v) != br.to_gwa(u) * br.to_gwa(v):
            bad += 1
    rep.add(f"R {tag}: to_gwa intertwines multiplication on {n_pairs} pairs",
            "R is isomorphic to the GWA", passed=bad == 0, detail=f"{bad} mismatches" if bad else "")


def random_gwa_element(A, rng: random.Random, max_degree: int = 5, nterms: int = 3) -> GwaElem:
    keys = [(i, j) for i in range(-max_degree, max_degree + 1)
            for j in range(-max_degree, max_degree + 1)
            if abs(i) + abs(j) <= max_degree and (i, j) != (0, 0)]
    return A.element({k: random_ratq(rng) for k in rng.sample(keys, nterms)})


def check_decomposition(rep: VerifyReport, n: int = 500, seed: int = 11, alpha=ONE) -> None:
    A = so5_gwa(alpha)
    rng = random.Random(seed)
    bad = []
    for case in range(n):
        w = random_gwa_element(A, rng)
        lam = random_ratq(rng) if rng.random() < 0.7 else RatQ()
        dh, dx, dy = A.ad(w)
        _, lx, ly = A.delta(lam)
        try:
            dec = gwa_decompose(A, dh, dx + lx, dy + ly)
        except AlgebraError as exc:
            bad.append((case, str(exc)))
            continue
        if dec.w != w or dec.lam != lam:
            bad.append((case, "mismatch"))
    rep.add(f"gwa: ad_w + delta_lam decomposes back to (w, lam) on {n} random cases",
            "D = ad_x + delta_lambda", passed=not bad, detail=str(bad[:3]) if bad else "")
    D = A.delta(1)
    rep.add("gwa: delta_lam(e4) = 0 with e4 = beta h^-1", "delta_lambda(e4) = 0",
            passed=A.apply_derivation({"h": D[0], "x": D[1], "y": D[2]}, [("h", -1)]).is_zero())


def check_innerization(rep: VerifyReport, p: Params, max_degree: int = 4) -> None:
    tag = _ptag(p)
    B = make_b(p)
    bad = []
    for m in basis_monomials(max_degree):
        if m == (0, 0, 0):
            continue
        b = B.element({m: 1})
        try:
            inn = innerize_full(B, DerivSpec.ad(b))
        except AlgebraError as exc:
            bad.append((m, str(exc)))
            continue
        if inn.x != b or inn.lam:
            bad.append((m, str(inn.x)))
    rep.add(f"inner {tag}: innerize(ad_b) = b, lambda = 0 for E-monomials b of degree <= {max_degree}",
            "every derivation of B_{alpha,beta} is inner", passed=not bad,
            detail=str(bad[:3]) if bad else "")


def check_hh1(rep: VerifyReport, p: Params, N: int = 3) -> None:
    tag = _ptag(p)
    expected = 0 if (p.alpha and p.beta) else 1
    est = hh1_details(make_b(p), N)
    rep.add(f"hh1 {tag}: truncated dim HH^1 at N={N} is {expected}",
            "HH^1 = 0 if alpha beta != 0, dim 1 otherwise", passed=est.dim_outer == expected,
            detail=f"dim Der_N = {est.dim_derivations}, inner = {est.dim_inner}, "
                   f"outer = {est.dim_outer}; {est.note}")


def run_verify(params_list=None, degree: int = 3, full: bool = True) -> VerifyReport:
    """Run the whole suite.  ``full=False`` trims the randomized sample sizes."""
    params_list = [Params(a, b) for a, b in (params_list or DEFAULT_PARAMS)]
    rep = VerifyReport()
    check_serre(rep)
    check_centrality(rep)
    check_constants(rep)
    check_dda(rep)
    check_lemma_u(rep)
    check_decomposition(rep, n=500 if full else 50)
    for p in params_list:
        check_quotient(rep, p)
        check_center(rep, p)
        if p.alpha == 1 and p.beta == 1:
            check_basis(rep, p)
        if p.beta:
            check_gwa_bridge(rep, p, n_round=200 if full else 20, n_pairs=50 if full else 10)
        if p.alpha and p.beta:
            check_innerization(rep, p)
        check_hh1(rep, p, degree)
    rep.checks.sort(key=lambda c: c.identity)
    return rep
