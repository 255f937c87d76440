import random

import pytest

from qso5.bquot import Params, basis_monomials, make_b, make_r
from qso5.coeffq import ONE, RatQ
from qso5.deriv import (
    DerivSpec,
    b_derivation_check,
    extend_to_r,
    hh1_bounded,
    hh1_details,
    innerize,
    innerize_full,
    solve_derivation_space,
)
from qso5.errors import BetaZero, NotADerivation, NotInner
from qso5.linalg import LinSystem, kernel, rank, residual, row_reduce

q = RatQ.q()


# --- linear algebra -------------------------------------------------------------

def test_kernel_identity():
    sys = LinSystem(labels=range(3))
    for i in range(3):
        sys.add_row({i: ONE})
    assert kernel(sys) == []


def test_kernel_single_row():
    sys = LinSystem(labels=range(2))
    sys.add_row({0: ONE, 1: q})
    assert kernel(sys) == [{1: ONE, 0: -q}]


def test_kernel_random_residual():
    rng = random.Random(31)
    sys = LinSystem(labels=range(18))
    for _ in range(12):
        row = {}
        for c in rng.sample(range(18), 6):
            row[c] = RatQ.from_laurent({rng.randint(-2, 2): rng.randint(-4, 4)}) + rng.randint(0, 2)
        sys.add_row(row)
    basis = kernel(sys)
    r = rank(sys.rows, 18)
    assert len(basis) == 18 - r
    for vec in basis:
        assert all(v.is_zero() for v in residual(sys, vec))
    assert rank(basis, 18) == len(basis)


def test_row_reduce_pivot_rule():
    # column 0 holds q^2 and 1: the pivot row is the one with lower numerator degree
    rows = [{0: q**2, 1: ONE}, {0: ONE, 2: ONE}]
    piv = row_reduce(rows, 3)
    assert set(piv) == {0, 1}
    assert piv[0][0] == 1


# --- checking derivations -------------------------------------------------------

def test_check_examples(B11):
    e1 = B11.gen("e1")
    assert b_derivation_check(B11, DerivSpec.ad(e1))
    assert b_derivation_check(B11, DerivSpec.zero(B11))
    assert not b_derivation_check(B11, DerivSpec(e1, B11.zero(), B11.zero()))


def test_ad_images_match_commutators(B11):
    e1, e2, e4 = B11.gens()
    D = DerivSpec.ad(e1)
    assert D.De2 == e1 * e2 - e2 * e1
    assert D.De4 == e1 * e4 - e4 * e1
    assert D.De1.is_zero()


def test_de3_is_derived(B11):
    from qso5.bquot import b_generators
    b = B11.gen("e2") * B11.gen("e4")
    D = DerivSpec.ad(b)
    e3 = b_generators(B11)[2]
    assert D.De3() == B11.commutator(b, e3)


# --- extension to R -------------------------------------------------------------

def test_extend_to_r(R11, B11):
    b = B11.gen("e2") * B11.gen("e4")
    ext = extend_to_r(R11, DerivSpec.ad(b))
    br = R11.element(b.terms)
    for g in ("e1", "e2", "e4"):
        assert ext.images[g] == R11.commutator(br, R11.gen(g))
    e4, e4i = R11.gen("e4"), R11.gen("e4", -1)
    assert ext.images["e4^-1"] == R11.commutator(br, e4i)
    # Leibniz on e4 e4^-1 = 1
    assert (ext.images["e4"] * e4i + e4 * ext.images["e4^-1"]).is_zero()
    assert ext.restrict(B11) == DerivSpec.ad(b)


def test_extend_zero(R11, B11):
    ext = extend_to_r(R11, DerivSpec.zero(B11))
    assert all(v.is_zero() for v in ext.images.values())


def test_extend_requires_beta():
    B = make_b(Params(1, 0))
    with pytest.raises(BetaZero):
        make_r(Params(1, 0))
    assert B.params.beta == 0


def test_extend_rejects_non_derivation(R11, B11):
    with pytest.raises(NotADerivation):
        extend_to_r(R11, DerivSpec(B11.gen("e1"), B11.zero(), B11.zero()))


# --- innerization ---------------------------------------------------------------

def test_innerize_examples(B11):
    e1, e2, e4 = B11.gens()
    assert innerize(B11, DerivSpec.ad(e1)) == e1
    assert innerize(B11, DerivSpec.zero(B11)).is_zero()
    b = e1 * e1 * e4 + e2.scale(3)
    assert innerize(B11, DerivSpec.ad(b)) == b


def test_innerize_normalizes_constant(B11):
    e1 = B11.gen("e1")
    assert innerize(B11, DerivSpec.ad(e1 + 7)) == e1


@pytest.mark.parametrize("alpha,beta", [(q, 1), (q**2, -1)])
def test_innerize_degree_three(alpha, beta):
    B = make_b(Params(alpha, beta))
    for m in basis_monomials(3)[1:]:
        b = B.element({m: 1})
        inn = innerize_full(B, DerivSpec.ad(b))
        assert inn.x == b and inn.lam == 0


def test_innerize_requires_alpha_beta():
    B = make_b(Params(0, 1))
    with pytest.raises(ValueError):
        innerize(B, DerivSpec.zero(B))


def test_innerize_rejects_non_derivation(B11):
    with pytest.raises(NotADerivation):
        innerize(B11, DerivSpec(B11.gen("e1"), B11.zero(), B11.zero()))


def test_not_inner_is_reported(B11, monkeypatch):
    # force the GWA side to hand back a nonzero lambda
    import qso5.gwa as gwa_mod
    from qso5.gwa import GwaDecomp
    monkeypatch.setattr(gwa_mod, "gwa_decompose",
                        lambda A, *imgs: GwaDecomp(A.zero(), RatQ.from_int(2)))
    with pytest.raises(NotInner) as exc:
        innerize(B11, DerivSpec.ad(B11.gen("e1")))
    assert exc.value.lam == 2


def test_negative_part_is_reported(B11, monkeypatch):
    import qso5.gwa as gwa_mod
    from qso5.gwa import GwaDecomp
    monkeypatch.setattr(gwa_mod, "gwa_decompose",
                        lambda A, *imgs: GwaDecomp(A.h(), RatQ()))
    with pytest.raises(NotInner) as exc:
        innerize(B11, DerivSpec.ad(B11.gen("e1")))
    assert exc.value.negative_part is not None


# --- bounded derivation spaces --------------------------------------------------

def test_space_contains_ad_generators(B11):
    space = solve_derivation_space(B11, 3)
    from qso5.deriv import _unknowns, _vector_from_spec
    from qso5.linalg import rank as rk
    unknowns = _unknowns(3)
    index = {u: i for i, u in enumerate(unknowns)}
    vecs = [_vector_from_spec(D, index) for D in space]
    n = len(unknowns)
    for g in B11.gens():
        v = _vector_from_spec(DerivSpec.ad(g), index)
        assert v is not None
        assert rk(vecs + [v], n) == len(vecs)
    for D in space:
        assert b_derivation_check(B11, D)


def test_space_rejects_degree_zero(B11):
    with pytest.raises(ValueError):
        solve_derivation_space(B11, 0)


def test_space_elements_are_inner(B11):
    for D in solve_derivation_space(B11, 2):
        x = innerize(B11, D)
        assert DerivSpec.ad(x) == D


@pytest.mark.parametrize("alpha,beta,expected", [(1, 1, 0), (0, 1, 1), (1, 0, 1)])
def test_hh1_degree_three(alpha, beta, expected):
    assert hh1_bounded(make_b(Params(alpha, beta)), 3) == expected


def test_hh1_third_sample():
    assert hh1_bounded(make_b(Params(q**2, -1)), 2) == 0


def test_hh1_details_and_bounds(B11):
    est = hh1_details(B11, 3)
    assert est.dim_outer == est.dim_derivations - est.dim_inner
    assert est.inner_bound == 5
    assert "not an exact" in est.note
    with pytest.raises(ValueError):
        hh1_details(B11, 1)
