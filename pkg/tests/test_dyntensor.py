"""Lifted tensors, shifted-leg evaluation, and the Gamma calculus."""

import pytest

from dybforge import linalg
from dybforge.dyntensor import (
    DynTensorError,
    LiftedTensor,
    col_shift_leg,
    dyn_identity,
    embed,
    embed_lifted,
    flip_perm,
    gamma,
    gamma_inv,
    gamma_leg,
    identity_perm,
    is_invariant,
    lift_eval,
    matrix_gamma,
    matrix_gamma_leg,
    perm_matrix,
    sym_product,
    sym_type_eps,
    symmetry_type_check,
    tensor_product,
)
from dybforge.hopf import builtin_uqsl2
from dybforge.scalar import ONE, ZERO, Scalar, parse_scalar


@pytest.fixture(scope="module")
def pres():
    return builtin_uqsl2()


def c(text):
    return parse_scalar(text)


def kk_tensor(pres, coeff=ONE, dvec=None):
    return LiftedTensor.from_words(pres, (("K",), ("Kbar",)), coeff, dvec)


def ef_tensor(pres, coeff=ONE, dvec=None):
    return LiftedTensor.from_words(pres, (("E",), ("F",)), coeff, dvec)


# -- evaluation ----------------------------------------------------------------

def test_lift_eval_of_scalar_unit(pres):
    x = LiftedTensor.one(pres, 2, coeff=c("m1/(q-1)"))
    X = lift_eval(x)
    assert X.entries == linalg.mat_scale(linalg.identity(4), c("m1/(q-1)"))


def test_lift_eval_multiplicative(pres):
    x = ef_tensor(pres, c("m1"))
    y = kk_tensor(pres, c("1/(m1-1)"))
    assert lift_eval(x * y) == lift_eval(x) * lift_eval(y)


def test_lift_eval_respects_permutation(pres):
    x = ef_tensor(pres, c("m1")) + kk_tensor(pres, c("q"))
    P = perm_matrix(pres, flip_perm(2))
    lhs = lift_eval(x.permute(flip_perm(2)))
    rhs = P * lift_eval(x) * P.inv()
    assert lhs == rhs


def test_marker_evaluation_shifts_by_column_weight(pres):
    # coefficient detected on leg 1: entries shift by the weight of that column
    x = LiftedTensor.from_words(pres, ((), ()), c("m1"), dvec=(0, 1))
    X = lift_eval(x)
    # diagonal in (v_i, v_j) with value shift(m1, wt(v_j))
    assert X.entries[0][0] == c("q*m1")   # column (0,0): wt(v_0) = +1
    assert X.entries[1][1] == c("q^-1*m1")
    assert X.entries[2][2] == c("q*m1")
    assert X.entries[3][3] == c("q^-1*m1")


def test_product_transports_markers_past_words(pres):
    # (1 (x) 1 with marker on leg 0) * (E on leg 0) must shift the detected
    # coefficient by the weight of E: evaluation against both orders agrees
    marker = LiftedTensor.from_words(pres, ((),), c("m1"), dvec=(1,))
    word = LiftedTensor.from_words(pres, (("E",),))
    assert lift_eval(marker * word) == lift_eval(marker) * lift_eval(word)
    assert lift_eval(word * marker) == lift_eval(word) * lift_eval(marker)


# -- embeddings -----------------------------------------------------------------

def test_embed_identity_stays_identity(pres):
    I1 = dyn_identity(pres, 1)
    out = embed(I1, 3, (1,), (0, 2))
    assert out.is_identity()


def test_embed_shifts_by_column_state(pres):
    f = c("1/(m1-1)")
    X = lift_eval(LiftedTensor.one(pres, 1, coeff=f))
    out = embed(X, 2, (0,), (1,))
    # block acting on leg 0, shifted by the weight of the leg-1 state
    assert out.entries[0][0] == f.shift((1,))
    assert out.entries[1][1] == f.shift((-1,))
    assert out.entries[2][2] == f.shift((1,))
    assert out.entries[3][3] == f.shift((-1,))


def test_embed_matches_lifted_embedding(pres):
    x = ef_tensor(pres, c("m1/(m1-1)"), dvec=(0, 1))
    for legs, shifts in [((0, 2), (1,)), ((2, 0), ()), ((1, 2), (0,))]:
        lifted = embed_lifted(x, 3, legs, shifts)
        assert lift_eval(lifted) == embed(lift_eval(x), 3, legs, shifts)


def test_embed_shift_additivity(pres):
    f = c("m1^2/(q*m1-1)")
    X = lift_eval(LiftedTensor.one(pres, 1, coeff=f))
    once = embed(embed(X, 2, (0,), (1,)), 3, (0, 1), (2,))
    direct = embed(X, 3, (0,), (1, 2))
    assert once == direct


def test_embed_rejects_bad_legs(pres):
    X = dyn_identity(pres, 1)
    with pytest.raises(DynTensorError):
        embed(X, 2, (0,), (0,))
    with pytest.raises(DynTensorError):
        embed(X, 2, (3,), ())


# -- invariance and symmetry types ------------------------------------------------

def test_identity_is_invariant(pres):
    assert is_invariant(dyn_identity(pres, 2))


def test_weight_changing_unit_is_not_invariant(pres):
    X = lift_eval(LiftedTensor.from_words(pres, (("E",), ())))
    assert not is_invariant(X)


def test_symmetry_check_zero_weight_independent_of_type(pres):
    x = ef_tensor(pres, c("m1"))  # weights (+2, -2): zero total
    for alpha in (identity_perm(2), flip_perm(2)):
        for beta in (identity_perm(2), flip_perm(2)):
            assert symmetry_type_check(x, (alpha, beta))
    bad = LiftedTensor.from_words(pres, (("E",), ()))
    assert not symmetry_type_check(bad, (identity_perm(2), identity_perm(2)))


def test_sym_product_type_algebra(pres):
    x = ef_tensor(pres, c("m1")).with_type(sym_type_eps(2))
    one = LiftedTensor.one(pres, 2)
    assert lift_eval(sym_product(x, one)) == lift_eval(x)
    y = kk_tensor(pres).with_type((flip_perm(2), identity_perm(2)))
    with pytest.raises(DynTensorError):
        sym_product(x, y)  # middle permutations differ


def test_tensor_product_commutation_and_associativity(pres):
    f = LiftedTensor.from_words(pres, (("K",),), c("m1"), sym_type=sym_type_eps(1))
    g = LiftedTensor.from_words(pres, (("Kbar",),), c("1/(m1-1)"), sym_type=sym_type_eps(1))
    h = LiftedTensor.one(pres, 1, coeff=c("q*m1"))
    n = 2
    left = embed_lifted(f, n, (0,), (1,)) * embed_lifted(g, n, (1,))
    right = embed_lifted(g, n, (1,)) * embed_lifted(f, n, (0,), (1,))
    assert lift_eval(left) == lift_eval(right)
    fg_h = tensor_product(tensor_product(f, g), h)
    f_gh = tensor_product(f, tensor_product(g, h))
    assert lift_eval(fg_h) == lift_eval(f_gh)


# -- Gamma ---------------------------------------------------------------------

def test_gamma_fixes_unit(pres):
    one = LiftedTensor.one(pres, 1)
    assert lift_eval(gamma(identity_perm(1), one)).is_identity()


def test_gamma_inverse_round_trip(pres):
    for x in [
        ef_tensor(pres, c("m1/(m1-1)")),
        ef_tensor(pres, c("m1"), dvec=(0, 1)),
        kk_tensor(pres, c("1/(q*m1-1)"), dvec=(1, 0)),
    ]:
        for sigma in (identity_perm(2), flip_perm(2)):
            back = gamma_inv(sigma, gamma(sigma, x))  # involutive sigma
            assert lift_eval(back) == lift_eval(x)


def test_gamma_lifted_matches_matrix_realization(pres):
    for x in [
        ef_tensor(pres, c("m1/(m1-1)")),
        ef_tensor(pres, c("m1^2"), dvec=(1, 1)),
        kk_tensor(pres, c("1/(m1-1)"), dvec=(0, 1)),
        LiftedTensor.from_words(pres, (("K", "E"), ("F",)), c("m1")),
    ]:
        X = lift_eval(x)
        for sigma in (identity_perm(2), flip_perm(2)):
            assert lift_eval(gamma(sigma, x)) == matrix_gamma(sigma, X)
            assert lift_eval(gamma_inv(sigma, x)) == matrix_gamma(sigma, X, inverse=True)
        assert lift_eval(gamma_leg(x, 0)) == matrix_gamma_leg(X, 0)
        assert lift_eval(gamma_leg(x, 1, inverse=True)) == matrix_gamma_leg(X, 1, inverse=True)


def test_gamma_anti_homomorphism(pres):
    # Gamma_all(x y) = Gamma_all(y) Gamma_all(x) for zero-weight x
    x = ef_tensor(pres, c("m1/(m1-1)"))  # zero-weight
    y = LiftedTensor.from_words(pres, (("K", "E"), ("F",)), c("m1"), dvec=(0, 1))
    e = identity_perm(2)
    lhs = lift_eval(gamma(e, x * y))
    rhs = lift_eval(gamma(e, y)) * lift_eval(gamma(e, x))
    assert lhs == rhs


def test_gamma_flip_intertwines_coproduct(pres):
    # Gamma_tau . Delta^n_tau = Delta^n_tau . Gamma on rank-1 inputs
    x = LiftedTensor.from_words(pres, (("E",),), c("m1"))
    tau = flip_perm(2)
    lhs = gamma(tau, x.coproduct_leg(0).permute(tau))
    rhs = gamma(identity_perm(1), x).coproduct_leg(0).permute(tau)
    assert lift_eval(lhs) == lift_eval(rhs)


def test_matrix_gamma_inverse_round_trip(pres):
    x = ef_tensor(pres, c("m1/(q*m1-1)"), dvec=(1, 0))
    X = lift_eval(x)
    for sigma in (identity_perm(2), flip_perm(2)):
        Y = matrix_gamma(sigma, X)
        assert matrix_gamma(sigma, Y, inverse=True) == X


def test_col_shift_leg_is_embedding_shift(pres):
    f = c("m1/(m1-1)")
    X = lift_eval(LiftedTensor.one(pres, 2, coeff=f))
    shifted = col_shift_leg(X, 1, +1)
    assert shifted == embed(lift_eval(LiftedTensor.one(pres, 1, coeff=f)), 2, (0,), (1,))
