"""Generator tables, structure maps, and the built-in presentation."""

import pytest

from dybforge import linalg
from dybforge.hopf import (
    antipode,
    antipode_inv,
    builtin_rmatrix,
    builtin_uqsl2,
    coproduct_iter,
    counit,
    element_from_word,
    evaluate,
    format_presentation,
    parse_presentation,
    unit,
    _eval_tensor,
)
from dybforge.scalar import ONE, ZERO, Scalar


@pytest.fixture(scope="module")
def pres():
    return builtin_uqsl2()


def test_builtin_passes_invariant_suite(pres):
    assert pres.validate() == []


def test_counit_values(pres):
    assert counit(element_from_word(pres, ("E",))) == ZERO
    assert counit(element_from_word(pres, ("K",))) == ONE
    assert counit(unit(pres)) == ONE
    assert antipode(unit(pres)) == unit(pres)


def test_rho_k_is_diagonal_in_weights(pres):
    # q2 = q^2 carries the usual deformation parameter; rho(K) = diag(q2, 1/q2)
    rho = evaluate(element_from_word(pres, ("K",)))
    assert rho == linalg.mat([[Scalar.q(2), ZERO], [ZERO, Scalar.q(-2)]])


def test_evaluate_is_multiplicative(pres):
    E = element_from_word(pres, ("E",))
    F = element_from_word(pres, ("F",))
    assert evaluate(E * E) == linalg.zeros(2)  # nilpotent on the module
    assert evaluate(E * F) == linalg.mat_mul(evaluate(E), evaluate(F))
    assert evaluate(unit(pres)) == linalg.identity(2)


def test_antipode_is_anti_homomorphism(pres):
    E = element_from_word(pres, ("E",))
    K = element_from_word(pres, ("K",))
    lhs = antipode(K * E)
    rhs = antipode(E) * antipode(K)
    assert evaluate(lhs) == evaluate(rhs)
    assert lhs == rhs  # word-level equality holds too: tables compose formally


def test_antipode_of_generator_matches_table(pres):
    E = element_from_word(pres, ("E",))
    table_img = evaluate(element_from_word(pres, ("Kbar", "E"), -ONE))
    assert evaluate(antipode(E)) == table_img
    assert evaluate(antipode_inv(antipode(E))) == evaluate(E)


def test_coproduct_of_grouplike(pres):
    K = element_from_word(pres, ("K",))
    terms = coproduct_iter(K, 3, (0, 1, 2))
    assert terms == [((("K",), ("K",), ("K",)), ONE)]
    assert coproduct_iter(K, 1, (0,)) == [((("K",),), ONE)]


def test_coproduct_of_e_matches_table(pres):
    E = element_from_word(pres, ("E",))
    terms = sorted(coproduct_iter(E, 2, (0, 1)))
    assert terms == sorted([((("E",), ()), ONE), ((("K",), ("E",)), ONE)])


def test_coproduct_bracketing_independence(pres):
    # coassociativity: both bracketings agree at evaluation level
    for name in ("E", "F", "K"):
        x = element_from_word(pres, (name,))
        left = _eval_tensor(pres, coproduct_iter(x, 3, (0, 1, 2), _bracket="left"), 3)
        right = _eval_tensor(pres, coproduct_iter(x, 3, (0, 1, 2), _bracket="right"), 3)
        assert left == right


def test_coproduct_slot_permutation(pres):
    E = element_from_word(pres, ("E",))
    swapped = sorted(coproduct_iter(E, 2, (1, 0)))
    assert swapped == sorted([(((), ("E",)), ONE), ((("E",), ("K",)), ONE)])


def test_antipode_intertwiner_represents_gamma(pres):
    A = pres.antipode_intertwiner()
    Ainv = linalg.mat_inv(A)
    for name in pres.generators:
        x = element_from_word(pres, (name,))
        via = linalg.mat_mul(A, linalg.mat_mul(linalg.mat_transpose(evaluate(x)), Ainv))
        assert via == evaluate(antipode(x))


def test_rmatrix_intertwines_coproduct(pres):
    # R * Delta(x) = Delta_op(x) * R on V x V for every generator
    R = builtin_rmatrix(pres)
    for name in pres.generators:
        x = element_from_word(pres, (name,))
        delta = _eval_tensor(pres, coproduct_iter(x, 2, (0, 1)), 2)
        delta_op = _eval_tensor(pres, coproduct_iter(x, 2, (1, 0)), 2)
        assert linalg.mat_mul(R, delta) == linalg.mat_mul(delta_op, R)


def test_rmatrix_satisfies_constant_ybe(pres):
    R = builtin_rmatrix(pres)
    I2 = linalg.identity(2)
    R12 = linalg.kron(R, I2)
    R23 = linalg.kron(I2, R)
    # R13 = (P x 1)(1 x R)(P x 1) with P the flip on the first two legs
    P = linalg.mat(
        [
            [ONE, ZERO, ZERO, ZERO],
            [ZERO, ZERO, ONE, ZERO],
            [ZERO, ONE, ZERO, ZERO],
            [ZERO, ZERO, ZERO, ONE],
        ]
    )
    P12 = linalg.kron(P, I2)
    R13 = linalg.mat_mul(P12, linalg.mat_mul(R23, P12))
    lhs = linalg.mat_mul(R12, linalg.mat_mul(R13, R23))
    rhs = linalg.mat_mul(R23, linalg.mat_mul(R13, R12))
    assert lhs == rhs


def test_presentation_round_trip(pres):
    reparsed = parse_presentation(format_presentation(pres))
    assert reparsed.validate() == []
    assert reparsed.dim == pres.dim
    for name, g in pres.generators.items():
        g2 = reparsed.generators[name]
        assert g2.rho == g.rho
        assert g2.weight == g.weight
        assert evaluate(antipode(element_from_word(reparsed, (name,)))) == evaluate(
            antipode(element_from_word(pres, (name,)))
        )
