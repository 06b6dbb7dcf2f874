import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from phaselab.phase import (
    BlockOperator,
    PhaseVector,
    apply_J,
    complex_scalar_product,
    complexify,
    from_complex_operator,
    is_s_commuting,
    quadratic_form_eval,
    realify,
    s_commutation_residual,
    symplectic_form,
    symplectic_matrix,
    to_complex_operator,
)
from phaselab.generators import (
    random_phase_point,
    random_s_commuting_symmetric,
    random_symmetric_operator,
)


def test_apply_J_matches_matrix_block_form():
    # J = (0 1; -1 0): (q=1, p=0) -> (q=0, p=-1)
    w = PhaseVector([1.0], [0.0])
    out = apply_J(w)
    assert_allclose(out.q, [0.0])
    assert_allclose(out.p, [-1.0])


def test_apply_J_twice_negates():
    rng = np.random.default_rng(1)
    for _ in range(10):
        w = random_phase_point(rng, 5)
        ww = apply_J(apply_J(w))
        assert_allclose(ww.vector, -w.vector, atol=0)


def test_apply_J_is_multiplication_by_minus_i():
    rng = np.random.default_rng(2)
    for _ in range(10):
        w = random_phase_point(rng, 4)
        assert_allclose(complexify(apply_J(w)), -1j * complexify(w), atol=0)


def test_symplectic_matrix_properties():
    J = symplectic_matrix(3)
    assert_allclose(J @ J, -np.eye(6), atol=0)
    assert_allclose(J.T, -J, atol=0)
    w = PhaseVector([1.0, 2.0, 3.0], [4.0, 5.0, 6.0])
    assert_allclose(J @ w.vector, apply_J(w).vector, atol=0)


def test_symplectic_form_unit_vectors():
    assert symplectic_form(PhaseVector([1.0], [0.0]), PhaseVector([0.0], [1.0])) == 1.0


def test_symplectic_form_skew():
    rng = np.random.default_rng(3)
    for _ in range(10):
        w = random_phase_point(rng, 4)
        assert symplectic_form(w, w) == 0.0


def test_symplectic_form_two_formulas_agree():
    rng = np.random.default_rng(4)
    J = symplectic_matrix(4)
    for _ in range(20):
        w1 = random_phase_point(rng, 4)
        w2 = random_phase_point(rng, 4)
        via_J = float(w1.vector @ (J @ w2.vector))
        assert_allclose(symplectic_form(w1, w2), via_J, rtol=1e-13)


def test_symplectic_form_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension"):
        symplectic_form(PhaseVector([1.0], [0.0]), PhaseVector([1.0, 2.0], [0.0, 0.0]))


def test_complex_scalar_product_selfpairing_is_norm():
    rng = np.random.default_rng(5)
    for _ in range(10):
        w = random_phase_point(rng, 3)
        val = complex_scalar_product(w, w)
        assert val.imag == 0.0
        assert_allclose(val.real, w.norm() ** 2, rtol=1e-13)


def test_complex_scalar_product_unit_example():
    assert complex_scalar_product(PhaseVector([1.0], [0.0]), PhaseVector([0.0], [1.0])) == -1j


def test_complex_scalar_product_multiplication_by_i():
    rng = np.random.default_rng(6)
    for _ in range(10):
        w1 = random_phase_point(rng, 4)
        w2 = random_phase_point(rng, 4)
        lhs = complex_scalar_product(apply_J(PhaseVector(-w1.q, -w1.p)), w2)
        assert_allclose(
            complex(lhs), 1j * complex_scalar_product(w1, w2), rtol=1e-13, atol=1e-13
        )


def test_complex_scalar_product_matches_complexified_vdot():
    rng = np.random.default_rng(7)
    for _ in range(10):
        w1 = random_phase_point(rng, 4)
        w2 = random_phase_point(rng, 4)
        expected = np.sum(complexify(w1) * complexify(w2).conj())
        assert_allclose(complex(complex_scalar_product(w1, w2)), expected, rtol=1e-13)


class TestSCommuting:
    def test_block_construction_is_s_commuting(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            D = rng.standard_normal((3, 3))
            S = rng.standard_normal((3, 3))
            assert is_s_commuting(BlockOperator.s_commuting(D, S))

    def test_identity(self):
        assert is_s_commuting(BlockOperator.identity(4))

    def test_unequal_diagonal_blocks_rejected(self):
        A = BlockOperator([[1.0]], [[0.0]], [[0.0]], [[2.0]])
        assert not is_s_commuting(A)
        # direct multiplication: AJ - JA has entries +-1
        J = symplectic_matrix(1)
        assert np.max(np.abs(A.matrix @ J - J @ A.matrix)) == 1.0
        assert s_commutation_residual(A) == 1.0

    def test_residual_matches_full_commutator(self):
        rng = np.random.default_rng(9)
        J = symplectic_matrix(3)
        for _ in range(10):
            A = BlockOperator.from_matrix(rng.standard_normal((6, 6)))
            full = np.max(np.abs(A.matrix @ J - J @ A.matrix))
            assert_allclose(s_commutation_residual(A), full, rtol=1e-15)

    def test_algebra_closure(self):
        rng = np.random.default_rng(10)
        for _ in range(10):
            A = random_s_commuting_symmetric(rng, 3)
            B = random_s_commuting_symmetric(rng, 3)
            assert is_s_commuting(A + B)
            assert is_s_commuting(A @ B)

    def test_prop_2_3_symmetry_wrt_symplectic_form(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            A = random_s_commuting_symmetric(rng, 3)
            w1 = random_phase_point(rng, 3)
            w2 = random_phase_point(rng, 3)
            assert_allclose(
                symplectic_form(A.apply(w1), w2),
                symplectic_form(w1, A.apply(w2)),
                rtol=1e-12, atol=1e-12,
            )
            C = random_symmetric_operator(rng, 3)
            assert abs(
                symplectic_form(C.apply(w1), w2) - symplectic_form(w1, C.apply(w2))
            ) > 1e-6


class TestComplexOperator:
    def test_identity_maps_to_identity(self):
        M = to_complex_operator(BlockOperator.identity(4))
        assert_allclose(M, np.eye(4), atol=0)

    def test_harmonic_oscillator_block(self):
        # H = (k 0; 0 k) with k scalar maps to the 1x1 matrix (k)
        H = BlockOperator.s_commuting([[2.5]], [[0.0]])
        assert_allclose(to_complex_operator(H), [[2.5]], atol=0)

    def test_action_commutes_with_complexification(self):
        rng = np.random.default_rng(12)
        for _ in range(20):
            A = random_s_commuting_symmetric(rng, 4)
            M = to_complex_operator(A)
            w = random_phase_point(rng, 4)
            assert_allclose(complexify(A.apply(w)), M @ complexify(w), rtol=1e-12, atol=1e-12)

    def test_symmetric_gives_hermitian(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            M = to_complex_operator(random_s_commuting_symmetric(rng, 5))
            assert_allclose(M, M.conj().T, atol=1e-15)

    def test_round_trip(self):
        rng = np.random.default_rng(14)
        for _ in range(10):
            A = random_s_commuting_symmetric(rng, 3)
            back = from_complex_operator(to_complex_operator(A))
            assert_allclose(back.matrix, A.matrix, atol=0)

    def test_rejects_non_s_commuting(self):
        A = BlockOperator([[1.0]], [[0.0]], [[0.0]], [[2.0]])
        with pytest.raises(ValueError, match="no complex representation"):
            to_complex_operator(A)


class TestQuadraticForm:
    def test_identity_gives_half_norm_squared(self):
        rng = np.random.default_rng(15)
        for _ in range(5):
            w = random_phase_point(rng, 4)
            assert_allclose(
                quadratic_form_eval(BlockOperator.identity(4), w), 0.5 * w.norm() ** 2,
                rtol=1e-14,
            )

    def test_harmonic_oscillator_value(self):
        # k/2 (p^2 + q^2) at k=2, (q,p)=(1,1) is 2
        H = BlockOperator.s_commuting([[2.0]], [[0.0]])
        assert quadratic_form_eval(H, PhaseVector([1.0], [1.0])) == 2.0

    def test_symplectic_invariance(self):
        rng = np.random.default_rng(16)
        for _ in range(20):
            A = random_s_commuting_symmetric(rng, 4)
            w = random_phase_point(rng, 4)
            assert_allclose(
                quadratic_form_eval(A, apply_J(w)), quadratic_form_eval(A, w), rtol=1e-12
            )


class TestSerialization:
    def test_vector_json_round_trip_binary64(self):
        rng = np.random.default_rng(17)
        w = random_phase_point(rng, 5)
        dumped = json.dumps(w.to_dict())
        back = PhaseVector.from_dict(json.loads(dumped))
        assert np.array_equal(back.q, w.q)
        assert np.array_equal(back.p, w.p)

    def test_operator_json_round_trip_binary64(self):
        rng = np.random.default_rng(18)
        A = random_symmetric_operator(rng, 3)
        doc = json.loads(json.dumps(A.to_dict()))
        assert doc["n"] == 3
        assert set(doc["blocks"]) == {"A11", "A12", "A21", "A22"}
        back = BlockOperator.from_dict(doc)
        assert np.array_equal(back.matrix, A.matrix)

    def test_operator_dict_dimension_check(self):
        A = BlockOperator.identity(2)
        doc = A.to_dict()
        doc["n"] = 3
        with pytest.raises(ValueError, match="does not match"):
            BlockOperator.from_dict(doc)


def test_phase_vector_immutable():
    w = PhaseVector([1.0], [2.0])
    with pytest.raises(ValueError):
        w.q[0] = 5.0


def test_realify_round_trip():
    rng = np.random.default_rng(19)
    z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    assert_allclose(complexify(realify(z)), z, atol=0)
