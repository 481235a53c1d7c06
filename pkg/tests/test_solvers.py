import numpy as np
import pytest

from ncglab import commutative as comm
from ncglab import solvers
from ncglab.clifford import PAULI_X


def random_complex(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def random_unitary(rng, d):
    q, r = np.linalg.qr(random_complex(rng, d, d))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def duality_gap(op, a, a_mat):
    """| <F*(A), a> - <A, F(a)> | with both inner products linear in the
    first argument and the d^-1 Tr normalization on matrices."""
    u = solvers.adjoint_apply(op, a_mat)
    lhs = np.sum(u * np.conj(a))
    rhs = np.trace(op.apply(a).conj().T @ a_mat) / op.d
    return abs(lhs - rhs)


class TestLittleOperator:
    def test_validation(self):
        with pytest.raises(ValueError):
            solvers.LittleOperator(images=np.zeros((2, 2, 3)))

    def test_apply_is_linear_combination(self):
        rng = np.random.default_rng(0)
        op = solvers.LittleOperator(images=random_complex(rng, 3, 4, 4))
        a = random_complex(rng, 3)
        expected = sum(a[i] * op.images[i] for i in range(3))
        np.testing.assert_allclose(op.apply(a), expected, atol=1e-12)

    def test_comm_materialization_matches_l1(self):
        ens = comm.SignEnsemble(field="complex", n=2)
        op = solvers.little_op_from_comm(ens)
        assert op.d == 16
        rng = np.random.default_rng(1)
        a = random_complex(rng, 2)
        s = np.linalg.svd(op.apply(a), compute_uv=False).sum() / op.d
        assert s == pytest.approx(comm.embedding_l1_norm(a, ens).value, abs=1e-12)

    def test_clifford_materialization_matches_formula(self):
        from ncglab import clifford
        op = solvers.little_op_from_clifford(2)
        fam = clifford.build_phase_family(2, "exhaustive")
        rng = np.random.default_rng(2)
        a = random_complex(rng, 2)
        s = np.linalg.svd(op.apply(a), compute_uv=False).sum() / op.d
        assert s == pytest.approx(clifford.dictator_embedding_norm(a, fam).value, abs=1e-10)

    def test_clifford_materialization_cap(self):
        with pytest.raises(ValueError):
            solvers.little_op_from_clifford(4)


class TestAdjoint:
    def test_zero_matrix(self):
        rng = np.random.default_rng(3)
        op = solvers.LittleOperator(images=random_complex(rng, 3, 4, 4))
        np.testing.assert_array_equal(solvers.adjoint_apply(op, np.zeros((4, 4))),
                                      np.zeros(3))

    def test_orthogonal_images_pick_out_coordinates(self):
        images = np.stack([np.diag([1, 0, 0, 0]).astype(complex),
                           np.diag([0, 1, 0, 0]).astype(complex)])
        op = solvers.LittleOperator(images=images)
        u = solvers.adjoint_apply(op, images[0])
        assert u[0] != 0 and u[1] == 0

    def test_duality_identity_random(self):
        rng = np.random.default_rng(4)
        op = solvers.LittleOperator(images=random_complex(rng, 3, 4, 4))
        for _ in range(50):
            assert duality_gap(op, random_complex(rng, 3),
                               random_complex(rng, 4, 4)) <= 1e-10

    def test_shape_mismatch(self):
        rng = np.random.default_rng(5)
        op = solvers.LittleOperator(images=random_complex(rng, 3, 4, 4))
        with pytest.raises(ValueError):
            solvers.adjoint_apply(op, np.zeros((3, 3)))


class TestLift:
    def test_rank_one_from_pauli_x(self):
        op = solvers.LittleOperator(images=PAULI_X[None])
        tensor = solvers.lift_little_to_big(op)
        rng = np.random.default_rng(6)
        for _ in range(10):
            a_mat, b_mat = random_complex(rng, 2, 2), random_complex(rng, 2, 2)
            direct = solvers.evaluate_bilinear(tensor, a_mat, b_mat)
            ua = solvers.adjoint_apply(op, a_mat)
            ub = solvers.adjoint_apply(op, b_mat)
            assert abs(direct - np.sum(ua * np.conj(ub))) <= 1e-12

    def test_zero_operator(self):
        op = solvers.LittleOperator(images=np.zeros((2, 3, 3), dtype=complex))
        assert solvers.lift_little_to_big(op).nnz == 0

    def test_diagonal_images_give_commutative_support(self):
        ens = comm.SignEnsemble(field="real", n=2)
        op = solvers.little_op_from_comm(ens)
        tensor = solvers.lift_little_to_big(op)
        # all support on (i, i, k, k), matching a scalar-coefficient matrix
        assert np.all(tensor.indices[:, 0] == tensor.indices[:, 1])
        assert np.all(tensor.indices[:, 2] == tensor.indices[:, 3])
        m = np.einsum("mi,mk->ik", op.images[:, range(op.d), range(op.d)].conj(),
                      op.images[:, range(op.d), range(op.d)]) / op.d**2
        dense = np.zeros((op.d, op.d), dtype=complex)
        dense[tensor.indices[:, 0], tensor.indices[:, 2]] = tensor.coeffs
        np.testing.assert_allclose(dense, m, atol=1e-14)

    def test_lift_consistency_random_operator(self):
        rng = np.random.default_rng(7)
        op = solvers.LittleOperator(images=random_complex(rng, 2, 3, 3))
        tensor = solvers.lift_little_to_big(op)
        for _ in range(20):
            a_mat, b_mat = random_complex(rng, 3, 3), random_complex(rng, 3, 3)
            ua = solvers.adjoint_apply(op, a_mat)
            ub = solvers.adjoint_apply(op, b_mat)
            assert abs(solvers.evaluate_bilinear(tensor, a_mat, b_mat)
                       - np.sum(ua * np.conj(ub))) <= 1e-10

    def test_cap(self):
        rng = np.random.default_rng(8)
        op = solvers.LittleOperator(images=random_complex(rng, 2, 3, 3))
        with pytest.raises(ValueError):
            solvers.lift_little_to_big(op, cap=4)


class TestEvaluateBilinear:
    def test_zero_tensor(self):
        tensor = solvers.NcgTensor(d=2, indices=np.zeros((0, 4)), coeffs=np.zeros(0))
        assert solvers.evaluate_bilinear(tensor, np.eye(2), np.eye(2)) == 0

    def test_single_entry_identity(self):
        tensor = solvers.NcgTensor(d=2, indices=np.array([[0, 0, 0, 0]]),
                                   coeffs=np.array([1.0 + 0j]))
        assert solvers.evaluate_bilinear(tensor, np.eye(2), np.eye(2)) == pytest.approx(1.0)

    def test_matches_dense_contraction(self):
        rng = np.random.default_rng(9)
        d = 3
        dense = np.zeros((d, d, d, d), dtype=complex)
        picks = rng.integers(0, d, size=(12, 4))
        picks = np.unique(picks, axis=0)
        coeffs = random_complex(rng, len(picks))
        dense[tuple(picks.T)] = coeffs
        tensor = solvers.NcgTensor(d=d, indices=picks, coeffs=coeffs)
        a_mat, b_mat = random_complex(rng, d, d), random_complex(rng, d, d)
        brute = sum(dense[i, j, k, l] * a_mat[i, j] * np.conj(b_mat[k, l])
                    for i in range(d) for j in range(d)
                    for k in range(d) for l in range(d))
        assert abs(solvers.evaluate_bilinear(tensor, a_mat, b_mat) - brute) <= 1e-12

    def test_sesquilinearity(self):
        rng = np.random.default_rng(10)
        d = 3
        idx = np.unique(rng.integers(0, d, size=(10, 4)), axis=0)
        tensor = solvers.NcgTensor(d=d, indices=idx, coeffs=random_complex(rng, len(idx)))
        a1, a2, b1, b2 = (random_complex(rng, d, d) for _ in range(4))
        z = complex(rng.normal(), rng.normal())
        lhs = solvers.evaluate_bilinear(tensor, z * a1 + a2, b1)
        rhs = z * solvers.evaluate_bilinear(tensor, a1, b1) \
            + solvers.evaluate_bilinear(tensor, a2, b1)
        assert abs(lhs - rhs) <= 1e-12
        lhs = solvers.evaluate_bilinear(tensor, a1, z * b1 + b2)
        rhs = np.conj(z) * solvers.evaluate_bilinear(tensor, a1, b1) \
            + solvers.evaluate_bilinear(tensor, a1, b2)
        assert abs(lhs - rhs) <= 1e-12

    def test_duplicate_indices_rejected(self):
        with pytest.raises(ValueError):
            solvers.NcgTensor(d=2, indices=np.array([[0, 0, 0, 0], [0, 0, 0, 0]]),
                              coeffs=np.array([1.0, 2.0], dtype=complex))

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            solvers.NcgTensor(d=2, indices=np.array([[0, 0, 0, 2]]),
                              coeffs=np.array([1.0 + 0j]))


class TestNcgSolver:
    def test_single_entry_d1(self):
        tensor = solvers.NcgTensor(d=1, indices=np.array([[0, 0, 0, 0]]),
                                   coeffs=np.array([-2.0 + 1.0j]))
        result = solvers.ncg_opt_lower_bound(tensor, restarts=4, iters=50, seed=0)
        assert result.value == pytest.approx(abs(-2.0 + 1.0j), abs=1e-12)
        assert abs(abs(result.a[0, 0]) - 1.0) <= 1e-12

    def test_commutative_identity_matches_grid(self):
        tensor = solvers.tensor_from_matrix(np.eye(2))
        result = solvers.ncg_opt_lower_bound(tensor, restarts=8, iters=100, seed=1)
        # exact optimum 2: diagonal unitaries align both coefficients
        angles = np.linspace(0.0, 2 * np.pi, 2000, endpoint=False)
        grid = np.abs(np.exp(1j * angles)[:, None] + np.exp(1j * angles)[None, :]).max()
        assert abs(result.value - grid) <= 1e-3
        assert result.value == pytest.approx(2.0, abs=1e-9)

    def test_lifted_tensor_consistent_with_little_norm(self):
        for make in (lambda: solvers.little_op_from_comm(comm.SignEnsemble(field="real", n=2)),
                     lambda: solvers.little_op_from_comm(comm.SignEnsemble(field="complex", n=1))):
            op = make()
            tensor = solvers.lift_little_to_big(op)
            ncg = solvers.ncg_opt_lower_bound(tensor, restarts=8, iters=150, seed=2)
            little, _ = solvers.little_norm_lower_bound(op, restarts=8, iters=150, seed=3)
            assert ncg.value >= little**2 - 1e-4
            assert ncg.value <= 1.0 + 1e-6  # these embeddings are l2-dominated

    def test_monotone_histories_and_unitary_certificates(self):
        rng = np.random.default_rng(11)
        d = 3
        idx = np.unique(rng.integers(0, d, size=(15, 4)), axis=0)
        tensor = solvers.NcgTensor(d=d, indices=idx, coeffs=random_complex(rng, len(idx)))
        result = solvers.ncg_opt_lower_bound(tensor, restarts=6, iters=80, seed=4)
        assert result.histories
        for history in result.histories:
            assert all(history[i + 1] >= history[i] - 1e-9 for i in range(len(history) - 1))
        assert result.unitarity_residual_a <= 1e-9
        assert result.unitarity_residual_b <= 1e-9
        achieved = abs(solvers.evaluate_bilinear(tensor, result.a, result.b))
        assert achieved == pytest.approx(result.value, abs=1e-9)

    def test_value_not_below_random_unitary_pairs(self):
        rng = np.random.default_rng(12)
        d = 3
        idx = np.unique(rng.integers(0, d, size=(10, 4)), axis=0)
        tensor = solvers.NcgTensor(d=d, indices=idx, coeffs=random_complex(rng, len(idx)))
        result = solvers.ncg_opt_lower_bound(tensor, restarts=8, iters=100, seed=5)
        for _ in range(50):
            sample = abs(solvers.evaluate_bilinear(tensor, random_unitary(rng, d),
                                                   random_unitary(rng, d)))
            assert sample <= result.value + 1e-9


class TestLittleNormLowerBound:
    def test_reaches_basis_optimum_for_comm(self):
        op = solvers.little_op_from_comm(comm.SignEnsemble(field="real", n=2))
        value, vec = solvers.little_norm_lower_bound(op, restarts=8, iters=150, seed=6)
        assert value == pytest.approx(1.0, abs=1e-6)
        assert np.linalg.norm(vec) == pytest.approx(1.0, abs=1e-9)

    def test_never_exceeds_domination_bound(self):
        op = solvers.little_op_from_comm(comm.SignEnsemble(field="complex", n=2))
        value, _ = solvers.little_norm_lower_bound(op, restarts=4, iters=100, seed=7)
        assert value <= 1.0 + 1e-9
