import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syncsub import opcore

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Z = np.diag([1.0, -1.0]).astype(complex)
H4 = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=complex)


def random_complex(rng, shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def random_hermitian(rng, n):
    g = random_complex(rng, (n, n))
    return (g + g.conj().T) / 2.0


finite_entries = st.floats(min_value=-10.0, max_value=10.0,
                           allow_nan=False, allow_infinity=False)


def matrices(dim):
    return st.lists(finite_entries, min_size=2 * dim * dim, max_size=2 * dim * dim).map(
        lambda xs: np.asarray(xs[:dim * dim]).reshape(dim, dim)
        + 1j * np.asarray(xs[dim * dim:]).reshape(dim, dim))


class TestValidation:
    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            opcore.as_complex_matrix(np.zeros((2, 3)))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            opcore.as_complex_matrix([[np.nan, 0], [0, 1]])

    def test_require_hermitian_rejects(self):
        with pytest.raises(ValueError, match="Hermitian"):
            opcore.require_hermitian([[0, 1], [0, 0]])

    def test_require_unitary_rejects(self):
        with pytest.raises(ValueError, match="unitary"):
            opcore.require_unitary(np.diag([1.0, 0.999]))


class TestTensorProduct:
    def test_identity(self):
        np.testing.assert_array_equal(opcore.tensor_product(np.eye(2), np.eye(2)), np.eye(4))

    def test_sigma_z_with_identity(self):
        np.testing.assert_allclose(opcore.tensor_product(SIGMA_Z, np.eye(2)),
                                   np.diag([1.0, 1.0, -1.0, -1.0]), atol=0)

    def test_action_on_product_vectors(self):
        # oracle: direct matrix-vector multiplication on each factor
        rng = np.random.default_rng(0)
        for _ in range(20):
            a = random_complex(rng, (2, 2))
            b = random_complex(rng, (2, 2))
            u = random_complex(rng, 2)
            v = random_complex(rng, 2)
            lhs = opcore.tensor_product(a, b) @ np.kron(u, v)
            rhs = np.kron(a @ u, b @ v)
            np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_index_convention(self):
        # block (i, j) of A (x) B equals A[i, j] * B
        rng = np.random.default_rng(1)
        a = random_complex(rng, (3, 3))
        b = random_complex(rng, (2, 2))
        t = opcore.tensor_product(a, b)
        for i in range(3):
            for j in range(3):
                np.testing.assert_array_equal(t[2 * i:2 * i + 2, 2 * j:2 * j + 2], a[i, j] * b)

    def test_associativity(self):
        # same memory layout by the index convention; bitwise equality needs
        # exact scalar products (integers), floats regroup within one ulp
        rng = np.random.default_rng(2)
        a, b, c = (rng.integers(-5, 6, size=(2, 2)).astype(complex) for _ in range(3))
        left = opcore.tensor_product(opcore.tensor_product(a, b), c)
        right = opcore.tensor_product(a, opcore.tensor_product(b, c))
        assert np.array_equal(left, right)
        a, b, c = (random_complex(rng, (2, 2)) for _ in range(3))
        left = opcore.tensor_product(opcore.tensor_product(a, b), c)
        right = opcore.tensor_product(a, opcore.tensor_product(b, c))
        assert opcore.operator_norm(left - right) <= 1e-14 * opcore.operator_norm(left)

    @settings(max_examples=25, deadline=None)
    @given(a=matrices(2), b=matrices(2), c=matrices(2), x=finite_entries, y=finite_entries)
    def test_bilinearity(self, a, b, c, x, y):
        lhs = opcore.tensor_product(x * a + y * b, c)
        rhs = x * opcore.tensor_product(a, c) + y * opcore.tensor_product(b, c)
        np.testing.assert_allclose(lhs, rhs, atol=1e-9)


class TestCommutator:
    def test_self_commutator_is_zero(self):
        t = np.diag([0.0, 1.0, 2.0]).astype(complex)
        assert np.array_equal(opcore.commutator(t, t), np.zeros((3, 3)))

    def test_disjoint_supports_commute(self):
        zi = opcore.tensor_product(SIGMA_Z, np.eye(2))
        iz = opcore.tensor_product(np.eye(2), SIGMA_Z)
        np.testing.assert_allclose(opcore.commutator(zi, iz), np.zeros((4, 4)), atol=0)

    def test_three_level_example(self):
        # oracle: 3x3 products done by hand
        t = np.diag([0.0, 1.0, 2.0]).astype(complex)
        expected = np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 0]], dtype=complex)
        np.testing.assert_allclose(opcore.commutator(H4, t), expected, atol=0)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            opcore.commutator(np.eye(2), np.eye(3))

    @settings(max_examples=25, deadline=None)
    @given(a=matrices(3), b=matrices(3))
    def test_antisymmetry_exact(self, a, b):
        assert np.array_equal(opcore.commutator(a, b), -opcore.commutator(b, a))


class TestOperatorNorm:
    def test_identity(self):
        for d in (1, 2, 5):
            assert opcore.operator_norm(np.eye(d)) == pytest.approx(1.0, abs=1e-14)

    def test_diagonal(self):
        assert opcore.operator_norm(np.diag([0.0, 1.0, 2.0])) == pytest.approx(2.0, abs=1e-14)

    def test_three_level_commutator(self):
        # oracle: SVD of the antisymmetric 2x2 block [[0,1],[-1,0]] has both
        # singular values 1
        t = np.diag([0.0, 1.0, 2.0]).astype(complex)
        assert opcore.operator_norm(opcore.commutator(H4, t)) == pytest.approx(1.0, abs=1e-14)

    def test_submultiplicative(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            a = random_complex(rng, (4, 4))
            b = random_complex(rng, (4, 4))
            assert opcore.operator_norm(a @ b) <= \
                opcore.operator_norm(a) * opcore.operator_norm(b) + 1e-12


class TestHermitianEig:
    def test_diagonal(self):
        spec = opcore.hermitian_eig(np.diag([0.0, 1.0, 2.0]))
        np.testing.assert_allclose(spec.eigenvalues, [0.0, 1.0, 2.0], atol=1e-14)
        np.testing.assert_allclose(np.abs(spec.eigenvectors), np.eye(3), atol=1e-14)

    def test_sigma_x(self):
        # oracle: characteristic polynomial lambda^2 - 1 = 0
        spec = opcore.hermitian_eig(SIGMA_X)
        np.testing.assert_allclose(spec.eigenvalues, [-1.0, 1.0], atol=1e-14)

    def test_reconstruction(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            m = random_hermitian(rng, 5)
            spec = opcore.hermitian_eig(m)
            recon = (spec.eigenvectors * spec.eigenvalues) @ spec.eigenvectors.conj().T
            assert opcore.operator_norm(recon - m) <= 1e-12 * opcore.operator_norm(m)
            assert np.all(np.diff(spec.eigenvalues) >= 0)
            assert opcore.unitarity_residual(spec.eigenvectors) <= 1e-12 * 5

    def test_phase_is_deterministic(self):
        rng = np.random.default_rng(5)
        m = random_hermitian(rng, 4)
        a = opcore.hermitian_eig(m)
        b = opcore.hermitian_eig(m.copy())
        assert np.array_equal(a.eigenvectors, b.eigenvectors)
        for j in range(4):
            col = a.eigenvectors[:, j]
            piv = col[int(np.argmax(np.abs(col)))]
            assert piv.imag == pytest.approx(0.0, abs=1e-15)
            assert piv.real > 0

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            opcore.hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))


class TestEvolve:
    def test_zero_time_is_identity(self):
        rng = np.random.default_rng(6)
        h = random_hermitian(rng, 4)
        np.testing.assert_allclose(opcore.evolve(h, 0.0), np.eye(4), atol=1e-14)

    def test_group_law(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            h = random_hermitian(rng, 3)
            t, s = rng.normal(size=2)
            lhs = opcore.evolve(h, t + s)
            rhs = opcore.evolve(h, t) @ opcore.evolve(h, s)
            assert opcore.operator_norm(lhs - rhs) <= 1e-10

    def test_inverse(self):
        rng = np.random.default_rng(8)
        h = random_hermitian(rng, 4)
        t = 2.7
        assert opcore.operator_norm(opcore.evolve(h, t) @ opcore.evolve(h, -t) - np.eye(4)) <= 1e-10

    def test_diagonal_pi_phases(self):
        # oracle: scalar exponentials e^{-i pi} = e^{i pi} = -1
        u = opcore.evolve(np.diag([np.pi, -np.pi, 0.0]), 1.0)
        np.testing.assert_allclose(u, np.diag([-1.0, -1.0, 1.0]), atol=1e-14)

    def test_spectral_stability_under_commuting_evolution(self):
        # [H, K] = 0 built from a shared eigenbasis; the evolved operator must
        # keep K's spectrum (sorted eigenvalue match)
        rng = np.random.default_rng(9)
        for _ in range(10):
            basis = np.linalg.qr(random_complex(rng, (5, 5)))[0]
            k = (basis * rng.normal(size=5)) @ basis.conj().T
            h = (basis * rng.normal(size=5)) @ basis.conj().T
            u = opcore.evolve(h, 1.7)
            evolved = u.conj().T @ k @ u
            before = np.sort(np.linalg.eigvalsh((k + k.conj().T) / 2))
            after = np.sort(np.linalg.eigvalsh((evolved + evolved.conj().T) / 2))
            np.testing.assert_allclose(after, before, atol=1e-10)


def kernel_oracle(a, tol=opcore.KERNEL_TOL):
    """Independent kernel basis: eigenvectors of A^dag A with eigenvalue <= tol^2.

    eigh resolves eigenvalues only to eps * lam_max absolute, so the relative
    tol^2 cutoff is floored at dim * eps to keep the oracle well-posed.
    """
    gram = a.conj().T @ a
    w, v = np.linalg.eigh((gram + gram.conj().T) / 2)
    lam_max = max(float(w[-1]), 0.0)
    rel_cut = max(tol ** 2, gram.shape[0] * np.finfo(float).eps)
    keep = w <= rel_cut * lam_max if lam_max > 0 else np.ones_like(w, dtype=bool)
    return v[:, keep]


def max_principal_angle_sin(b1, b2):
    """sin of the largest principal angle between equal-dimension subspaces."""
    assert b1.shape == b2.shape
    if b1.shape[1] == 0:
        return 0.0
    residual = b2 - b1 @ (b1.conj().T @ b2)
    return float(np.linalg.norm(residual, 2))


class TestNullSpace:
    def test_zero_matrix_gives_full_space(self):
        sub = opcore.null_space(np.zeros((4, 4)))
        assert sub.dim == 4
        np.testing.assert_allclose(opcore.projector(sub), np.eye(4), atol=1e-14)

    def test_sync_operator_kernel(self):
        k = opcore.tensor_product(SIGMA_Z, np.eye(2)) - opcore.tensor_product(np.eye(2), SIGMA_Z)
        sub = opcore.null_space(k)
        assert sub.dim == 2
        np.testing.assert_allclose(opcore.projector(sub),
                                   np.diag([1.0, 0.0, 0.0, 1.0]), atol=1e-12)

    def test_rank_deficient_product(self):
        rng = np.random.default_rng(10)
        for _ in range(5):
            a = random_complex(rng, (6, 4)) @ random_complex(rng, (4, 6))
            sub = opcore.null_space(a)
            assert sub.dim == 2
            assert opcore.operator_norm(a @ sub.basis) <= 1e-9

    def test_matches_gram_eigendecomposition_oracle(self):
        rng = np.random.default_rng(11)
        for trial in range(30):
            n = int(rng.integers(2, 9))
            r = int(rng.integers(1, n + 1))
            a = random_complex(rng, (n, r)) @ random_complex(rng, (r, n))
            sub = opcore.null_space(a)
            oracle = kernel_oracle(a)
            assert sub.dim == oracle.shape[1]
            assert max_principal_angle_sin(sub.basis, oracle) <= 1e-8

    def test_tol_must_be_positive(self):
        with pytest.raises(ValueError):
            opcore.null_space(np.eye(2), tol=0.0)

    def test_records_cutoff(self):
        a = np.diag([1.0, 1e-14])
        sub = opcore.null_space(a, tol=1e-10)
        assert sub.tol_used == pytest.approx(1e-10, rel=1e-12)
        assert sub.dim == 1


class TestProjector:
    def test_full_space(self):
        sub = opcore.null_space(np.zeros((3, 3)))
        np.testing.assert_allclose(opcore.projector(sub), np.eye(3), atol=1e-14)

    def test_idempotent_hermitian_trace(self):
        rng = np.random.default_rng(12)
        for _ in range(10):
            n = int(rng.integers(2, 7))
            k = int(rng.integers(1, n + 1))
            basis = np.linalg.qr(random_complex(rng, (n, k)))[0]
            sub = opcore.Subspace(ambient_dim=n, basis=basis, tol_used=0.0)
            p = opcore.projector(sub)
            assert opcore.operator_norm(p @ p - p) <= 1e-10
            assert opcore.hermiticity_residual(p) <= 1e-10
            assert np.trace(p).real == pytest.approx(k, abs=1e-10)

    def test_subspace_rejects_non_orthonormal(self):
        with pytest.raises(ValueError, match="orthonormal"):
            opcore.Subspace(ambient_dim=2, basis=np.array([[1.0], [1.0]]), tol_used=0.0)
