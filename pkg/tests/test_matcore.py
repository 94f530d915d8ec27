import numpy as np
import pytest

from qdephase import matcore
from qdephase.errors import BadDim, BadDims, NotHermitian, NotPSD
from qdephase.states import family_state, initial_pure, FamilyParams

SY2 = np.array([[0, 0, 0, -1],
                [0, 0, 1, 0],
                [0, 1, 0, 0],
                [-1, 0, 0, 0]], dtype=complex)


def random_psd(rng, dim):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return g @ g.conj().T


class TestHermitianEig:
    def test_identity(self):
        w, _ = matcore.hermitian_eig(np.eye(4, dtype=complex))
        assert np.allclose(w, [1, 1, 1, 1], atol=1e-14)

    def test_diagonal(self):
        w, _ = matcore.hermitian_eig(np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex))
        assert np.allclose(w, [0, 0, 0.5, 0.5], atol=1e-14)

    def test_family_state_spectrum(self):
        # 2x2 corner block gives (1 +- |a|)/2 by hand
        rho = family_state(0.5, 0.5)
        w, _ = matcore.hermitian_eig(rho.matrix)
        assert np.allclose(w, [0.0, 0.0, 0.25, 0.75], atol=1e-14)

    def test_ascending_and_orthonormal(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            dim = int(rng.integers(2, 9))
            m = random_psd(rng, dim)
            w, v = matcore.hermitian_eig(m)
            assert np.all(np.diff(w) >= -1e-13)
            assert np.abs(v.conj().T @ v - np.eye(dim)).max() < 1e-10
            norm = np.abs(m).max()
            assert np.abs(m @ v - v * w).max() < 1e-9 * max(1.0, norm)

    def test_reconstruction(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            dim = int(rng.integers(2, 9))
            g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
            m = (g + g.conj().T) / 2
            w, v = matcore.hermitian_eig(m)
            assert np.abs((v * w) @ v.conj().T - m).max() < 1e-9

    def test_rejects_non_hermitian(self):
        m = np.eye(4, dtype=complex)
        m[0, 1] = 1e-6
        with pytest.raises(NotHermitian):
            matcore.hermitian_eig(m)


class TestPsdSqrt:
    def test_identity(self):
        s = matcore.psd_sqrt(np.eye(4, dtype=complex))
        assert np.abs(s - np.eye(4)).max() < 1e-14

    def test_diagonal(self):
        s = matcore.psd_sqrt(np.diag([4.0, 1.0, 0.0, 9.0]).astype(complex))
        assert np.abs(s - np.diag([2.0, 1.0, 0.0, 3.0])).max() < 1e-13

    def test_pure_projector_is_fixed_point(self):
        rho = initial_pure(FamilyParams(0.5)).matrix
        assert np.abs(matcore.psd_sqrt(rho) - rho).max() < 1e-12

    def test_square_recovers_input(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            dim = int(rng.integers(2, 9))
            m = random_psd(rng, dim)
            s = matcore.psd_sqrt(m)
            assert np.abs(s @ s - m).max() < 1e-8
            assert np.abs(s - s.conj().T).max() < 1e-12

    def test_clips_tiny_negatives(self):
        m = np.diag([1.0, -0.5e-9, 0.0, 0.0]).astype(complex)
        s = matcore.psd_sqrt(m)
        assert np.abs(s - np.diag([1.0, 0.0, 0.0, 0.0])).max() < 1e-12

    def test_rejects_indefinite(self):
        with pytest.raises(NotPSD):
            matcore.psd_sqrt(np.diag([1.0, -1e-6, 0.0, 0.0]).astype(complex))


class TestPartialTranspose:
    def test_diagonal_invariant(self):
        m = np.diag([0.1, 0.2, 0.3, 0.4]).astype(complex)
        for sub in ("first", "second"):
            assert np.array_equal(matcore.partial_transpose(m, sub), m)

    def test_bell_projector_spectrum(self):
        rho = initial_pure(FamilyParams(0.5)).matrix
        for sub in ("first", "second"):
            w = np.linalg.eigvalsh(matcore.partial_transpose(rho, sub))
            assert np.allclose(np.sort(w), [-0.5, 0.5, 0.5, 0.5], atol=1e-14)

    def test_involution_exact(self):
        rng = np.random.default_rng(14)
        m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        for sub in ("first", "second"):
            twice = matcore.partial_transpose(matcore.partial_transpose(m, sub), sub)
            assert np.array_equal(twice, m)

    def test_preserves_trace_and_hermiticity(self):
        rng = np.random.default_rng(15)
        m = random_psd(rng, 4)
        pt = matcore.partial_transpose(m)
        assert np.trace(pt) == pytest.approx(np.trace(m).real, abs=0)
        assert np.abs(pt - pt.conj().T).max() < 1e-14

    def test_rejects_wrong_dim(self):
        with pytest.raises(BadDim):
            matcore.partial_transpose(np.eye(3, dtype=complex))


class TestPartialTrace:
    def test_product_state(self):
        rng = np.random.default_rng(16)
        rho = random_psd(rng, 2)
        sig = random_psd(rng, 2)
        full = matcore.kron(rho, sig)
        out = matcore.partial_trace(full, [2, 2], keep={0})
        assert np.abs(out - rho * np.trace(sig)).max() < 1e-12

    def test_bell_marginal_is_maximally_mixed(self):
        rho = initial_pure(FamilyParams(0.5)).matrix
        for keep in ({0}, {1}):
            out = matcore.partial_trace(rho, [2, 2], keep)
            assert np.abs(out - np.eye(2) / 2).max() < 1e-14

    def test_trace_preserved(self):
        rng = np.random.default_rng(17)
        full = random_psd(rng, 12)
        for keep in ({0}, {1}, {2}, {0, 2}, {0, 1, 2}):
            out = matcore.partial_trace(full, [2, 3, 2], keep)
            assert abs(np.trace(out) - np.trace(full)) < 1e-12
        assert np.abs(
            matcore.partial_trace(full, [2, 3, 2], {0, 1, 2}) - full).max() == 0.0

    def test_hermitian_in_hermitian_out(self):
        rng = np.random.default_rng(18)
        full = random_psd(rng, 8)
        out = matcore.partial_trace(full, [2, 2, 2], {1})
        assert np.abs(out - out.conj().T).max() < 1e-14

    def test_rejects_bad_dims(self):
        m = np.eye(4, dtype=complex)
        with pytest.raises(BadDims):
            matcore.partial_trace(m, [2, 3], {0})
        with pytest.raises(BadDims):
            matcore.partial_trace(m, [2, 2], set())
        with pytest.raises(BadDims):
            matcore.partial_trace(m, [2, 2], {5})


class TestKron:
    def test_identities(self):
        out = matcore.kron(np.eye(2), np.eye(2))
        assert np.array_equal(out, np.eye(4))

    def test_projectors(self):
        d = np.diag([1.0, 0.0]).astype(complex)
        assert np.array_equal(matcore.kron(d, d), np.diag([1, 0, 0, 0]).astype(complex))

    def test_spin_flip_literal(self):
        sy = np.array([[0, -1j], [1j, 0]])
        assert np.array_equal(matcore.kron(sy, sy), SY2)
