"""Numpy fallback for the hot numeric kernels.

Same surface as the compiled backend (_ckernels): Hermitian
eigendecomposition, PSD square root, fidelity trace and the
closest-separable-state objective. Everything here is pure and
deterministic for fixed inputs on one platform.
"""

import numpy as np

BACKEND = "python"

# Relative floor under square roots / logarithms: eigenvalues of a
# rank-deficient product carry O(eps) noise whose sqrt would pollute
# fidelities at the 1e-8 level.
NOISE_FLOOR_REL = 64.0 * np.finfo(float).eps


def _clip_spectrum(w):
    w = np.where(w > 0.0, w, 0.0)
    top = w.max(initial=0.0)
    return np.where(w >= NOISE_FLOOR_REL * top, w, 0.0)


def eigh_herm(m):
    """Eigenvalues (ascending) and eigenvector columns of a Hermitian matrix."""
    return np.linalg.eigh(m)


def eigvalsh_herm(m):
    """Ascending eigenvalues of a Hermitian matrix."""
    return np.linalg.eigvalsh(m)


def psd_sqrt_with_min(m):
    """PSD square root, clipping noise-level negatives.

    Returns (sqrt, min_eigenvalue); the caller decides whether min_eigenvalue
    is negative enough to be an error.
    """
    w, v = np.linalg.eigh(m)
    wmin = float(w[0])
    s = (v * np.sqrt(_clip_spectrum(w))) @ v.conj().T
    return (s + s.conj().T) / 2.0, wmin


def sqrt_fidelity(sqrt_rho, sigma):
    """Tr sqrt(sqrt_rho @ sigma @ sqrt_rho) for a precomputed sqrt_rho."""
    m = sqrt_rho @ sigma @ sqrt_rho
    w = np.linalg.eigvalsh((m + m.conj().T) / 2.0)
    return float(np.sqrt(_clip_spectrum(w)).sum())


def pt_min_eig(m):
    """Minimum eigenvalue of the partial transpose (second qubit) of a 4x4 matrix."""
    pt = m.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
    return float(np.linalg.eigvalsh(pt)[0])


def sigma_from_params(x):
    """Map 16 reals to a unit-trace PSD 4x4 matrix via sigma = LL†/Tr(LL†).

    L is lower triangular: 4 real diagonal entries and 6 complex
    strictly-lower entries, packed row by row.
    """
    x = np.asarray(x, dtype=float)
    ell = np.zeros((4, 4), dtype=complex)
    ell[0, 0] = x[0]
    ell[1, 0] = x[1] + 1j * x[2]
    ell[1, 1] = x[3]
    ell[2, 0] = x[4] + 1j * x[5]
    ell[2, 1] = x[6] + 1j * x[7]
    ell[2, 2] = x[8]
    ell[3, 0] = x[9] + 1j * x[10]
    ell[3, 1] = x[11] + 1j * x[12]
    ell[3, 2] = x[13] + 1j * x[14]
    ell[3, 3] = x[15]
    sigma = ell @ ell.conj().T
    tr = sigma.trace().real
    if tr < 1e-120:
        return None
    return sigma / tr


def css_objective(x, sqrt_rho, penalty_weight):
    """Penalized Bures objective: 1 - sqrt(F) + w * sum(max(0, -pt_eigs)^2)."""
    sigma = sigma_from_params(x)
    if sigma is None:
        return 1e6
    val = 1.0 - sqrt_fidelity(sqrt_rho, sigma)
    pt = sigma.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
    w = np.linalg.eigvalsh(pt)
    neg = np.where(w < 0.0, -w, 0.0)
    return float(val + penalty_weight * (neg * neg).sum())
