"""Dense complex-matrix kernels: Hermitian eigendecomposition, PSD square
root, partial transpose, partial trace and tensor products.

Matrices are plain complex128 numpy arrays. All operations are pure
functions; nothing here mutates its inputs.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import BadDim, BadDims, NoConvergence, NotHermitian, NotPSD


@dataclass(frozen=True)
class Tolerances:
    """Central numeric tolerances, overridable per call so tests can tighten them."""

    herm: float = 1e-10   # max entrywise |m - m†| accepted as Hermitian
    psd: float = 1e-9     # eigenvalues >= -psd are clipped to 0, below is an error
    trace: float = 1e-10  # |Tr rho - 1| accepted for density matrices


DEFAULT_TOL = Tolerances()


def as_matrix(m) -> np.ndarray:
    """Coerce a matrix-like (including TwoQubitState) to a complex ndarray."""
    m = getattr(m, "matrix", m)
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise BadDim(f"expected a square matrix, got shape {a.shape}")
    return a


def hermiticity_defect(m) -> float:
    a = as_matrix(m)
    return float(np.abs(a - a.conj().T).max())


def hermitian_eig(m, tol: Tolerances = DEFAULT_TOL):
    """Eigenvalues (ascending) and orthonormal eigenvector columns.

    Raises NotHermitian if the input is not Hermitian within tol.herm and
    NoConvergence if the iterative backend exhausts its sweep budget.
    """
    a = as_matrix(m)
    defect = float(np.abs(a - a.conj().T).max())
    if defect > tol.herm:
        raise NotHermitian(f"hermiticity defect {defect:.3e} > {tol.herm:.1e}")
    try:
        w, v = kernels.eigh_herm((a + a.conj().T) / 2.0)
    except RuntimeError as exc:
        raise NoConvergence(str(exc)) from exc
    return w, v


def psd_sqrt(m, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Hermitian PSD square root; eigenvalues in [-tol.psd, 0) are clipped."""
    a = as_matrix(m)
    defect = float(np.abs(a - a.conj().T).max())
    if defect > tol.herm:
        raise NotHermitian(f"hermiticity defect {defect:.3e} > {tol.herm:.1e}")
    try:
        s, wmin = kernels.psd_sqrt_with_min((a + a.conj().T) / 2.0)
    except RuntimeError as exc:
        raise NoConvergence(str(exc)) from exc
    if wmin < -tol.psd:
        raise NotPSD(f"eigenvalue {wmin:.3e} < -{tol.psd:.1e}")
    return s


def partial_transpose(rho, subsystem: str = "second") -> np.ndarray:
    """Transpose one tensor factor of a two-qubit (4x4) matrix."""
    a = as_matrix(rho)
    if a.shape != (4, 4):
        raise BadDim(f"partial transpose needs a 4x4 matrix, got {a.shape}")
    r = a.reshape(2, 2, 2, 2)
    if subsystem == "second":
        r = r.transpose(0, 3, 2, 1)
    elif subsystem == "first":
        r = r.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"subsystem must be 'first' or 'second', got {subsystem!r}")
    return r.reshape(4, 4).copy()


def partial_trace(full, dims, keep) -> np.ndarray:
    """Trace out all tensor factors not listed in keep.

    dims lists the factor dimensions whose product must equal the matrix
    dimension; keep is a nonempty collection of factor indices, and the kept
    factors stay in their original order.
    """
    a = as_matrix(full)
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims):
        raise BadDims(f"factor dimensions must be positive, got {dims}")
    n = int(np.prod(dims))
    if n != a.shape[0]:
        raise BadDims(f"prod(dims)={n} does not match matrix dim {a.shape[0]}")
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise BadDims("keep must be nonempty")
    if keep[0] < 0 or keep[-1] >= len(dims):
        raise BadDims(f"keep indices {keep} out of range for {len(dims)} factors")

    nf = len(dims)
    if nf > 26:
        raise BadDims("at most 26 tensor factors supported")
    row = [chr(ord("a") + i) for i in range(nf)]
    col = [chr(ord("A") + i) for i in range(nf)]
    for i in range(nf):
        if i not in keep:
            col[i] = row[i]  # traced factor: row and column indices contract
    spec = "".join(row) + "".join(col)
    out = "".join(row[i] for i in keep) + "".join(col[i] for i in keep)
    r = np.einsum(f"{spec}->{out}", a.reshape(dims + dims))
    d_keep = int(np.prod([dims[i] for i in keep]))
    return r.reshape(d_keep, d_keep)


def kron(a, b) -> np.ndarray:
    """Tensor product of two square matrices."""
    return np.kron(as_matrix(a), as_matrix(b))
