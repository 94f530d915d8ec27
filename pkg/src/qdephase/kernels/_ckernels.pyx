# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel backend: cyclic Jacobi eigensolver for small Hermitian
matrices plus the fidelity and closest-separable-state objective built on it.

Mirrors qdephase.kernels._pykernels exactly (parity-tested); exists because
the separable-state search evaluates the objective tens of thousands of
times per call.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()

BACKEND = "cython"

NOISE_FLOOR_REL = 64.0 * np.finfo(float).eps

cdef double _NOISE = 64.0 * 2.220446049250313e-16
cdef int _MAX_SWEEPS = 100


cdef int _jacobi(double complex* a, double complex* v, double* w, int n,
                 bint want_vectors) noexcept nogil:
    """In-place cyclic Jacobi on Hermitian a (row-major n*n).

    Fills w with unsorted diagonal eigenvalues; v (if wanted) accumulates
    the rotations as columns. Returns 0, or -1 on no convergence.
    """
    cdef int p, q, k, sweep
    cdef bint converged = False
    cdef double app, aqq, m, theta, t, c, s, off, scale
    cdef double complex apq, ph, xp, xq

    if want_vectors:
        for p in range(n):
            for q in range(n):
                v[p * n + q] = 1.0 if p == q else 0.0

    scale = 0.0
    for p in range(n):
        for q in range(n):
            m = fabs(a[p * n + q].real) + fabs(a[p * n + q].imag)
            if m > scale:
                scale = m
    if scale == 0.0:
        for p in range(n):
            w[p] = 0.0
        return 0

    for sweep in range(_MAX_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p * n + q]
                off += apq.real * apq.real + apq.imag * apq.imag
        if sqrt(off) <= 1e-14 * scale:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p * n + q]
                m = sqrt(apq.real * apq.real + apq.imag * apq.imag)
                if m <= 1e-20 * scale:
                    a[p * n + q] = 0.0
                    a[q * n + p] = 0.0
                    continue
                ph = apq / m
                app = a[p * n + p].real
                aqq = a[q * n + q].real
                theta = (aqq - app) / (2.0 * m)
                if theta >= 0.0:
                    t = -1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = 1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                # column update: A <- A U with U[p,p]=U[q,q]=c,
                # U[p,q] = -s*ph, U[q,p] = s*conj(ph)
                for k in range(n):
                    xp = a[k * n + p]
                    xq = a[k * n + q]
                    a[k * n + p] = c * xp + s * ph.conjugate() * xq
                    a[k * n + q] = -s * ph * xp + c * xq
                # row update: A <- U† A
                for k in range(n):
                    xp = a[p * n + k]
                    xq = a[q * n + k]
                    a[p * n + k] = c * xp + s * ph * xq
                    a[q * n + k] = -s * ph.conjugate() * xp + c * xq
                a[p * n + q] = 0.0
                a[q * n + p] = 0.0
                a[p * n + p] = a[p * n + p].real
                a[q * n + q] = a[q * n + q].real
                if want_vectors:
                    for k in range(n):
                        xp = v[k * n + p]
                        xq = v[k * n + q]
                        v[k * n + p] = c * xp + s * ph.conjugate() * xq
                        v[k * n + q] = -s * ph * xp + c * xq

    if not converged:
        return -1
    for p in range(n):
        w[p] = a[p * n + p].real
    return 0


cdef void _sort_ascending(double* w, double complex* v, int n,
                          bint with_vectors) noexcept nogil:
    # insertion sort; stable, deterministic
    cdef int i, j, k, r
    cdef double key
    cdef double complex col
    for i in range(1, n):
        key = w[i]
        j = i - 1
        while j >= 0 and w[j] > key:
            j -= 1
        j += 1
        if j == i:
            continue
        for k in range(i, j, -1):
            w[k] = w[k - 1]
        w[j] = key
        if with_vectors:
            for r in range(n):
                col = v[r * n + i]
                for k in range(i, j, -1):
                    v[r * n + k] = v[r * n + k - 1]
                v[r * n + j] = col


def eigh_herm(m):
    """Eigenvalues (ascending) and eigenvector columns of a Hermitian matrix."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] a = np.array(
        m, dtype=np.complex128, order="C", copy=True)
    cdef int n = a.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] v = np.empty((n, n), dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = np.empty(n, dtype=np.float64)
    if _jacobi(<double complex*> cnp.PyArray_DATA(a),
               <double complex*> cnp.PyArray_DATA(v),
               <double*> cnp.PyArray_DATA(w), n, True) < 0:
        raise RuntimeError("jacobi sweep budget exhausted")
    _sort_ascending(<double*> cnp.PyArray_DATA(w),
                    <double complex*> cnp.PyArray_DATA(v), n, True)
    return w, v


def eigvalsh_herm(m):
    """Ascending eigenvalues of a Hermitian matrix."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] a = np.array(
        m, dtype=np.complex128, order="C", copy=True)
    cdef int n = a.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = np.empty(n, dtype=np.float64)
    if _jacobi(<double complex*> cnp.PyArray_DATA(a), NULL,
               <double*> cnp.PyArray_DATA(w), n, False) < 0:
        raise RuntimeError("jacobi sweep budget exhausted")
    _sort_ascending(<double*> cnp.PyArray_DATA(w), NULL, n, False)
    return w


def psd_sqrt_with_min(m):
    """PSD square root, clipping noise-level negatives. Returns (sqrt, min_eig)."""
    w, v = eigh_herm(m)
    wmin = float(w[0])
    w = np.where(w > 0.0, w, 0.0)
    top = w.max(initial=0.0)
    w = np.where(w >= NOISE_FLOOR_REL * top, w, 0.0)
    s = (v * np.sqrt(w)) @ v.conj().T
    return (s + s.conj().T) / 2.0, wmin


cdef double _sqrt_fidelity4(double complex* sr, double complex* sg) noexcept nogil:
    """Tr sqrt(sr @ sg @ sr) for 4x4 Hermitian sr (a PSD sqrt) and sg."""
    cdef double complex tmp[16]
    cdef double complex prod[16]
    cdef double w[4]
    cdef int i, j, k
    cdef double complex acc
    cdef double top, wi, total

    for i in range(4):
        for j in range(4):
            acc = 0.0
            for k in range(4):
                acc = acc + sr[i * 4 + k] * sg[k * 4 + j]
            tmp[i * 4 + j] = acc
    for i in range(4):
        for j in range(4):
            acc = 0.0
            for k in range(4):
                acc = acc + tmp[i * 4 + k] * sr[k * 4 + j]
            prod[i * 4 + j] = acc
    # hermitize against roundoff
    for i in range(4):
        for j in range(i, 4):
            acc = 0.5 * (prod[i * 4 + j] + prod[j * 4 + i].conjugate())
            prod[i * 4 + j] = acc
            prod[j * 4 + i] = acc.conjugate()
    if _jacobi(prod, NULL, w, 4, False) < 0:
        return -1.0
    top = 0.0
    for i in range(4):
        if w[i] > top:
            top = w[i]
    total = 0.0
    for i in range(4):
        wi = w[i]
        if wi > 0.0 and wi >= _NOISE * top:
            total += sqrt(wi)
    return total


def sqrt_fidelity(sqrt_rho, sigma):
    """Tr sqrt(sqrt_rho @ sigma @ sqrt_rho) for a precomputed sqrt_rho."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] sr = np.ascontiguousarray(
        sqrt_rho, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] sg = np.ascontiguousarray(
        sigma, dtype=np.complex128)
    if sr.shape[0] != 4 or sg.shape[0] != 4:
        raise ValueError("compiled sqrt_fidelity handles 4x4 only")
    cdef double out = _sqrt_fidelity4(<double complex*> cnp.PyArray_DATA(sr),
                                      <double complex*> cnp.PyArray_DATA(sg))
    if out < 0.0:
        raise RuntimeError("jacobi sweep budget exhausted")
    return out


cdef void _partial_transpose4(double complex* m, double complex* out) noexcept nogil:
    # second-qubit transpose: out[(i1,j2),(j1,i2)] = m[(i1,i2),(j1,j2)]
    cdef int i1, i2, j1, j2
    for i1 in range(2):
        for i2 in range(2):
            for j1 in range(2):
                for j2 in range(2):
                    out[(2 * i1 + j2) * 4 + (2 * j1 + i2)] = \
                        m[(2 * i1 + i2) * 4 + (2 * j1 + j2)]


def pt_min_eig(m):
    """Minimum eigenvalue of the partial transpose (second qubit) of a 4x4 matrix."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] a = np.ascontiguousarray(
        m, dtype=np.complex128)
    cdef double complex pt[16]
    cdef double w[4]
    cdef int i
    cdef double lo
    if a.shape[0] != 4:
        raise ValueError("compiled pt_min_eig handles 4x4 only")
    _partial_transpose4(<double complex*> cnp.PyArray_DATA(a), pt)
    if _jacobi(pt, NULL, w, 4, False) < 0:
        raise RuntimeError("jacobi sweep budget exhausted")
    lo = w[0]
    for i in range(1, 4):
        if w[i] < lo:
            lo = w[i]
    return lo


cdef int _sigma_from_params(double* x, double complex* sigma) noexcept nogil:
    cdef double complex ell[16]
    cdef int i, j, k
    cdef double complex acc
    cdef double tr
    for i in range(16):
        ell[i] = 0.0
    ell[0] = x[0]
    ell[4] = x[1] + 1j * x[2]
    ell[5] = x[3]
    ell[8] = x[4] + 1j * x[5]
    ell[9] = x[6] + 1j * x[7]
    ell[10] = x[8]
    ell[12] = x[9] + 1j * x[10]
    ell[13] = x[11] + 1j * x[12]
    ell[14] = x[13] + 1j * x[14]
    ell[15] = x[15]
    for i in range(4):
        for j in range(4):
            acc = 0.0
            for k in range(4):
                acc = acc + ell[i * 4 + k] * ell[j * 4 + k].conjugate()
            sigma[i * 4 + j] = acc
    tr = (sigma[0] + sigma[5] + sigma[10] + sigma[15]).real
    if tr < 1e-120:
        return 1
    for i in range(16):
        sigma[i] = sigma[i] / tr
    return 0


def sigma_from_params(x):
    """Map 16 reals to a unit-trace PSD 4x4 matrix via sigma = LL†/Tr(LL†).

    L is lower triangular: 4 real diagonal entries and 6 complex
    strictly-lower entries, packed row by row.
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xv = np.ascontiguousarray(
        x, dtype=np.float64)
    if xv.shape[0] != 16:
        raise ValueError("expected 16 parameters")
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] sigma = np.empty(
        (4, 4), dtype=np.complex128)
    if _sigma_from_params(<double*> cnp.PyArray_DATA(xv),
                          <double complex*> cnp.PyArray_DATA(sigma)) != 0:
        return None
    return sigma


def css_objective(x, sqrt_rho, penalty_weight):
    """Penalized Bures objective: 1 - sqrt(F) + w * sum(max(0, -pt_eigs)^2)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xv = np.ascontiguousarray(
        x, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] sr = np.ascontiguousarray(
        sqrt_rho, dtype=np.complex128)
    if xv.shape[0] != 16 or sr.shape[0] != 4:
        raise ValueError("expected 16 parameters and a 4x4 sqrt_rho")
    cdef double weight = penalty_weight
    cdef double complex sigma[16]
    cdef double complex pt[16]
    cdef double w[4]
    cdef double val, pen
    cdef int i
    if _sigma_from_params(<double*> cnp.PyArray_DATA(xv), sigma) != 0:
        return 1e6
    val = _sqrt_fidelity4(<double complex*> cnp.PyArray_DATA(sr), sigma)
    if val < 0.0:
        raise RuntimeError("jacobi sweep budget exhausted")
    _partial_transpose4(sigma, pt)
    if _jacobi(pt, NULL, w, 4, False) < 0:
        raise RuntimeError("jacobi sweep budget exhausted")
    pen = 0.0
    for i in range(4):
        if w[i] < 0.0:
            pen += w[i] * w[i]
    return 1.0 - val + weight * pen
