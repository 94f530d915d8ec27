"""Scalar entanglement and mixedness measures.

Two routes are carried side by side wherever the closed form disagrees with
the general definition: spectral pipelines (authoritative) and the family
closed forms (reproduction targets). They are asserted against each other in
tests rather than reconciled here.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidState, SupportMismatch
from .matcore import DEFAULT_TOL, as_matrix, hermitian_eig, partial_transpose, psd_sqrt

# weight a pure reference may carry outside the state's support before the
# relative entropy is reported as infinite
SUPPORT_WEIGHT_TOL = 1e-8

_SY2 = np.array(
    [[0, 0, 0, -1],
     [0, 0, 1, 0],
     [0, 1, 0, 0],
     [-1, 0, 0, 0]], dtype=complex)  # sigma_y (x) sigma_y, the two-qubit spin flip


def _norm(epsilon: float) -> float:
    return epsilon**2 + (1.0 - epsilon) ** 2


def linear_entropy(rho) -> float:
    """Normalized mixedness (4/3)(1 - Tr rho^2): 0 pure, 1 maximally mixed."""
    m = as_matrix(rho)
    purity = float(np.vdot(m, m).real)
    return min(1.0, max(0.0, (4.0 / 3.0) * (1.0 - purity)))


def linear_entropy_closed(epsilon: float, gamma: float) -> float:
    """Family closed form (8/3) eps^2 (1-eps)^2 gamma / n^2."""
    n = _norm(epsilon)
    return (8.0 / 3.0) * epsilon**2 * (1.0 - epsilon) ** 2 * gamma / n**2


def negativity(rho) -> float:
    """Twice the magnitude of the most negative partial-transpose eigenvalue."""
    pt = partial_transpose(rho, "second")
    w = kernels.eigvalsh_herm((pt + pt.conj().T) / 2.0)
    return 2.0 * max(0.0, -float(w[0]))


def negativity_closed(epsilon: float, abs_a: float) -> float:
    """Family closed form 2 eps (1-eps) |a| / n."""
    return 2.0 * epsilon * (1.0 - epsilon) * abs_a / _norm(epsilon)


def concurrence_wootters(rho) -> float:
    """Spin-flip concurrence max{0, sqrt(l1)-sqrt(l2)-sqrt(l3)-sqrt(l4)}.

    The l_i are the (descending) eigenvalues of rho.(sy x sy).rho*.(sy x sy),
    conjugation in the computational basis. Their square roots equal the
    singular values of sqrt(rho).(sy x sy).conj(sqrt(rho)), which avoids the
    sqrt-of-noise blowup at zero eigenvalues.
    """
    m = as_matrix(rho)
    s = psd_sqrt(m)
    k = s @ _SY2 @ s.conj()
    roots = np.linalg.svd(k, compute_uv=False)
    return max(0.0, float(roots[0] - roots[1] - roots[2] - roots[3]))


def concurrence_family(epsilon: float, abs_a: float) -> float:
    """Family closed-form concurrence sqrt(1 - 2 eps^2 (1-eps)^2 (1-|a|^2)/n^2).

    Kept as a separate, clearly labeled quantity: it equals sqrt(Tr rho^2)
    on this family and disagrees with the spin-flip value away from
    epsilon = 1/2 (it returns 1 at |a| = 1 even for product endpoints).
    """
    n = _norm(epsilon)
    rad = 1.0 - 2.0 * epsilon**2 * (1.0 - epsilon) ** 2 * (1.0 - abs_a**2) / n**2
    return math.sqrt(max(0.0, rad))


def eof(c: float) -> float:
    """Entanglement of formation h((1 + sqrt(1-c^2))/2) for concurrence c."""
    if not 0.0 <= c <= 1.0 + 1e-12:
        raise ValueError(f"concurrence must be in [0, 1], got {c}")
    c = min(c, 1.0)
    x = 0.5 * (1.0 + math.sqrt(max(0.0, 1.0 - c * c)))
    return _binary_entropy(x)


def _binary_entropy(x: float) -> float:
    total = 0.0
    for v in (x, 1.0 - x):
        if v > 0.0:
            total -= v * math.log2(v)
    return total


def uhlmann_fidelity(rho, sigma) -> float:
    """General fidelity {Tr sqrt(sqrt(rho) sigma sqrt(rho))}^2, in [0, 1]."""
    s = psd_sqrt(as_matrix(rho))
    val = kernels.sqrt_fidelity(s, as_matrix(sigma))
    return min(1.0, val * val)


def bures_distance(rho, sigma) -> float:
    """Fidelity-derived metric sqrt(2 - 2 sqrt(F)), in [0, sqrt(2)]."""
    f = uhlmann_fidelity(rho, sigma)
    return math.sqrt(max(0.0, 2.0 - 2.0 * math.sqrt(f)))


def _assert_pure(sigma_p) -> np.ndarray:
    m = as_matrix(sigma_p)
    purity = float(np.vdot(m, m).real)
    if abs(purity - 1.0) > 1e-8:
        raise InvalidState([f"reference must be pure, Tr sigma^2 = {purity:.6f}"])
    return m


def relative_entropy_exact(sigma_p, rho, tol=DEFAULT_TOL) -> float:
    """-Tr(sigma_p ln rho) in nats for a pure reference sigma_p.

    Computed on the support of rho; raises SupportMismatch (the value is
    +inf) when sigma_p carries weight >= 1e-8 outside that support.
    """
    sp = _assert_pure(sigma_p)
    w, v = hermitian_eig(as_matrix(rho), tol)
    weights = np.einsum("ij,jk,ki->i", v.conj().T, sp, v).real
    on_support = w > tol.psd
    outside = float(weights[~on_support].sum())
    if outside >= SUPPORT_WEIGHT_TOL:
        raise SupportMismatch(
            f"reference weight {outside:.3e} outside the state's support")
    val = -float(np.dot(weights[on_support], np.log(w[on_support])))
    return max(0.0, val)


def relative_entropy_linearized(rho, sigma_p) -> float:
    """First-order relative entropy 1 - Tr(sigma_p rho); never above the exact value."""
    sp = _assert_pure(sigma_p)
    val = 1.0 - float(np.trace(sp @ as_matrix(rho)).real)
    return min(1.0, max(0.0, val))


@dataclass(frozen=True)
class MonotonicResiduals:
    """Residuals of the inter-measure relations on the family."""

    delta12: float      # delta12 - (2/3)(N0^2 - Nt^2)
    concurrence: float  # C_closed - sqrt(1 - (N0^2 - Nt^2)/2)


def monotonic_relations_check(epsilon: float, gamma: float) -> MonotonicResiduals:
    """Both monotonic inter-measure relations at one (epsilon, gamma) point."""
    abs_a = math.sqrt(max(0.0, 1.0 - gamma))
    n0 = negativity_closed(epsilon, 1.0)
    nt = negativity_closed(epsilon, abs_a)
    drop = n0 * n0 - nt * nt
    r1 = linear_entropy_closed(epsilon, gamma) - (2.0 / 3.0) * drop
    r2 = concurrence_family(epsilon, abs_a) - math.sqrt(1.0 - 0.5 * drop)
    return MonotonicResiduals(delta12=r1, concurrence=r2)


@dataclass(frozen=True)
class MeasureRecord:
    """One sweep point: channel coordinates plus every computed measure.

    er_exact is in nats; math.inf encodes a support mismatch. Column names
    of the CSV schema match the field names (er_exact maps to er_exact_nats).
    """

    epsilon: float
    t: float
    gamma: float
    abs_a: float
    delta12: float
    negativity: float
    concurrence_wootters: float
    concurrence_paper: float
    eof: float
    fidelity_pure: float
    e_pure: float
    e_mixed: float
    e_maxmixed: float
    er_exact: float
    er_lin: float

    def violations(self) -> list:
        """Invariant diagnostics: all fields finite (er_exact may be inf),
        measures within their ranges."""
        out = []
        for name in ("epsilon", "t", "gamma", "abs_a", "delta12", "negativity",
                     "concurrence_wootters", "concurrence_paper", "eof",
                     "fidelity_pure", "e_pure", "e_mixed", "e_maxmixed", "er_lin"):
            v = getattr(self, name)
            if not math.isfinite(v):
                out.append(f"{name} is not finite: {v}")
        unit_ranged = ("delta12", "negativity", "concurrence_wootters",
                       "concurrence_paper", "eof", "fidelity_pure", "e_pure",
                       "e_mixed", "e_maxmixed", "er_lin")
        for name in unit_ranged:
            v = getattr(self, name)
            if not -1e-12 <= v <= 1.0 + 1e-12:
                out.append(f"{name} outside [0, 1]: {v}")
        if self.er_exact < 0:
            out.append(f"er_exact negative: {self.er_exact}")
        return out
