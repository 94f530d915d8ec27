import math

import numpy as np
import pytest

from qdephase import measures
from qdephase.errors import SupportMismatch
from qdephase.states import (
    FamilyParams,
    family_state,
    initial_pure,
    maximally_mixed,
    mixed_reference,
)

BELL = initial_pure(FamilyParams(0.5))


def family(eps, abs_a, phase=0.0):
    return family_state(eps, abs_a * np.exp(-1j * phase))


class TestLinearEntropy:
    def test_pure_state(self):
        assert measures.linear_entropy(
            initial_pure(FamilyParams(0.3))) == pytest.approx(0.0, abs=1e-14)

    def test_maximally_mixed(self):
        assert measures.linear_entropy(maximally_mixed()) == pytest.approx(1.0, abs=1e-15)

    def test_fully_damped_half(self):
        rho = family(0.5, 0.0)
        assert measures.linear_entropy(rho) == pytest.approx(2.0 / 3.0, abs=1e-14)

    def test_closed_form_values(self):
        assert measures.linear_entropy_closed(0.5, 0.0) == 0.0
        assert measures.linear_entropy_closed(0.5, 1.0) == pytest.approx(2 / 3, abs=1e-15)
        assert measures.linear_entropy_closed(0.25, 0.5) == pytest.approx(0.12, abs=1e-15)

    def test_closed_vs_spectral_grid(self):
        for eps in np.linspace(0.0, 1.0, 50):
            for gamma in np.linspace(0.0, 1.0, 50):
                rho = family(float(eps), math.sqrt(1 - gamma), phase=0.4)
                diff = abs(measures.linear_entropy(rho)
                           - measures.linear_entropy_closed(float(eps), float(gamma)))
                assert diff < 1e-12


class TestNegativity:
    def test_bell(self):
        assert measures.negativity(BELL) == pytest.approx(1.0, abs=1e-14)

    def test_separable(self):
        assert measures.negativity(maximally_mixed()) == 0.0

    def test_initial_quarter(self):
        assert measures.negativity(initial_pure(FamilyParams(0.25))) == pytest.approx(
            0.6, abs=1e-14)

    def test_closed_form(self):
        assert measures.negativity_closed(0.3, 0.0) == 0.0
        assert measures.negativity_closed(0.5, 0.8) == pytest.approx(0.8, abs=1e-15)
        assert measures.negativity_closed(0.25, 0.5) == pytest.approx(0.3, abs=1e-15)

    def test_closed_vs_spectral_grid(self):
        for eps in np.linspace(0.0, 1.0, 50):
            for gamma in np.linspace(0.0, 1.0, 50):
                abs_a = math.sqrt(1 - gamma)
                rho = family(float(eps), abs_a, phase=-0.9)
                diff = abs(measures.negativity(rho)
                           - measures.negativity_closed(float(eps), abs_a))
                assert diff < 1e-12


class TestConcurrence:
    def test_bell(self):
        assert measures.concurrence_wootters(BELL) == pytest.approx(1.0, abs=1e-12)

    def test_product_state(self):
        assert measures.concurrence_wootters(initial_pure(FamilyParams(0.0))) == 0.0
        assert measures.concurrence_wootters(initial_pure(FamilyParams(1.0))) == 0.0

    def test_equals_negativity_on_family(self):
        for eps in np.linspace(0.0, 1.0, 21):
            for abs_a in np.linspace(0.0, 1.0, 21):
                rho = family(float(eps), float(abs_a), phase=0.2)
                assert abs(measures.concurrence_wootters(rho)
                           - measures.negativity(rho)) < 1e-10

    def test_closed_form_against_its_algebra(self):
        # the closed form equals sqrt(Tr rho^2) on this family
        for eps in (0.0, 0.2, 0.5, 0.77):
            for abs_a in (0.0, 0.3, 1.0):
                rho = family(eps, abs_a)
                assert measures.concurrence_family(eps, abs_a) == pytest.approx(
                    math.sqrt(rho.purity()), abs=1e-14)

    def test_closed_form_half(self):
        for gamma in np.linspace(0.0, 1.0, 11):
            val = measures.concurrence_family(0.5, math.sqrt(1 - gamma))
            assert val == pytest.approx(math.sqrt(1 - gamma / 2), abs=1e-14)
        assert measures.concurrence_family(0.5, 0.0) == pytest.approx(
            math.sqrt(0.5), abs=1e-14)

    def test_documented_disagreement_at_endpoints(self):
        # closed form reports 1 on the pure product endpoints, the spin-flip
        # definition reports 0; both pipelines must hold their value
        assert measures.concurrence_family(0.0, 1.0) == 1.0
        assert measures.concurrence_wootters(initial_pure(FamilyParams(0.0))) == 0.0


class TestEof:
    def test_endpoints(self):
        assert measures.eof(1.0) == pytest.approx(1.0, abs=1e-15)
        assert measures.eof(0.0) == 0.0

    def test_half(self):
        assert measures.eof(0.5) == pytest.approx(0.35457890266527003, abs=1e-11)

    def test_monotone(self):
        grid = np.linspace(0.0, 1.0, 1001)
        vals = [measures.eof(float(c)) for c in grid]
        assert all(b >= a - 1e-15 for a, b in zip(vals, vals[1:]))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            measures.eof(1.2)


class TestFidelity:
    def test_self_fidelity(self):
        for rho in (BELL, maximally_mixed(), family(0.3, 0.6)):
            assert measures.uhlmann_fidelity(rho, rho) == pytest.approx(1.0, abs=1e-12)

    def test_bell_vs_maximally_mixed(self):
        assert measures.uhlmann_fidelity(BELL, maximally_mixed()) == pytest.approx(
            0.25, abs=1e-12)

    def test_commuting_diagonal(self):
        rho = family(0.5, 0.0)
        assert measures.uhlmann_fidelity(rho, maximally_mixed()) == pytest.approx(
            0.5, abs=1e-12)

    def test_symmetry_and_pure_reduction(self):
        rng = np.random.default_rng(31)
        for _ in range(25):
            g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            m = g @ g.conj().T
            m /= m.trace().real
            rho = family(0.4, 0.7, phase=0.5)
            f1 = measures.uhlmann_fidelity(rho, m)
            f2 = measures.uhlmann_fidelity(m, rho)
            assert abs(f1 - f2) < 1e-10
            pure = initial_pure(FamilyParams(0.5, 0.9))
            overlap = float(np.trace(pure.matrix @ m).real)
            assert abs(measures.uhlmann_fidelity(m, pure) - overlap) < 1e-10


class TestBures:
    def test_identical(self):
        assert measures.bures_distance(BELL, BELL) == pytest.approx(0.0, abs=1e-7)

    def test_orthogonal_pure(self):
        a = initial_pure(FamilyParams(0.0))
        b = initial_pure(FamilyParams(1.0))
        assert measures.bures_distance(a, b) == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_bell_vs_maximally_mixed(self):
        assert measures.bures_distance(BELL, maximally_mixed()) == pytest.approx(
            1.0, abs=1e-12)


class TestRelativeEntropy:
    def test_self_zero(self):
        assert measures.relative_entropy_exact(BELL, BELL) == pytest.approx(
            0.0, abs=1e-14)

    def test_bell_vs_maximally_mixed(self):
        val = measures.relative_entropy_exact(BELL, maximally_mixed())
        assert val == pytest.approx(math.log(4.0), abs=1e-12)

    def test_partially_damped(self):
        # weights land entirely on the (1+|a|)/2 eigenvector
        rho = family(0.5, 0.5)
        val = measures.relative_entropy_exact(BELL, rho)
        assert val == pytest.approx(-math.log(0.75), abs=1e-12)
        assert val == pytest.approx(0.2876820724517809, abs=1e-12)

    def test_support_mismatch(self):
        rho = initial_pure(FamilyParams(0.0))
        with pytest.raises(SupportMismatch):
            measures.relative_entropy_exact(BELL, rho)

    def test_linearized(self):
        assert measures.relative_entropy_linearized(BELL, BELL) == pytest.approx(
            0.0, abs=1e-15)
        assert measures.relative_entropy_linearized(
            maximally_mixed(), BELL) == pytest.approx(0.75, abs=1e-15)

    def test_linearized_below_exact(self):
        for eps in (0.2, 0.5, 0.8):
            for abs_a in (0.1, 0.6, 0.95):
                rho = family(eps, abs_a)
                ref = initial_pure(FamilyParams(eps))
                lin = measures.relative_entropy_linearized(rho, ref)
                exact = measures.relative_entropy_exact(ref, rho)
                assert lin <= exact + 1e-12

    def test_requires_pure_reference(self):
        from qdephase.errors import InvalidState
        with pytest.raises(InvalidState):
            measures.relative_entropy_exact(maximally_mixed(), BELL)


class TestMonotonicRelations:
    def test_no_damping(self):
        res = measures.monotonic_relations_check(0.3, 0.0)
        assert res.delta12 == pytest.approx(0.0, abs=1e-15)
        assert res.concurrence == pytest.approx(0.0, abs=1e-15)

    def test_half_identity(self):
        # delta12 = (2/3)(1 - N^2) at eps = 1/2
        for gamma in np.linspace(0.0, 1.0, 21):
            res = measures.monotonic_relations_check(0.5, float(gamma))
            assert abs(res.delta12) < 1e-12
            assert abs(res.concurrence) < 1e-12

    def test_general_grid(self):
        for eps in np.linspace(0.0, 1.0, 50):
            for gamma in np.linspace(0.0, 1.0, 50):
                res = measures.monotonic_relations_check(float(eps), float(gamma))
                assert abs(res.delta12) < 1e-12
                assert abs(res.concurrence) < 1e-12


class TestMixedReferencePartialTranspose:
    def test_always_entangled(self):
        from qdephase.matcore import partial_transpose
        for ntilde in (0.2, 1.0, 4.0):
            pt = partial_transpose(mixed_reference(ntilde).matrix)
            low = np.linalg.eigvalsh(pt).min()
            assert low == pytest.approx(-math.exp(-2 * ntilde) / 2, abs=1e-14)
            assert low < 0
