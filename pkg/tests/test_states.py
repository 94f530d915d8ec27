import json

import numpy as np
import pytest

from qdephase import states
from qdephase.errors import InvalidState
from qdephase.states import FamilyParams, initial_pure, maximally_mixed, mixed_reference


def test_params_validation():
    with pytest.raises(ValueError):
        FamilyParams(-0.1)
    with pytest.raises(ValueError):
        FamilyParams(1.0001)
    assert FamilyParams(0.0).norm == 1.0
    assert FamilyParams(0.5).norm == 0.5


class TestInitialPure:
    def test_separable_endpoint(self):
        rho = initial_pure(FamilyParams(0.0)).matrix
        expect = np.zeros((4, 4), dtype=complex)
        expect[3, 3] = 1.0
        assert np.array_equal(rho, expect)

    def test_maximally_entangled(self):
        rho = initial_pure(FamilyParams(0.5)).matrix
        expect = np.zeros((4, 4), dtype=complex)
        expect[0, 0] = expect[3, 3] = expect[0, 3] = expect[3, 0] = 0.5
        assert np.abs(rho - expect).max() < 1e-15

    def test_quarter_entries(self):
        rho = initial_pure(FamilyParams(0.25)).matrix
        assert rho[0, 0] == pytest.approx(0.1, abs=1e-15)
        assert rho[3, 3] == pytest.approx(0.9, abs=1e-15)
        assert rho[0, 3] == pytest.approx(0.3, abs=1e-15)

    def test_purity_over_grid(self):
        for eps in np.linspace(0.0, 1.0, 101):
            rho = initial_pure(FamilyParams(float(eps), 0.37))
            assert abs(rho.purity() - 1.0) < 1e-12

    def test_middle_block_bit_zero(self):
        for eps in (0.0, 0.3, 0.5, 0.9):
            m = initial_pure(FamilyParams(eps, 1.1)).matrix
            assert np.count_nonzero(m[1:3, :]) == 0
            assert np.count_nonzero(m[:, 1:3]) == 0

    def test_phase_lands_on_corner(self):
        rho = initial_pure(FamilyParams(0.5, 0.7)).matrix
        assert rho[0, 3] == pytest.approx(0.5 * np.exp(-0.7j), abs=1e-15)


class TestReferences:
    def test_pure_reference_matches_initial(self):
        a = states.pure_reference(FamilyParams(0.3, 0.0)).matrix
        b = initial_pure(FamilyParams(0.3, 0.0)).matrix
        assert np.array_equal(a, b)

    def test_pure_reference_is_projector(self):
        for phase in (0.0, 1.3, -2.2):
            assert states.pure_reference(
                FamilyParams(0.5, phase)).purity() == pytest.approx(1.0, abs=1e-14)

    def test_maximally_mixed(self):
        rho = maximally_mixed()
        assert np.trace(rho.matrix) == pytest.approx(1.0, abs=0)
        assert np.array_equal(rho.matrix, np.eye(4) / 4)

    def test_mixed_reference_corner(self):
        m = mixed_reference(1.0, 0.0).matrix
        assert m[0, 0] == m[3, 3] == 0.5
        assert m[0, 3] == pytest.approx(np.exp(-2.0) / 2, abs=1e-15)
        assert m[0, 3] == pytest.approx(0.06766764161830635, abs=1e-15)

    def test_mixed_reference_limits(self):
        # vanishing coherence for a hot reservoir
        m = mixed_reference(200.0).matrix
        assert np.abs(m - np.diag([0.5, 0.0, 0.0, 0.5])).max() < 1e-100
        # untouched corner at ntilde = 0 recovers the projector
        assert np.abs(mixed_reference(0.0).matrix
                      - initial_pure(FamilyParams(0.5)).matrix).max() < 1e-15

    def test_mixed_reference_family_reduces(self):
        a = states.mixed_reference_family(0.5, 1.3, 0.4).matrix
        b = mixed_reference(1.3, 0.4).matrix
        assert np.abs(a - b).max() < 1e-15


class TestValidate:
    def test_accepts_maximally_mixed(self):
        states.validate(np.eye(4, dtype=complex) / 4)

    def test_rejects_trace(self):
        with pytest.raises(InvalidState) as err:
            states.validate(np.diag([1.0, 1.0, 0.0, 0.0]).astype(complex))
        assert any("trace" in d for d in err.value.diagnostics)

    def test_rejects_negative_eigenvalue(self):
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0] = m[3, 3] = 0.5
        m[0, 3] = m[3, 0] = 0.51
        with pytest.raises(InvalidState) as err:
            states.validate(m)
        assert any("eigenvalue" in d for d in err.value.diagnostics)

    def test_rejects_non_hermitian(self):
        m = np.eye(4, dtype=complex) / 4
        m[0, 1] = 0.2
        with pytest.raises(InvalidState) as err:
            states.validate(m)
        assert any("hermiticity" in d for d in err.value.diagnostics)

    def test_check_reports_magnitudes(self):
        problems = states.check(np.diag([2.0, 0.0, 0.0, 0.0]).astype(complex))
        assert problems and "1.000e+00" in problems[0]

    def test_matrix_is_immutable(self):
        rho = maximally_mixed()
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 9.0


class TestJson:
    def test_round_trip(self, tmp_path):
        rho = initial_pure(FamilyParams(0.25, 0.9))
        path = tmp_path / "state.json"
        states.save_state(rho, path)
        back = states.load_state(path)
        assert np.abs(back.matrix - rho.matrix).max() < 1e-15

    def test_schema_fields(self):
        blob = states.state_to_json(maximally_mixed())
        assert blob["dim"] == 4
        assert blob["re"][0][0] == 0.25
        assert blob["im"][2][2] == 0.0

    def test_reader_validates(self):
        bad = {"dim": 4,
               "re": np.diag([1.0, 1.0, 0.0, 0.0]).tolist(),
               "im": np.zeros((4, 4)).tolist()}
        with pytest.raises(InvalidState):
            states.state_from_json(json.dumps(bad))

    def test_reader_rejects_malformed(self):
        with pytest.raises(InvalidState):
            states.state_from_json({"dim": 4, "re": [[1.0]]})
