import math

import numpy as np
import pytest

from eptool import linalg
from eptool.hamiltonians import (
    AntiPTQubit,
    Custom,
    PhaseLabel,
    PTQubit,
    PTQudit,
    SPIN_3_2_X,
    SPIN_3_2_Z,
    analytic_eigenvalues,
    build_matrix,
    classify_phase_analytic,
    critical_gap,
    energy_scale,
    model_from_dict,
    model_to_dict,
)

from conftest import SX, SZ


def test_pt_qubit_matrix():
    np.testing.assert_array_equal(build_matrix(PTQubit(1.0, 0.0)), SX)
    np.testing.assert_array_equal(build_matrix(PTQubit(1.0, 1.0)), np.array([[1j, 1], [1, -1j]]))
    np.testing.assert_allclose(build_matrix(PTQubit(2.0, 0.3)), 2.0 * (SX + 0.3j * SZ))


def test_anti_pt_matrix():
    np.testing.assert_allclose(build_matrix(AntiPTQubit(1.0, 0.0, 0.0)), 1j * SX)
    h = build_matrix(AntiPTQubit(0.7, 1.3, 0.4))
    assert h[0, 0] == pytest.approx(1.3 * 0.7 * np.exp(0.4j))
    assert h[1, 1] == pytest.approx(-1.3 * 0.7 * np.exp(-0.4j))
    assert h[0, 1] == h[1, 0] == pytest.approx(0.7j)


def test_spin_matrices():
    assert np.allclose(SPIN_3_2_Z, np.diag([1.5, 0.5, -0.5, -1.5]))
    assert np.allclose(SPIN_3_2_X, SPIN_3_2_X.conj().T)
    np.testing.assert_allclose(np.linalg.eigvalsh(SPIN_3_2_X), [-1.5, -0.5, 0.5, 1.5], atol=1e-14)
    # S^2 = s(s+1) with Sy from the commutator
    sy = (SPIN_3_2_Z @ SPIN_3_2_X - SPIN_3_2_X @ SPIN_3_2_Z) / 1j
    s2 = SPIN_3_2_X @ SPIN_3_2_X + sy @ sy + SPIN_3_2_Z @ SPIN_3_2_Z
    np.testing.assert_allclose(s2, 3.75 * np.eye(4), atol=1e-13)


def test_qudit_matrix():
    np.testing.assert_allclose(build_matrix(PTQudit(2.2, 1.0)), -2.2 * SPIN_3_2_X + 1j * SPIN_3_2_Z)


@pytest.mark.parametrize("model, expected", [
    (PTQubit(1.0, 0.5), [-math.sqrt(0.75), math.sqrt(0.75)]),
    (PTQubit(1.0, 2.0), [-1j * math.sqrt(3), 1j * math.sqrt(3)]),
    (PTQubit(1.0, 1.0), [0, 0]),
    (AntiPTQubit(1.0, 1.4, 0.0), [-math.sqrt(0.96), math.sqrt(0.96)]),
    (AntiPTQubit(1.0, 0.2, 0.0), [-1j * math.sqrt(0.96), 1j * math.sqrt(0.96)]),
    (PTQudit(2.2, 1.0), list(np.array([-1.5, -0.5, 0.5, 1.5]) * math.sqrt(3.84))),
])
def test_analytic_eigenvalues(model, expected):
    np.testing.assert_allclose(analytic_eigenvalues(model), expected, atol=1e-12)


@pytest.mark.parametrize("model", [
    PTQubit(1.0, 0.3), PTQubit(0.5, 1.7), AntiPTQubit(1.0, 0.4), AntiPTQubit(1.2, 1.8, 0.3),
    AntiPTQubit(1.0, 2.0, 1.0), PTQudit(2.2, 1.0), PTQudit(0.9, 1.0), PTQudit(1.0, 0.0),
])
def test_analytic_matches_numeric(model):
    np.testing.assert_allclose(linalg.eig_general(build_matrix(model)).eigenvalues,
                               analytic_eigenvalues(model), atol=1e-9)


def test_phase_labels():
    assert classify_phase_analytic(PTQubit(1.0, 0.5)) is PhaseLabel.UNBROKEN
    assert classify_phase_analytic(PTQubit(1.0, 1.0)) is PhaseLabel.EXCEPTIONAL_POINT
    assert classify_phase_analytic(PTQubit(1.0, 1.5)) is PhaseLabel.BROKEN
    assert classify_phase_analytic(AntiPTQubit(1.0, 0.5)) is PhaseLabel.UNBROKEN
    assert classify_phase_analytic(AntiPTQubit(1.0, 1.0)) is PhaseLabel.EXCEPTIONAL_POINT
    assert classify_phase_analytic(AntiPTQubit(1.0, 1.5)) is PhaseLabel.BROKEN
    assert classify_phase_analytic(PTQudit(2.2, 1.0)) is PhaseLabel.UNBROKEN
    assert classify_phase_analytic(PTQudit(0.9, 1.0)) is PhaseLabel.BROKEN
    assert classify_phase_analytic(PTQudit(1.0, 1.0)) is PhaseLabel.EXCEPTIONAL_POINT
    with pytest.raises(TypeError):
        classify_phase_analytic(Custom(np.eye(2)))


def test_critical_gap():
    assert critical_gap(PTQubit(1.0, 0.4)) == pytest.approx(-0.6)
    assert critical_gap(AntiPTQubit(1.0, 2.0, math.pi / 3)) == pytest.approx(0.0)
    assert critical_gap(PTQudit(2.0, 1.0)) == pytest.approx(-0.5)


def test_energy_scale():
    assert energy_scale(PTQubit(2.0, 0.1)) == 2.0
    assert energy_scale(AntiPTQubit(0.5, 1.0)) == 0.5
    assert energy_scale(PTQudit(2.2, 3.0)) == 3.0
    assert energy_scale(PTQudit(2.2, 0.0)) == 1.0
    assert energy_scale(Custom(np.eye(2))) == 1.0


def test_validation():
    with pytest.raises(ValueError):
        PTQubit(1.0, -0.1)
    with pytest.raises(ValueError):
        PTQubit(float("nan"), 0.1)
    with pytest.raises(ValueError):
        AntiPTQubit(1.0, 1.0, float("inf"))
    with pytest.raises(ValueError):
        PTQudit(-1.0, 1.0)
    with pytest.raises(ValueError):
        Custom(np.ones((2, 3)))
    with pytest.raises(ValueError):
        Custom(np.eye(9))


@pytest.mark.parametrize("model", [
    PTQubit(1.0, 0.4), AntiPTQubit(1.0, 1.4, 0.2), PTQudit(2.2, 1.0),
    Custom(np.array([[1, 2j], [0.5, -1 + 1j]])),
])
def test_dict_round_trip(model):
    data = model_to_dict(model)
    assert model_from_dict(data) == model


def test_lambda_alias():
    assert model_to_dict(AntiPTQubit(1.0, 1.4))["params"]["lambda"] == 1.4
    assert model_from_dict({"family": "anti_pt_qubit", "params": {"eta": 1, "lambda": 1.4}}).lam == 1.4


def test_from_dict_errors():
    with pytest.raises(ValueError):
        model_from_dict({"family": "nope"})
    with pytest.raises(ValueError):
        model_from_dict({"family": "pt_qubit", "params": {"b": 1}})
    with pytest.raises(ValueError):
        model_from_dict({"family": "custom"})
