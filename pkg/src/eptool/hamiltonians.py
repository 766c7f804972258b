"""The three (anti-)PT-symmetric Hamiltonian families and their spectra."""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .linalg import MAX_DIMENSION, as_matrix, sort_eigenvalues

__all__ = [
    "AntiPTQubit",
    "Custom",
    "FAMILIES",
    "HamiltonianModel",
    "PTQubit",
    "PTQudit",
    "PhaseLabel",
    "SPIN_3_2_X",
    "SPIN_3_2_Z",
    "analytic_eigenvalues",
    "build_matrix",
    "classify_phase_analytic",
    "critical_gap",
    "energy_scale",
    "model_from_dict",
    "model_to_dict",
]

_S3 = math.sqrt(3.0) / 2.0
SPIN_3_2_X = np.array([
    [0.0, _S3, 0.0, 0.0],
    [_S3, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, _S3],
    [0.0, 0.0, _S3, 0.0],
])
SPIN_3_2_Z = np.diag([1.5, 0.5, -0.5, -1.5])


class PhaseLabel(str, enum.Enum):
    UNBROKEN = "unbroken"
    BROKEN = "broken"
    EXCEPTIONAL_POINT = "exceptional_point"


def _nonnegative(**params: float) -> None:
    for key, value in params.items():
        if not math.isfinite(value) or value < 0:
            raise ValueError(f"{key} must be finite and >= 0, got {value!r}")


@dataclass(frozen=True)
class PTQubit:
    """``epsilon * (sigma_x + i a sigma_z)``; EP at ``a = 1``."""

    epsilon: float = 1.0
    a: float = 0.0
    family = "pt_qubit"
    dimension = 2

    def __post_init__(self):
        _nonnegative(epsilon=self.epsilon, a=self.a)


@dataclass(frozen=True)
class AntiPTQubit:
    """``[[lam eta e^{i theta}, i eta], [i eta, -lam eta e^{-i theta}]]``; EP at ``lam = 1`` for ``theta = 0``."""

    eta: float = 1.0
    lam: float = 0.0
    theta: float = 0.0
    family = "anti_pt_qubit"
    dimension = 2

    def __post_init__(self):
        _nonnegative(eta=self.eta, lam=self.lam)
        if not math.isfinite(self.theta):
            raise ValueError("theta must be finite")


@dataclass(frozen=True)
class PTQudit:
    """Spin-3/2 chain ``-J S_x + i gamma S_z``; EP4 at ``gamma = J``."""

    J: float = 1.0
    gamma: float = 0.0
    family = "pt_qudit"
    dimension = 4

    def __post_init__(self):
        _nonnegative(J=self.J, gamma=self.gamma)


@dataclass(frozen=True, eq=False)
class Custom:
    matrix: np.ndarray = field(repr=False)
    family = "custom"

    def __post_init__(self):
        m = as_matrix(self.matrix, square=True)
        if not 2 <= m.shape[0] <= MAX_DIMENSION:
            raise ValueError(f"custom dimension must be in 2..{MAX_DIMENSION}, got {m.shape[0]}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def __eq__(self, other):
        return isinstance(other, Custom) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())


HamiltonianModel = Union[PTQubit, AntiPTQubit, PTQudit, Custom]

FAMILIES = {cls.family: cls for cls in (PTQubit, AntiPTQubit, PTQudit, Custom)}

# JSON parameter names that differ from the attribute names
_PARAM_ALIASES = {"lambda": "lam"}


def build_matrix(model: HamiltonianModel) -> np.ndarray:
    if isinstance(model, PTQubit):
        e, a = model.epsilon, model.a
        return np.array([[1j * a * e, e], [e, -1j * a * e]])
    if isinstance(model, AntiPTQubit):
        le = model.lam * model.eta
        return np.array([
            [le * cmath.exp(1j * model.theta), 1j * model.eta],
            [1j * model.eta, -le * cmath.exp(-1j * model.theta)],
        ])
    if isinstance(model, PTQudit):
        return -model.J * SPIN_3_2_X + 1j * model.gamma * SPIN_3_2_Z
    if isinstance(model, Custom):
        return model.matrix.copy()
    raise TypeError(f"not a Hamiltonian model: {model!r}")


def analytic_eigenvalues(model: HamiltonianModel) -> np.ndarray:
    """Closed-form spectrum, in the same order as :func:`eptool.linalg.eig_general`."""
    if isinstance(model, PTQubit):
        r = model.epsilon * cmath.sqrt(1 - model.a ** 2)
        values = np.array([-r, r])
    elif isinstance(model, AntiPTQubit):
        eta, lam, th = model.eta, model.lam, model.theta
        centre = 1j * lam * eta * math.sin(th)
        r = cmath.sqrt(lam ** 2 * eta ** 2 * math.cos(th) ** 2 - eta ** 2)
        values = np.array([centre - r, centre + r])
    elif isinstance(model, PTQudit):
        r = cmath.sqrt(model.J ** 2 - model.gamma ** 2)
        values = np.array([-1.5, -0.5, 0.5, 1.5]) * r
    else:
        raise TypeError("no closed-form spectrum for custom matrices; use linalg.eig_general")
    return values[sort_eigenvalues(values)]


def critical_gap(model: HamiltonianModel) -> float:
    """Signed distance of the control parameter from the exceptional point.

    ``a - 1`` for the PT qubit, ``lam^2 cos^2(theta) - 1`` for the anti-PT
    qubit, ``gamma / J - 1`` for the qudit.
    """
    if isinstance(model, PTQubit):
        return model.a - 1.0
    if isinstance(model, AntiPTQubit):
        return model.lam ** 2 * math.cos(model.theta) ** 2 - 1.0
    if isinstance(model, PTQudit):
        if model.J == 0:
            return math.inf if model.gamma > 0 else 0.0
        return model.gamma / model.J - 1.0
    raise TypeError("custom matrices have no parametric exceptional point")


def classify_phase_analytic(model: HamiltonianModel, tol: float = 1e-9) -> PhaseLabel:
    if tol <= 0:
        raise ValueError("tol must be positive")
    if isinstance(model, PTQubit):
        x, lo, hi = model.a, 1 - tol, 1 + tol
    elif isinstance(model, AntiPTQubit):
        if model.theta == 0:
            x, lo, hi = model.lam, 1 - tol, 1 + tol
        else:
            x, lo, hi = critical_gap(model), -tol, tol
        # anti-PT: real spectrum (and oscillation) above the threshold
        if x < lo:
            return PhaseLabel.UNBROKEN
        if x > hi:
            return PhaseLabel.BROKEN
        return PhaseLabel.EXCEPTIONAL_POINT
    elif isinstance(model, PTQudit):
        x, lo, hi = model.gamma, model.J * (1 - tol), model.J * (1 + tol)
    else:
        raise TypeError("custom matrices have no analytic phase diagram")
    if x < lo:
        return PhaseLabel.UNBROKEN
    if x > hi:
        return PhaseLabel.BROKEN
    return PhaseLabel.EXCEPTIONAL_POINT


def energy_scale(model: HamiltonianModel) -> float:
    """Scale that makes time dimensionless (``epsilon t``, ``eta t``, ``gamma t``).

    Falls back to 1 for custom matrices and for a vanishing scale.
    """
    scale = {
        PTQubit: lambda m: m.epsilon,
        AntiPTQubit: lambda m: m.eta,
        PTQudit: lambda m: m.gamma,
    }.get(type(model), lambda m: 1.0)(model)
    return scale if scale > 0 else 1.0


def _complex_to_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def model_to_dict(model: HamiltonianModel) -> dict:
    if isinstance(model, Custom):
        return {
            "family": "custom",
            "params": {},
            "matrix": [[_complex_to_pair(z) for z in row] for row in model.matrix],
        }
    if isinstance(model, PTQubit):
        params = {"epsilon": model.epsilon, "a": model.a}
    elif isinstance(model, AntiPTQubit):
        params = {"eta": model.eta, "lambda": model.lam, "theta": model.theta}
    else:
        params = {"J": model.J, "gamma": model.gamma}
    return {"family": model.family, "params": params}


def model_from_dict(data: dict) -> HamiltonianModel:
    """Parse the model JSON object ``{"family": ..., "params": {...}, "matrix": ...}``."""
    try:
        cls = FAMILIES[data["family"]]
    except KeyError:
        raise ValueError(f"unknown or missing model family: {data.get('family')!r}") from None
    if cls is Custom:
        if "matrix" not in data:
            raise ValueError("custom model requires 'matrix'")
        rows = [[complex(*entry) for entry in row] for row in data["matrix"]]
        return Custom(np.array(rows, dtype=complex))
    params = {_PARAM_ALIASES.get(k, k): float(v) for k, v in data.get("params", {}).items()}
    try:
        return cls(**params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {cls.family}: {exc}") from None
