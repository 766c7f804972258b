"""Propagators and normalized non-unitary evolution.

States evolve as ``psi(t) = U(t) psi0`` with ``U(t) = exp(-i H t)``; the
physical state is the renormalized ``rho(t) = U rho0 U^dagger / Tr[...]``.
The raw (unnormalized) vector is kept alongside so callers can recover the
lost norm.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from . import linalg
from .hamiltonians import AntiPTQubit, HamiltonianModel, PTQubit, build_matrix

__all__ = [
    "EP_SWITCH",
    "ExpansionCoefficients",
    "ExtinctionError",
    "NearDefectiveError",
    "density_matrix",
    "eigen_expansion",
    "evolve_density",
    "evolve_state",
    "evolve_state_by_expansion",
    "propagator",
    "validate_density",
]

EP_SWITCH = 1e-6
_EXTINCT = 1e-300


class ExtinctionError(ArithmeticError):
    """The evolved state lost (numerically) all of its norm."""


class NearDefectiveError(ValueError):
    """The Hamiltonian is too close to an exceptional point for an eigenbasis expansion."""


def _checked(u: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(u)):
        raise ArithmeticError("propagator has non-finite entries")
    return u


def _pt_closed(model: PTQubit, t: float) -> np.ndarray:
    s = cmath.sqrt(1 - model.a ** 2)
    theta = s * model.epsilon * t
    c, sn = cmath.cos(theta), cmath.sin(theta)
    a = model.a
    return np.array([
        [s * c + a * sn, -1j * sn],
        [-1j * sn, s * c - a * sn],
    ]) / s


def _anti_closed(model: AntiPTQubit, t: float) -> np.ndarray:
    s = cmath.sqrt(model.lam ** 2 - 1)
    theta = s * model.eta * t
    c, sn = cmath.cos(theta), cmath.sin(theta)
    lam = model.lam
    return np.array([
        [c - 1j * lam * sn / s, sn / s],
        [sn / s, c + 1j * lam * sn / s],
    ])


def _closed_form(model: HamiltonianModel, t: float) -> np.ndarray | None:
    """Analytic ``exp(-iHt)`` for the qubit families, or None when not available."""
    if isinstance(model, PTQubit):
        gap, closed = 1 - model.a ** 2, _pt_closed
    elif isinstance(model, AntiPTQubit) and model.theta == 0:
        gap, closed = model.lam ** 2 - 1, _anti_closed
    else:
        return None
    if gap == 0:
        # H^2 = 0 on the exceptional point, so the series stops at first order
        return np.eye(2) - 1j * t * build_matrix(model)
    if abs(gap) < EP_SWITCH:
        return None
    try:
        return closed(model, t)
    except OverflowError:
        raise linalg.ExpmOverflowError(float(np.abs(build_matrix(model)).sum(axis=0).max() * abs(t))) from None


def propagator(model: HamiltonianModel, t: float, method: str = "auto") -> np.ndarray:
    """``exp(-i H t)``.

    ``method`` is ``"auto"`` (closed form for the qubit families away from
    the EP, ``expm`` otherwise), ``"closed"`` or ``"expm"``.
    """
    t = float(t)
    if not np.isfinite(t):
        raise ValueError("time must be finite")
    if method == "expm":
        return _checked(linalg.expm(-1j * t * build_matrix(model)))
    if method not in ("auto", "closed"):
        raise ValueError(f"unknown propagator method {method!r}")
    u = _closed_form(model, t)
    if u is None:
        if method == "closed":
            raise ValueError(f"no closed-form propagator for {model!r}")
        return _checked(linalg.expm(-1j * t * build_matrix(model)))
    return _checked(u)


def evolve_state(model: HamiltonianModel, psi0, t: float, method: str = "auto") -> tuple[np.ndarray, np.ndarray]:
    """Return ``(raw, normalized)`` where ``raw = U(t) psi0``."""
    psi0 = np.asarray(psi0, dtype=complex)
    if abs(np.linalg.norm(psi0) - 1) > 1e-12:
        raise ValueError("initial state must be normalized")
    raw = propagator(model, t, method) @ psi0
    norm = np.linalg.norm(raw)
    if norm < _EXTINCT:
        raise ExtinctionError(f"state norm {norm:.3g} at t={t}")
    return raw, raw / norm


def density_matrix(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj()) / np.vdot(psi, psi).real


def validate_density(rho, atol: float = 1e-10) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity; return ``rho`` as an array."""
    rho = linalg.as_matrix(rho, square=True)
    if np.abs(rho - rho.conj().T).max() > atol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > atol:
        raise ValueError("density matrix does not have unit trace")
    if np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min() < -atol:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


def evolve_density(model: HamiltonianModel, rho0, t: float, method: str = "auto") -> np.ndarray:
    rho0 = validate_density(rho0)
    u = propagator(model, t, method)
    # scaling U leaves the normalized result unchanged and keeps M finite
    u = u / np.linalg.norm(u)
    m = u @ rho0 @ u.conj().T
    tr = np.trace(m).real
    if tr < _EXTINCT:
        raise ExtinctionError(f"trace {tr:.3g} at t={t}")
    rho = m / tr
    return 0.5 * (rho + rho.conj().T)


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Coordinates ``betas`` of ``psi0`` in the (non-orthogonal) eigenbasis of H."""

    betas: np.ndarray
    eigen: linalg.EigenDecomposition

    def reconstruct(self) -> np.ndarray:
        return self.eigen.eigenvectors @ self.betas


def eigen_expansion(model: HamiltonianModel, psi0) -> ExpansionCoefficients:
    """Solve ``Phi beta = psi0`` where the columns of ``Phi`` are unit eigenvectors of H."""
    eig = linalg.eig_general(build_matrix(model), name=repr(model))
    if eig.near_defective:
        raise NearDefectiveError(
            f"eigenvector matrix condition {eig.condition_estimate:.3g}: "
            "too close to an exceptional point, use propagator(..., method='expm')"
        )
    betas = linalg.inverse(eig.eigenvectors) @ np.asarray(psi0, dtype=complex)
    return ExpansionCoefficients(betas, eig)


def evolve_state_by_expansion(coeffs: ExpansionCoefficients, t: float) -> np.ndarray:
    """Unnormalized ``sum_k exp(-i lambda_k t) beta_k |zeta_k>``."""
    phases = np.exp(-1j * coeffs.eigen.eigenvalues * t)
    return coeffs.eigen.eigenvectors @ (phases * coeffs.betas)
