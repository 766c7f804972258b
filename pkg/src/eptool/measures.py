"""Hilbert-Schmidt speed, trace distance, Hilbert-Schmidt distance and QFI.

All phase derivatives are taken of the normalized evolved state with the
phase ``phi`` carried by the first component of
:func:`eptool.states.phase_superposition`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .evolution import ExtinctionError, density_matrix, propagator
from .hamiltonians import HamiltonianModel, build_matrix
from .states import phase_derivative, phase_superposition

__all__ = [
    "FD_STEP",
    "PhiDerivative",
    "d_rho_d_phi",
    "evolved_phase_state",
    "hs_distance",
    "hss",
    "hss_ep_anti_closed",
    "hss_ep_pt_closed",
    "qfi",
    "trace_distance",
]

FD_STEP = 1e-5
QFI_CUTOFF = 1e-10


@dataclass(frozen=True)
class PhiDerivative:
    d_rho: np.ndarray
    method: str


def _dimension(model: HamiltonianModel, n: int | None) -> int:
    if n is None:
        return model.dimension
    if n != model.dimension:
        raise ValueError(f"state dimension {n} does not match model dimension {model.dimension}")
    return n


def _scaled_propagator(model, t, method):
    u = propagator(model, t, method)
    return u / np.linalg.norm(u)


def evolved_phase_state(model: HamiltonianModel, phi: float, t: float, n: int | None = None,
                        method: str = "auto") -> np.ndarray:
    """Normalized density matrix evolved from the phase superposition."""
    n = _dimension(model, n)
    u = _scaled_propagator(model, t, method)
    v = u @ phase_superposition(n, phi)
    if np.vdot(v, v).real < 1e-300:
        raise ExtinctionError(f"state extinct at t={t}")
    return density_matrix(v)


def d_rho_d_phi(model: HamiltonianModel, n: int | None, phi: float, t: float, *,
                method: str = "analytic", h: float = FD_STEP, propagator_method: str = "auto") -> PhiDerivative:
    """``d rho(t, phi) / d phi`` through the trace normalization.

    ``method="central_difference"`` is the finite-difference check with
    step ``h``.
    """
    n = _dimension(model, n)
    if method == "central_difference":
        plus = evolved_phase_state(model, phi + h, t, n, propagator_method)
        minus = evolved_phase_state(model, phi - h, t, n, propagator_method)
        d = (plus - minus) / (2 * h)
        return PhiDerivative(0.5 * (d + d.conj().T), method)
    if method != "analytic":
        raise ValueError(f"unknown derivative method {method!r}")

    u = propagator(model, t, propagator_method)
    scale = np.linalg.norm(u)
    psi = (u / scale) @ phase_superposition(n, phi)
    norm2 = np.vdot(psi, psi).real
    if norm2 < 1e-300:
        raise ExtinctionError(f"trace underflow at t={t}")
    # d rho = (q psi^+ + psi q^+) / |psi|^2 with q the part of d psi orthogonal to psi
    if n == 2:
        # q = W^T conj(psi) / |psi|^2 for W = psi d psi^T - d psi psi^T. For a qubit W
        # evolves by the scalar det U, so q is exact even after the state collapses
        # onto an eigenvector, where subtracting the parallel part loses everything.
        w = _evolved_wedge(model, n, phi, t) / scale ** 2
        q = w.T @ psi.conj() / norm2
    else:
        # for the qudit the parallel part dominates only by exp(kappa t), and the
        # 6x6 compound exponential is worse conditioned near the EP than U itself
        dpsi = (u / scale) @ phase_derivative(n, phi)
        q = dpsi - psi * (np.vdot(psi, dpsi) / norm2)
    d = (np.outer(q, psi.conj()) + np.outer(psi, q.conj())) / norm2
    return PhiDerivative(d, method)


def _evolved_wedge(model: HamiltonianModel, n: int, phi: float, t: float) -> np.ndarray:
    """``U W0 U^T`` for ``W0 = psi0 dpsi0^T - dpsi0 psi0^T`` on a qubit, without forming the product.

    A 2x2 antisymmetric matrix picks up ``det U = exp(-i tr(H) t)``.
    """
    if n != 2:
        raise ValueError("closed-form wedge evolution is for qubits")
    psi0, dpsi0 = phase_superposition(n, phi), phase_derivative(n, phi)
    w01 = psi0[0] * dpsi0[1] - dpsi0[0] * psi0[1]
    w01 *= cmath.exp(-1j * t * complex(np.trace(build_matrix(model))))
    return np.array([[0, w01], [-w01, 0]])


def hss(model: HamiltonianModel, n: int | None, phi: float, t: float, **kwargs) -> float:
    """Hilbert-Schmidt speed ``sqrt(Tr[(d rho/d phi)^2] / 2)``."""
    d = d_rho_d_phi(model, n, phi, t, **kwargs).d_rho
    # d is Hermitian, so Tr[d^2] is its squared Frobenius norm
    return math.sqrt(0.5 * float(np.sum(np.abs(d) ** 2)))


def hss_ep_pt_closed(epsilon: float, phi: float, t: float) -> float:
    """HSS of the PT qubit on its exceptional point (``a = 1``)."""
    et2 = (epsilon * t) ** 2
    return 1.0 / (4 * et2 - 4 * et2 * math.sin(phi) + 2)


def hss_ep_anti_closed(eta: float, phi: float, t: float) -> float:
    """HSS of the anti-PT qubit on its exceptional point (``lam = 1``, ``theta = 0``)."""
    x = eta * t
    return 1.0 / (2 * abs(2 * x * x + 2 * x * (x * math.sin(phi) + math.cos(phi)) + 1))


def _same_shape(rho, sigma) -> tuple[np.ndarray, np.ndarray]:
    rho = linalg.as_matrix(rho, square=True)
    sigma = linalg.as_matrix(sigma, square=True)
    if rho.shape != sigma.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    for m in (rho, sigma):
        if np.linalg.norm(m - m.conj().T) > 1e-10 * max(np.linalg.norm(m), 1e-300):
            raise ValueError("density matrix is not Hermitian")
    return rho, sigma


def trace_distance(rho, sigma) -> float:
    """``Tr|rho - sigma| / 2`` from the spectrum of the Hermitian difference."""
    rho, sigma = _same_shape(rho, sigma)
    d = rho - sigma
    # the inputs were checked above; roundoff in a tiny difference is not
    w = linalg.eig_hermitian(0.5 * (d + d.conj().T)).eigenvalues.real
    return min(1.0, 0.5 * float(np.abs(w).sum()))


def hs_distance(rho, sigma) -> float:
    """Hilbert-Schmidt distance ``sqrt(Tr[(rho - sigma)^2] / 2)``."""
    rho, sigma = _same_shape(rho, sigma)
    return math.sqrt(0.5 * float(np.sum(np.abs(rho - sigma) ** 2)))


def qfi(model: HamiltonianModel, n: int | None, phi: float, t: float, cutoff: float = QFI_CUTOFF,
        **kwargs) -> float:
    """Quantum Fisher information of ``rho(t)`` with respect to ``phi``.

    Pairs of eigenvalues with ``lambda_i + lambda_j <= cutoff`` are dropped
    from the sum.
    """
    if cutoff <= 0:
        raise ValueError("cutoff must be positive")
    propagator_method = kwargs.get("propagator_method", "auto")
    rho = evolved_phase_state(model, phi, t, n, propagator_method)
    d = d_rho_d_phi(model, n, phi, t, **kwargs).d_rho
    eig = linalg.eig_hermitian(rho)
    lam = eig.eigenvalues.real
    vecs = eig.eigenvectors
    elements = np.abs(vecs.conj().T @ d @ vecs) ** 2
    denom = lam[:, None] + lam[None, :]
    keep = denom > cutoff
    return float(2.0 * np.sum(elements[keep] / denom[keep]))
