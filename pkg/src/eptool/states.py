"""Initial states: phase-encoded superpositions and the trace-distance pairs.

Basis vectors map to array indices in order: qubit ``|0>, |1>`` -> 0, 1 and
qudit ``|1>, ..., |4>`` -> 0, ..., 3.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

__all__ = [
    "normalize",
    "phase_derivative",
    "phase_superposition",
    "state_from_dict",
    "state_to_pairs",
    "td_pair",
]


def phase_superposition(n: int, phi: float) -> np.ndarray:
    """``(e^{i phi}|1> + |2> + ... + |n>) / sqrt(n)``."""
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    psi = np.ones(n, dtype=complex)
    psi[0] = cmath.exp(1j * phi)
    return psi / math.sqrt(n)


def phase_derivative(n: int, phi: float) -> np.ndarray:
    """Derivative of :func:`phase_superposition` with respect to ``phi``."""
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    d = np.zeros(n, dtype=complex)
    d[0] = 1j * cmath.exp(1j * phi) / math.sqrt(n)
    return d


def td_pair(family: str, phi: float, theta: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """The pair of initial kets whose trace distance is tracked for ``family``.

    ``theta`` is required for (and only used by) ``"pt_qudit"``.
    """
    e = cmath.exp(1j * phi)
    if family == "pt_qudit":
        if theta is None:
            raise ValueError("pt_qudit pair requires theta")
        first = np.array([e, 1, 1, 1], dtype=complex) / 2
        second = np.array([cmath.exp(1j * theta), e, 1, 1], dtype=complex) / 2
        return first, second
    first = np.array([e, 1], dtype=complex) / math.sqrt(2)
    if family == "pt_qubit":
        second = np.array([1, -e], dtype=complex) / math.sqrt(2)
    elif family == "anti_pt_qubit":
        second = np.array([1, e], dtype=complex) / math.sqrt(2)
    else:
        raise ValueError(f"no trace-distance pair defined for family {family!r}")
    return first, second


def normalize(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1 or psi.size < 2:
        raise ValueError("state vector must be 1-D with dimension >= 2")
    norm = np.linalg.norm(psi)
    if not np.isfinite(norm) or norm == 0:
        raise ValueError("state vector has zero or non-finite norm")
    return psi / norm


def state_to_pairs(psi) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(psi, dtype=complex)]


def _amplitudes(entries) -> np.ndarray:
    return normalize([complex(*e) if isinstance(e, (list, tuple)) else complex(e) for e in entries])


def state_from_dict(data: dict, dimension: int, family: str | None = None):
    """Materialize a state description ``{"kind": ...}``.

    Returns a single ket for ``phase_superposition`` and single-ket
    ``custom`` entries, and a pair for ``td_pair`` and two-ket ``custom``
    entries (``{"kind": "custom", "pair": [amps1, amps2]}``).
    """
    kind = data.get("kind")
    if kind == "phase_superposition":
        n = int(data.get("n", dimension))
        if n != dimension:
            raise ValueError(f"state dimension {n} does not match model dimension {dimension}")
        return phase_superposition(n, float(data["phi"]))
    if kind == "td_pair":
        theta = data.get("theta")
        pair = td_pair(data.get("family", family), float(data["phi"]),
                       None if theta is None else float(theta))
        if pair[0].size != dimension:
            raise ValueError("pair dimension does not match model dimension")
        return pair
    if kind == "custom":
        if "pair" in data:
            pair = tuple(_amplitudes(p) for p in data["pair"])
            if len(pair) != 2 or any(p.size != dimension for p in pair):
                raise ValueError("custom pair must hold two kets of the model dimension")
            return pair
        psi = _amplitudes(data["amplitudes"])
        if psi.size != dimension:
            raise ValueError("custom state dimension does not match model dimension")
        return psi
    raise ValueError(f"unknown state kind {kind!r}")
