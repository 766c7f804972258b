import numpy as np
import pytest

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.array([[1, 0], [0, -1]], dtype=complex)

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion."""

    def record(label: str, ok: bool, detail: str = "") -> None:
        _ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}" + (f"  ({detail})" if detail else ""))
        assert ok, f"{label}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_complex(rng, shape, scale=1.0):
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def pt_propagator_oracle(epsilon, a, t):
    """exp(-iHt) for the PT qubit from the textbook closed form, complex branch."""
    s = np.emath.sqrt(1 - a * a + 0j)
    th = s * epsilon * t
    return np.array([
        [s * np.cos(th) + a * np.sin(th), -1j * np.sin(th)],
        [-1j * np.sin(th), s * np.cos(th) - a * np.sin(th)],
    ]) / s


def hermitian_2x2_eigenvalues(m):
    """Closed-form spectrum of a 2x2 Hermitian matrix, ascending."""
    a, d, b = m[0, 0].real, m[1, 1].real, m[0, 1]
    r = np.sqrt(((a - d) / 2) ** 2 + abs(b) ** 2)
    return np.array([(a + d) / 2 - r, (a + d) / 2 + r])


def mp_central_difference(model, phi, t, h=1e-5, dps=40):
    """Central difference of the normalized evolved density matrix, evaluated in mpmath.

    Same step as the double-precision check, without its roundoff floor when
    the state has collapsed onto an eigenvector and d rho / d phi is tiny.
    """
    import mpmath

    from eptool.hamiltonians import build_matrix

    with mpmath.workdps(dps):
        n = model.dimension
        h_mat = mpmath.matrix([[mpmath.mpc(complex(z)) for z in row] for row in build_matrix(model)])
        u = mpmath.expm(-1j * h_mat * mpmath.mpf(t))

        def rho(p):
            psi = mpmath.matrix([mpmath.exp(1j * p)] + [1] * (n - 1))
            v = u * psi
            norm2 = sum(abs(v[i]) ** 2 for i in range(n))
            return [[v[i] * mpmath.conj(v[j]) / norm2 for j in range(n)] for i in range(n)]

        step = mpmath.mpf(h)
        plus, minus = rho(mpmath.mpf(phi) + step), rho(mpmath.mpf(phi) - step)
        return np.array([[complex((plus[i][j] - minus[i][j]) / (2 * step)) for j in range(n)]
                         for i in range(n)])
