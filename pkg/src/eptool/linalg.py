"""Dense complex linear algebra for small matrices.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Every public
function validates its input through :func:`as_matrix`, so callers can pass
nested lists or real arrays.

The matrix exponential and the general (non-Hermitian) eigensolver are
implemented here rather than delegated to LAPACK: the exponential must stay
well defined for defective matrices, and the eigensolver exposes the
conditioning of the eigenvector basis, which is what flags an exceptional
point.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MAX_DIMENSION",
    "EigenDecomposition",
    "ExpmOverflowError",
    "SingularMatrixError",
    "adjoint",
    "as_matrix",
    "eig_general",
    "eig_hermitian",
    "expm",
    "inverse",
    "mat_mul",
    "sort_eigenvalues",
    "trace",
]

MAX_DIMENSION = 8
DEFECTIVE_CONDITION = 1e8
HERMITIAN_RTOL = 1e-10
QR_MAX_ITERATIONS = 10_000

_EPS = np.finfo(float).eps


class ExpmOverflowError(ArithmeticError):
    """The exponential overflowed to a non-finite value."""

    def __init__(self, norm: float):
        super().__init__(f"matrix exponential overflowed (input 1-norm {norm:.6g})")
        self.norm = norm


class SingularMatrixError(np.linalg.LinAlgError):
    """Raised when a matrix is too close to singular to invert."""

    def __init__(self, condition: float):
        super().__init__(f"matrix is singular to working precision (condition estimate {condition:.3g})")
        self.condition = condition


def as_matrix(a, *, square: bool = False) -> np.ndarray:
    """Return ``a`` as a finite 2-D complex array, raising ``ValueError`` otherwise."""
    m = np.array(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    if square and m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def mat_mul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def trace(a) -> complex:
    return complex(np.trace(as_matrix(a, square=True)))


# ---------------------------------------------------------------------------
# Matrix exponential: scaling and squaring with Pade approximants
# (Higham, SIAM J. Matrix Anal. Appl. 26 (2005) 1179).

_PADE_COEFFS = {
    3: (120.0, 60.0, 12.0, 1.0),
    5: (30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0),
    7: (17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0),
    9: (17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
        2162160.0, 110880.0, 3960.0, 90.0, 1.0),
    13: (64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
         1187353796428800.0, 129060195264000.0, 10559470521600.0,
         670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
         960960.0, 16380.0, 182.0, 1.0),
}

# Largest 1-norm for which the degree-m approximant reaches unit roundoff.
_PADE_THETA = {
    3: 1.495585217958292e-2,
    5: 2.539398330063230e-1,
    7: 9.504178996162932e-1,
    9: 2.097847961257068e0,
    13: 5.371920351148152e0,
}


def _pade(a: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    b = _PADE_COEFFS[m]
    ident = np.eye(a.shape[0], dtype=complex)
    a2 = a @ a
    if m == 13:
        a4 = a2 @ a2
        a6 = a4 @ a2
        u = a @ (a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
                 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident)
        v = (a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
             + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident)
        return u, v
    powers = [ident, a2]
    for _ in range(2, (m + 1) // 2):
        powers.append(powers[-1] @ a2)
    u = a @ sum(b[2 * k + 1] * p for k, p in enumerate(powers))
    v = sum(b[2 * k] * p for k, p in enumerate(powers))
    return u, v


def expm(a) -> np.ndarray:
    """Matrix exponential by scaling and squaring.

    No diagonalization is involved, so Jordan blocks (e.g. a Hamiltonian
    sitting exactly on an exceptional point) are handled like any other
    input.

    Raises
    ------
    ExpmOverflowError
        If any entry of the result is not finite.
    """
    a = as_matrix(a, square=True)
    norm = float(np.abs(a).sum(axis=0).max())
    if norm == 0.0:
        return np.eye(a.shape[0], dtype=complex)

    squarings = 0
    for m in (3, 5, 7, 9):
        if norm <= _PADE_THETA[m]:
            break
    else:
        m = 13
        if norm > _PADE_THETA[13]:
            squarings = max(0, math.ceil(math.log2(norm / _PADE_THETA[13])))
    scaled = a / 2.0 ** squarings

    with np.errstate(over="ignore", invalid="ignore"):
        u, v = _pade(scaled, m)
        r = np.linalg.solve(v - u, v + u)
        for _ in range(squarings):
            r = r @ r
    if not np.all(np.isfinite(r)):
        raise ExpmOverflowError(norm)
    return r


# ---------------------------------------------------------------------------
# Eigendecompositions

@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenpairs of a square matrix.

    ``eigenvectors[:, k]`` is the unit-norm eigenvector for ``eigenvalues[k]``;
    its largest-magnitude component is real and positive.
    ``condition_estimate`` is the 2-norm condition number of the eigenvector
    matrix; it diverges as eigenvectors coalesce.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    condition_estimate: float

    @property
    def near_defective(self) -> bool:
        return self.condition_estimate > DEFECTIVE_CONDITION

    def residuals(self, a) -> np.ndarray:
        """Per-pair residual norms ``|A v_k - lambda_k v_k|``."""
        a = as_matrix(a, square=True)
        return np.linalg.norm(a @ self.eigenvectors - self.eigenvectors * self.eigenvalues, axis=0)


def _eigen_order_cmp(x: tuple[int, complex], y: tuple[int, complex], tol: float) -> int:
    (i, u), (j, v) = x, y
    if abs(u.real - v.real) > tol:
        return -1 if u.real < v.real else 1
    if abs(u.imag - v.imag) > tol:
        return -1 if u.imag < v.imag else 1
    return (i > j) - (i < j)


def sort_eigenvalues(values, tol: float | None = None) -> np.ndarray:
    """Indices ordering ``values`` by real part, then imaginary part.

    Parts closer than ``tol`` count as equal, so rounding noise on a real
    part (e.g. in a purely imaginary conjugate pair) does not decide the
    order. Remaining ties keep their input order.
    """
    values = np.asarray(values, dtype=complex)
    if tol is None:
        scale = float(np.abs(values).max()) if values.size else 0.0
        tol = 1e-9 * max(scale, 1.0)
    key = functools.cmp_to_key(lambda x, y: _eigen_order_cmp(x, y, tol))
    return np.array([i for i, _ in sorted(enumerate(values), key=key)], dtype=int)


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    out = vectors / np.linalg.norm(vectors, axis=0)
    for k in range(out.shape[1]):
        col = out[:, k]
        # first index wins among (near-)equal magnitudes
        mags = np.abs(col)
        pivot = int(np.flatnonzero(mags >= mags.max() * (1 - 1e-12))[0])
        out[:, k] = col * (abs(col[pivot]) / col[pivot])
    return out


def _condition(vectors: np.ndarray) -> float:
    s = np.linalg.svd(vectors, compute_uv=False)
    return float(s[0] / s[-1]) if s[-1] > 0 else math.inf


def eig_hermitian(a) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    The input is symmetrized before the solve; it must be Hermitian to a
    relative tolerance of 1e-10 in the Frobenius norm.
    """
    a = as_matrix(a, square=True)
    scale = np.linalg.norm(a)
    if np.linalg.norm(a - a.conj().T) > HERMITIAN_RTOL * max(scale, 1e-300):
        raise ValueError("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    return EigenDecomposition(w.astype(complex), _fix_phases(v), 1.0)


def _householder_hessenberg(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = a.shape[0]
    h = a.copy()
    q = np.eye(n, dtype=complex)
    for k in range(n - 2):
        x = h[k + 1:, k].copy()
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        x[0] += phase * alpha
        v = x / np.linalg.norm(x)
        h[k + 1:, :] -= 2.0 * np.outer(v, v.conj() @ h[k + 1:, :])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v.conj())
        q[:, k + 1:] -= 2.0 * np.outer(q[:, k + 1:] @ v, v.conj())
        h[k + 2:, k] = 0.0
    return h, q


def _givens(f: complex, g: complex) -> tuple[float, complex, complex]:
    """Rotation (c, s) with [[c, s], [-conj(s), c]] @ [f, g] = [r, 0]."""
    if g == 0:
        return 1.0, 0.0, f
    if f == 0:
        return 0.0, g.conjugate() / abs(g), abs(g)
    nf, ng = abs(f), abs(g)
    norm = math.hypot(nf, ng)
    c = nf / norm
    s = (f / nf) * g.conjugate() / norm
    return c, s, (f / nf) * norm


def _wilkinson_shift(a: complex, b: complex, c: complex, d: complex) -> complex:
    tr = a + d
    det = a * d - b * c
    disc = np.sqrt(complex(tr * tr / 4 - det))
    l1, l2 = tr / 2 + disc, tr / 2 - disc
    return l1 if abs(l1 - d) < abs(l2 - d) else l2


def _schur(a: np.ndarray, name: str) -> tuple[np.ndarray, np.ndarray]:
    """Complex Schur form A = Z T Z^H by shifted QR on the Hessenberg form."""
    n = a.shape[0]
    h, z = _householder_hessenberg(a)
    anorm = max(np.linalg.norm(a), np.finfo(float).tiny)
    hi = n - 1
    since_deflation = 0
    total = 0
    while hi > 0:
        lo = hi
        while lo > 0:
            sub = abs(h[lo, lo - 1])
            if sub <= _EPS * (abs(h[lo, lo]) + abs(h[lo - 1, lo - 1])) or sub <= _EPS * anorm:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            hi -= 1
            since_deflation = 0
            continue
        total += 1
        since_deflation += 1
        if total > QR_MAX_ITERATIONS:
            raise np.linalg.LinAlgError(f"QR iteration did not converge for {name}")

        if since_deflation % 11 == 0:
            # exceptional shift breaks symmetric stagnation cycles
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1])
        else:
            mu = _wilkinson_shift(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])

        idx = np.arange(lo, hi + 1)
        h[idx, idx] -= mu
        rotations = []
        for k in range(lo, hi):
            c, s, _ = _givens(h[k, k], h[k + 1, k])
            rows = h[[k, k + 1], k:].copy()
            h[k, k:] = c * rows[0] + s * rows[1]
            h[k + 1, k:] = -s.conjugate() * rows[0] + c * rows[1]
            h[k + 1, k] = 0.0
            rotations.append((k, c, s))
        for k, c, s in rotations:
            cols = h[:hi + 1, [k, k + 1]].copy()
            h[:hi + 1, k] = c * cols[:, 0] + s.conjugate() * cols[:, 1]
            h[:hi + 1, k + 1] = -s * cols[:, 0] + c * cols[:, 1]
            zc = z[:, [k, k + 1]].copy()
            z[:, k] = c * zc[:, 0] + s.conjugate() * zc[:, 1]
            z[:, k + 1] = -s * zc[:, 0] + c * zc[:, 1]
        h[idx, idx] += mu
    return np.triu(h), z


def _triangular_eigenvectors(t: np.ndarray) -> np.ndarray:
    n = t.shape[0]
    smin = max(_EPS * np.linalg.norm(t), np.finfo(float).tiny)
    y = np.zeros((n, n), dtype=complex)
    for k in range(n):
        y[k, k] = 1.0
        for i in range(k - 1, -1, -1):
            d = t[i, i] - t[k, k]
            if abs(d) < smin:
                d = smin
            y[i, k] = -(t[i, i + 1:k + 1] @ y[i + 1:k + 1, k]) / d
    return y


def eig_general(a, name: str = "matrix") -> EigenDecomposition:
    """Eigendecomposition of a general square matrix of dimension <= 8.

    Eigenvalues are sorted by real part, then imaginary part. Near-defective
    inputs are returned normally; check :attr:`EigenDecomposition.near_defective`.
    """
    a = as_matrix(a, square=True)
    n = a.shape[0]
    if n > MAX_DIMENSION:
        raise ValueError(f"dimension {n} exceeds {MAX_DIMENSION}")
    if n == 1:
        return EigenDecomposition(a[0].copy(), np.ones((1, 1), dtype=complex), 1.0)
    t, z = _schur(a, name)
    vectors = _fix_phases(z @ _triangular_eigenvectors(t))
    values = np.diag(t).copy()
    order = sort_eigenvalues(values)
    vectors = vectors[:, order]
    return EigenDecomposition(values[order], vectors, _condition(vectors))


def inverse(a) -> np.ndarray:
    """Inverse of a square matrix.

    Raises
    ------
    SingularMatrixError
        If the smallest singular value is below ``1e-12`` times the largest.
    """
    a = as_matrix(a, square=True)
    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] <= 1e-12 * s[0]:
        raise SingularMatrixError(s[0] / s[-1] if s[-1] > 0 else math.inf)
    return np.linalg.solve(a, np.eye(a.shape[0], dtype=complex))
