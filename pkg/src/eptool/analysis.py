"""Time series of the measures and the analyses built on them.

* :func:`classify_oscillation` / :func:`estimate_period` decide whether an
  HSS curve recurs and with what period; recurrence of the HSS marks the
  phase in which the spectrum is real.
* :func:`locate_ep` bisects a model parameter on that verdict.
* :func:`contractivity_audit` and :func:`random_pair_scan` look for
  intervals where the trace distance between two evolved states grows.

Grids are in dimensionless time (``epsilon t``, ``eta t`` or ``gamma t``,
see :func:`eptool.hamiltonians.energy_scale`).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import minimize_scalar
from scipy.signal import find_peaks

from . import measures
from .evolution import density_matrix, evolve_state
from .hamiltonians import (
    AntiPTQubit,
    HamiltonianModel,
    PhaseLabel,
    PTQubit,
    PTQudit,
    classify_phase_analytic,
    energy_scale,
)
from .states import state_to_pairs

__all__ = [
    "ContractivityReport",
    "CorrespondenceReport",
    "EPReport",
    "BracketError",
    "EPSearchError",
    "GridPolicy",
    "InconclusiveError",
    "PairScan",
    "PeriodEstimationError",
    "PhaseClassification",
    "TimeGrid",
    "TimeSeries",
    "analytic_period",
    "classify_oscillation",
    "contractivity_audit",
    "estimate_period",
    "hss_qfi_correspondence",
    "locate_ep",
    "random_pair_scan",
    "random_pure_state",
    "sample_series",
]

log = logging.getLogger(__name__)

MEASURES = ("hss", "td", "qfi")
DEFAULT_PHI = math.pi / 4
REL_TOL = 1e-3
TD_ABS_TOL = 1e-9


class InconclusiveError(RuntimeError):
    """The series neither recurs nor settles; a longer time window is needed."""


class PeriodEstimationError(ValueError):
    pass


class EPSearchError(RuntimeError):
    def __init__(self, message: str, bracket: tuple[float, float] | None = None):
        super().__init__(message)
        self.bracket = bracket


class BracketError(EPSearchError):
    """The bracket does not separate an oscillatory from a non-oscillatory end."""


@dataclass(frozen=True)
class TimeGrid:
    t_start: float
    t_end: float
    num_points: int

    def __post_init__(self):
        if self.t_start < 0 or not self.t_end > self.t_start:
            raise ValueError("grid needs 0 <= t_start < t_end")
        if self.num_points < 16:
            raise ValueError("grid needs at least 16 points")

    @property
    def spacing(self) -> float:
        return (self.t_end - self.t_start) / (self.num_points - 1)

    @property
    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.num_points)

    def to_dict(self) -> dict:
        return {"t_start": self.t_start, "t_end": self.t_end, "num_points": self.num_points}


@dataclass(frozen=True, eq=False)
class TimeSeries:
    grid: TimeGrid
    values: np.ndarray
    measure: str
    model: HamiltonianModel
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.values) != self.grid.num_points:
            raise ValueError("values do not match the grid")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("series has non-finite values")

    @property
    def times(self) -> np.ndarray:
        return self.grid.times


def sample_series(model: HamiltonianModel, measure: str, grid: TimeGrid, *, phi: float | None = None,
                  pair=None, cutoff: float = measures.QFI_CUTOFF) -> TimeSeries:
    """Evaluate ``measure`` (``"hss"``, ``"qfi"`` or ``"td"``) on every grid point.

    HSS and QFI need ``phi``; TD needs ``pair``, two normalized kets.
    """
    scale = energy_scale(model)
    times = grid.times / scale
    n = model.dimension
    if measure in ("hss", "qfi"):
        if phi is None:
            raise ValueError(f"{measure} series needs phi")
        if measure == "hss":
            values = [measures.hss(model, n, phi, t) for t in times]
        else:
            values = [measures.qfi(model, n, phi, t, cutoff) for t in times]
        params = {"phi": phi}
    elif measure == "td":
        if pair is None:
            raise ValueError("td series needs an initial pair")
        first, second = (np.asarray(p, dtype=complex) for p in pair)
        values = []
        for t in times:
            r1 = density_matrix(evolve_state(model, first, t)[1])
            r2 = density_matrix(evolve_state(model, second, t)[1])
            values.append(measures.trace_distance(r1, r2))
        params = {"pair": (first, second)}
    else:
        raise ValueError(f"unknown measure {measure!r}; expected one of {MEASURES}")
    return TimeSeries(grid, np.array(values, dtype=float), measure, model, params)


# ---------------------------------------------------------------------------
# Oscillation analysis

@dataclass(frozen=True)
class PhaseClassification:
    """``oscillatory`` with a ``period``, or not, with a ``trend``.

    ``trend`` is one of ``"monotone_decay"``, ``"peak_then_decay"``, ``"flat"``.
    """

    oscillatory: bool
    period: float | None = None
    trend: str | None = None
    evidence: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"verdict": "oscillatory" if self.oscillatory else "non_oscillatory",
               "evidence": self.evidence}
        if self.oscillatory:
            out["period"] = self.period
        else:
            out["trend"] = self.trend
        return out


class _Recurrence:
    """Shift-and-compare search for lags at which the whole curve repeats."""

    def __init__(self, times: np.ndarray, values: np.ndarray):
        self.times = times
        self.values = values
        self.spacing = times[1] - times[0]
        self.window = times[-1] - times[0]
        self.range = float(np.ptp(values))
        self.spline = CubicSpline(times, values)

    def _shift_error(self, lag: float) -> np.ndarray:
        mask = self.times + lag <= self.times[-1]
        return self.spline(self.times[mask] + lag) - self.values[mask]

    def rms(self, lag: float) -> float:
        return float(np.sqrt(np.mean(self._shift_error(lag) ** 2))) / self.range

    def worst(self, lag: float) -> float:
        return float(np.abs(self._shift_error(lag)).max()) / self.range

    def refine(self, guess: float, half_width: float) -> float:
        lo = max(guess - half_width, self.spacing)
        hi = min(guess + half_width, self.window)
        res = minimize_scalar(self.rms, bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-10 * max(self.window, 1.0)})
        return float(res.x)

    def first(self, rel_tol: float) -> tuple[float, float] | None:
        """Smallest lag <= window/2 at which the curve repeats to ``rel_tol``."""
        v = self.values
        max_k = int((self.window / 2) / self.spacing)
        coarse = np.full(max_k + 2, np.inf)
        for k in range(1, max_k + 2):
            if k < len(v):
                coarse[k] = np.sqrt(np.mean((v[k:] - v[:-k]) ** 2)) / self.range
        for k in range(2, max_k + 1):
            if not (coarse[k] <= coarse[k - 1] and coarse[k] <= coarse[k + 1]):
                continue
            lag = self.refine(k * self.spacing, self.spacing)
            if lag > self.window / 2 + self.spacing:
                break
            err = self.worst(lag)
            if err <= rel_tol:
                return lag, err
        return None


def _prominent_extrema(values: np.ndarray, prominence: float) -> tuple[np.ndarray, np.ndarray]:
    peaks, _ = find_peaks(values, prominence=prominence)
    troughs, _ = find_peaks(-values, prominence=prominence)
    return peaks, troughs


def _rise(values: np.ndarray) -> float:
    """Largest rebound above the running minimum."""
    return float(np.max(values - np.minimum.accumulate(values)))


def _fall(values: np.ndarray) -> float:
    return float(np.max(np.maximum.accumulate(values) - values))


def classify_oscillation(series: TimeSeries, rel_tol: float = REL_TOL) -> PhaseClassification:
    """Decide whether ``series`` recurs.

    A recurrence is a lag ``T`` (at most half the window) after which the
    whole curve repeats to within ``rel_tol`` of its peak-to-trough range,
    with at least one prominent extremum inside the first period.

    Raises
    ------
    InconclusiveError
        If the curve does not recur but has not decayed either (or its shape
        fits none of the non-oscillatory trends); retry on a longer grid.
    """
    t, v = series.times, series.values
    span = float(np.ptp(v))
    evidence: dict = {"amplitude": span}
    if span <= rel_tol * abs(v[0]) or span == 0.0:
        return PhaseClassification(False, trend="flat", evidence=evidence)

    peaks, troughs = _prominent_extrema(v, rel_tol * span)
    evidence["peaks"] = [int(i) for i in peaks]
    evidence["troughs"] = [int(i) for i in troughs]

    found = _Recurrence(t, v).first(rel_tol)
    if found is not None:
        lag, err = found
        inside = [i for i in np.concatenate([peaks, troughs]) if t[i] - t[0] < lag]
        if inside:
            evidence["recurrence_residual"] = err
            try:
                period = estimate_period(series, rel_tol)
            except PeriodEstimationError:
                period = lag
            return PhaseClassification(True, period=period, evidence=evidence)

    tol = rel_tol * span
    if v[-1] >= 0.9 * v.max():
        raise InconclusiveError(
            f"{series.measure} series neither recurs nor decays within "
            f"t in [{t[0]:g}, {t[-1]:g}]; use a longer grid"
        )
    if _rise(v) <= tol:
        return PhaseClassification(False, trend="monotone_decay", evidence=evidence)
    top = int(np.argmax(v))
    if 0 < top and len(peaks) <= 1 and _fall(v[:top + 1]) <= tol and _rise(v[top:]) <= tol:
        evidence["peak_index"] = top
        return PhaseClassification(False, trend="peak_then_decay", evidence=evidence)
    raise InconclusiveError(
        f"{series.measure} series shows {len(peaks)} peaks without recurrence; use a longer grid"
    )


def estimate_period(series: TimeSeries, rel_tol: float = REL_TOL) -> float:
    """Recurrence period from the successive repeats of the curve.

    Each multiple ``k T`` that fits in the window (with at least half a
    period of overlap) is refined separately; the period is the
    least-squares slope of those lags against ``k``.

    Raises
    ------
    PeriodEstimationError
        If fewer than two recurrences fit in the window.
    """
    rec = _Recurrence(series.times, series.values)
    if rec.range == 0:
        raise PeriodEstimationError("constant series has no period")
    found = rec.first(rel_tol)
    if found is None:
        raise PeriodEstimationError("series does not recur")
    base = found[0]
    ks, lags = [1], [base]
    k = 2
    while k * base + base / 2 <= rec.window:
        lag = rec.refine(k * base, max(base / 10, 2 * rec.spacing))
        if rec.worst(lag) > rel_tol:
            break
        ks.append(k)
        lags.append(lag)
        k += 1
    if len(lags) < 2:
        raise PeriodEstimationError(
            f"only {len(lags)} recurrence in a window of {rec.window:g}; need at least 2"
        )
    ks_arr, lags_arr = np.array(ks, float), np.array(lags)
    return float(ks_arr @ lags_arr / (ks_arr @ ks_arr))


# ---------------------------------------------------------------------------
# Exceptional-point search

def _oscillates_analytically(model: HamiltonianModel) -> bool:
    label = classify_phase_analytic(model)
    if isinstance(model, AntiPTQubit):
        return label is PhaseLabel.BROKEN
    return label is PhaseLabel.UNBROKEN


def analytic_period(model: HamiltonianModel) -> float | None:
    """Predicted HSS period in dimensionless time, or None off the oscillatory side."""
    if not _oscillates_analytically(model):
        return None
    if isinstance(model, PTQubit):
        period = math.pi / (model.epsilon * math.sqrt(1 - model.a ** 2))
    elif isinstance(model, AntiPTQubit):
        period = math.pi / (model.eta * math.sqrt(model.lam ** 2 * math.cos(model.theta) ** 2 - 1))
    else:
        period = 2 * math.pi / math.sqrt(model.J ** 2 - model.gamma ** 2)
    return energy_scale(model) * period


@dataclass(frozen=True)
class GridPolicy:
    """Time grid for probing a model.

    ``periods`` predicted periods at ``points_per_period`` resolution when a
    period is predicted, otherwise ``fallback_window`` dimensionless time
    units; ``growth`` stretches the window (and point count) for retries.
    """

    periods: float = 4.0
    points_per_period: int = 100
    fallback_window: float = 40.0
    fallback_points: int = 2001
    max_growth: float = 10.0

    def grid_for(self, model: HamiltonianModel, growth: float = 1.0) -> TimeGrid:
        period = analytic_period(model)
        if period is None:
            return TimeGrid(0.0, self.fallback_window * growth,
                            max(16, math.ceil(self.fallback_points * growth)))
        return TimeGrid(0.0, self.periods * period * growth,
                        max(16, math.ceil(self.periods * self.points_per_period * growth) + 1))

    def growth_steps(self) -> list[float]:
        steps, g = [1.0], 1.0
        while g < self.max_growth:
            g = min(2 * g, self.max_growth)
            steps.append(g)
        return steps


_SCAN_PARAMETER = {"pt_qubit": "a", "anti_pt_qubit": "lambda", "pt_qudit": "gamma/J"}


def _scan_model(family: str, fixed: dict, x: float) -> HamiltonianModel:
    if family == "pt_qubit":
        return PTQubit(epsilon=float(fixed.get("epsilon", 1.0)), a=x)
    if family == "anti_pt_qubit":
        return AntiPTQubit(eta=float(fixed.get("eta", 1.0)), lam=x, theta=float(fixed.get("theta", 0.0)))
    if family == "pt_qudit":
        J = float(fixed.get("J", 1.0))
        return PTQudit(J=J, gamma=x * J)
    raise ValueError(f"no scan parameter for family {family!r}")


@dataclass(frozen=True)
class EPReport:
    family: str
    critical_value: float
    bracket: tuple[float, float]
    iterations: int
    parameter: str = ""
    probes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "parameter": self.parameter,
            "critical_value": self.critical_value,
            "bracket": list(self.bracket),
            "iterations": self.iterations,
            "probes": self.probes,
        }


def locate_ep(family: str, fixed_params: dict | None, bracket: tuple[float, float], tol: float = 0.01,
              grid_policy: GridPolicy | None = None, phi: float = DEFAULT_PHI,
              rel_tol: float = REL_TOL) -> EPReport:
    """Bisect the scan parameter of ``family`` on the HSS oscillation verdict.

    The scan parameter is ``a`` for ``pt_qubit``, ``lambda`` for
    ``anti_pt_qubit`` and ``gamma / J`` for ``pt_qudit``.
    """
    fixed = dict(fixed_params or {})
    policy = grid_policy or GridPolicy()
    lo, hi = map(float, bracket)
    if not lo < hi:
        raise BracketError("bracket must satisfy lo < hi", (lo, hi))
    if tol <= 0:
        raise ValueError("tol must be positive")
    probes: list[dict] = []

    def oscillates(x: float) -> bool:
        model = _scan_model(family, fixed, x)
        for growth in policy.growth_steps():
            grid = policy.grid_for(model, growth)
            series = sample_series(model, "hss", grid, phi=phi)
            try:
                verdict = classify_oscillation(series, rel_tol).oscillatory
            except InconclusiveError:
                log.info("inconclusive at %s=%g with window %g; growing", _SCAN_PARAMETER[family], x, grid.t_end)
                continue
            probes.append({"value": x, "oscillatory": verdict, "t_end": grid.t_end})
            log.debug("probe %s=%.6g oscillatory=%s", _SCAN_PARAMETER[family], x, verdict)
            return verdict
        raise EPSearchError(f"classification inconclusive at {x:g} after {policy.max_growth:g}x window growth",
                            (lo, hi))

    at_lo, at_hi = oscillates(lo), oscillates(hi)
    if at_lo == at_hi:
        raise BracketError(f"same verdict (oscillatory={at_lo}) at both ends of [{lo:g}, {hi:g}]", (lo, hi))
    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if oscillates(mid) == at_lo:
            lo = mid
        else:
            hi = mid
        iterations += 1
    return EPReport(family, 0.5 * (lo + hi), (lo, hi), iterations, _SCAN_PARAMETER[family], probes)


# ---------------------------------------------------------------------------
# Trace-distance contractivity

@dataclass(frozen=True, eq=False)
class ContractivityReport:
    violating: bool
    violation_intervals: list[tuple[float, float]]
    max_increase_rate: float
    pair: tuple[np.ndarray, np.ndarray]
    series: TimeSeries | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "violating": self.violating,
            "violation_intervals": [list(iv) for iv in self.violation_intervals],
            "max_increase_rate": self.max_increase_rate,
            "pair": [state_to_pairs(p) for p in self.pair],
        }


def contractivity_audit(model: HamiltonianModel, pair, grid: TimeGrid,
                        abs_tol: float = TD_ABS_TOL) -> ContractivityReport:
    """Find the maximal runs of grid steps on which the trace distance grows by more than ``abs_tol``."""
    first, second = (np.asarray(p, dtype=complex) for p in pair)
    for p in (first, second):
        if abs(np.linalg.norm(p) - 1) > 1e-12:
            raise ValueError("pair states must be normalized")
    series = sample_series(model, "td", grid, pair=(first, second))
    t = series.times
    rising = np.diff(series.values) > abs_tol
    intervals = []
    i = 0
    while i < len(rising):
        if rising[i]:
            j = i
            while j + 1 < len(rising) and rising[j + 1]:
                j += 1
            intervals.append((float(t[i]), float(t[j + 1])))
            i = j + 1
        else:
            i += 1
    rate = float(np.diff(series.values).max() / grid.spacing) if intervals else 0.0
    return ContractivityReport(bool(intervals), intervals, rate, (first, second), series)


def random_pure_state(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return z / np.linalg.norm(z)


@dataclass(frozen=True)
class PairScan:
    seed: int
    reports: list[ContractivityReport]

    @property
    def violating_fraction(self) -> float:
        return sum(r.violating for r in self.reports) / len(self.reports)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "count": len(self.reports),
            "violating_fraction": self.violating_fraction,
            "reports": [r.to_dict() for r in self.reports],
        }


def random_pair_scan(model: HamiltonianModel, count: int, grid: TimeGrid, seed: int,
                     abs_tol: float = TD_ABS_TOL) -> PairScan:
    """Audit ``count`` pairs of random pure states drawn from a seeded generator."""
    if count < 1:
        raise ValueError("count must be >= 1")
    seed = int(seed)
    if not 0 <= seed < 2 ** 64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    rng = np.random.default_rng(seed)
    n = model.dimension
    reports = []
    for _ in range(count):
        pair = (random_pure_state(rng, n), random_pure_state(rng, n))
        reports.append(contractivity_audit(model, pair, grid, abs_tol))
    return PairScan(seed, reports)


# ---------------------------------------------------------------------------
# HSS versus QFI

@dataclass(frozen=True)
class CorrespondenceReport:
    sign_agreement_fraction: float
    compared_steps: int
    min_locations_hss: list[int]
    min_locations_qfi: list[int]

    def minima_match(self, steps: int = 1) -> bool:
        a, b = self.min_locations_hss, self.min_locations_qfi
        return len(a) == len(b) and all(abs(i - j) <= steps for i, j in zip(a, b))

    def to_dict(self) -> dict:
        return {
            "sign_agreement_fraction": self.sign_agreement_fraction,
            "compared_steps": self.compared_steps,
            "min_locations_hss": self.min_locations_hss,
            "min_locations_qfi": self.min_locations_qfi,
        }


def _local_minima(values: np.ndarray, abs_tol: float) -> list[int]:
    idx, _ = find_peaks(-values, prominence=abs_tol)
    return [int(i) for i in idx]


def hss_qfi_correspondence(model: HamiltonianModel, phi: float, grid: TimeGrid,
                           abs_tol: float = 1e-9) -> CorrespondenceReport:
    """Compare the step-wise trends and the minima of the HSS and QFI series."""
    if model.dimension != 2:
        raise ValueError("the HSS/QFI comparison is defined for one-qubit models")
    h = sample_series(model, "hss", grid, phi=phi).values
    q = sample_series(model, "qfi", grid, phi=phi).values
    dh, dq = np.diff(h), np.diff(q)
    both = (np.abs(dh) > abs_tol) & (np.abs(dq) > abs_tol)
    compared = int(both.sum())
    agree = int(np.sum(np.sign(dh[both]) == np.sign(dq[both])))
    fraction = agree / compared if compared else 1.0
    return CorrespondenceReport(fraction, compared, _local_minima(h, abs_tol), _local_minima(q, abs_tol))
