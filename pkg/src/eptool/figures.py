"""Canned curve sets reproducing the HSS/QFI and trace-distance figures."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .analysis import TimeGrid, TimeSeries, sample_series
from .hamiltonians import AntiPTQubit, HamiltonianModel, PTQubit, PTQudit
from .states import td_pair

__all__ = ["FIGURES", "Curve", "Figure", "render"]

DEFAULT_GRID = TimeGrid(0.0, 10.0, 1001)
HSS_PHI = math.pi / 4


@dataclass(frozen=True)
class Curve:
    name: str
    model: HamiltonianModel
    measure: str
    phi: float
    theta: float | None = None

    def sample(self, grid: TimeGrid) -> TimeSeries:
        if self.measure == "td":
            pair = td_pair(self.model.family, self.phi, self.theta)
            return sample_series(self.model, "td", grid, pair=pair)
        return sample_series(self.model, self.measure, grid, phi=self.phi)


@dataclass(frozen=True)
class Figure:
    description: str
    curves: tuple[Curve, ...]
    grid: TimeGrid = DEFAULT_GRID
    choices: tuple[str, ...] = field(default=())


def _hss_qfi(model: HamiltonianModel) -> tuple[Curve, ...]:
    return (Curve("hss", model, "hss", HSS_PHI), Curve("qfi", model, "qfi", HSS_PHI))


_PHI_CHOICE = "phi = pi/4 for HSS/QFI curves (not stated for these panels)"
_GRID_CHOICE = "time window 0..10 with 1001 points (axis range not stated)"

FIGURES: dict[str, Figure] = {
    "fig1a": Figure("PT qubit, broken phase: HSS and QFI", _hss_qfi(PTQubit(1.0, 1.4)),
                    choices=("a = 1.4 (panel only states a > 1)", _PHI_CHOICE, _GRID_CHOICE)),
    "fig1b": Figure("PT qubit, unbroken phase: HSS and QFI", _hss_qfi(PTQubit(1.0, 0.6)),
                    choices=("a = 0.6 (panel only states 0 < a < 1)", _PHI_CHOICE, _GRID_CHOICE)),
    "fig2": Figure("PT qubit: trace distance of the special pairs", (
        Curve("td_a0.2_phi_pi_3", PTQubit(1.0, 0.2), "td", math.pi / 3),
        Curve("td_a0.4_phi_pi_4", PTQubit(1.0, 0.4), "td", math.pi / 4),
    ), choices=(_GRID_CHOICE,)),
    "fig3a": Figure("anti-PT qubit, unbroken phase: HSS and QFI", _hss_qfi(AntiPTQubit(1.0, 0.2)),
                    choices=(_PHI_CHOICE, _GRID_CHOICE)),
    "fig3b": Figure("anti-PT qubit, broken phase: HSS and QFI", _hss_qfi(AntiPTQubit(1.0, 1.4)),
                    choices=(_PHI_CHOICE, _GRID_CHOICE)),
    "fig4a": Figure("anti-PT qubit, unbroken phase: trace distance", (
        Curve("td_lambda0.5_phi3.1", AntiPTQubit(1.0, 0.5), "td", 3.1),
        Curve("td_lambda0.6_phi2.9", AntiPTQubit(1.0, 0.6), "td", 2.9),
    ), choices=(_GRID_CHOICE,)),
    "fig4b": Figure("anti-PT qubit, broken phase: trace distance", (
        Curve("td_lambda1.5_phi3.1", AntiPTQubit(1.0, 1.5), "td", 3.1),
        Curve("td_lambda1.3_phi2.9", AntiPTQubit(1.0, 1.3), "td", 2.9),
    ), choices=(_GRID_CHOICE,)),
    "fig5a": Figure("PT qudit, broken phase (J/gamma = 0.9): trace distance", (
        Curve("td_theta_pi_4_phi_pi_2", PTQudit(0.9, 1.0), "td", math.pi / 2, math.pi / 4),
        Curve("td_theta1.1_phi2.1", PTQudit(0.9, 1.0), "td", 2.1, 1.1),
    ), choices=(_GRID_CHOICE,)),
    "fig5b": Figure("PT qudit, unbroken phase (J/gamma = 2.2): trace distance", (
        Curve("td_theta_pi_4_phi_pi_2", PTQudit(2.2, 1.0), "td", math.pi / 2, math.pi / 4),
        Curve("td_theta1.5_phi0.1", PTQudit(2.2, 1.0), "td", 0.1, 1.5),
    ), choices=(_GRID_CHOICE,)),
}


def render(figure_id: str) -> tuple[Figure, list[tuple[Curve, TimeSeries]]]:
    try:
        figure = FIGURES[figure_id]
    except KeyError:
        raise KeyError(f"unknown figure {figure_id!r}; choose from {sorted(FIGURES)}") from None
    return figure, [(c, c.sample(figure.grid)) for c in figure.curves]
