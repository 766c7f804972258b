"""
Spectra, exceptional points and propagators
==========================================

Eigenvalues of the three model families on both sides of their exceptional
points, and the three ways of computing ``exp(-iHt)``.
"""

import numpy as np

from eptool import AntiPTQubit, PTQubit, PTQudit, build_matrix
from eptool.evolution import eigen_expansion, evolve_state_by_expansion, propagator
from eptool.hamiltonians import analytic_eigenvalues, classify_phase_analytic
from eptool.linalg import eig_general

# PT qubit: real spectrum for a < 1, a conjugate pair for a > 1
for a in (0.5, 1.0, 1.5):
    model = PTQubit(1.0, a)
    eig = eig_general(build_matrix(model))
    print(f"a={a}: {classify_phase_analytic(model).value:18s} eigenvalues {np.round(eig.eigenvalues, 6)}"
          f"  cond(V)={eig.condition_estimate:.1e}")

# The anti-PT qubit swaps sides: real spectrum above lambda = 1
for lam in (0.2, 1.4):
    print(f"lambda={lam}: {np.round(analytic_eigenvalues(AntiPTQubit(1.0, lam)), 6)}")

# Spin-3/2 qudit: four equally spaced levels scaled by sqrt(J^2 - gamma^2)
print("qudit J=2.2:", np.round(analytic_eigenvalues(PTQudit(2.2, 1.0)), 6))

# %%
# Closed form, expm and eigen-expansion agree away from the EP
model, t = PTQubit(1.0, 0.4), 2.7
psi0 = np.array([1.0, 0.0], dtype=complex)
closed = propagator(model, t, "closed") @ psi0
via_expm = propagator(model, t, "expm") @ psi0
via_eig = evolve_state_by_expansion(eigen_expansion(model, psi0), t)
print("max difference:", np.abs(closed - via_expm).max(), np.abs(closed - via_eig).max())

# %%
# On the EP the Hamiltonian is nilpotent, so exp(-iHt) = I - iHt exactly.
# The eigenbasis is degenerate there and the expansion refuses to run.
ep = PTQubit(1.0, 1.0)
h = build_matrix(ep)
print("||H^2|| =", np.abs(h @ h).max())
print("expm vs I - iHt:", np.abs(propagator(ep, 5.0, "expm") - (np.eye(2) - 5j * h)).max())
