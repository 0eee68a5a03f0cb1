"""
Measuring copies one at a time
==============================

A joint measurement on all copies is hard to build.  Measuring each copy with
the same fixed measurement and combining the outcomes classically is easy.  The
measurement in the eigenbasis of
``rho1^(-1/2) sqrt(rho1^(1/2) rho0 rho1^(1/2)) rho1^(-1/2)`` makes the outcome
distributions exactly as distinguishable, in fidelity, as the states.  It
therefore keeps the error exponent at least as large as -log F.
"""

import math

import numpy as np

from qchernoff import (classical_fidelity, fidelity,
                       fidelity_optimal_measurement, joint_error_exact,
                       likelihood_strategy, outcome_distribution,
                       random_density_matrix, separable_rate, simulate)

rng = np.random.default_rng(7)
rho0, rho1 = random_density_matrix(2, rng), random_density_matrix(2, rng)

m = fidelity_optimal_measurement(rho0, rho1)
p, q = outcome_distribution(m, rho0), outcome_distribution(m, rho1)
print(f"quantum fidelity   {fidelity(rho0, rho1):.12f}")
print(f"classical fidelity {classical_fidelity(p, q):.12f}")

# %%
# Separable error exponent (classical Chernoff of P and Q) against log F.

print(f"separable rate {separable_rate(rho0, rho1):.6f}  <=  log F "
      f"{math.log(fidelity(rho0, rho1)):.6f}")

# %%
# Simulated per-copy strategy against the optimal joint error.  The simulation
# can never do better than the joint optimum, beyond statistical noise.

strategy = likelihood_strategy(rho0, rho1)
for n in (1, 3, 5, 7):
    rep = simulate(strategy, rho0, rho1, n, 50_000, seed=n)
    print(f"n = {n}: separable {rep.avg_error:.5f} +/- {rep.std_err:.5f}   "
          f"joint optimum {joint_error_exact(rho0, rho1, n):.5f}")
