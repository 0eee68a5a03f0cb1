"""
Spectral moments of the difference of tensor powers
===================================================

The normalised moments ``d^-N tr (rho0^⊗N - rho1^⊗N)^n`` can be computed without
forming the d^N x d^N matrix.  Expand the power into words over {rho0, rho1}.
The trace of a tensor power is then the N-th power of a d x d trace.
"""

import numpy as np

from qchernoff import moments_formula, random_density_matrix, tensor_power

rng = np.random.default_rng(3)
rho0, rho1 = random_density_matrix(3, rng), random_density_matrix(3, rng)

# %%
# Compare the word expansion with a direct eigenvalue computation.

for n_copies in (1, 2, 4, 6):
    diff = tensor_power(rho0, n_copies) - tensor_power(rho1, n_copies)
    w = np.linalg.eigvalsh(diff)
    for n_moment in (2, 3):
        direct = np.sum(w**n_moment) / diff.shape[0]
        words = moments_formula(rho0, rho1, n_moment, n_copies)
        print(f"N = {n_copies}, n = {n_moment}:  words {words:+.6e}   direct {direct:+.6e}")
