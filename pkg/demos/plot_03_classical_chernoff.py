"""
Chernoff information of two coins
=================================

For classical distributions P and Q the best error exponent is the Chernoff
information ``-min_λ ln Σ p^λ q^(1-λ)``.  At the minimising λ the tilted
distribution is equally far, in relative entropy, from both P and Q.
"""

import numpy as np

from qchernoff import (balance_lambda, chernoff_classical,
                       classical_multinomial_error, kl, tilted_distribution)

p = np.array([0.9, 0.1])
q = np.array([0.1, 0.9])

res = chernoff_classical(p, q)
print(f"lambda* = {res.lambda_star:.6f},  D_c = {res.chernoff_info:.10f}  "
      f"(-ln 0.6 = {-np.log(0.6):.10f})")

# %%
# The tilted distribution at the balancing λ.

lam = balance_lambda(p, q)
s = tilted_distribution(p, q, lam)
print(f"S = {s},  D(S||P) = {kl(s, p):.10f},  D(S||Q) = {kl(s, q):.10f}")

# %%
# The exact error of the likelihood-ratio test on n tosses, summed over all
# count vectors, decays at exactly this rate.

for n in (1, 5, 20, 80):
    err = classical_multinomial_error(p, q, n)
    print(f"n = {n:3d}: error {err:.3e},  -log(error)/n = {-np.log(err) / n:.4f}")

# %%
# An asymmetric pair: λ* moves away from one half.

p2, q2 = np.array([0.5, 0.3, 0.2]), np.array([0.05, 0.15, 0.8])
r2 = chernoff_classical(p2, q2)
print(f"lambda* = {r2.lambda_star:.6f},  D_c = {r2.chernoff_info:.6f}")
