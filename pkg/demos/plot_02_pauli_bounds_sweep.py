"""
Optimal error and fidelity bounds for a qubit pair
==================================================

Two mixed qubit states with Bloch vectors of length 0.8 at right angles.
For every number of copies we compare the optimal joint-measurement error with
the two fidelity bounds and with the decay predicted by the relative entropy.
"""

import csv
import io
import math

from qchernoff import error_bounds, fidelity, pauli_pair
from qchernoff.cli import cmd_sweep

rho0, rho1 = pauli_pair(0.8, 0.8, math.pi / 2)
F = fidelity(rho0, rho1)
print(f"fidelity F = {F:.10f}  (sqrt(0.68) = {math.sqrt(0.68):.10f})")

# %%
# The optimal error always lies between (1 - sqrt(1 - F^2n))/2 and F^n / 2.

print(" n   lower        exact        upper")
for n in range(1, 9):
    rep = error_bounds(rho0, rho1, n)
    print(f"{n:2d}   {rep.lower_fid:.8f}   {rep.exact_error:.8f}   {rep.upper_fid:.8f}")

# %%
# Per-copy log-error rates.  The exact rate lies between 2 log F and log F, and
# it is no faster than the negated larger relative entropy.

rep = error_bounds(rho0, rho1, 8)
print(f"2 log F = {rep.rate_lower_fid:.5f}, log F = {rep.rate_upper_fid:.5f}, "
      f"-max D = {rep.rate_lower_relent:.5f}, "
      f"observed log(2 R_8)/8 = {math.log(2 * rep.exact_error) / 8:.5f}")

# %%
# The same table as the command-line tool writes it, ready for plotting.

text = cmd_sweep(rho0, rho1, 6, trials=20_000, seed=1)
print(text)
rows = list(csv.DictReader(io.StringIO(text)))
print("columns:", list(rows[0]))
