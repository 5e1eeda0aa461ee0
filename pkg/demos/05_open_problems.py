"""Finite-n checks of the open problems and the chemical analysis.

Run with ``python3 demos/05_open_problems.py``.
"""

# %%
import math

from sigmat import chem_relaxation, distinct_pair_exchange_check, verify, y_graph_check

for r in verify("problem1", range(4, 9)):
    print("problem1", r.n, r.verdict.value, r.optimizers[0])

# %% The constant-exponent chemical conjecture has small counterexamples.
for r in verify("chem-conjectures", [7], constants=(0.5,)):
    print(r.label, r.verdict.value, "optimizers:", r.optimizers, "expected:", sorted(r.expected))

# %% Y_n against the star at f = 1/n.
for c in y_graph_check([5, 10, 20]):
    print(f"n={c.n}: Y={c.y_value:.4f} (closed form {c.y_closed_form:.4f}) star={c.star_value:.4f}")

# %% The real relaxation for n = 0 mod 4 drifts away from n/4 by about ln(3)/8.
for n in (8, 1000, 10**6):
    r = chem_relaxation(n)
    print(f"n={n}: x1-n/4 = {r.gap_to_quarter:.7f}  (ln3/8 = {math.log(3) / 8:.7f})")

# %% Moving a vertex from a large degree class to a small one gains distinct pairs.
print("gain:", distinct_pair_exchange_check((5, 2, 3, 2), 1, 2))
