"""Computing the index from a degree sequence.

Run with ``python3 demos/01_index_basics.py``.
"""

# %%
from sigmat import (
    ExponentSpec,
    difference_profile,
    first_zagreb,
    irr_t,
    sigma_t_classic,
    sigma_t_f,
)

seq = (1, 1, 1, 2, 2, 2, 3)
profile = difference_profile(seq)
print("difference profile:", profile.counts, "pairs:", profile.pairs)

# %% f = 1 and f = 2 are exact integers; other exponents are floats.
for f in (1, 2, 0.5, 1 / len(seq)):
    print(f"f={f:<8.4g} sigma_t^f = {sigma_t_f(profile, f)!r}")

# %% The classic quantities fall out as special cases.
print("irr_t:", irr_t(seq), " sigma_t:", sigma_t_classic(seq), " M1:", first_zagreb(seq))

# %% Exponents can be named relative to n.
for text in ("1/n", "c=0.3", "bin-threshold", "seq-threshold", "tree-threshold", "0.999*tree-threshold"):
    spec = ExponentSpec.parse(text)
    print(f"{spec.label():>22} at n=12 -> {spec.resolve(12):.6f}")
