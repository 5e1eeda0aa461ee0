"""Exhaustive extremal search and theorem verification.

Run with ``python3 demos/04_extremal_search.py``.
"""

# %%
from sigmat import Domain, DomainKind, search_extremum, tree_threshold, verify

# Trees: the star wins below the threshold and the path wins above it.
n = 10
t = tree_threshold(n)
for f in (0.9 * t, t, 1.1 * t):
    r = search_extremum(Domain(DomainKind.TREE, n), f, "min")
    print(f"f={f:.4f}  minimizers={r.optimizers}  margin={r.runner_up_margin:.3g}")

# %% Sharded runs with several workers reach identical results.
d = Domain(DomainKind.GRAPHICAL, 9)
a = search_extremum(d, 1 / 9, "max")
b = search_extremum(d, 1 / 9, "max", shards=6, jobs=2)
print("same result:", a.same_result(b), a.optimizers)

# %% verify() bundles the expected optimizers for each theorem.
for r in verify("tree-min", [6, 7]):
    print(r.n, r.label, r.verdict.value, r.optimizers)

for r in verify("seq-strong", [4]):
    print("n=4 sequence case:", r.verdict.value, r.optimizers, r.optimum)
