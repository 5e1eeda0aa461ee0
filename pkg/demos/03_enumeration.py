"""Streaming the search domains and splitting them into shards.

Run with ``python3 demos/03_enumeration.py``.
"""

# %%
from itertools import islice

from sigmat import Domain, DomainKind, domain_size, enumerate_domain, shard
from sigmat.enumeration import candidate_count

for kind in DomainKind:
    d = Domain(kind, 8)
    print(f"{kind.value:>10}: raw={candidate_count(d):>6} size={domain_size(d):>6}", list(islice(enumerate_domain(d), 2)))

# %% Shards are disjoint and together cover the domain.
d = Domain(DomainKind.GRAPHICAL, 8)
parts = shard(d, 4)
sizes = [domain_size(p) for p in parts]
print("shard sizes:", sizes, "total:", sum(sizes), "== full:", domain_size(d))
