"""Which sequences are degree sequences, and of which graphs.

Run with ``python3 demos/02_graphicality.py``.
"""

# %%
import numpy as np

from sigmat import antiregular_sequence, has_connected_realization, irr, is_graphical, realizations
from sigmat.graphical import batch_is_graphical

for seq in [(3, 3, 3, 3), (3, 3, 1, 1), (4, 1, 1, 1, 1), (2, 2, 0, 0)]:
    print(seq, "graphical:", is_graphical(seq), "connected:", has_connected_realization(seq))

# %% The vectorized test agrees row by row.
batch = np.array([(3, 3, 3, 3), (3, 3, 1, 1), (3, 2, 2, 1)])
print("batch:", batch_is_graphical(batch))

# %% Small sequences can be realized exhaustively (labeled graphs, n <= 8).
graphs = list(realizations((1, 1, 1, 2, 2, 2, 3)))
print(len(graphs), "labeled realizations; irr values:", sorted({irr(g) for g in graphs}))

# %% The antiregular sequences: each value 1..n-1 once plus a repeated middle value.
for n in range(4, 9):
    print(n, antiregular_sequence(n), antiregular_sequence(n, connected=False))
