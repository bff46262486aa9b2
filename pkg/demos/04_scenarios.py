"""
Comparing intervention scenarios
================================

The four named scenarios (no intervention, believer bots only, full
education plus fact-checker bots, partial education with both bot types)
share replicate seeds, so their differences are not seed noise.
"""

import numpy as np

from hoaxnet.communities import fluid_communities
from hoaxnet.experiment import TABLE3_SCENARIOS, scenario_compare
from hoaxnet.graph import Network

rng = np.random.default_rng(9)
n = 1200
edges = {(i, (i + 1) % n) for i in range(n)}
while len(edges) < 12000:
    a, b = rng.integers(0, n, 2)
    if a != b:
        edges.add((min(a, b), max(a, b)))
net = Network.from_edges(sorted(edges))
part = fluid_communities(net, 8, seed=1)

comp = scenario_compare(TABLE3_SCENARIOS, net, part, replicates=4)
for row in comp.rows:
    s, b, f = 100 * row.shares
    print("%-9s S=%5.1f%%  B=%5.1f%%  F=%5.1f%%  rank=%d" % (row.name, s, b, f, row.believer_rank))
print("fewest to most believers:", " < ".join(comp.believer_order))

# believers over time, every 24 ticks
for row in comp.rows:
    print(row.name.ljust(9), np.round(row.series[::24, 1]).astype(int).tolist())
