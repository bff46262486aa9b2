"""
A small parameter sweep
=======================

Two credibility levels times three initial believer shares, four replicates
each. Every run gets its own seed derived from (base seed, setting, replicate).
"""

import io

import numpy as np

from hoaxnet.communities import fluid_communities
from hoaxnet.experiment import SweepSpec, aggregate, run_sweep, sensitivity_pairs, write_summary
from hoaxnet.graph import Network

rng = np.random.default_rng(5)
n = 800
edges = {(i, (i + 1) % n) for i in range(n)}
while len(edges) < 6000:
    a, b = rng.integers(0, n, 2)
    if a != b:
        edges.add((min(a, b), max(a, b)))
net = Network.from_edges(sorted(edges))
part = fluid_communities(net, 4, seed=0)

spec = SweepSpec(alpha=(0.3, 0.8), pct_initial_believers=(10, 25, 40), replicates=4, base_seed=7)
print("settings:", spec.setting_count, "runs:", spec.run_count)

results = run_sweep(spec, net, part)
summaries = aggregate(results)

buf = io.StringIO()
write_summary(summaries, buf)
print(buf.getvalue())

for pair in sensitivity_pairs(summaries, "alpha"):
    print("setting %d -> %d: B %.0f -> %.0f" % (pair["setting_low"], pair["setting_high"], pair["B_low"], pair["B_high"]))

worst = max(float(s.std.max()) for s in summaries)
print("largest replicate std: %.1f nodes (%.2f%% of N)" % (worst, 100 * worst / n))
