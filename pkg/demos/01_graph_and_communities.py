"""
Loading a graph and clustering it
=================================

Uses data/facebook_combined.txt when present, otherwise a random
ring-plus-chords graph of the same size.
"""

from pathlib import Path

import numpy as np

from hoaxnet.communities import fluid_communities, save_partition
from hoaxnet.graph import Network, load_edge_list, top_fraction_by_degree

path = Path(__file__).resolve().parents[1] / "data" / "facebook_combined.txt"
if path.exists():
    net = load_edge_list(path)
else:
    print("facebook_combined.txt not found, using a synthetic stand-in")
    rng = np.random.default_rng(0)
    n = 4039
    ring = [(i, (i + 1) % n) for i in range(n)]
    chords = rng.integers(0, n, size=(20000, 2))
    chords = chords[chords[:, 0] != chords[:, 1]]
    net = Network.from_edges(ring + [tuple(e) for e in chords.tolist()])

print("nodes=%d edges=%d mean degree=%.2f connected=%s"
      % (net.node_count, net.edge_count, net.mean_degree, net.is_connected()))

# the 1% best-connected nodes become influencers
top = top_fraction_by_degree(net, 0.01)
print("influencers:", len(top), "min degree among them:", net.degree[top].min())

# eight fixed communities; one of them will hold the scholars
part = fluid_communities(net, 8, seed=2023)
for c, size in enumerate(part.sizes):
    print("community %d: %4d nodes (%.2f%%)" % (c, size, 100 * size / net.node_count))
print("converged=%s after %d sweeps" % (part.converged, part.sweeps))
print("closest to 13.2%:", part.nearest_by_share(0.132))

save_partition(part, "partition_k8.csv")
