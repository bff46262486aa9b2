"""
One simulation run with all four agent classes
==============================================
"""

import numpy as np

from hoaxnet.assignment import AgentClass, assign_classes
from hoaxnet.communities import fluid_communities
from hoaxnet.graph import Network
from hoaxnet.model import ModelParams, run, write_trajectory

rng = np.random.default_rng(1)
n = 1000
edges = {(i, (i + 1) % n) for i in range(n)}
while len(edges) < 8000:
    a, b = rng.integers(0, n, 2)
    if a != b:
        edges.add((min(a, b), max(a, b)))
net = Network.from_edges(sorted(edges))
part = fluid_communities(net, 8, seed=3)

# scholars live in community 2; 3% believer bots and 2% fact-checker bots
assign = assign_classes(net, part, scholar_community=2, pct_b_bot=3, pct_f_bot=2, seed=42)
for cls in AgentClass:
    print("%-10s %4d" % (cls.label, assign.count(cls)))

params = ModelParams.standard(
    alpha=0.8, beta=0.5,
    pv_scholar=0.3, pf_scholar=0.02,
    pv_influencer=0.2, pf_influencer=0.05,
)
traj = run(net, part, assign, params, pct_initial_believers=10, seed=42)

counts = traj.counts
for t in (0, 1, 5, 20, 50, 100, 168):
    s, b, f = counts[t]
    print("tick %3d  S=%4d  B=%4d  F=%4d" % (t, s, b, f))

# per-class final split
for cls in (AgentClass.NORMAL, AgentClass.SCHOLAR, AgentClass.INFLUENCER):
    print(cls.label, traj.class_counts[-1, cls].tolist())

write_trajectory(traj, "trajectory.csv")
