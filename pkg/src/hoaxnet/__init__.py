"""Seeded SBFC misinformation-diffusion simulator with heterogeneous agent classes.

Typical use::

    from hoaxnet import load_edge_list, load_partition, Setting, run_setting

    net = load_edge_list("data/facebook_combined.txt")
    part = load_partition("data/facebook_k8_partition.csv", node_count=net.node_count)
    result = run_setting(Setting.make(alpha=0.8), replicate=0, net=net, part=part)
"""

from .assignment import AgentClass, ClassAssignment, State, StateVector, assign_classes, initialize_states
from .communities import Partition, PartitionError, fluid_communities, load_partition, save_partition
from .experiment import (
    TABLE3_SCENARIOS,
    NearestShare,
    RunResult,
    ScenarioComparison,
    Setting,
    SettingSummary,
    SweepSpec,
    aggregate,
    derive_seed,
    expand_grid,
    run_setting,
    run_sweep,
    scenario_compare,
)
from .graph import EdgeListError, Network, load_edge_list, save_edge_list, top_fraction_by_degree
from .model import ModelParams, Trajectory, run, spreading_rates, step, write_trajectory
from .rng import SplitMix64

__version__ = "0.1.0"
