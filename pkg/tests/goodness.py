"""Empirical one-step distribution from the simulator vs the exact oracle."""

from collections import Counter

import numpy as np
from scipy import stats

from hoaxnet.assignment import StateVector
from hoaxnet.model import ModelParams, step
from hoaxnet.rng import SplitMix64
from oracle import joint_distribution


def one_step_chisquare(net, states, assign, params: ModelParams, samples: int, seed: int):
    """Return (p-value, exact distribution, observed counts).

    Outcomes with expected count below 5 are pooled into one bin.
    """
    probs = {cls: params.class_probs[cls] for cls in params.class_probs}
    exact = joint_distribution(net.adjacency, list(states), assign.class_of.tolist(),
                               params.alpha, params.beta, {int(k): v for k, v in probs.items()})
    rng = SplitMix64(seed)
    start = StateVector(np.asarray(states, dtype=np.int8))
    observed = Counter(tuple(step(start, net, assign, params, rng).state_of.tolist()) for _ in range(samples))
    unexpected = set(observed) - set(exact)
    if unexpected:
        raise AssertionError(f"impossible outcomes observed: {sorted(unexpected)[:5]}")
    obs, exp, pool_o, pool_e = [], [], 0, 0.0
    for outcome, p in exact.items():
        e = float(p) * samples
        if e < 5:
            pool_o += observed.get(outcome, 0)
            pool_e += e
        else:
            obs.append(observed.get(outcome, 0))
            exp.append(e)
    if pool_e > 0:
        obs.append(pool_o)
        exp.append(pool_e)
    if len(obs) < 2:
        return 1.0, exact, observed
    exp = np.array(exp) * (samples / sum(exp))
    return stats.chisquare(obs, exp).pvalue, exact, observed
