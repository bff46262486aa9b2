"""Agent classes, role selection by degree, and initial states for a run."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .communities import Partition
from .graph import Network, floor_percent, top_fraction_by_degree
from .rng import SplitMix64, substream

INFLUENCER_FRACTION = 0.01
BOT_POOL_FRACTION = 0.10

# stream tags; one independent SplitMix64 stream per purpose within a run
STREAM_BOTS = 1
STREAM_BELIEVERS = 2
STREAM_DYNAMICS = 3


class AgentClass(enum.IntEnum):
    NORMAL = 0
    SCHOLAR = 1
    INFLUENCER = 2
    BOT_B = 3
    BOT_F = 4

    @property
    def label(self) -> str:
        return self.name.lower()


class State(enum.IntEnum):
    S = 0
    B = 1
    F = 2


@dataclass(frozen=True, eq=False)
class ClassAssignment:
    class_of: np.ndarray
    scholar_community: int | None
    influencer_set: np.ndarray
    bot_pool: np.ndarray
    botB_set: np.ndarray
    botF_set: np.ndarray

    @property
    def node_count(self) -> int:
        return len(self.class_of)

    def count(self, cls: AgentClass) -> int:
        return int(np.count_nonzero(self.class_of == cls))

    @property
    def is_bot(self) -> np.ndarray:
        return self.class_of >= AgentClass.BOT_B


@dataclass(frozen=True, eq=False)
class StateVector:
    state_of: np.ndarray
    tick: int = 0

    def counts(self) -> np.ndarray:
        return np.bincount(self.state_of, minlength=3)


def assign_classes(
    net: Network,
    part: Partition,
    scholar_community: int | None,
    pct_b_bot: float,
    pct_f_bot: float,
    seed: int,
) -> ClassAssignment:
    """Label every node Normal, Scholar, Influencer, BotB or BotF.

    Influencers are the top 1% by degree; the bot pool is the next 10% by
    degree. Bot percentages are of the whole network and are drawn from the
    pool without replacement, believer bots first. Precedence on overlap is
    Bot > Influencer > Scholar > Normal.
    """
    n = net.node_count
    if part.node_count != n:
        raise ValueError(f"partition covers {part.node_count} nodes, network has {n}")
    if scholar_community is not None and not 0 <= scholar_community < part.k:
        raise ValueError(f"scholar community {scholar_community} is not a community id (k={part.k})")
    for name, pct in (("pct_b_bot", pct_b_bot), ("pct_f_bot", pct_f_bot)):
        if not 0 <= pct <= 100:
            raise ValueError(f"{name} must lie in [0, 100], got {pct}")

    influencers = top_fraction_by_degree(net, INFLUENCER_FRACTION)
    pool = top_fraction_by_degree(net, BOT_POOL_FRACTION, excluded=influencers)
    n_b = floor_percent(n, pct_b_bot)
    n_f = floor_percent(n, pct_f_bot)
    if n_b + n_f > len(pool):
        raise ValueError(
            f"bot demand {n_b} + {n_f} = {n_b + n_f} exceeds the bot pool of {len(pool)} nodes"
        )

    rng = SplitMix64(substream(seed, STREAM_BOTS))
    drawn = rng.sample(pool.tolist(), n_b + n_f)
    bot_b = np.sort(np.array(drawn[:n_b], dtype=np.int64))
    bot_f = np.sort(np.array(drawn[n_b:], dtype=np.int64))

    class_of = np.full(n, AgentClass.NORMAL, dtype=np.int8)
    if scholar_community is not None:
        class_of[part.community_of == scholar_community] = AgentClass.SCHOLAR
    class_of[influencers] = AgentClass.INFLUENCER
    class_of[bot_b] = AgentClass.BOT_B
    class_of[bot_f] = AgentClass.BOT_F
    class_of.flags.writeable = False
    return ClassAssignment(class_of, scholar_community, influencers, pool, bot_b, bot_f)


def initialize_states(assign: ClassAssignment, pct_initial_believers: float, seed: int) -> StateVector:
    """Bots take their fixed state; a uniform sample of non-bots starts as believers."""
    if not 0 <= pct_initial_believers <= 100:
        raise ValueError(f"pct_initial_believers must lie in [0, 100], got {pct_initial_believers}")
    n = assign.node_count
    state = np.full(n, State.S, dtype=np.int8)
    state[assign.botB_set] = State.B
    state[assign.botF_set] = State.F

    candidates = np.flatnonzero(~assign.is_bot)
    want = floor_percent(n, pct_initial_believers)
    if want >= len(candidates):
        chosen = candidates
    else:
        rng = SplitMix64(substream(seed, STREAM_BELIEVERS))
        chosen = np.array(rng.sample(candidates.tolist(), want), dtype=np.int64)
    state[chosen] = State.B
    return StateVector(state, tick=0)
