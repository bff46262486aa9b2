"""SBFC transition kernel with per-class verify/forget probabilities.

Updates are synchronous: every transition at tick t reads the tick-t state and
the results are applied together to form tick t+1. Each tick consumes exactly
N uniforms from the run's dynamics stream, one per node in ascending id order
(bots included, though they ignore theirs). A single uniform ``u`` decides a
node's move:

    S:  u < f_B -> B,  u < f_B + f_F -> F,  else S
    B:  u < p_f -> S,  u < p_f + (1 - p_f) p_v -> F,  else B
    F:  u < p_f -> S,  else F

The believer rule is "forget first, then verify if not forgotten", so the
verify branch carries probability ``p_v (1 - p_f)``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, TextIO

import numpy as np

from .assignment import STREAM_DYNAMICS, AgentClass, ClassAssignment, State, StateVector, initialize_states
from .communities import Partition
from .graph import Network
from .rng import SplitMix64, substream

DEFAULT_TICKS = 168
NORMAL_P_VERIFY = 0.05
NORMAL_P_FORGET = 0.1

S, B, F = int(State.S), int(State.B), int(State.F)
N_CLASSES = len(AgentClass)

TRAJECTORY_HEADER = (
    "setting_id,replicate,tick,S,B,F,S_normal,B_normal,F_normal,S_scholar,B_scholar,F_scholar,"
    "S_influencer,B_influencer,F_influencer,B_bot,F_bot"
)


def _check_prob(name: str, p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p}")


@dataclass(frozen=True)
class ModelParams:
    """Hoax credibility, spreading rate and per-class ``(p_verify, p_forget)``."""

    alpha: float
    beta: float
    class_probs: Mapping[AgentClass, tuple[float, float]]
    ticks: int = DEFAULT_TICKS

    def __post_init__(self) -> None:
        _check_prob("alpha", self.alpha)
        _check_prob("beta", self.beta)
        if self.ticks < 0:
            raise ValueError(f"ticks must be >= 0, got {self.ticks}")
        probs = {AgentClass(k): (float(v[0]), float(v[1])) for k, v in self.class_probs.items()}
        for cls in (AgentClass.NORMAL, AgentClass.SCHOLAR, AgentClass.INFLUENCER):
            if cls not in probs:
                raise ValueError(f"class_probs is missing {cls.name}")
        for cls, (pv, pf) in probs.items():
            _check_prob(f"p_verify[{cls.label}]", pv)
            _check_prob(f"p_forget[{cls.label}]", pf)
        object.__setattr__(self, "class_probs", MappingProxyType(probs))

    def __reduce__(self):
        # mappingproxy is not picklable; worker processes ship a plain dict
        return type(self), (self.alpha, self.beta, dict(self.class_probs), self.ticks)

    @classmethod
    def standard(
        cls,
        alpha: float,
        beta: float,
        pv_scholar: float = NORMAL_P_VERIFY,
        pf_scholar: float = NORMAL_P_FORGET,
        pv_influencer: float = NORMAL_P_VERIFY,
        pf_influencer: float = NORMAL_P_FORGET,
        ticks: int = DEFAULT_TICKS,
        pv_normal: float = NORMAL_P_VERIFY,
        pf_normal: float = NORMAL_P_FORGET,
    ) -> "ModelParams":
        return cls(
            alpha,
            beta,
            {
                AgentClass.NORMAL: (pv_normal, pf_normal),
                AgentClass.SCHOLAR: (pv_scholar, pf_scholar),
                AgentClass.INFLUENCER: (pv_influencer, pf_influencer),
            },
            ticks,
        )

    def node_probabilities(self, class_of: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Per-node ``(p_verify, p_forget)``; bots get zeros (they never move)."""
        pv = np.zeros(N_CLASSES)
        pf = np.zeros(N_CLASSES)
        for cls in (AgentClass.NORMAL, AgentClass.SCHOLAR, AgentClass.INFLUENCER):
            pv[cls], pf[cls] = self.class_probs[cls]
        return pv[class_of], pf[class_of]


def spreading_rates(alpha: float, beta: float, n_b: int, n_f: int) -> tuple[float, float]:
    """Probabilities that a susceptible node becomes a believer / fact-checker.

    >>> spreading_rates(0.0, 0.75, 3, 3)
    (0.375, 0.375)
    >>> spreading_rates(0.5, 0.5, 0, 0)
    (0.0, 0.0)
    """
    wb = n_b * (1 + alpha)
    wf = n_f * (1 - alpha)
    total = wb + wf
    # an empty neighbourhood exerts no pressure; also covers alpha=1 with only F neighbours
    if total == 0:
        return 0.0, 0.0
    return beta * wb / total, beta * wf / total


def _rates_array(alpha: float, beta: float, n_b: np.ndarray, n_f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    wb = n_b * (1 + alpha)
    wf = n_f * (1 - alpha)
    total = wb + wf
    safe = np.where(total > 0, total, 1.0)
    f_b = np.where(total > 0, beta * wb / safe, 0.0)
    f_f = np.where(total > 0, beta * wf / safe, 0.0)
    return f_b, f_f


def neighbor_counts(net: Network, state_of: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Believer and fact-checker neighbour totals for every node, from scratch."""
    adj = net.to_sparse()
    n_b = adj @ (state_of == B).astype(np.int32)
    n_f = adj @ (state_of == F).astype(np.int32)
    return np.asarray(n_b, dtype=np.int64), np.asarray(n_f, dtype=np.int64)


def _transition(
    state: np.ndarray,
    n_b: np.ndarray,
    n_f: np.ndarray,
    u: np.ndarray,
    p_verify: np.ndarray,
    p_forget: np.ndarray,
    mobile: np.ndarray,
    alpha: float,
    beta: float,
) -> np.ndarray:
    f_b, f_f = _rates_array(alpha, beta, n_b, n_f)
    new = state.copy()

    sus = mobile & (state == S)
    to_b = sus & (u < f_b)
    to_f = sus & ~to_b & (u < f_b + f_f)

    bel = mobile & (state == B)
    forget_b = bel & (u < p_forget)
    verify_b = bel & ~forget_b & (u < p_forget + (1.0 - p_forget) * p_verify)

    forget_f = mobile & (state == F) & (u < p_forget)

    new[to_b] = B
    new[to_f | verify_b] = F
    new[forget_b | forget_f] = S
    return new


def step(
    states: StateVector,
    net: Network,
    assign: ClassAssignment,
    params: ModelParams,
    rng: SplitMix64,
) -> StateVector:
    """One synchronous tick; neighbour counts are recomputed from the adjacency."""
    n_b, n_f = neighbor_counts(net, states.state_of)
    p_verify, p_forget = params.node_probabilities(assign.class_of)
    u = rng.uniforms(net.node_count)
    new = _transition(
        states.state_of, n_b, n_f, u, p_verify, p_forget, ~assign.is_bot, params.alpha, params.beta
    )
    return StateVector(new, states.tick + 1)


class _IncrementalCounts:
    """Per-node B/F neighbour totals, patched only where states changed."""

    def __init__(self, net: Network, state: np.ndarray) -> None:
        self.indptr = net.indptr
        self.indices = net.indices
        self.n = net.node_count
        self.n_b, self.n_f = neighbor_counts(net, state)

    def update(self, old: np.ndarray, new: np.ndarray) -> None:
        changed = np.flatnonzero(old != new)
        if not changed.size:
            return
        starts = self.indptr[changed]
        lens = self.indptr[changed + 1] - starts
        total = int(lens.sum())
        if not total:
            return
        pos = np.repeat(starts - (np.cumsum(lens) - lens), lens) + np.arange(total)
        targets = self.indices[pos]
        o, w = old[changed], new[changed]
        d_b = (w == B).astype(np.int64) - (o == B)
        d_f = (w == F).astype(np.int64) - (o == F)
        self.n_b += np.bincount(targets, weights=np.repeat(d_b, lens), minlength=self.n).astype(np.int64)
        self.n_f += np.bincount(targets, weights=np.repeat(d_f, lens), minlength=self.n).astype(np.int64)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Per-tick state counts of one run, overall and per agent class.

    ``class_counts[t, c, s]`` is the number of class-``c`` nodes in state ``s``
    at tick ``t``.
    """

    class_counts: np.ndarray
    seed: int
    params: ModelParams
    pct_initial_believers: float
    scholar_community: int | None = None
    metadata: Mapping[str, object] = field(default_factory=dict)

    @property
    def counts(self) -> np.ndarray:
        return self.class_counts.sum(axis=1)

    @property
    def final(self) -> np.ndarray:
        return self.counts[-1]

    @property
    def node_count(self) -> int:
        return int(self.class_counts[0].sum())

    def rows(self, setting_id: int = 0, replicate: int = 0) -> list[list[int]]:
        cc = self.class_counts
        out = []
        for t in range(len(cc)):
            c = cc[t]
            tot = c.sum(axis=0)
            out.append([
                setting_id, replicate, t, *tot.tolist(),
                *c[AgentClass.NORMAL].tolist(),
                *c[AgentClass.SCHOLAR].tolist(),
                *c[AgentClass.INFLUENCER].tolist(),
                int(c[AgentClass.BOT_B, B]), int(c[AgentClass.BOT_F, F]),
            ])
        return out


def write_trajectory(traj: Trajectory, sink: TextIO | str | os.PathLike, setting_id: int = 0, replicate: int = 0) -> None:
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            return write_trajectory(traj, fh, setting_id, replicate)
    sink.write(TRAJECTORY_HEADER + "\n")
    for row in traj.rows(setting_id, replicate):
        sink.write(",".join(map(str, row)) + "\n")


def _class_tally(codes_base: np.ndarray, state: np.ndarray) -> np.ndarray:
    return np.bincount(codes_base + state, minlength=N_CLASSES * 3).reshape(N_CLASSES, 3)


def run(
    net: Network,
    part: Partition,
    assign: ClassAssignment,
    params: ModelParams,
    pct_initial_believers: float,
    seed: int,
) -> Trajectory:
    """Initialise from ``seed`` and apply ``params.ticks`` synchronous steps.

    Equivalent to calling :func:`step` repeatedly with
    ``SplitMix64(substream(seed, STREAM_DYNAMICS))``, but neighbour counts are
    maintained incrementally instead of being recounted each tick.
    """
    if part.node_count != net.node_count or assign.node_count != net.node_count:
        raise ValueError("network, partition and class assignment disagree on node count")
    state = initialize_states(assign, pct_initial_believers, seed).state_of
    rng = SplitMix64(substream(seed, STREAM_DYNAMICS))
    p_verify, p_forget = params.node_probabilities(assign.class_of)
    mobile = ~assign.is_bot
    codes_base = assign.class_of.astype(np.int64) * 3

    counts = _IncrementalCounts(net, state)
    history = np.empty((params.ticks + 1, N_CLASSES, 3), dtype=np.int64)
    history[0] = _class_tally(codes_base, state)
    n = net.node_count
    for t in range(1, params.ticks + 1):
        u = rng.uniforms(n)
        new = _transition(state, counts.n_b, counts.n_f, u, p_verify, p_forget, mobile, params.alpha, params.beta)
        counts.update(state, new)
        state = new
        history[t] = _class_tally(codes_base, state)

    return Trajectory(
        history,
        seed=seed,
        params=params,
        pct_initial_believers=pct_initial_believers,
        scholar_community=assign.scholar_community,
        metadata={"bot_placement": "per-run", "stream": "splitmix64"},
    )
