"""Parameter grids, seeded replicate sweeps, aggregation and scenario comparison."""

from __future__ import annotations

import csv
import io
import itertools
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence, TextIO

import numpy as np

from .assignment import assign_classes
from .communities import Partition
from .graph import Network
from .model import DEFAULT_TICKS, ModelParams, Trajectory, run
from .rng import GOLDEN_GAMMA, MASK64, mix64

PARAMETERS = (
    "alpha",
    "beta",
    "pct_initial_believers",
    "scholar_community",
    "pv_scholar",
    "pf_scholar",
    "pv_influencer",
    "pf_influencer",
    "pct_b_bot",
    "pct_f_bot",
)
PROBABILITY_PARAMETERS = ("alpha", "beta", "pv_scholar", "pf_scholar", "pv_influencer", "pf_influencer")
PERCENT_PARAMETERS = ("pct_initial_believers", "pct_b_bot", "pct_f_bot")

DEFAULTS: dict[str, object] = {
    "alpha": 0.8,
    "beta": 0.5,
    "pct_initial_believers": 10,
    "scholar_community": None,
    "pv_scholar": 0.05,
    "pf_scholar": 0.1,
    "pv_influencer": 0.05,
    "pf_influencer": 0.1,
    "pct_b_bot": 0,
    "pct_f_bot": 0,
}

RESULTS_HEADER = ("setting_id", "replicate", "seed", *PARAMETERS, "final_S", "final_B", "final_F")
SUMMARY_HEADER = (
    "setting_id", *PARAMETERS, "replicates",
    "mean_S", "mean_B", "mean_F", "std_S", "std_B", "std_F",
)
COMPARISON_HEADER = (
    "scenario", *PARAMETERS, "replicates",
    "share_S", "share_B", "share_F", "mean_S", "mean_B", "mean_F", "believer_rank",
)


class SpecError(ValueError):
    pass


class SweepError(RuntimeError):
    pass


@dataclass(frozen=True)
class NearestShare:
    """Scholar community chosen as the one whose size share is closest to ``pct``."""

    pct: float

    def resolve(self, part: Partition) -> int:
        return part.nearest_by_share(self.pct / 100)

    def __str__(self) -> str:
        return f"nearest:{_fmt(self.pct)}"


def resolve_scholar(choice, part: Partition) -> int | None:
    if choice is None:
        return None
    if isinstance(choice, NearestShare):
        return choice.resolve(part)
    return int(choice)


@dataclass(frozen=True)
class Setting:
    """One point of the parameter grid."""

    setting_id: int
    alpha: float
    beta: float
    pct_initial_believers: float
    scholar_community: object
    pv_scholar: float
    pf_scholar: float
    pv_influencer: float
    pf_influencer: float
    pct_b_bot: float
    pct_f_bot: float

    def values(self) -> dict[str, object]:
        return {name: getattr(self, name) for name in PARAMETERS}

    def model_params(self, ticks: int = DEFAULT_TICKS) -> ModelParams:
        return ModelParams.standard(
            self.alpha, self.beta,
            pv_scholar=self.pv_scholar, pf_scholar=self.pf_scholar,
            pv_influencer=self.pv_influencer, pf_influencer=self.pf_influencer,
            ticks=ticks,
        )

    @classmethod
    def make(cls, setting_id: int = 0, **values) -> "Setting":
        unknown = set(values) - set(PARAMETERS)
        if unknown:
            raise SpecError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
        merged = {**DEFAULTS, **values}
        _validate_value_lists({k: [v] for k, v in merged.items()})
        return cls(setting_id, **merged)


@dataclass(frozen=True)
class SweepSpec:
    """Per-parameter value lists plus replicate count, horizon and base seed."""

    alpha: tuple = (DEFAULTS["alpha"],)
    beta: tuple = (DEFAULTS["beta"],)
    pct_initial_believers: tuple = (DEFAULTS["pct_initial_believers"],)
    scholar_community: tuple = (DEFAULTS["scholar_community"],)
    pv_scholar: tuple = (DEFAULTS["pv_scholar"],)
    pf_scholar: tuple = (DEFAULTS["pf_scholar"],)
    pv_influencer: tuple = (DEFAULTS["pv_influencer"],)
    pf_influencer: tuple = (DEFAULTS["pf_influencer"],)
    pct_b_bot: tuple = (DEFAULTS["pct_b_bot"],)
    pct_f_bot: tuple = (DEFAULTS["pct_f_bot"],)
    replicates: int = 4
    ticks: int = DEFAULT_TICKS
    base_seed: int = 0

    def __post_init__(self) -> None:
        for name in PARAMETERS:
            object.__setattr__(self, name, tuple(getattr(self, name)))
        _validate_value_lists({name: getattr(self, name) for name in PARAMETERS})
        if self.replicates < 1:
            raise SpecError(f"replicates must be >= 1, got {self.replicates}")
        if self.ticks < 0:
            raise SpecError(f"ticks must be >= 0, got {self.ticks}")

    @property
    def setting_count(self) -> int:
        return int(np.prod([len(getattr(self, name)) for name in PARAMETERS]))

    @property
    def run_count(self) -> int:
        return self.setting_count * self.replicates

    @classmethod
    def table1(cls, replicates: int = 4, base_seed: int = 0) -> "SweepSpec":
        """The published experiment grid (13,824 settings).

        Scholar communities are named by their published size shares and
        resolved against whichever partition the sweep runs on.
        """
        return cls(
            alpha=(0.3, 0.8),
            beta=(0.5, 0.75),
            pct_initial_believers=(10, 40),
            scholar_community=(None, NearestShare(8.81), NearestShare(13.2), NearestShare(22.13)),
            pv_scholar=(0.05, 0.1, 0.2, 0.3),
            pf_scholar=(0.02, 0.05, 0.1),
            pv_influencer=(0.05, 0.1, 0.2),
            pf_influencer=(0.02, 0.05, 0.1),
            pct_b_bot=(0, 1),
            pct_f_bot=(0, 1),
            replicates=replicates,
            ticks=DEFAULT_TICKS,
            base_seed=base_seed,
        )


def _validate_value_lists(lists: Mapping[str, Sequence]) -> None:
    for name in PARAMETERS:
        values = lists[name]
        if len(values) == 0:
            raise SpecError(f"parameter {name!r} has an empty value list")
        for v in values:
            if name == "scholar_community":
                if v is not None and not isinstance(v, NearestShare) and (not isinstance(v, (int, np.integer)) or v < 0):
                    raise SpecError(f"scholar_community value {v!r} is not 'none', an id or nearest:<pct>")
            elif name in PROBABILITY_PARAMETERS and not 0 <= v <= 1:
                raise SpecError(f"{name} value {v} lies outside [0, 1]")
            elif name in PERCENT_PARAMETERS and not 0 <= v <= 100:
                raise SpecError(f"{name} value {v} lies outside [0, 100]")


def expand_grid(spec: SweepSpec) -> list[Setting]:
    """Cartesian product in ``PARAMETERS`` order; the last parameter varies fastest."""
    lists = [getattr(spec, name) for name in PARAMETERS]
    return [Setting(i, *combo) for i, combo in enumerate(itertools.product(*lists))]


def derive_seed(base_seed: int, setting_id: int, replicate: int) -> int:
    """64-bit run seed: a SplitMix64 avalanche chained over the three inputs."""
    h = mix64((base_seed + GOLDEN_GAMMA) & MASK64)
    h = mix64((h ^ (setting_id & MASK64)) + 2 * GOLDEN_GAMMA)
    return mix64((h ^ (replicate & MASK64)) + 3 * GOLDEN_GAMMA)


@dataclass(frozen=True, eq=False)
class RunResult:
    setting: Setting
    replicate: int
    seed: int
    scholar_community: int | None
    final: tuple[int, int, int]
    trajectory: Trajectory | None = None

    @property
    def setting_id(self) -> int:
        return self.setting.setting_id

    def row(self) -> list[str]:
        values = {**self.setting.values(), "scholar_community": self.scholar_community}
        return [
            str(self.setting_id), str(self.replicate), str(self.seed),
            *(_fmt(values[name]) for name in PARAMETERS),
            *(str(x) for x in self.final),
        ]


def run_setting(
    setting: Setting,
    replicate: int,
    net: Network,
    part: Partition,
    ticks: int = DEFAULT_TICKS,
    base_seed: int = 0,
    keep_series: bool = False,
    seed: int | None = None,
) -> RunResult:
    """One seeded replicate: fresh bot placement, initial believers and dynamics."""
    if seed is None:
        seed = derive_seed(base_seed, setting.setting_id, replicate)
    scholar = resolve_scholar(setting.scholar_community, part)
    assign = assign_classes(net, part, scholar, setting.pct_b_bot, setting.pct_f_bot, seed)
    traj = run(net, part, assign, setting.model_params(ticks), setting.pct_initial_believers, seed)
    final = tuple(int(x) for x in traj.final)
    return RunResult(setting, replicate, seed, scholar, final, traj if keep_series else None)


_WORKER: dict[str, object] = {}


def _init_worker(net: Network, part: Partition) -> None:
    _WORKER["net"] = net
    _WORKER["part"] = part


def _run_chunk(args) -> list[RunResult]:
    items, ticks, base_seed, keep_series = args
    net, part = _WORKER["net"], _WORKER["part"]
    return [_guarded(s, r, net, part, ticks, base_seed, keep_series) for s, r in items]


def _guarded(setting, replicate, net, part, ticks, base_seed, keep_series) -> RunResult:
    try:
        return run_setting(setting, replicate, net, part, ticks, base_seed, keep_series)
    except Exception as exc:
        raise SweepError(f"setting {setting.setting_id} replicate {replicate} failed: {exc}") from exc


def run_sweep(
    spec: SweepSpec,
    net: Network,
    part: Partition,
    jobs: int = 1,
    keep_series: bool = False,
    settings: Sequence[Setting] | None = None,
    chunk_size: int = 32,
) -> list[RunResult]:
    """Run every (setting, replicate) pair and return results ordered by both.

    ``settings`` restricts the sweep to a subset of ``expand_grid(spec)``
    (setting ids, and so seeds, are kept). Output does not depend on ``jobs``.
    """
    if settings is None:
        settings = expand_grid(spec)
    items = [(s, r) for s in settings for r in range(spec.replicates)]
    if jobs <= 1 or len(items) <= 1:
        results = [_guarded(s, r, net, part, spec.ticks, spec.base_seed, keep_series) for s, r in items]
    else:
        chunks = [items[i:i + chunk_size] for i in range(0, len(items), chunk_size)]
        payload = [(c, spec.ticks, spec.base_seed, keep_series) for c in chunks]
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(net, part)) as pool:
            results = [r for chunk in pool.map(_run_chunk, payload) for r in chunk]
    results.sort(key=lambda r: (r.setting_id, r.replicate))
    return results


@dataclass(frozen=True, eq=False)
class SettingSummary:
    setting: Setting
    scholar_community: int | None
    replicates: int
    mean: np.ndarray
    std: np.ndarray

    @property
    def setting_id(self) -> int:
        return self.setting.setting_id

    def row(self) -> list[str]:
        values = {**self.setting.values(), "scholar_community": self.scholar_community}
        return [
            str(self.setting_id), *(_fmt(values[name]) for name in PARAMETERS), str(self.replicates),
            *(_fmt(float(x)) for x in self.mean), *(_fmt(float(x)) for x in self.std),
        ]


def aggregate(results: Iterable[RunResult], replicates: int | None = None) -> list[SettingSummary]:
    """Per-setting mean and sample (n-1) standard deviation of final counts.

    Every setting must carry replicates ``0..R-1`` where R is ``replicates``
    or, if not given, the largest replicate count seen for any setting.
    A single replicate has standard deviation 0.
    """
    groups: dict[int, list[RunResult]] = {}
    for r in results:
        groups.setdefault(r.setting_id, []).append(r)
    if not groups:
        return []
    want = replicates if replicates is not None else max(len(g) for g in groups.values())
    out = []
    for sid in sorted(groups):
        group = sorted(groups[sid], key=lambda r: r.replicate)
        have = [r.replicate for r in group]
        if have != list(range(want)):
            missing = sorted(set(range(want)) - set(have))
            detail = f"missing replicate(s) {missing}" if missing else f"unexpected replicates {have}"
            raise SweepError(f"setting {sid}: {detail}")
        finals = np.array([r.final for r in group], dtype=np.float64)
        std = finals.std(axis=0, ddof=1) if len(group) > 1 else np.zeros(3)
        out.append(SettingSummary(group[0].setting, group[0].scholar_community, len(group), finals.mean(axis=0), std))
    return out


@dataclass(frozen=True, eq=False)
class ScenarioRow:
    name: str
    setting: Setting
    scholar_community: int | None
    replicates: int
    mean: np.ndarray
    shares: np.ndarray
    series: np.ndarray | None
    believer_rank: int = 0


@dataclass(frozen=True, eq=False)
class ScenarioComparison:
    rows: list[ScenarioRow]
    node_count: int

    def by_name(self, name: str) -> ScenarioRow:
        for row in self.rows:
            if row.name == name:
                return row
        raise KeyError(name)

    @property
    def believer_order(self) -> list[str]:
        """Scenario names from fewest to most mean final believers."""
        return [r.name for r in sorted(self.rows, key=lambda r: r.believer_rank)]


def scenario_compare(
    scenarios: Mapping[str, Setting | Mapping[str, object]],
    net: Network,
    part: Partition,
    replicates: int = 4,
    ticks: int = DEFAULT_TICKS,
    base_seed: int = 0,
    jobs: int = 1,
) -> ScenarioComparison:
    """Run named scenarios with shared replicate seeds and rank them by believers.

    Replicate r of every scenario uses the same seed, so scenarios with equal
    parameters produce equal outputs and differences between scenarios are
    not blurred by unrelated seed noise.
    """
    named = []
    for name, sc in scenarios.items():
        setting = sc if isinstance(sc, Setting) else Setting.make(**dict(sc))
        named.append((name, replace(setting, setting_id=0)))
    spec = SweepSpec(replicates=replicates, ticks=ticks, base_seed=base_seed)
    rows = []
    for name, setting in named:
        try:
            results = run_sweep(spec, net, part, jobs=jobs, keep_series=True, settings=[setting])
        except SweepError as exc:
            raise SweepError(f"scenario {name!r}: {exc}") from exc
        finals = np.array([r.final for r in results], dtype=np.float64)
        series = np.mean([r.trajectory.counts for r in results], axis=0)
        mean = finals.mean(axis=0)
        rows.append(ScenarioRow(name, setting, results[0].scholar_community, replicates, mean, mean / net.node_count, series))
    ranked = sorted(range(len(rows)), key=lambda i: (rows[i].mean[1], i))
    rank = {i: k + 1 for k, i in enumerate(ranked)}
    rows = [replace(row, believer_rank=rank[i]) for i, row in enumerate(rows)]
    return ScenarioComparison(rows, net.node_count)


TABLE3_SCENARIOS: dict[str, dict[str, object]] = {
    "Normal": dict(scholar_community=None, pv_scholar=0.05, pf_scholar=0.1, pv_influencer=0.05, pf_influencer=0.1, pct_b_bot=0, pct_f_bot=0),
    "Worst": dict(scholar_community=None, pv_scholar=0.05, pf_scholar=0.1, pv_influencer=0.05, pf_influencer=0.1, pct_b_bot=5, pct_f_bot=0),
    "Best": dict(scholar_community=NearestShare(22.13), pv_scholar=0.2, pf_scholar=0.05, pv_influencer=0.2, pf_influencer=0.05, pct_b_bot=0, pct_f_bot=5),
    "Moderate": dict(scholar_community=NearestShare(8.81), pv_scholar=0.2, pf_scholar=0.05, pv_influencer=0.05, pf_influencer=0.05, pct_b_bot=3, pct_f_bot=3),
}
for _sc in TABLE3_SCENARIOS.values():
    _sc.update(alpha=0.8, beta=0.5, pct_initial_believers=10)


# ---------------------------------------------------------------- file formats

def _fmt(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, float):
        return repr(int(value)) if value.is_integer() and abs(value) < 1e15 else repr(value)
    return str(value)


_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


def _parse_number(token: str, where: str):
    if not _NUMBER.match(token):
        raise SpecError(f"{where}: {token!r} is not a number")
    return float(token) if any(c in token for c in ".eE") else int(token)


def _parse_scholar(token: str, where: str):
    t = token.lower()
    if t == "none":
        return None
    if t.startswith("nearest:"):
        return NearestShare(float(_parse_number(t[len("nearest:"):].rstrip("%"), where)))
    value = _parse_number(token, where)
    if not isinstance(value, int):
        raise SpecError(f"{where}: scholar_community {token!r} must be 'none', an integer id or nearest:<pct>")
    return value


def _parse_assignments(lines: Iterable[tuple[int, str]], allowed: set[str]) -> dict[str, list]:
    out: dict[str, list] = {}
    for lineno, line in lines:
        if "=" not in line:
            raise SpecError(f"line {lineno}: expected 'name = value[, value...]', got {line!r}")
        name, _, rhs = (part.strip() for part in line.partition("="))
        if name not in allowed:
            raise SpecError(f"line {lineno}: unknown parameter {name!r}")
        if name in out:
            raise SpecError(f"line {lineno}: parameter {name!r} given twice")
        tokens = [t.strip() for t in rhs.split(",") if t.strip()]
        if not tokens:
            raise SpecError(f"line {lineno}: parameter {name!r} has an empty value list")
        where = f"line {lineno}"
        if name == "scholar_community":
            out[name] = [_parse_scholar(t, where) for t in tokens]
        else:
            out[name] = [_parse_number(t, where) for t in tokens]
    return out


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


_RUN_KEYS = ("replicates", "ticks", "base_seed")


def _single_int(values: dict[str, list], key: str):
    if key not in values:
        return None
    v = values.pop(key)
    if len(v) != 1 or not isinstance(v[0], int):
        raise SpecError(f"{key} takes a single integer")
    return v[0]


def parse_sweep_spec(text: str) -> SweepSpec:
    """Parse ``name = v1, v2`` lines; omitted parameters take the defaults."""
    values = _parse_assignments(_content_lines(text), set(PARAMETERS) | set(_RUN_KEYS))
    extra = {k: _single_int(values, k) for k in _RUN_KEYS}
    extra = {k: v for k, v in extra.items() if v is not None}
    return SweepSpec(**{k: tuple(v) for k, v in values.items()}, **extra)


def load_sweep_spec(path: str | os.PathLike) -> SweepSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_sweep_spec(fh.read())


def dumps_sweep_spec(spec: SweepSpec) -> str:
    lines = [f"{name} = {', '.join(_fmt(v) for v in getattr(spec, name))}" for name in PARAMETERS]
    lines += [f"{k} = {getattr(spec, k)}" for k in _RUN_KEYS]
    return "\n".join(lines) + "\n"


def parse_scenarios(text: str) -> tuple[dict[str, Setting], dict[str, int]]:
    """Parse ``[Name]`` sections of single-valued assignments.

    Lines before the first section may set ``replicates``, ``ticks`` and
    ``base_seed`` for the whole comparison.
    """
    sections: list[tuple[str | None, list[tuple[int, str]]]] = [(None, [])]
    for lineno, line in _content_lines(text):
        m = re.fullmatch(r"\[([^\]]+)\]", line)
        if m:
            sections.append((m.group(1).strip(), []))
        else:
            sections[-1][1].append((lineno, line))
    header_vals = _parse_assignments(sections[0][1], set(_RUN_KEYS))
    options = {k: v for k in _RUN_KEYS if (v := _single_int(header_vals, k)) is not None}
    scenarios: dict[str, Setting] = {}
    for name, body in sections[1:]:
        if name in scenarios:
            raise SpecError(f"scenario {name!r} defined twice")
        vals = _parse_assignments(body, set(PARAMETERS))
        for k, v in vals.items():
            if len(v) != 1:
                raise SpecError(f"scenario {name!r}: {k} must have a single value")
        scenarios[name] = Setting.make(**{k: v[0] for k, v in vals.items()})
    if not scenarios:
        raise SpecError("no [scenario] sections found")
    return scenarios, options


def load_scenarios(path: str | os.PathLike) -> tuple[dict[str, Setting], dict[str, int]]:
    with open(path, encoding="utf-8") as fh:
        return parse_scenarios(fh.read())


def _write_rows(sink: TextIO, header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    sink.write(",".join(header) + "\n")
    for row in rows:
        sink.write(",".join(row) + "\n")


def write_results(results: Iterable[RunResult], sink: TextIO) -> None:
    _write_rows(sink, RESULTS_HEADER, (r.row() for r in results))


def write_summary(summaries: Iterable[SettingSummary], sink: TextIO) -> None:
    _write_rows(sink, SUMMARY_HEADER, (s.row() for s in summaries))


def write_comparison(comp: ScenarioComparison, sink: TextIO) -> None:
    rows = []
    for r in comp.rows:
        values = {**r.setting.values(), "scholar_community": r.scholar_community}
        rows.append([
            r.name, *(_fmt(values[name]) for name in PARAMETERS), str(r.replicates),
            *(_fmt(float(x)) for x in r.shares), *(_fmt(float(x)) for x in r.mean), str(r.believer_rank),
        ])
    _write_rows(sink, COMPARISON_HEADER, rows)


def read_results(source: TextIO) -> list[RunResult]:
    """Parse a results file back into :class:`RunResult` objects (no trajectories)."""
    reader = csv.reader(source)
    header = next(reader, None)
    if header is None or tuple(header) != RESULTS_HEADER:
        raise SpecError(f"results header mismatch: expected {','.join(RESULTS_HEADER)}")
    out = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(RESULTS_HEADER):
            raise SpecError(f"line {lineno}: expected {len(RESULTS_HEADER)} fields, got {len(row)}")
        rec = dict(zip(RESULTS_HEADER, row))
        where = f"line {lineno}"
        vals = {}
        for name in PARAMETERS:
            vals[name] = _parse_scholar(rec[name], where) if name == "scholar_community" else _parse_number(rec[name], where)
        setting = Setting(int(rec["setting_id"]), **vals)
        final = (int(rec["final_S"]), int(rec["final_B"]), int(rec["final_F"]))
        out.append(RunResult(setting, int(rec["replicate"]), int(rec["seed"]), vals["scholar_community"], final))
    return out


# ------------------------------------------------------------- figure extracts

def sensitivity_pairs(summaries: Sequence[SettingSummary], parameter: str) -> list[dict[str, object]]:
    """Match settings that differ only in ``parameter`` (low vs high value)."""
    others = [p for p in PARAMETERS if p != parameter]
    groups: dict[tuple, dict[object, SettingSummary]] = {}
    for s in summaries:
        key = tuple(_fmt(getattr(s.setting, p)) for p in others)
        groups.setdefault(key, {})[getattr(s.setting, parameter)] = s
    values = sorted({getattr(s.setting, parameter) for s in summaries})
    if len(values) < 2:
        return []
    lo, hi = values[0], values[-1]
    out = []
    for group in groups.values():
        if lo in group and hi in group:
            a, b = group[lo], group[hi]
            out.append({
                "parameter": parameter, "value_low": lo, "value_high": hi,
                "setting_low": a.setting_id, "setting_high": b.setting_id,
                "B_low": a.mean[1], "B_high": b.mean[1],
                "F_low": a.mean[2], "F_high": b.mean[2],
                "S_low": a.mean[0], "S_high": b.mean[0],
            })
    return out


def _matches(setting: Setting, **want) -> bool:
    return all(getattr(setting, k) == v for k, v in want.items())


def scholar_size_columns(summaries: Sequence[SettingSummary], part: Partition) -> list[dict[str, object]]:
    """Boxplot columns: settings with highly educated scholars at high credibility."""
    out = []
    for s in summaries:
        if _matches(s.setting, alpha=0.8, pv_scholar=0.3, pf_scholar=0.02):
            share = None if s.scholar_community is None else part.share(s.scholar_community)
            out.append({
                "scholar_community": s.scholar_community, "scholar_share": share,
                "setting_id": s.setting_id,
                "mean_S": s.mean[0], "mean_B": s.mean[1], "mean_F": s.mean[2],
            })
    return out


def bot_grid(summaries: Sequence[SettingSummary]) -> list[dict[str, object]]:
    """Mean final counts per (believer-bot %, fact-checker-bot %) cell."""
    cells: dict[tuple, list[np.ndarray]] = {}
    for s in summaries:
        if _matches(s.setting, alpha=0.8, beta=0.5, pct_initial_believers=10):
            cells.setdefault((s.setting.pct_b_bot, s.setting.pct_f_bot), []).append(s.mean)
    out = []
    for (b, f), means in sorted(cells.items()):
        m = np.mean(means, axis=0)
        out.append({"pct_b_bot": b, "pct_f_bot": f, "mean_S": m[0], "mean_B": m[1], "mean_F": m[2], "n_settings": len(means)})
    return out


def write_dicts(rows: Sequence[Mapping[str, object]], sink: TextIO, header: Sequence[str]) -> None:
    _write_rows(sink, header, ([_fmt(_plain(r[h])) for h in header] for r in rows))


def _plain(v):
    return float(v) if isinstance(v, np.floating) else v


FIG4_HEADER = ("parameter", "value_low", "value_high", "setting_low", "setting_high",
               "B_low", "B_high", "F_low", "F_high", "S_low", "S_high")
FIG5_HEADER = ("scholar_community", "scholar_share", "setting_id", "mean_S", "mean_B", "mean_F")
FIG6_HEADER = ("pct_b_bot", "pct_f_bot", "mean_S", "mean_B", "mean_F", "n_settings")
FIG7_HEADER = ("scenario", "tick", "S", "B", "F")


def plot_data_files(summaries: Sequence[SettingSummary], part: Partition) -> dict[str, str]:
    """Figure extracts from a sweep summary, as ``{filename: csv text}``."""
    files = {}
    buf = io.StringIO()
    write_dicts(
        [row for p in ("alpha", "beta", "pct_initial_believers") for row in sensitivity_pairs(summaries, p)],
        buf, FIG4_HEADER,
    )
    files["fig4_sensitivity.csv"] = buf.getvalue()
    buf = io.StringIO()
    write_dicts(scholar_size_columns(summaries, part), buf, FIG5_HEADER)
    files["fig5_scholar_size.csv"] = buf.getvalue()
    buf = io.StringIO()
    write_dicts(bot_grid(summaries), buf, FIG6_HEADER)
    files["fig6_bot_grid.csv"] = buf.getvalue()
    return files


def scenario_series_file(comp: ScenarioComparison) -> str:
    buf = io.StringIO()
    rows = []
    for r in comp.rows:
        for t, (s, b, f) in enumerate(r.series.tolist()):
            rows.append({"scenario": r.name, "tick": t, "S": s, "B": b, "F": f})
    write_dicts(rows, buf, FIG7_HEADER)
    return buf.getvalue()


__all__ = [
    "PARAMETERS", "NearestShare", "Setting", "SweepSpec", "RunResult", "SettingSummary",
    "ScenarioComparison", "ScenarioRow", "SpecError", "SweepError", "TABLE3_SCENARIOS",
    "expand_grid", "derive_seed", "run_setting", "run_sweep", "aggregate", "scenario_compare",
    "parse_sweep_spec", "load_sweep_spec", "dumps_sweep_spec", "parse_scenarios", "load_scenarios",
    "write_results", "read_results", "write_summary", "write_comparison",
    "sensitivity_pairs", "scholar_size_columns", "bot_grid", "plot_data_files", "scenario_series_file",
]
