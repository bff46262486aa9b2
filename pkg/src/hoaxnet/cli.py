"""Command-line entry point: ``hoaxnet <command> [options]``."""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Iterator, Sequence

from . import experiment as exp
from .assignment import assign_classes
from .communities import Partition, fluid_communities, load_partition, save_partition
from .graph import Network, load_edge_list
from .model import ModelParams, run, write_trajectory


class CommandError(RuntimeError):
    pass


def _probability(flag: str):
    def parse(text: str) -> float:
        try:
            v = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{flag} expects a number, got {text!r}") from None
        if not 0.0 <= v <= 1.0:
            raise argparse.ArgumentTypeError(f"{flag} must lie in [0, 1], got {v}")
        return v
    return parse


def _percent(flag: str):
    def parse(text: str) -> float:
        try:
            v = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{flag} expects a number, got {text!r}") from None
        if not 0.0 <= v <= 100.0:
            raise argparse.ArgumentTypeError(f"{flag} must lie in [0, 100], got {v}")
        return int(v) if v.is_integer() else v
    return parse


def _scholar(text: str):
    try:
        return exp._parse_scholar(text, "--scholar-community")
    except exp.SpecError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _default_jobs() -> int:
    raw = os.environ.get("HOAXNET_JOBS")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise CommandError(f"HOAXNET_JOBS must be an integer, got {raw!r}") from None


@contextlib.contextmanager
def _staged(paths: Sequence[Path]) -> Iterator[list[Path]]:
    """Yield temp paths that replace ``paths`` only if the block succeeds."""
    temps = []
    try:
        for p in paths:
            p.parent.mkdir(parents=True, exist_ok=True)
            fd, name = tempfile.mkstemp(prefix=f".{p.name}.", dir=p.parent)
            os.close(fd)
            temps.append(Path(name))
        yield temps
    except BaseException:
        for t in temps:
            t.unlink(missing_ok=True)
        raise
    for t, p in zip(temps, paths):
        os.replace(t, p)


def _write_text(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _meta(**fields) -> str:
    return json.dumps(fields, indent=2, sort_keys=True) + "\n"


def _load_inputs(args) -> tuple[Network, Partition]:
    net = load_edge_list(args.graph)
    part = load_partition(args.partition, node_count=net.node_count)
    return net, part


def cmd_validate(args) -> int:
    net = load_edge_list(args.graph)
    print(
        f"nodes={net.node_count} edges={net.edge_count} "
        f"mean_degree={net.mean_degree:.2f} connected={str(net.is_connected()).lower()}"
    )
    return 0


def cmd_cluster(args) -> int:
    net = load_edge_list(args.graph)
    part = fluid_communities(net, args.k, args.seed, max_sweeps=args.max_sweeps)
    out = Path(args.out)
    meta = out.with_name(out.name + ".meta.json")
    with _staged([out, meta]) as (tmp, tmp_meta):
        save_partition(part, tmp)
        _write_text(tmp_meta, _meta(command="cluster", k=args.k, seed=args.seed, max_sweeps=args.max_sweeps,
                                    converged=part.converged, sweeps=part.sweeps, sizes=part.sizes.tolist()))
    print(f"k={part.k} sizes={','.join(map(str, part.sizes.tolist()))} "
          f"converged={str(part.converged).lower()} sweeps={part.sweeps}")
    return 0


def cmd_simulate(args) -> int:
    net, part = _load_inputs(args)
    setting = exp.Setting.make(
        alpha=args.alpha, beta=args.beta, pct_initial_believers=args.pct_initial_believers,
        scholar_community=args.scholar_community,
        pv_scholar=args.pv_scholar, pf_scholar=args.pf_scholar,
        pv_influencer=args.pv_influencer, pf_influencer=args.pf_influencer,
        pct_b_bot=args.pct_b_bot, pct_f_bot=args.pct_f_bot,
    )
    scholar = exp.resolve_scholar(setting.scholar_community, part)
    assign = assign_classes(net, part, scholar, setting.pct_b_bot, setting.pct_f_bot, args.seed)
    params: ModelParams = setting.model_params(args.ticks)
    traj = run(net, part, assign, params, setting.pct_initial_believers, args.seed)
    out = Path(args.out)
    meta = out.with_name(out.name + ".meta.json")
    with _staged([out, meta]) as (tmp, tmp_meta):
        write_trajectory(traj, tmp)
        values = {k: exp._fmt(v) for k, v in setting.values().items()}
        values["scholar_community"] = exp._fmt(scholar)
        _write_text(tmp_meta, _meta(command="simulate", seed=args.seed, ticks=args.ticks, parameters=values,
                                    bot_placement="per-run"))
    s, b, f = traj.final.tolist()
    print(f"final S={s} B={b} F={f} seed={args.seed}")
    return 0


def _spec_with_overrides(args) -> exp.SweepSpec:
    spec = exp.load_sweep_spec(args.spec)
    over = {}
    if args.replicates is not None:
        over["replicates"] = args.replicates
    if args.ticks is not None:
        over["ticks"] = args.ticks
    if args.seed is not None:
        over["base_seed"] = args.seed
    return exp.SweepSpec(**{**{k: getattr(spec, k) for k in (*exp.PARAMETERS, "replicates", "ticks", "base_seed")}, **over})


def cmd_sweep(args) -> int:
    net, part = _load_inputs(args)
    spec = _spec_with_overrides(args)
    results = exp.run_sweep(spec, net, part, jobs=args.jobs)
    summaries = exp.aggregate(results, replicates=spec.replicates)

    files: dict[str, str] = {}
    buf = io.StringIO()
    exp.write_results(results, buf)
    files["results.csv"] = buf.getvalue()
    buf = io.StringIO()
    exp.write_summary(summaries, buf)
    files["summary.csv"] = buf.getvalue()
    if args.emit_plot_data:
        files.update(exp.plot_data_files(summaries, part))
    files["metadata.json"] = _meta(command="sweep", base_seed=spec.base_seed, replicates=spec.replicates,
                                   ticks=spec.ticks, settings=spec.setting_count, runs=len(results),
                                   bot_placement="per-run", spec=exp.dumps_sweep_spec(spec))
    _write_dir(Path(args.out), files)
    print(f"settings={spec.setting_count} runs={len(results)} out={args.out}")
    return 0


def cmd_aggregate(args) -> int:
    with open(args.in_path, encoding="utf-8") as fh:
        results = exp.read_results(fh)
    summaries = exp.aggregate(results)
    out = Path(args.out)
    with _staged([out]) as (tmp,):
        with open(tmp, "w", encoding="utf-8", newline="") as fh:
            exp.write_summary(summaries, fh)
    print(f"settings={len(summaries)} out={args.out}")
    return 0


def cmd_scenarios(args) -> int:
    net, part = _load_inputs(args)
    scenarios, options = exp.load_scenarios(args.spec)
    replicates = args.replicates or options.get("replicates", 4)
    ticks = args.ticks if args.ticks is not None else options.get("ticks", 168)
    seed = args.seed if args.seed is not None else options.get("base_seed", 0)
    comp = exp.scenario_compare(scenarios, net, part, replicates=replicates, ticks=ticks, base_seed=seed, jobs=args.jobs)
    files: dict[str, str] = {}
    buf = io.StringIO()
    exp.write_comparison(comp, buf)
    files["comparison.csv"] = buf.getvalue()
    if args.emit_plot_data:
        files["fig7_series.csv"] = exp.scenario_series_file(comp)
    files["metadata.json"] = _meta(command="scenarios", base_seed=seed, replicates=replicates, ticks=ticks,
                                   scenarios=list(scenarios), bot_placement="per-run")
    _write_dir(Path(args.out), files)
    for row in comp.rows:
        print(f"{row.name}: S={row.shares[0]:.3f} B={row.shares[1]:.3f} F={row.shares[2]:.3f} rank={row.believer_rank}")
    return 0


def _write_dir(out: Path, files: dict[str, str]) -> None:
    out.mkdir(parents=True, exist_ok=True)
    names = sorted(files)
    with _staged([out / n for n in names]) as temps:
        for n, t in zip(names, temps):
            _write_text(t, files[n])


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    d = exp.DEFAULTS
    p.add_argument("--alpha", type=_probability("--alpha"), default=d["alpha"], help="hoax credibility")
    p.add_argument("--beta", type=_probability("--beta"), default=d["beta"], help="spreading rate")
    p.add_argument("--pct-initial-believers", type=_percent("--pct-initial-believers"), default=d["pct_initial_believers"])
    p.add_argument("--scholar-community", type=_scholar, default=None, help="none, a community id, or nearest:<pct>")
    p.add_argument("--pv-scholar", type=_probability("--pv-scholar"), default=d["pv_scholar"])
    p.add_argument("--pf-scholar", type=_probability("--pf-scholar"), default=d["pf_scholar"])
    p.add_argument("--pv-influencer", type=_probability("--pv-influencer"), default=d["pv_influencer"])
    p.add_argument("--pf-influencer", type=_probability("--pf-influencer"), default=d["pf_influencer"])
    p.add_argument("--pct-b-bot", type=_percent("--pct-b-bot"), default=d["pct_b_bot"])
    p.add_argument("--pct-f-bot", type=_percent("--pct-f-bot"), default=d["pct_f_bot"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hoaxnet", description="SBFC misinformation simulator with agent classes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check an edge list and print its summary")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cluster", help="fluid-communities partition of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-sweeps", type=int, default=100)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("simulate", help="one seeded run; writes the per-tick series")
    p.add_argument("--graph", required=True)
    p.add_argument("--partition", required=True)
    _add_model_flags(p)
    p.add_argument("--ticks", type=int, default=168)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    for name, func, helptext in (
        ("sweep", cmd_sweep, "run a parameter grid with replicates"),
        ("scenarios", cmd_scenarios, "compare named scenarios"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--graph", required=True)
        p.add_argument("--partition", required=True)
        p.add_argument("--spec", required=True)
        p.add_argument("--replicates", type=int, default=None)
        p.add_argument("--ticks", type=int, default=None)
        p.add_argument("--seed", type=int, default=None, help="base seed (overrides the spec file)")
        p.add_argument("--jobs", type=int, default=None, help="worker processes (default $HOAXNET_JOBS or 1)")
        p.add_argument("--emit-plot-data", action="store_true")
        p.add_argument("--out", required=True, help="output directory")
        p.set_defaults(func=func)

    p = sub.add_parser("aggregate", help="summarise a results file")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_aggregate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "jobs", 0) is None:
            args.jobs = _default_jobs()
        for flag in ("replicates", "ticks", "k"):
            v = getattr(args, flag, None)
            if v is not None and v < (1 if flag != "ticks" else 0):
                raise CommandError(f"--{flag} must be {'>= 0' if flag == 'ticks' else '>= 1'}, got {v}")
        return args.func(args)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"hoaxnet {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
