import io
import random

import numpy as np
import pytest

from hoaxnet import experiment as exp
from hoaxnet.experiment import (
    NearestShare,
    RunResult,
    Setting,
    SpecError,
    SweepError,
    SweepSpec,
    aggregate,
    derive_seed,
    expand_grid,
    run_sweep,
    scenario_compare,
)


def test_singleton_grid():
    assert len(expand_grid(SweepSpec())) == 1


def test_product_rule_and_order():
    spec = SweepSpec(alpha=(0.3, 0.8), pct_b_bot=(0, 1, 2))
    grid = expand_grid(spec)
    assert len(grid) == 6 == spec.setting_count
    assert [s.setting_id for s in grid] == list(range(6))
    # last parameter in order varies fastest
    assert [(s.alpha, s.pct_b_bot) for s in grid[:3]] == [(0.3, 0), (0.3, 1), (0.3, 2)]


def test_full_grid_size():
    spec = SweepSpec.table1()
    assert len(expand_grid(spec)) == 13824
    assert spec.run_count == 55296


def test_empty_list_names_parameter():
    with pytest.raises(SpecError, match="pf_scholar"):
        SweepSpec(pf_scholar=())


def test_probability_range_checked():
    with pytest.raises(SpecError, match="beta"):
        SweepSpec(beta=(0.5, 1.5))


def test_derive_seed_deterministic_and_replicate_sensitive():
    assert derive_seed(5, 17, 2) == derive_seed(5, 17, 2)
    assert derive_seed(5, 17, 2) != derive_seed(5, 17, 3)
    assert 0 <= derive_seed(5, 17, 2) < 2**64


def test_derived_seeds_distinct_over_full_grid():
    seeds = np.array([derive_seed(20230101, s, r) for s in range(13824) for r in range(4)], dtype=np.uint64)
    seeds.sort()
    assert len(seeds) == 55296
    assert (np.diff(seeds) != 0).all()


def finals_of(results):
    return [(r.setting_id, r.replicate, r.seed, r.final) for r in results]


def test_sweep_conservation_and_order(small_world):
    net, part = small_world
    spec = SweepSpec(alpha=(0.3, 0.8), pct_b_bot=(0, 2), replicates=3, ticks=20, base_seed=4)
    results = run_sweep(spec, net, part)
    assert len(results) == spec.run_count
    assert [(r.setting_id, r.replicate) for r in results] == [(s, r) for s in range(4) for r in range(3)]
    assert all(sum(r.final) == net.node_count for r in results)
    assert finals_of(results) == finals_of(run_sweep(spec, net, part))


def test_sweep_parallel_matches_serial(small_world):
    net, part = small_world
    spec = SweepSpec(alpha=(0.3, 0.8), scholar_community=(None, 1), replicates=2, ticks=15, base_seed=9)
    serial = run_sweep(spec, net, part, jobs=1)
    parallel = run_sweep(spec, net, part, jobs=2, chunk_size=3)
    assert finals_of(serial) == finals_of(parallel)


def test_sweep_error_names_setting(small_world):
    net, part = small_world
    spec = SweepSpec(scholar_community=(0, 99), replicates=1, ticks=1)
    with pytest.raises(SweepError, match="setting 1 replicate 0"):
        run_sweep(spec, net, part)


def test_subset_keeps_seeds(small_world):
    net, part = small_world
    spec = SweepSpec(alpha=(0.3, 0.5, 0.8), replicates=2, ticks=10)
    full = run_sweep(spec, net, part)
    subset = run_sweep(spec, net, part, settings=[expand_grid(spec)[2]])
    assert finals_of(subset) == finals_of(full)[4:]


def fake(setting_id, replicate, final):
    return RunResult(Setting.make(setting_id), replicate, 0, None, final)


def test_aggregate_identical_replicates():
    (s,) = aggregate([fake(0, r, (5, 3, 2)) for r in range(4)])
    assert s.mean.tolist() == [5, 3, 2]
    assert s.std.tolist() == [0, 0, 0]


def test_aggregate_two_values():
    (s,) = aggregate([fake(0, 0, (20, 10, 0)), fake(0, 1, (10, 20, 0))])
    assert s.mean[1] == 15
    assert s.std[1] == pytest.approx(7.0710678118654755, rel=1e-12)


def test_aggregate_missing_replicate():
    rows = [fake(0, r, (1, 1, 1)) for r in range(4)] + [fake(3, 0, (1, 1, 1)), fake(3, 2, (1, 1, 1))]
    with pytest.raises(SweepError, match=r"setting 3: missing replicate\(s\) \[1, 3\]"):
        aggregate(rows)


def test_aggregate_permutation_invariant():
    rng = np.random.default_rng(3)
    rows = [fake(s, r, tuple(int(x) for x in rng.integers(0, 50, 3))) for s in range(5) for r in range(4)]
    shuffled = rows[:]
    random.Random(1).shuffle(shuffled)
    a, b = aggregate(rows), aggregate(shuffled)
    assert [x.row() for x in a] == [x.row() for x in b]


def test_identical_scenarios_identical_outputs(small_world):
    net, part = small_world
    sc = dict(alpha=0.8, pct_b_bot=2)
    comp = scenario_compare({"one": sc, "two": dict(sc)}, net, part, replicates=2, ticks=30)
    a, b = comp.by_name("one"), comp.by_name("two")
    assert np.array_equal(a.mean, b.mean) and np.array_equal(a.series, b.series)
    assert sorted(r.believer_rank for r in comp.rows) == [1, 2]


def test_table3_scenarios_echo_parameters(small_world):
    net, part = small_world
    comp = scenario_compare(exp.TABLE3_SCENARIOS, net, part, replicates=1, ticks=5)
    assert [r.name for r in comp.rows] == ["Normal", "Worst", "Best", "Moderate"]
    best = comp.by_name("Best").setting
    assert (best.alpha, best.beta, best.pct_initial_believers) == (0.8, 0.5, 10)
    assert (best.pv_scholar, best.pf_scholar, best.pct_f_bot) == (0.2, 0.05, 5)
    assert comp.by_name("Best").scholar_community == part.nearest_by_share(0.2213)
    buf = io.StringIO()
    exp.write_comparison(comp, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == ",".join(exp.COMPARISON_HEADER)
    assert len(lines) == 5


SPEC_TEXT = """
# demo
alpha = 0.3, 0.8
scholar_community = none, 2, nearest:13.2
pct_b_bot = 0, 1   # trailing comment
replicates = 3
base_seed = 77
"""


def test_parse_spec():
    spec = exp.parse_sweep_spec(SPEC_TEXT)
    assert spec.alpha == (0.3, 0.8)
    assert spec.scholar_community == (None, 2, NearestShare(13.2))
    assert spec.replicates == 3 and spec.base_seed == 77 and spec.ticks == 168
    assert spec.setting_count == 12
    assert exp.parse_sweep_spec(exp.dumps_sweep_spec(spec)) == spec


@pytest.mark.parametrize("text,match", [
    ("alpha = 0.3\nalpha = 0.8", "given twice"),
    ("gamma = 1", "unknown parameter 'gamma'"),
    ("alpha =", "empty value list"),
    ("alpha 0.3", "line 1"),
    ("beta = 0.5, x", "not a number"),
    ("scholar_community = 1.5", "scholar_community"),
])
def test_parse_spec_errors(text, match):
    with pytest.raises(SpecError, match=match):
        exp.parse_sweep_spec(text)


def test_packaged_table1_spec():
    from importlib.resources import files

    spec = exp.parse_sweep_spec(files("hoaxnet").joinpath("data/table1.spec").read_text())
    assert spec.setting_count == 13824 and spec.run_count == 55296


def test_parse_scenarios():
    text = "replicates = 2\n[A]\nalpha = 0.3\n[B]\npct_f_bot = 5\nscholar_community = nearest:8.81\n"
    scenarios, options = exp.parse_scenarios(text)
    assert options == {"replicates": 2}
    assert scenarios["A"].alpha == 0.3 and scenarios["A"].beta == 0.5
    assert scenarios["B"].scholar_community == NearestShare(8.81)
    with pytest.raises(SpecError, match="single value"):
        exp.parse_scenarios("[A]\nalpha = 0.3, 0.8\n")
    with pytest.raises(SpecError, match="defined twice"):
        exp.parse_scenarios("[A]\n[A]\n")


def test_packaged_table3_scenarios():
    from importlib.resources import files

    scenarios, options = exp.parse_scenarios(files("hoaxnet").joinpath("data/table3.ini").read_text())
    assert list(scenarios) == ["Normal", "Worst", "Best", "Moderate"]
    for name, values in exp.TABLE3_SCENARIOS.items():
        assert scenarios[name].values() == Setting.make(**values).values()
    assert options["replicates"] == 4


def test_results_round_trip(small_world):
    net, part = small_world
    spec = SweepSpec(alpha=(0.3, 0.8), scholar_community=(None, NearestShare(25)), replicates=2, ticks=5)
    results = run_sweep(spec, net, part)
    buf = io.StringIO()
    exp.write_results(results, buf)
    text = buf.getvalue()
    assert text.splitlines()[0] == ("setting_id,replicate,seed,alpha,beta,pct_initial_believers,scholar_community,"
                                    "pv_scholar,pf_scholar,pv_influencer,pf_influencer,pct_b_bot,pct_f_bot,"
                                    "final_S,final_B,final_F")
    back = exp.read_results(io.StringIO(text))
    assert finals_of(back) == finals_of(results)
    again = io.StringIO()
    exp.write_results(back, again)
    assert again.getvalue() == text
    s1, s2 = io.StringIO(), io.StringIO()
    exp.write_summary(aggregate(results), s1)
    exp.write_summary(aggregate(back), s2)
    assert s1.getvalue() == s2.getvalue()


def test_plot_extracts(small_world):
    net, part = small_world
    spec = SweepSpec(alpha=(0.3, 0.8), pct_b_bot=(0, 1), pct_f_bot=(0, 1), pv_scholar=(0.05, 0.3),
                     pf_scholar=(0.02,), scholar_community=(None, 0), replicates=1, ticks=5)
    summaries = aggregate(run_sweep(spec, net, part))
    pairs = exp.sensitivity_pairs(summaries, "alpha")
    assert len(pairs) == spec.setting_count // 2
    assert all(p["value_low"] == 0.3 and p["value_high"] == 0.8 for p in pairs)
    grid = exp.bot_grid(summaries)
    assert [(g["pct_b_bot"], g["pct_f_bot"]) for g in grid] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert all(g["n_settings"] == 4 for g in grid)  # alpha=0.8 only
    cols = exp.scholar_size_columns(summaries, part)
    assert len(cols) == 8
    files = exp.plot_data_files(summaries, part)
    assert set(files) == {"fig4_sensitivity.csv", "fig5_scholar_size.csv", "fig6_bot_grid.csv"}
    assert files["fig6_bot_grid.csv"].splitlines()[0] == "pct_b_bot,pct_f_bot,mean_S,mean_B,mean_F,n_settings"
