import math

import pytest

from epase.bench import (
    BenchRecord,
    DomainSpec,
    TrialMatrix,
    emit_csv,
    emit_plots,
    load_config,
    read_csv,
    run_matrix,
    saturation_point,
    summarize,
)
from epase.bench.matrix import InstanceCache, run_cell
from epase.bench.report import speedup_figure
from epase.domains import DelayModel
from epase.planners import Algorithm, ThreadMgt

SMALL = DomainSpec(width=20, height=20, obstacle_density=0.15)


def rec(trial=0, alg="EPASE", n=1, t=0.5, outcome="SOLVED", edges=10):
    return BenchRecord(trial, alg, n, 5.0, 5.0, outcome, 12.5, t, edges, 3, n)


def test_astar_only_matrix():
    m = TrialMatrix([Algorithm.ASTAR], [1, 4], [(5.0, 5.0)], 3, domain=SMALL)
    rows = run_matrix(m)
    assert len(rows) == 3
    assert all(r.w == 1.0 and r.eps == 1.0 for r in rows)
    (s,) = summarize(rows)
    assert s.speedup == 1.0 and s.solve_rate == 1.0


def test_single_worker_epase_is_reproducible():
    m = TrialMatrix([Algorithm.EPASE], [1], [(2.0, 2.0)], 4, seed=9, domain=SMALL)
    a, b = run_matrix(m), run_matrix(m)
    assert [(r.cost, r.edges_evaluated) for r in a] == [(r.cost, r.edges_evaluated) for r in b]


def test_cells_and_instance_parity():
    m = TrialMatrix([Algorithm.WASTAR, Algorithm.EPASE, Algorithm.ASTAR], [1, 2], [(2.0, 2.0), (5.0, 5.0)], 2,
                    domain=SMALL)
    cells = m.cells()
    assert (Algorithm.WASTAR, 2, 2.0, 2.0) not in cells
    assert sum(c[0] is Algorithm.ASTAR for c in cells) == 1
    rows = run_matrix(m)
    assert len(rows) == 2 * len(cells)
    cache = InstanceCache(m)
    fp = cache[1].fingerprint()
    assert InstanceCache(m)[1].fingerprint() == fp
    cache.check_parity()


class _Boom(Exception):
    pass


def test_failing_cell_records_errors_then_skips(monkeypatch):
    import epase.bench.matrix as mx

    def broken(*a, **k):
        raise _Boom("nope")

    monkeypatch.setattr(mx, "plan", broken)
    m = TrialMatrix([Algorithm.EPASE], [1], [(1.0, 1.0)], 6, domain=SMALL)
    rows = run_cell(m, InstanceCache(m), Algorithm.EPASE, 1, 1.0, 1.0)
    assert [r.outcome for r in rows] == ["ERROR"] * 3 + ["SKIPPED"] * 3
    (s,) = summarize(rows)
    assert s.solved == 0 and math.isnan(s.mean_time)


def test_timeout_rows_kept():
    m = TrialMatrix([Algorithm.EPASE], [2], [(1.0, 1.0)], 2,
                    domain=DomainSpec(width=40, height=40, obstacle_density=0.1, min_distance=25,
                                      delay=DelayModel.fixed(0.01)),
                    time_limit=0.05, warmup=False)
    rows = run_matrix(m)
    assert [r.outcome for r in rows] == ["TIMEOUT", "TIMEOUT"]


def test_summary_speedup_and_solved_only_average():
    rows = [rec(0, "WASTAR", 1, 1.0), rec(1, "WASTAR", 1, 3.0),
            rec(0, "EPASE", 4, 0.5), rec(1, "EPASE", 4, 0.5), rec(2, "EPASE", 4, 99.0, "TIMEOUT")]
    s = {x.algorithm: x for x in summarize(rows)}
    assert s["EPASE"].mean_time == 0.5
    assert s["EPASE"].solve_rate == pytest.approx(2 / 3)
    assert s["EPASE"].speedup == 4.0
    assert s["WASTAR"].speedup == 1.0
    assert math.isnan(summarize([rec()])[0].speedup)


def test_saturation_point():
    rows = [rec(0, "EPASE", n, t) for n, t in ((1, 8.0), (2, 4.0), (4, 2.05), (8, 2.0), (16, 2.1))]
    assert saturation_point(summarize(rows), "EPASE") == 4


def test_csv_one_record(tmp_path):
    f = tmp_path / "r.csv"
    emit_csv([rec()], f)
    lines = f.read_text().splitlines()
    assert len(lines) == 2
    assert lines[0] == ("trial_id,algorithm,N_t,w,eps,outcome,cost,wall_time,"
                        "edges_evaluated,states_expanded,threads_spawned")


def test_csv_round_trip_and_determinism(tmp_path):
    rows = [rec(i, a, n, 0.1 * i + 1e-9 * n, edges=n * 7) for i in range(3) for a in ("WASTAR", "EPASE")
            for n in (1, 2)]
    rows.append(BenchRecord(9, "WPASE", 8, 1.5, 3.0, "TIMEOUT", math.inf, 60.000000001, 5, 0, 8))
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_csv(rows, a)
    emit_csv(rows, b)
    assert a.read_bytes() == b.read_bytes()
    assert read_csv(a) == rows


def test_emit_requires_records(tmp_path):
    with pytest.raises(ValueError):
        emit_csv([], tmp_path / "x.csv")


def test_speedup_plot_series():
    rows = [rec(0, a, n, 1.0 / n) for a in ("WASTAR", "EPASE") for n in (1, 2, 4)]
    fig = speedup_figure(rows)
    lines = fig.axes[0].get_lines()
    assert len(lines) == 2
    assert all(len(line.get_xdata()) == 3 for line in lines)


def test_plots_are_svg(tmp_path):
    rows = [rec(0, a, n, 1.0 / n) for a in ("WASTAR", "EPASE") for n in (1, 2)]
    paths = emit_plots(rows, tmp_path)
    assert len(paths) == 2
    for p in paths:
        assert open(p).read().lstrip().startswith("<?xml")


def test_load_config(tmp_path):
    (tmp_path / "delays.txt").write_text("50ms\n" + "1ms\n" * 17)
    ini = tmp_path / "b.ini"
    ini.write_text(
        "[domain]\nwidth = 25\nheight = 20\nprimitives = lattice18\ndelay = per-action:delays.txt\n"
        "[bench]\nalgorithms = wastar, EPASE\nthreads = 1,8\npairs = 5:5, 1.5:3\ntrials = 7\n"
        "thread_mgt = preallocated_pool\n"
    )
    dom, s = load_config(ini)
    assert (dom.width, dom.height, dom.primitives) == (25, 20, "lattice18")
    assert dom.delay.per_action[0] == pytest.approx(0.05) and len(dom.delay.per_action) == 18
    assert s.algorithms == [Algorithm.WASTAR, Algorithm.EPASE]
    assert s.threads == [1, 8] and s.pairs == [(5.0, 5.0), (1.5, 3.0)] and s.trials == 7
    assert s.thread_mgt is ThreadMgt.PREALLOCATED_POOL
