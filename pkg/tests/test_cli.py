import numpy as np
import pytest

from epase.bench.cli import EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main
from epase.bench.report import read_csv
from epase.domains import save_map


@pytest.fixture
def map_file(tmp_path):
    occ = np.zeros((6, 6), bool)
    occ[1:5, 3] = True
    p = tmp_path / "m.map"
    save_map(occ, p)
    return p


def test_run_writes_reports(tmp_path, capsys):
    out = tmp_path / "out"
    ini = tmp_path / "c.ini"
    ini.write_text("[domain]\nwidth = 15\nheight = 15\n[bench]\ntrials = 2\n")
    code = main(["run", "--config", str(ini), "--algo", "WASTAR,EPASE", "--threads", "1,2",
                 "--w", "2", "--eps", "2", "--out", str(out)])
    assert code == EXIT_OK
    rows = read_csv(out / "records.csv")
    assert len(rows) == 2 * 3
    assert {r.w for r in rows} == {2.0}
    for name in ("summary.csv", "speedup.svg", "edges.svg"):
        assert (out / name).exists()
    assert "EPASE" in capsys.readouterr().out


def test_run_with_map_and_delay(tmp_path, map_file):
    out = tmp_path / "o"
    code = main(["run", "--map", str(map_file), "--algo", "EPASE", "--threads", "2", "--trials", "2",
                 "--delay", "fixed:1ms", "--no-warmup", "--out", str(out)])
    assert code == EXIT_OK
    assert all(r.outcome == "SOLVED" for r in read_csv(out / "records.csv"))


def test_unwritable_output(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code = main(["run", "--trials", "1", "--algo", "WASTAR", "--out", str(blocker / "sub")])
    assert code != 0
    assert "cannot write" in capsys.readouterr().err


def test_oracle_command(map_file, capsys):
    assert main(["oracle", "--map", str(map_file), "--start", "0,0", "--goal", "5,5"]) == EXIT_OK
    # wall at x=3, y=1..4 and no corner cutting: (0,0)->(2,5) costs 2*1.5+3,
    # then (2,5)->(5,5) costs 3
    assert float(capsys.readouterr().out) == 9.0


def test_oracle_rejects_obstacle_start(map_file):
    assert main(["oracle", "--map", str(map_file), "--start", "3,2", "--goal", "5,5"]) == EXIT_USAGE


def test_usage_errors(map_file):
    with pytest.raises(SystemExit) as ei:
        main(["run", "--threads"])
    assert ei.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as ei:
        main(["oracle", "--map", str(map_file), "--start", "zero", "--goal", "1,1"])
    assert ei.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as ei:
        main([])
    assert ei.value.code == EXIT_USAGE
    assert main(["run", "--algo", "BOGUS"]) == EXIT_USAGE
    assert main(["oracle", "--map", "/nonexistent.map", "--start", "0,0", "--goal", "1,1"]) == EXIT_USAGE


def test_verify_passes(capsys):
    assert main(["verify", "--instances", "2"]) == EXIT_OK
    assert "checks passed" in capsys.readouterr().out


def test_verify_failure_exit_code(monkeypatch):
    import epase.bench.cli as cli
    from epase.bench.verify import VerifyReport

    bad = VerifyReport(checks=1, failures=["synthetic"])
    monkeypatch.setattr(cli, "run_property_suite", lambda n, s: bad)
    assert main(["verify"]) == EXIT_VERIFY
