import json

import numpy as np
import pandas as pd
import pytest

from conftest import planted_panel
from signbalance import cli
from signbalance.exceptions import NumericalError
from signbalance.pipeline.rolling import rolling_windows, WindowSpec


def write_prices(path, t=400, n=50, seed=0):
    rng = np.random.default_rng(seed)
    r = 0.01 * (rng.normal(size=(t - 1, n)) + 0.4 * rng.normal(size=(t - 1, 1)))
    prices = 100 * np.exp(np.vstack([np.zeros((1, n)), np.cumsum(r, axis=0)]))
    dates = np.datetime64("2010-01-01") + np.arange(t)
    frame = pd.DataFrame(prices, columns=[f"S{i}" for i in range(n)])
    frame.insert(0, "date", dates.astype(str))
    frame.to_csv(path, index=False, float_format="%.17g")
    return path


def write_returns(path, panel):
    frame = pd.DataFrame(panel.returns.T, columns=list(panel.asset_ids))
    frame.insert(0, "date", panel.dates.astype(str))
    frame.to_csv(path, index=False, float_format="%.17g")
    return path


@pytest.fixture
def prices(tmp_path):
    return write_prices(tmp_path / "prices.csv")


def test_analyze_window_count_and_columns(prices, tmp_path, capsys):
    out = tmp_path / "o"
    code = cli.main(["analyze", "--input", str(prices), "--window", "100", "--step", "30",
                     "--out", str(out)])
    assert code == cli.EXIT_OK
    frame = pd.read_csv(out / "series.csv")
    assert len(frame) == len(rolling_windows(399, WindowSpec(100, 30))) == 10
    assert list(frame.columns[:8]) == ["window_end", "window_start", "n_assets", "kappa_weighted",
                                       "kappa_binary", "ratio", "ratio_approx",
                                       "ratio_approx_relerr"]
    assert "windows: 10" in capsys.readouterr().out
    assert len(json.loads((out / "series.json").read_text())["records"]) == 10


def test_analyze_reruns_are_byte_identical(prices, tmp_path):
    outs = [tmp_path / "a", tmp_path / "b"]
    for o in outs:
        assert cli.main(["analyze", "--input", str(prices), "--window", "100", "--step", "50",
                         "--out", str(o)]) == 0
    for name in ("series.csv", "series.json"):
        assert (outs[0] / name).read_bytes() == (outs[1] / name).read_bytes()


def test_csv_round_trip_exact(prices, tmp_path):
    assert cli.main(["analyze", "--input", str(prices), "--window", "100", "--step", "100",
                     "--out", str(tmp_path)]) == 0
    frame = pd.read_csv(tmp_path / "series.csv", float_precision="round_trip")
    data = json.loads((tmp_path / "series.json").read_text())
    got = frame["kappa_weighted"].to_numpy()
    want = np.array([row["kappa_weighted"] for row in data["records"]])
    assert np.array_equal(got, want)


def test_window_longer_than_series(prices, tmp_path, capsys):
    code = cli.main(["analyze", "--input", str(prices), "--window", "5000", "--out", str(tmp_path)])
    assert code == cli.EXIT_VALIDATION
    err = capsys.readouterr().err
    assert "5000" in err and "399" in err


def test_usage_errors_exit_one(prices, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["bogus"])
    assert exc.value.code == cli.EXIT_VALIDATION
    assert cli.main(["analyze"]) == cli.EXIT_VALIDATION
    assert cli.main(["analyze", "--input", str(prices), "--window", "ten"]) == cli.EXIT_VALIDATION


def test_config_file_and_flag_override(prices, tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text(f"input = {prices}\nwindow = 100\nstep = 100\n")
    assert cli.main(["analyze", "--config", str(cfg), "--out", str(tmp_path / "c")]) == 0
    assert len(pd.read_csv(tmp_path / "c" / "series.csv")) == 3
    assert cli.main(["analyze", "--config", str(cfg), "--step", "30",
                     "--out", str(tmp_path / "f")]) == 0
    assert len(pd.read_csv(tmp_path / "f" / "series.csv")) == 10
    cfg.write_text("colour = red\n")
    assert cli.main(["analyze", "--config", str(cfg)]) == cli.EXIT_VALIDATION


def test_events_planted(tmp_path):
    panel = planted_panel(t=300, crashes=[(100, 25, -0.02)])
    src = write_returns(tmp_path / "r.csv", panel)
    assert cli.main(["events", "--input", str(src), "--kind", "returns", "--tau", "-0.01",
                     "--out", str(tmp_path)]) == 0
    events = json.loads((tmp_path / "events.json").read_text())
    assert len(events) == 1 and events[0]["threshold"] == -0.01
    assert events[0]["start_date"] <= str(panel.dates[100]) <= events[0]["end_date"]


def test_events_empty(tmp_path):
    panel = planted_panel(t=100)
    src = write_returns(tmp_path / "r.csv", panel)
    assert cli.main(["events", "--input", str(src), "--kind", "returns",
                     "--out", str(tmp_path)]) == 0
    assert json.loads((tmp_path / "events.json").read_text()) == []


def test_bins_outputs(prices, tmp_path):
    assert cli.main(["bins", "--input", str(prices), "--window", "60", "--step", "20",
                     "--bins", "paper5", "--bins", "custom:0,0.5,1", "--out", str(tmp_path)]) == 0
    out = json.loads((tmp_path / "bins.json").read_text())
    assert out["presets"]["paper5"] == [0.0, 0.5, 0.8, 0.9, 0.99, 1.0]
    assert set(out["results"]) == {"weighted", "binary"}
    assert set(out["results"]["weighted"]) == {"paper5", "custom"}
    kde = sorted(p.name for p in tmp_path.glob("kde_*.csv"))
    assert kde
    assert (tmp_path / kde[0]).read_text().splitlines()[0] == "x,density"


def test_toy_passes(capsys):
    assert cli.main(["toy"]) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "FAIL" not in out and out.count("PASS") == 17


def test_random_experiment_small_and_deterministic(tmp_path):
    args = ["random-experiment", "--sizes", "5,10", "--reps", "30", "--spectral-n", "60",
            "--seed", "3"]
    codes = [cli.main(args + ["--out", str(tmp_path / d)]) for d in ("a", "b")]
    assert codes[0] == codes[1] and codes[0] in (cli.EXIT_OK, cli.EXIT_CHECK)
    a = (tmp_path / "a" / "appendix.json").read_bytes()
    assert a == (tmp_path / "b" / "appendix.json").read_bytes()
    data = json.loads(a)
    assert [row["n"] for row in data["pearson_table"]] == [5, 10]
    assert cli.main(args[:-2] + ["--reps", "10"]) == cli.EXIT_VALIDATION


def test_numerical_error_exit_code(prices, tmp_path, monkeypatch):
    def boom(*a, **k):
        raise NumericalError("non-finite spectrum")

    monkeypatch.setattr(cli, "rolling_indicators", boom)
    assert cli.main(["analyze", "--input", str(prices), "--window", "100",
                     "--out", str(tmp_path)]) == cli.EXIT_NUMERICAL


def test_round_trip_is_not_trivial(prices, tmp_path):
    cli.main(["analyze", "--input", str(prices), "--window", "100", "--step", "100",
              "--out", str(tmp_path)])
    kappa = pd.read_csv(tmp_path / "series.csv")["kappa_weighted"]
    assert kappa.between(0, 1).all() and (kappa < 1 - 1e-6).all()
