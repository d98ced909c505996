"""Experiment harness: row schema, error rows, determinism."""

import pytest

from ocs_toe.experiment import CSV_COLUMNS, run_experiment, strip_timing
from ocs_toe.serialization import SchemaError

FULL_MESH_3 = {"p": 3, "k_egroup": 2, "matrix": [[0, 1, 1], [1, 0, 1], [1, 1, 0]]}


def test_empty_strategy_list():
    report = run_experiment({"strategies": [], "trials": 3, "seed": 1})
    assert report.rows == []
    assert report.to_csv() == ",".join(CSV_COLUMNS) + "\n"


def test_unknown_strategy_rejected():
    with pytest.raises(SchemaError):
        run_experiment({"strategies": ["quantum"], "trials": 1})


def test_fixed_demand_composed_scenario():
    report = run_experiment({
        "strategies": ["cross", "uniform-exact"],
        "p": 3, "k_egroup": 2, "trials": 1, "seed": 0,
        "logical": FULL_MESH_3,
    })
    by_strategy = {row.strategy: row for row in report.rows}
    assert str(by_strategy["cross"].ltcr) == "1"
    assert str(by_strategy["uniform-exact"].ltcr) == "2/3"


def test_guard_error_reported_and_run_continues():
    report = run_experiment({
        "strategies": ["uniform-exact", "cross"],
        "p": 8, "k_egroup": 8, "trials": 1, "seed": 4,
    })
    statuses = {row.strategy: row.status for row in report.rows}
    assert statuses["uniform-exact"].startswith("error:")
    assert statuses["cross"] == "ok"


def test_offline_rows_have_blank_mrar():
    report = run_experiment({
        "strategies": ["cross"], "p": 4, "k_egroup": 4, "trials": 2, "seed": 1,
    })
    assert all(row.mrar is None for row in report.rows)
    csv_text = report.to_csv()
    assert csv_text.splitlines()[1].split(",")[5] == ""


def test_sequence_mode_populates_online_columns():
    report = run_experiment({
        "strategies": ["cross-mdmcf", "cross"],
        "p": 4, "k_egroup": 4, "mode": "sequence", "sequence_length": 4, "seed": 6,
    })
    online_rows = [r for r in report.rows if r.strategy == "cross-mdmcf"]
    offline_rows = [r for r in report.rows if r.strategy == "cross"]
    assert len(online_rows) == len(offline_rows) == 4
    assert all(r.mrar is not None and r.rewired is not None for r in online_rows)
    assert all(r.mrar is None for r in offline_rows)


def test_summary_quantiles_present():
    report = run_experiment({
        "strategies": ["cross"], "p": 4, "k_egroup": 4, "trials": 4, "seed": 2,
    })
    summary = report.summary()
    assert summary["cross"]["rows"] == 4
    assert summary["cross"]["solve_ms_p50"] <= summary["cross"]["solve_ms_p95"]


def test_determinism_modulo_timing():
    config = {
        "strategies": ["cross-mdmcf", "cross-nocost"],
        "p": 6, "k_egroup": 6, "mode": "sequence", "sequence_length": 5, "seed": 11,
    }
    a = strip_timing(run_experiment(config).to_csv())
    b = strip_timing(run_experiment(config).to_csv())
    assert a == b


def test_bad_mode_rejected():
    with pytest.raises(SchemaError):
        run_experiment({"strategies": [], "mode": "streaming"})
