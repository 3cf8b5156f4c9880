from __future__ import annotations

import pytest

from core.budget import Budget
from core.classification import CHECKER_NEEDED, ClassificationVerdict
from core.defaults import JSON_SCHEMA
from core.list_coloring import ChoosabilityVerdict, Outcome
from core.sweeps import SweepRow, outcome_counts, run_sweep


def _row(predicted: bool, outcome: Outcome, provenance: str = "guaranteed") -> SweepRow:
    prediction = ClassificationVerdict(predicted, "" if predicted else "x", provenance)
    return SweepRow("@", 1, 0, prediction, ChoosabilityVerdict(outcome))


def test_row_agreement() -> None:
    assert _row(True, Outcome.CHOOSABLE).agrees is True
    assert _row(True, Outcome.NOT_CHOOSABLE).agrees is False
    assert _row(False, Outcome.NOT_CHOOSABLE).agrees is True
    assert _row(True, Outcome.INDETERMINATE).agrees is None
    # 无保证的“不可选”预测不与检查器比较
    assert _row(False, Outcome.CHOOSABLE, CHECKER_NEEDED).agrees is True


def test_unknown_family() -> None:
    with pytest.raises(ValueError):
        run_sweep("k7")


def test_kt_sweep_small() -> None:
    table = run_sweep("kt", max_order=3, t=4)
    assert table.t == 4
    assert len(table.rows) == 7
    assert table.disagreements == []
    assert table.indeterminate == []
    # B = K1, K2 几乎完全
    assert not table.rows[0].prediction.predicted_choosable


def test_sweep_json_summary() -> None:
    table = run_sweep("k3", max_order=3)
    data = table.to_json()
    assert data["schema"] == JSON_SCHEMA
    assert data["t"] is None
    assert data["summary"]["rows"] == 7
    assert data["summary"]["disagreements"] == 0
    assert sum(data["summary"]["outcomes"].values()) == 7
    assert outcome_counts(table)["INDETERMINATE"] == 0


def test_e2_sweep_small() -> None:
    table = run_sweep("e2", max_order=4, t=9)
    assert table.t is None
    assert len(table.rows) == 18
    assert table.disagreements == []


def test_sweep_rows_do_not_depend_on_workers() -> None:
    serial = run_sweep("kt", max_order=3, t=5)
    parallel = run_sweep("kt", max_order=3, t=5, workers=2)
    assert [row.graph6 for row in serial.rows] == [row.graph6 for row in parallel.rows]
    assert [row.verdict.outcome for row in serial.rows] == [row.verdict.outcome for row in parallel.rows]


def test_tiny_budget_reports_indeterminate() -> None:
    table = run_sweep("kt", max_order=2, t=4, budget=Budget(max_nodes=1, max_seconds=60))
    assert table.indeterminate
    assert table.budget == {"max_nodes": 1, "max_seconds": 60}


@pytest.mark.slow
@pytest.mark.parametrize(
    "family, t",
    [("kt", 4), ("kt", 5), ("kt", 6), ("k3", None), ("e2", None)],
)
def test_full_sweep(family: str, t: int | None) -> None:
    table = run_sweep(family, max_order=5, t=t, budget=Budget(max_nodes=10**9, max_seconds=900), workers=4)
    assert len(table.rows) == 52
    assert table.indeterminate == []
    assert table.disagreements == []
