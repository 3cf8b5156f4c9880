from __future__ import annotations

import asyncio
import json
from pathlib import Path

import pytest

from core.defaults import BUDGET_ENV_VAR, JSON_SCHEMA
from core.errors import GraphFormatError
from core.graph import Graph, complete, cycle, empty, join, path
from core.graph_io import Record, to_edge_list, to_graph6
from core.mules import mule
from main import (
    ERROR,
    FAIL,
    INDETERMINATE,
    OK,
    build_parser,
    exit_code,
    load_settings,
    main,
    run_record,
    run_records,
)


@pytest.fixture(autouse=True)
def _clean_budget_env(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)


def _write_graphs(tmp_path: Path, *graphs: Graph, extra: str = "") -> str:
    target = tmp_path / "graphs.g6"
    target.write_text("".join(to_graph6(g) + "\n" for g in graphs) + extra, encoding="utf-8")
    return str(target)


def _records(capsys: pytest.CaptureFixture[str]) -> list[dict]:
    return [json.loads(line) for line in capsys.readouterr().out.splitlines() if line.strip()]


def test_bk_check_holds_on_complete_graph(tmp_path: Path, capsys) -> None:
    assert main(["bk-check", _write_graphs(tmp_path, complete(10))]) == 0
    (record,) = _records(capsys)
    assert record["schema"] == JSON_SCHEMA
    assert record["status"] == OK
    assert record["result"]["holds"] is True
    assert record["budget"] == {"max_nodes": 10**7, "max_seconds": 5.0}


def test_bk_check_fails_on_m8(tmp_path: Path, capsys) -> None:
    code = main(["bk-check", _write_graphs(tmp_path, mule("M8")), "--budget-seconds", "120"])
    assert code == 1
    (record,) = _records(capsys)
    assert record["result"] == {
        "chi": 8,
        "omega": 6,
        "delta": 8,
        "bound": 7,
        "holds": False,
        "brooks_holds": True,
    }


def test_malformed_line_exits_64(tmp_path: Path, capsys) -> None:
    source = _write_graphs(tmp_path, complete(3), extra="not graph6\n")
    assert main(["invariants", source]) == 64
    first, second = _records(capsys)
    assert first["status"] == OK
    assert second["status"] == ERROR
    assert second["line"] == 2
    assert second["result"]["line"] == 2
    assert "graph6" not in second


def test_edge_list_input(tmp_path: Path, capsys) -> None:
    source = tmp_path / "c5.txt"
    source.write_text(to_edge_list(cycle(5)), encoding="utf-8")
    assert main(["invariants", str(source), "--format", "edgelist"]) == 0
    (record,) = _records(capsys)
    assert record["result"]["invariants"]["chromatic_number"] == 3


def test_choosable_witness(tmp_path: Path, capsys) -> None:
    assert main(["choosable", _write_graphs(tmp_path, complete(4)), "--r", "0"]) == 1
    (record,) = _records(capsys)
    assert record["status"] == FAIL
    assert record["result"]["outcome"] == "NOT-CHOOSABLE"
    assert record["result"]["witness"]["lists"] == [[1, 2, 3]] * 4
    assert record["result"]["f"] == [3, 3, 3, 3]


def test_choosable_with_explicit_sizes(tmp_path: Path, capsys) -> None:
    assert main(["choosable", _write_graphs(tmp_path, complete(2)), "--f", "1,1"]) == 1
    (record,) = _records(capsys)
    assert record["result"]["witness"] == {"pot_size": 1, "lists": [[1], [1]]}
    assert record["result"]["r"] is None


def test_choosable_d1_join(tmp_path: Path, capsys) -> None:
    source = _write_graphs(tmp_path, join(complete(3), path(4)), join(complete(2), cycle(4)))
    assert main(["choosable", source, "--r", "1", "--budget-seconds", "300", "--parallelism", "2"]) == 0
    first, second = _records(capsys)
    assert first["graph6"] == "F~~nG"
    assert first["result"]["outcome"] == "CHOOSABLE"
    assert second["index"] == 1


def test_tiny_budget_is_indeterminate(tmp_path: Path, capsys) -> None:
    source = _write_graphs(tmp_path, join(complete(3), path(4)))
    assert main(["choosable", source, "--budget-nodes", "1"]) == 2
    (record,) = _records(capsys)
    assert record["status"] == INDETERMINATE
    assert record["budget"]["max_nodes"] == 1


def test_classify_with_check(tmp_path: Path, capsys) -> None:
    source = _write_graphs(tmp_path, empty(3))
    assert main(["classify", source, "--family", "kt", "--t", "4", "--check"]) == 1
    (record,) = _records(capsys)
    assert record["result"]["prediction"]["exception_case"] == "t=4,B=E3"
    assert record["result"]["agrees"] is True


def test_classify_prediction_only(tmp_path: Path, capsys) -> None:
    assert main(["classify", _write_graphs(tmp_path, cycle(4)), "--family", "e2"]) == 0
    (record,) = _records(capsys)
    assert record["result"]["prediction"]["predicted_choosable"] is True


def test_mule_by_name(capsys) -> None:
    assert main(["mule", "--name", "M61", "--verify-checksums", "--budget-seconds", "300"]) == 0
    (record,) = _records(capsys)
    assert record["result"]["in_C_kj"] == [[6, 0]]
    assert record["result"]["alarms"] == []


def test_unknown_mule_is_usage_error() -> None:
    with pytest.raises(SystemExit) as info:
        main(["mule", "--name", "M9"])
    assert info.value.code == 64


def test_reduce_precondition_is_error(tmp_path: Path, capsys) -> None:
    assert main(["reduce", _write_graphs(tmp_path, complete(6)), "--k", "6"]) == 64
    (record,) = _records(capsys)
    assert record["status"] == ERROR


def test_contains_join_default_t(tmp_path: Path, capsys) -> None:
    assert main(["contains-join", _write_graphs(tmp_path, join(complete(3), empty(4)))]) == 0
    (record,) = _records(capsys)
    assert record["result"]["t"] == 3
    assert record["result"]["clique"] == [0, 1, 2]


def test_sweep_to_file(tmp_path: Path) -> None:
    output = tmp_path / "kt.json"
    assert main(["sweep", "--family", "kt", "--t", "4", "--max-order", "2", "--output", str(output)]) == 0
    data = json.loads(output.read_text(encoding="utf-8"))
    assert data["summary"]["rows"] == 3
    assert data["summary"]["disagreements"] == 0


@pytest.mark.parametrize("r", ["1", "0"])
def test_conflicting_options_exit_64(r: str) -> None:
    with pytest.raises(SystemExit) as info:
        main(["choosable", "--r", r, "--f", "1,1"])
    assert info.value.code == 64


def test_choosable_defaults_to_d1(tmp_path: Path, capsys) -> None:
    assert main(["choosable", _write_graphs(tmp_path, complete(4))]) == 1
    (record,) = _records(capsys)
    assert record["result"]["r"] == 1
    assert record["result"]["f"] == [2, 2, 2, 2]
    assert record["result"]["outcome"] == "NOT-CHOOSABLE"


def test_run_records_emits_in_input_order() -> None:
    opts = {"budget_nodes": 10**7, "budget_seconds": 120.0, "symmetry": True, "r": 1, "f": None}
    records = [
        Record(0, 1, join(complete(3), path(4)), None),
        Record(1, 2, complete(2), None),
        Record(2, 3, None, GraphFormatError("bad", line=3)),
        Record(3, 4, cycle(5), None),
    ]
    emitted: list[tuple[int, str]] = []

    def emit(record: Record, outcome: dict) -> None:
        emitted.append((record.index, outcome["status"]))

    results = asyncio.run(run_records("choosable", opts, records, 2, emit))
    assert [index for index, _ in emitted] == [0, 1, 2, 3]
    assert [status for _, status in emitted] == [outcome["status"] for outcome in results]
    assert emitted[0][1] == OK
    assert emitted[2][1] == ERROR


def test_empty_input(tmp_path: Path, capsys) -> None:
    source = tmp_path / "empty.g6"
    source.write_text("\n", encoding="utf-8")
    assert main(["invariants", str(source)]) == 0
    assert _records(capsys) == []


def test_missing_input_file(tmp_path: Path) -> None:
    assert main(["invariants", str(tmp_path / "missing.g6")]) == 64


def test_settings_precedence(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv(BUDGET_ENV_VAR, "7,700")
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"budget_nodes": 900, "parallelism": 1000, "symmetry": False}), encoding="utf-8")
    args = build_parser().parse_args(["invariants", "--config", str(config), "--budget-seconds", "3"])
    settings = asyncio.run(load_settings(args))
    assert settings.budget_seconds == 3.0
    assert settings.budget_nodes == 900
    assert settings.parallelism == 64
    assert settings.symmetry is False


def test_bad_config_falls_back(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
    config = tmp_path / "config.json"
    config.write_text("[1, 2]", encoding="utf-8")
    args = build_parser().parse_args(["invariants", "--config", str(config)])
    settings = asyncio.run(load_settings(args))
    assert settings.budget_nodes == 10**7
    assert settings.symmetry is True


def test_env_budget_drives_indeterminate(tmp_path: Path, capsys, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv(BUDGET_ENV_VAR, "60,1")
    source = _write_graphs(tmp_path, join(complete(3), path(4)))
    assert main(["choosable", source]) == 2
    (record,) = _records(capsys)
    assert record["budget"] == {"max_nodes": 1, "max_seconds": 60.0}


def test_run_record_maps_errors() -> None:
    opts = {"budget_nodes": 10**6, "budget_seconds": 60.0, "symmetry": True}
    assert run_record("bk-check", opts, complete(4))["status"] == OK
    result = run_record("reduce", {**opts, "k": 6, "j": 0}, complete(6))
    assert result["status"] == ERROR


@pytest.mark.parametrize(
    "statuses, code",
    [
        ([OK, OK], 0),
        ([OK, FAIL], 1),
        ([FAIL, INDETERMINATE], 2),
        ([INDETERMINATE, ERROR, OK], 64),
        ([], 0),
    ],
)
def test_exit_code_precedence(statuses: list[str], code: int) -> None:
    assert exit_code(statuses) == code
