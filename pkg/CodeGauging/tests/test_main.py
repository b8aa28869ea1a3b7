"""Unit tests for main.py"""

from __future__ import annotations

import json

import pytest

from main import EXIT_BUDGET, EXIT_OK, EXIT_PARSE, EXIT_USAGE, CodeGaugingSystem, build_parser, main
from utils.config_loader import ENV_OVERRIDES


@pytest.fixture(autouse=True)
def _clean_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    for suffix in ENV_OVERRIDES:
        monkeypatch.delenv(f"CODEGAUGING_{suffix}", raising=False)


def _family(tmp_path, name: str, *args: str, fmt: str = "json") -> str:
    path = tmp_path / f"{name}.{fmt}"
    assert main(["family", name, *args, "--format", fmt, "--out", str(path)]) == EXIT_OK
    return str(path)


def test_parser_flags() -> None:
    args = build_parser().parse_args(["barrier", "ring.alist", "--Fmax", "3", "--threads", "2"])
    assert (args.command, args.F_max, args.threads) == ("barrier", 3, 2)
    assert not hasattr(build_parser().parse_args(["analyze", "x.alist"]), "cap")


def test_family_to_stdout(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["family", "ising", "--D", "1", "--L", "4"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert (data["kind"], data["n"], data["m"]) == ("code", 4, 4)


def test_analyze_ring(tmp_path, capsys: pytest.CaptureFixture[str]) -> None:
    """The 4-ring is [4,1,4]; its one redundancy uses every check and stays global."""
    path = _family(tmp_path, "ising", "--D", "1", "--L", "4", fmt="alist")
    assert main(["analyze", path]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["command"] == "analyze"
    assert report["input"] == "ising.alist"
    result = report["result"]
    assert result["parameters"]["label"] == "[4,1,4]"
    assert result["redundancies"]["kT"] == 1
    assert result["redundancies"]["global_classes"] == 1
    assert result["redundancies"]["local"] == []
    assert result["ldpc"]["max_check_weight"] == 2


def test_budget_exit_code(tmp_path, capsys: pytest.CaptureFixture[str]) -> None:
    path = _family(tmp_path, "ising", "--D", "2", "--L", "3")
    assert main(["analyze", path, "--cap", "1"]) == EXIT_BUDGET
    report = json.loads(capsys.readouterr().out)
    assert report["result"]["parameters"]["d_reason"] == "budget"
    assert report["result"]["parameters"]["d_upper"] == 9
    assert report["parameters"] == {"cap": 1}


def test_gauge_ising_to_toric(tmp_path, capsys: pytest.CaptureFixture[str]) -> None:
    path = _family(tmp_path, "ising", "--D", "2", "--L", "3")
    assert main(["gauge", path, "--couplings", "0,1,1,0"]) == EXIT_OK
    result = json.loads(capsys.readouterr().out)["result"]
    assert result["css"]["label"] == "[[18,2,3]]"


def test_barrier_csv(tmp_path, capsys: pytest.CaptureFixture[str]) -> None:
    path = _family(tmp_path, "ising", "--D", "1", "--L", "8", fmt="alist")
    assert main(["barrier", path, "--output", "csv"]) == EXIT_OK
    assert capsys.readouterr().out == "F,E_min,exact\n0,0,True\n1,2,True\n2,2,True\n3,2,True\n4,2,True\n"


def test_dualize_kt(tmp_path, capsys: pytest.CaptureFixture[str]) -> None:
    path = _family(tmp_path, "ising", "--D", "1", "--L", "4", fmt="alist")
    assert main(["dualize", path, "--map", "kt", "--output", "text"]) == EXIT_OK
    text = capsys.readouterr().out
    assert 'result.map: "kt"' in text
    assert "result.verified: true" in text


def test_parse_error_exit_code(tmp_path) -> None:
    broken = tmp_path / "broken.alist"
    broken.write_text("3 2\n2 2\n1 x 1\n")
    assert main(["analyze", str(broken)]) == EXIT_PARSE
    assert main(["analyze", str(tmp_path / "absent.json")]) == EXIT_PARSE


def test_usage_errors(tmp_path) -> None:
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == EXIT_USAGE
    # complexes have no alist form, and analyze has no table
    assert main(["family", "toric", "--D", "2", "--L", "3", "--format", "alist"]) == EXIT_USAGE
    path = _family(tmp_path, "ising", "--D", "1", "--L", "4", fmt="alist")
    assert main(["analyze", path, "--output", "csv"]) == EXIT_USAGE


@pytest.mark.parametrize("command", ["gauge", "barrier"])
def test_thread_count_does_not_change_output(tmp_path, capsys: pytest.CaptureFixture[str],
                                             command: str) -> None:
    path = _family(tmp_path, "toric", "--D", "2", "--L", "3")
    outputs = []
    for threads in ("1", "4"):
        assert main([command, path, "--threads", threads]) == EXIT_OK
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]


@pytest.mark.parametrize("name, args", [
    ("ising", ["--D", "1", "--L", "6"]),
    ("plaquette_ising", ["--D", "2", "--L", "3"]),
])
def test_spt_open_chain_at_defaults(tmp_path, capsys: pytest.CaptureFixture[str],
                                    name: str, args) -> None:
    """Codes whose redundancies all span the system open with the 1-complex construction."""
    path = _family(tmp_path, name, *args, fmt="alist")
    assert main(["spt", path, "--obc", "1complex"]) == EXIT_OK
    boundary = json.loads(capsys.readouterr().out)["result"]["open_boundary"]
    assert boundary["log2_degeneracy"] == boundary["edge_pairs"] > 0


def test_locality_bound_flag(tmp_path, capsys: pytest.CaptureFixture[str]) -> None:
    path = _family(tmp_path, "ising", "--D", "2", "--L", "4", fmt="alist")
    assert main(["spt", path, "--obc", "1complex"]) == EXIT_USAGE
    args = build_parser().parse_args(["spt", path, "--locality-bound", "5"])
    assert CodeGaugingSystem(None, {"locality_bound": args.locality_bound}).spt_analyzer.locality_bound == 5
    assert main(["analyze", path, "--locality-bound", "3"]) == EXIT_OK
    redundancies = json.loads(capsys.readouterr().out)["result"]["redundancies"]
    assert (redundancies["locality_bound"], redundancies["local"]) == (3, [])
    assert redundancies["global_classes"] == redundancies["kT"]
    assert main(["analyze", path, "--locality-bound", "0"]) == EXIT_USAGE
