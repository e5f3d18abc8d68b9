import json

import pytest

from perfectcodes import cli
from perfectcodes.argparsers import build_parser
from perfectcodes.cli import main
from perfectcodes.errors import ConsistencyViolation
from perfectcodes.reports import (
    EXIT_INVALID_INSTANCE,
    EXIT_OK,
    EXIT_PROPERTY_FAILURE,
    EXIT_UNKNOWN,
    EXIT_USAGE,
    RunReport,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_check_group_perfect_code(capsys):
    code, report = run_json(
        capsys, "check-group", "--group", "S4", "--subgroup", "[(1 2 3),(1 2)]"
    )
    assert code == EXIT_OK
    verdict = report["verdicts"]["group"]
    assert verdict["status"] == "PerfectCode"
    assert report["cross_check"]["witness re-check"]
    assert all(report["cross_check"].values())
    assert report["instance"]["index_A_in_G"] == 4


def test_check_group_not_a_perfect_code_still_exits_ok(capsys):
    code, report = run_json(capsys, "check-group", "--group", "C4", "--subgroup", "[(1 3)(2 4)]")
    assert code == EXIT_OK
    verdict = report["verdicts"]["group"]
    assert verdict["status"] == "NotPerfectCode"
    assert verdict["violating_element"] == "(1 2 3 4)"


def test_text_output_uses_tables(capsys):
    code, out = run(capsys, "check-group", "--group", "D8", "--subgroup", "[(2 4)]")
    assert code == EXIT_OK
    assert "PerfectCode" in out
    assert "Cross-check" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["check-group", "--group", "S4"],
        ["bogus"],
        [],
        ["check-group", "--group", "S4", "--subgroup", "A4", "--budget", "0"],
        ["check-pair", "--group", "X9", "--subgroup-a", "S3"],
        ["construct", "nope:1"],
    ],
)
def test_usage_errors(capsys, argv):
    assert main(argv) == EXIT_USAGE
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["check-group", "--group", "C4", "--subgroup", "[(1 2)]"],
        ["check-pair", "--group", "S4", "--subgroup-a", "A4", "--subgroup-h", "S3"],
        ["construct", "field_agammal:3,2"],
        ["survey-maximal", "9"],
    ],
)
def test_invalid_instances(capsys, argv):
    assert main(argv) == EXIT_INVALID_INSTANCE
    assert "invalid instance" in capsys.readouterr().err


def test_check_pair_with_whole_group(capsys):
    code, report = run_json(
        capsys,
        "check-pair",
        "--group",
        "S4",
        "--subgroup-a",
        "S4",
        "--subgroup-h",
        "[(1 2 3),(1 2)]",
    )
    assert code == EXIT_OK
    assert report["verdicts"]["decision"]["status"] == "PerfectCode"
    assert report["verdicts"]["decision"]["witness"] == ["()"]
    assert report["cross_check"]["witness re-check"]


def test_check_pair_family_with_cross_check(capsys):
    code, report = run_json(capsys, "check-pair", "--group", "dihedral:1", "--cross-check")
    assert code == EXIT_OK
    assert report["verdicts"]["decision"]["status"] == "NotPerfectCode"
    assert report["verdicts"]["pair-transversal-search"]["status"] == "NotPerfectCode"
    assert report["cross_check"]["decision paths"]
    assert report["instance"]["family"] == "Dihedral8n"


def test_exhausted_budget_exits_unknown(capsys):
    code, report = run_json(
        capsys, "check-group", "--group", "S4", "--subgroup", "[(1 2 3)]", "--budget", "1"
    )
    assert code == EXIT_UNKNOWN
    assert report["verdicts"]["group"]["status"] == "Unknown"
    assert report["exit_code"] == EXIT_UNKNOWN
    assert report["cross_check"] == {}


def test_construct(capsys):
    code, report = run_json(capsys, "construct", "dihedral:1")
    assert code == EXIT_OK
    assert report["verdicts"]["decision"]["status"] == "NotPerfectCode"
    assert report["cross_check"]["expected status"]
    assert report["statistics"]["necessary_condition"] is True
    assert [row["result"] for row in report["rows"]] == ["PASS"]


def test_construct_chain_rows(capsys):
    code, report = run_json(capsys, "construct", "sym_chain:1,2,4")
    assert code == EXIT_OK
    assert report["verdicts"]["decision"]["status"] == "PerfectCode"
    assert report["rows"]
    assert all(row["result"] == "PASS" for row in report["rows"])


def test_witness_graph(capsys, tmp_path):
    output = tmp_path / "witness.dot"
    code, report = run_json(
        capsys,
        "witness-graph",
        "--group",
        "sym_chain:1,2,3",
        "--cross-check",
        "--output",
        str(output),
    )
    assert code == EXIT_OK
    assert report["cross_check"]["graph witness iff pair transversal"]
    assert report["cross_check"]["literal and independent modes"]
    assert report["cross_check"]["perfect code re-check"]
    assert report["statistics"]["graph"]["vertices"] == 6
    assert output.read_text().startswith("graph G {")


def test_witness_graph_without_witness(capsys):
    code, report = run_json(capsys, "witness-graph", "--group", "dihedral:1")
    assert code == EXIT_OK
    assert report["statistics"]["connection_set"] is None
    assert report["cross_check"]["graph witness iff pair transversal"]


def test_witness_graph_json_export(capsys, tmp_path):
    output = tmp_path / "witness.json"
    code, _ = run_json(
        capsys,
        "witness-graph",
        "--group",
        "S3",
        "--subgroup-a",
        "[(1 2)]",
        "--output",
        str(output),
        "--format",
        "json",
    )
    assert code == EXIT_OK
    assert len(json.loads(output.read_text())["nodes"]) == 6


def test_survey_maximal(capsys):
    code, report = run_json(capsys, "survey-maximal", "5")
    assert code == EXIT_OK
    assert len(report["rows"]) == 4
    assert {row["result"] for row in report["rows"]} == {"PASS"}
    assert report["statistics"]["classes"] == 4


def test_json_reports_are_reproducible(capsys):
    argv = ["check-pair", "--group", "sym_chain:1,2,4", "--cross-check", "--json"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    assert "elapsed_ms" not in first[1]
    assert "timings_ms" not in first[1]


def test_timings_are_opt_in(capsys):
    code, report = run_json(
        capsys, "check-group", "--group", "S3", "--subgroup", "[(1 2)]", "--timings"
    )
    assert code == EXIT_OK
    assert "total_ms" in report["timings_ms"]
    assert "elapsed_ms" in report["verdicts"]["group"]


def test_report_exit_codes():
    report = RunReport(command=[])
    assert report.exit_code() == EXIT_OK
    report.verdicts["decision"] = {"status": "Unknown"}
    assert report.exit_code() == EXIT_UNKNOWN
    report.cross_check["paths"] = False
    assert report.exit_code() == EXIT_PROPERTY_FAILURE
    report = RunReport(command=[], rows=[{"statement": "s", "result": "FAIL"}])
    assert report.exit_code() == EXIT_PROPERTY_FAILURE
    report = RunReport(
        command=[], rows=[{"statement": "s", "result": "UNKNOWN", "definite_required": False}]
    )
    assert report.exit_code() == EXIT_OK
    report.verdicts["pair-transversal-search"] = {"status": "Unknown"}
    assert report.exit_code() == EXIT_OK


def test_report_json_ends_with_newline():
    text = RunReport(command=["check-group"]).to_json()
    assert text.endswith("}\n")
    assert json.loads(text)["schema_version"] == 1


def test_consistency_failures_are_logged_with_their_message(capsys, monkeypatch):
    def broken(G, A, budget=None):
        raise ConsistencyViolation("witness re-check failed for (1 2)")

    monkeypatch.setattr(cli, "is_perfect_code_of_group", broken)
    assert main(["check-group", "--group", "S3", "--subgroup", "[(1 2)]"]) == EXIT_PROPERTY_FAILURE
    err = capsys.readouterr().err
    assert "witness re-check failed for (1 2)" in err
    assert "Decision paths disagree" not in err


def test_verify_paper_is_registered():
    assert build_parser().parse_args(["verify-paper", "--samples", "5"]).command == "verify-paper"


@pytest.mark.slow
def test_verify_paper(capsys):
    code, report = run_json(capsys, "verify-paper", "--samples", "5")
    assert code == EXIT_OK
    assert report["rows"]
