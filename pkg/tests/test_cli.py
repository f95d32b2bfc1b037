"""
Tests for the command line interface.
"""
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from src.cli import EXIT_INTERNAL, EXIT_USAGE, _attach_text_values, build_parser, cli_main

MAIN = Path(__file__).resolve().parents[1] / "main.py"


@pytest.fixture(autouse=True)
def keep_session_logging(mocker):
    """Commands must not rebind structlog to the captured stderr of one test."""
    return mocker.patch("src.cli.setup_logging")


def run_json(capsys, argv):
    code = cli_main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_det_minus_y(capsys):
    code, data = run_json(capsys, ["det", "--group", "7,3,6", "--element", "-1*Y", "--json"])
    assert code == 0
    assert data["D"] == -1
    assert data["A"] == -1
    assert data["conditions_ok"] is True


def test_det_with_direct_oracle(capsys):
    code, data = run_json(
        capsys, ["det", "--group", "GA(1,5)", "--element", "2 + Y + Y^2 + Y^3", "--direct", "--json"]
    )
    assert code == 0
    assert data["D"] == data["direct_D"] == 3125
    assert data["agree"] is True


def test_det_modes(capsys):
    code, data = run_json(capsys, ["det", "--group", "5,2,4", "--element", "X - Y", "--mode", "direct", "--json"])
    assert code == 0
    assert set(data) == {"group", "D"}
    direct = data["D"]

    code, data = run_json(capsys, ["det", "--group", "5,2,4", "--element", "X - Y", "--mode", "both", "--json"])
    assert code == 0
    assert data["D"] == data["direct_D"] == direct
    assert data["agree"] is True


def test_det_text_output(capsys):
    assert cli_main(["det", "--group", "7,2,3", "--element", "X + X^2 - 1 - Y"]) == 0
    out = capsys.readouterr().out
    assert "D = " in out
    assert "B(ω^3)" in out


def test_member_not_achievable():
    assert cli_main(["member", "--group", "5,2,4", "--value", "2"]) == 1


def test_member_achievable(capsys):
    code, data = run_json(capsys, ["member", "--group", "5,2,4", "--value", "85683", "--json"])
    assert code == 0
    assert data["status"] == "Achievable"
    assert data["witness"]["m"] == 3


def test_member_unknown():
    assert cli_main(["member", "--group", "11,2,10", "--value", str(8 * 3**10)]) == 2


def test_member_zero_is_a_usage_error(capsys):
    code, data = run_json(capsys, ["member", "--group", "5,2,4", "--value", "0", "--json"])
    assert code == EXIT_USAGE
    assert data["error"] == "ZeroInput"


def test_realize_value(capsys):
    code, data = run_json(capsys, ["realize", "--group", "5,2,4", "--value", "85683", "--json"])
    assert code == 0
    assert data["tag"] == "LemmaEx"
    assert data["report"]["D"] == 85683


def test_realize_tag(capsys):
    code, data = run_json(
        capsys, ["realize", "--group", "7,3,6", "--tag", "GA7_mult4", "--params", "c=0,b=0", "--json"]
    )
    assert code == 0
    assert data["report"]["D"] == 4 * 3**6


def test_realize_not_achievable():
    assert cli_main(["realize", "--group", "5,2,4", "--value", "2"]) == 1


def test_realize_needs_value_or_tag():
    assert cli_main(["realize", "--group", "5,2,4"]) == EXIT_USAGE


def test_realize_bad_params():
    assert cli_main(["realize", "--group", "7,3,6", "--tag", "GA7_mult4", "--params", "c"]) == EXIT_USAGE


def test_realize_uncharacterized_group():
    assert cli_main(["realize", "--group", "D14", "--value", "5"]) == EXIT_USAGE


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["member", "--group", "5,2,4"],
        ["member", "--group", "5,2,4", "--value", "two"],
        ["frobnicate"],
        ["det", "--group", "6,5,2", "--element", "1"],
        ["det", "--group", "5,2,4", "--element", "1 + Z"],
        ["census", "--group", "5,2,4", "--coeff-bound", "-1"],
    ],
)
def test_usage_errors(argv):
    assert cli_main(argv) == EXIT_USAGE


def test_help_exits_cleanly(capsys):
    assert cli_main(["--help"]) == 0
    assert "selftest" in capsys.readouterr().out


def test_census_then_verify(capsys, tmp_path):
    store = tmp_path / "ga5.jsonl"
    code, data = run_json(
        capsys,
        ["census", "--group", "5,2,4", "--support-bound", "1", "--workers", "1", "--store", str(store),
         "--compact", "--json"],
    )
    assert code == 0
    assert data["records"] == 41
    assert data["compacted_values"] == data["distinct_values"]

    code, data = run_json(capsys, ["verify", "--group", "5,2,4", "--store", str(store), "--reparse", "--json"])
    assert code == 0
    assert data["ok"] is True


def test_census_checkpoint_mismatch(tmp_path):
    store = tmp_path / "ga5.jsonl"
    assert cli_main(["census", "--group", "5,2,4", "--support-bound", "1", "--workers", "1", "--store", str(store)]) == 0
    assert cli_main(["census", "--group", "5,2,4", "--support-bound", "2", "--workers", "1", "--store", str(store)]) == EXIT_USAGE
    assert cli_main(["census", "--group", "5,2,4", "--support-bound", "2", "--workers", "1", "--store", str(store), "--restart"]) == 0


def test_verify_uncharacterized_group_needs_flag(tmp_path):
    store = tmp_path / "d14.jsonl"
    assert cli_main(["census", "--group", "D14", "--support-bound", "1", "--workers", "1", "--store", str(store)]) == 0
    assert cli_main(["verify", "--group", "D14", "--store", str(store)]) == EXIT_USAGE
    assert cli_main(["verify", "--group", "D14", "--store", str(store), "--necessary-only"]) == 0


def test_storage_full_is_internal(mocker, tmp_path):
    from src.exceptions import StorageFull

    mocker.patch("src.cli.census_run", side_effect=StorageFull("disk full"))
    assert cli_main(["census", "--group", "5,2,4", "--store", str(tmp_path / "s.jsonl")]) == EXIT_INTERNAL


def test_global_logging_flags(keep_session_logging):
    assert cli_main(["--log-level", "DEBUG", "--log-json", "member", "--group", "5,2,4", "--value", "1"]) == 0
    keep_session_logging.assert_called_once_with(level="DEBUG", json_output=True)


def test_selftest(capsys):
    code, data = run_json(capsys, ["selftest", "--json"])
    assert code == 0
    assert data["passed"] is True
    assert len(data["checks"]) >= 10


def test_parser_lists_tags():
    parser = build_parser()
    args = parser.parse_args(["realize", "--group", "5,2,4", "--tag", "PPower"])
    assert args.tag == "PPower"


def run_main(tmp_path, *argv):
    """Run the installed entry point in a fresh interpreter with debug logging."""
    return subprocess.run(
        [sys.executable, str(MAIN), *argv],
        capture_output=True,
        text=True,
        cwd=tmp_path,
        env={**os.environ, "GRPDET_LOG_LEVEL": "DEBUG"},
    )


def test_stdout_is_pure_json(tmp_path):
    """Real quadratic units are computed lazily, after logging points at stderr."""
    completed = run_main(tmp_path, "member", "--group", "13,4,6", "--value", str(13**7), "--json")
    assert completed.returncode == 0, completed.stderr
    assert json.loads(completed.stdout)["status"] == "Achievable"


def test_element_with_leading_minus_from_shell(tmp_path):
    completed = run_main(tmp_path, "det", "--group", "7,3,6", "--element", "-1*Y", "--json")
    assert completed.returncode == 0, completed.stderr
    assert json.loads(completed.stdout)["D"] == -1


@pytest.mark.parametrize(
    "argv, joined",
    [
        (["det", "--element", "-X^2 + 1"], ["det", "--element=-X^2 + 1"]),
        (["realize", "--tag", "GA7_mult4", "--params", "c=-1"], ["realize", "--tag", "GA7_mult4", "--params=c=-1"]),
        (["det", "--element=-Y", "--json"], ["det", "--element=-Y", "--json"]),
        (["det", "--group", "5,2,4"], ["det", "--group", "5,2,4"]),
    ],
)
def test_attach_text_values(argv, joined):
    assert _attach_text_values(argv) == joined


def test_det_leading_minus_polynomial(capsys):
    code, data = run_json(capsys, ["det", "--group", "5,2,4", "--element", "-X + 1", "--mode", "both", "--json"])
    assert code == 0
    assert data["D"] == data["direct_D"]


def test_realize_negative_parameter(capsys):
    code, data = run_json(
        capsys, ["realize", "--group", "7,3,6", "--tag", "GA7_mult4", "--params", "c=-1,b=0", "--json"]
    )
    assert code == 0
    assert data["report"]["A"] == -8
