"""CLI tests: subcommands, exit codes, output formats."""

import json

import pytest

from psl3poly.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_verify_chiral_family_json(capsys):
    code, out = run(capsys, "verify", "--family", "THM1", "--q", "5")
    assert code == 0
    payload = json.loads(out)
    assert payload["checks"]["chirality"] == "chiral"
    assert payload["schlafli"] == [4, 8, 4]
    assert payload["expectation_met"] is True


def test_verify_expected_failure_exits_zero(capsys):
    code, out = run(capsys, "verify", "--family", "R3_ODD_CASE5", "--q", "5")
    assert code == 0
    payload = json.loads(out)
    assert payload["checks"]["ip"] == "fail"
    assert payload["expectation_met"] is True


def test_verify_case_flag_resolves_family(capsys):
    code, out = run(capsys, "verify", "--family", "R3_ODD", "--case", "7",
                    "--q", "5")
    assert code == 0
    assert json.loads(out)["family"] == "R3_ODD_CASE7"


def test_verify_dihedral(capsys):
    code, out = run(capsys, "verify", "--family", "DIH", "--case", "2",
                    "--q", "7")
    assert code == 0
    payload = json.loads(out)
    assert payload["group_order"] == 14
    assert payload["checks"]["tau_inverts_sigma"] == "pass"


def test_usage_error_exit_code(capsys):
    assert main(["verify", "--family", "THM1", "--q", "4"]) == 2
    assert main(["verify", "--family", "BOGUS", "--q", "5"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify"])  # missing required flags
    assert exc.value.code == 2


def test_witness_even_and_odd(capsys):
    code, out = run(capsys, "witness", "--parity", "even", "--q", "4")
    assert code == 0
    assert json.loads(out)["holds"] is True
    code, out = run(capsys, "witness", "--parity", "odd", "--q", "5")
    assert code == 0
    assert json.loads(out)["holds"] is True


def test_oracle_agreement(capsys):
    code, out = run(capsys, "oracle", "--family", "R4_ODD", "--q", "5")
    assert code == 0
    payload = json.loads(out)
    assert payload["agree"] is True
    assert payload["order_saturation"] == payload["order_engine"] == 120


def test_search_q2_rank3(capsys):
    code, out = run(capsys, "search", "--q", "2", "--rank", "3")
    assert code == 0
    assert json.loads(out)["chiral_tuples"] == 0


def test_csv_and_text_formats(capsys):
    code, out = run(capsys, "verify", "--family", "THM1", "--q", "5",
                    "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2 and "family" in lines[0]
    code, out = run(capsys, "verify", "--family", "THM1", "--q", "5",
                    "--format", "text")
    assert code == 0
    assert "checks.chirality: chiral" in out


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, _ = run(capsys, "verify", "--family", "THM1", "--q", "5",
                  "--out", str(target))
    assert code == 0
    assert json.loads(target.read_text())["family"] == "THM1"


def test_no_duality_branch_flag(capsys):
    code, out = run(capsys, "verify", "--family", "THM1", "--q", "5",
                    "--no-duality-branch")
    assert code == 0
    assert json.loads(out)["checks"]["chirality"] == "chiral"
