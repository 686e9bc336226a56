import json

import pytest

from crosscap.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_phi_paper_example(capsys):
    code, out, _ = run_cli(capsys, "phi", "--genus", "3", "--word", "T(1,3)^2")
    assert code == 0
    assert out.strip() == "1,0;2,1"


def test_member_example(capsys):
    code, out, _ = run_cli(capsys, "member", "--genus", "4", "--level", "4", "--word", "A(1,2)")
    assert code == 0 and out.strip() == "true"
    code, out, _ = run_cli(capsys, "member", "--genus", "4", "--level", "4", "--word", "T(1,2)")
    assert code == 0 and out.strip() == "false"


def test_act(capsys):
    code, out, _ = run_cli(capsys, "act", "--genus", "4", "--word", "Y(1,2)", "--on", "a2")
    assert code == 0 and out.strip() == "2a1 + a2"


def test_psi_json(capsys):
    code, out, _ = run_cli(capsys, "psi", "--genus", "3", "--word", "Y(1,2)", "--format", "json")
    assert code == 0
    assert json.loads(out) == [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]


def test_enum_limit_marker(capsys):
    code, out, _ = run_cli(capsys, "enum", "--set", "2Y", "--genus", "4", "--limit", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ""  # the empty transversal word
    assert lines[1] == "Y(1,2)"
    assert lines[2] == "... truncated at 2"


def test_enum_main2(capsys):
    code, out, _ = run_cli(
        capsys, "enum", "--set", "thm-main2", "--genus", "4", "--level", "3"
    )
    assert code == 0
    assert "T(1,2)^3" in out
    assert "T(1,2,3,4)^3" in out


def test_fold(capsys):
    code, out, _ = run_cli(
        capsys,
        "fold",
        "--genus", "1", "--boundaries", "2",
        "--words", "x1^2; y1; x1 y1 x1^-1",
        "--format", "json",
    )
    assert code == 0
    data = json.loads(out)
    assert data["index"] == 2
    assert data["vertices"] == 2


def test_coset(capsys):
    code, out, _ = run_cli(
        capsys, "coset", "--rank", "2", "--relators", "x1^2; x2^2; x1 x2 x1 x2"
    )
    assert code == 0 and out.strip() == "4"


def test_coset_cap_inconclusive(capsys):
    code, out, _ = run_cli(
        capsys, "coset", "--rank", "2", "--relators", "x1^2", "--cap", "64"
    )
    assert code == 3
    assert "inconclusive" in out


def test_verify_json_and_report_file(capsys, tmp_path):
    code, out, _ = run_cli(
        capsys,
        "verify",
        "--suite", "THETA-BASIS,PROP34-TC",
        "--params", "g=4,n=1,d=2",
        "--format", "json",
        "--out", str(tmp_path),
    )
    assert code == 0
    records = json.loads(out)
    assert [r["id"] for r in records] == ["PROP34-TC", "THETA-BASIS"]
    assert all(r["status"] == "pass" for r in records)
    files = list(tmp_path.glob("report-*.json"))
    assert len(files) == 1
    assert json.loads(files[0].read_text())[0]["status"] == "pass"


def test_verify_report_dir_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("CROSSCAP_REPORT_DIR", str(tmp_path))
    code, _, _ = run_cli(capsys, "verify", "--suite", "T2-EQ-YY", "--params", "gmax=4")
    assert code == 0
    assert list(tmp_path.glob("report-*.json"))


def test_verify_inconclusive_exit_code(capsys):
    code, _, _ = run_cli(capsys, "verify", "--suite", "THM23-ELEM", "--params", "g=4,d=3")
    assert code == 3


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as err:
        main(["phi", "--genus", "3"])  # missing --word
    assert err.value.code == 2
    code, _, err_out = run_cli(capsys, "phi", "--genus", "3", "--word", "T(1,")
    assert code == 2
    assert "error" in err_out


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "--suite", "NOPE"])
