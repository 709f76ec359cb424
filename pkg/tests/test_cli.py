"""Command-line coverage: payload shapes, exit codes, determinism."""

import json

import pytest

from adelie.cli import COMMAND_FOR_OPERATION, _report_lines, _report_payload, main
from adelie.report import VerificationReport
from adelie.roots import build


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    # the format flag goes before any "--" separator guarding negative coords
    code, out, err = run(capsys, argv[0], "--format", "json", *argv[1:])
    assert err == ""
    return code, json.loads(out)


def test_dispatch_table_covers_all_commands():
    assert sorted(COMMAND_FOR_OPERATION) == [
        "bwb", "cartan", "chevalley", "cht", "cotangent",
        "euler", "obstruction", "roots", "surface", "verify",
    ]


def test_roots_text_and_json(capsys):
    code, out, _ = run(capsys, "roots", "A3")
    assert code == 0
    assert "6 positive roots" in out
    code, payload = run_json(capsys, "roots", "A3")
    assert code == 0
    assert payload["schema"] == 1
    assert payload["count"] == 6
    assert payload["highest_root"] == [1, 1, 1]


def test_cartan_json(capsys):
    code, payload = run_json(capsys, "cartan", "A2")
    assert code == 0
    assert payload["cartan"] == [[2, -1], [-1, 2]]


def test_bwb_concentrated_and_vanishing(capsys):
    code, payload = run_json(capsys, "bwb", "A2", "--", "-1", "0")
    assert code == 0
    assert payload["status"] == "AllVanish"
    assert payload["euler"] == 0
    code, payload = run_json(capsys, "bwb", "A2", "--basis", "root", "--", "-1", "0")
    assert code == 0
    assert payload["status"] != "AllVanish"
    assert payload["degree"] == 1
    assert payload["dimension"] == 1
    assert payload["euler"] == -1


def test_cht_chain_payload(capsys):
    code, payload = run_json(capsys, "cht", "A2", "--basis", "root", "--", "-1", "-1")
    assert code == 0
    assert payload["value"] == 1
    assert payload["chain"] == [[0, 0], [1, 1]]
    assert payload["shift"] == 2
    assert payload["interval_points"] == 2


def test_cotangent_verdict(capsys):
    code, payload = run_json(capsys, "cotangent", "A3", "--basis", "root", "--", "-1", "-1", "-1")
    assert code == 0
    assert payload["cht"] == 1
    assert payload["h2_vanish"] is True


def test_euler_growth(capsys):
    values = []
    for degree in ("0", "1", "2"):
        code, payload = run_json(
            capsys, "euler", "A1", "--basis", "root", "--degree", degree, "--", "-1"
        )
        assert code == 0
        values.append(payload["euler"])
    assert values == [-1, 1, 3]


def test_chevalley_verify_and_dump(capsys):
    code, payload = run_json(capsys, "chevalley", "A2")
    assert code == 0
    assert payload["ok"] is True
    assert payload["dimension"] == 8
    code, out, _ = run(capsys, "chevalley", "A2", "--dump")
    assert code == 0
    assert len(out.strip().splitlines()) == 12
    assert "0,1 | 1,0 | +1" in out


def test_obstruction_halves(capsys):
    code, payload = run_json(capsys, "obstruction", "A2")
    assert code == 0
    assert payload["bianchi_ok"] is True
    assert payload["classes"]["1,1"] == "psi[1,1] + phi[0,1]phi[1,0]"
    code, payload = run_json(capsys, "obstruction", "A2", "--half", "negative", "--certify")
    assert code == 0
    assert payload["solvable"] is True
    assert len(payload["requirements"]) == 2


def test_surface_check_and_lookup(capsys):
    code, payload = run_json(capsys, "surface", "A2")
    assert code == 0
    assert payload["ok"] is True
    assert payload["minus_two_classes"] == 6
    code, payload = run_json(capsys, "surface", "A3", "--root", "1", "1", "1")
    assert code == 0
    assert payload["divisor"] == [1, 1, 1]
    assert payload["restrictions"] == [-1, 0, -1]
    assert payload["h2_vanishes"] is True


def test_verify_each_suite(capsys):
    for suite in ("chevalley", "bwb", "index", "cht", "descent", "surface", "obstruction", "all"):
        code, payload = run_json(capsys, "verify", "A2", suite)
        assert code == 0, suite
        assert payload["ok"] is True
        assert payload["suite"] == suite


def test_json_runs_are_identical(capsys):
    _, first, _ = run(capsys, "verify", "A2", "all", "--format", "json")
    _, second, _ = run(capsys, "verify", "A2", "all", "--format", "json")
    assert first == second


def test_bad_inputs_exit_two(capsys):
    code, _, err = run(capsys, "roots", "Z9")
    assert code == 2
    assert "error:" in err
    code, _, err = run(capsys, "bwb", "A2", "1")
    assert code == 2
    code, _, err = run(capsys, "surface", "A2", "--root", "1")
    assert code == 2


def test_unknown_command_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate", "A2"])
    assert exc.value.code == 2


def test_thread_env_is_tolerated(capsys, monkeypatch):
    monkeypatch.setenv("ADELIE_THREADS", "8")
    assert run(capsys, "roots", "A1")[0] == 0
    monkeypatch.setenv("ADELIE_THREADS", "junk")
    assert run(capsys, "roots", "A1")[0] == 0


def test_failed_report_rendering():
    rep = VerificationReport(name="demo", checked=3, violations=["broken fact"])
    lines = _report_lines(rep)
    assert lines[0] == "demo: FAILED (3 checks)"
    assert any("broken fact" in line for line in lines)
    payload = _report_payload(build("A1"), rep)
    assert payload["ok"] is False
    assert payload["violations"] == ["broken fact"]
