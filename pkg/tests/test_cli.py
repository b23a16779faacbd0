import json
import subprocess
import sys
from fractions import Fraction

import pytest

from planecurrents import serialize
from planecurrents.cli import main
from planecurrents.gallery import build


@pytest.fixture(scope="module")
def instance_files(tmp_path_factory):
    root = tmp_path_factory.mktemp("instances")
    paths = {}
    for name in ("four-lines", "three-lines", "seven-lines", "six-lines"):
        arr = build(name)
        path = root / f"{name}.json"
        path.write_text(serialize.dumps(serialize.current_to_payload(arr.current, arr.alpha)))
        paths[name] = str(path)
    return paths


def test_verify_examples(capsys):
    assert main(["verify-examples"]) == 0
    out = capsys.readouterr().out
    assert "all facts pass" in out
    assert "84/180" in out and "7/15" in out
    assert out.count("[FAIL]") == 0
    # output is stable across runs
    assert main(["verify-examples"]) == 0
    assert capsys.readouterr().out == out


def test_check_covered(instance_files, tmp_path, capsys):
    report_path = tmp_path / "four.json"
    code = main(["check", instance_files["four-lines"], "--alpha", "1/2", "--out", str(report_path)])
    assert code == 0
    report = json.loads(report_path.read_text())
    assert report["status"] == "covered"
    assert report["beta"] == "1/3"
    assert report["verdict"]["kind"] == "covered"
    assert report["verdict"]["omitted"] is not None
    assert len(report["heavy_points"]) == 6
    assert isinstance(report["timing_micros"], int)


def test_check_precondition_failure(instance_files, tmp_path):
    report_path = tmp_path / "three.json"
    code = main(["check", instance_files["three-lines"], "--alpha", "2/3", "--out", str(report_path)])
    assert code == 2
    report = json.loads(report_path.read_text())
    assert report["status"] == "precondition-failed"
    assert "three" in report["reason"] or "3" in report["reason"]


def test_check_seven_lines_precondition(instance_files):
    assert main(["check", instance_files["seven-lines"], "--alpha", "9/20"]) == 2


def test_check_six_lines_covered_omitting_none(instance_files, tmp_path):
    report_path = tmp_path / "six.json"
    code = main(["check", instance_files["six-lines"], "--alpha", "1/2", "--out", str(report_path)])
    assert code == 0
    report = json.loads(report_path.read_text())
    assert report["verdict"]["omitted"] is None
    assert report["witness_contains_heavy_points"] is True


def test_check_alpha_out_of_range(instance_files):
    assert main(["check", instance_files["four-lines"], "--alpha", "1/3"]) == 2


def test_check_tampered_mass(tmp_path):
    arr = build("four-lines")
    payload = serialize.current_to_payload(arr.current, arr.alpha)
    payload["weights"][0] = "1/3"
    path = tmp_path / "tampered.json"
    path.write_text(serialize.dumps(payload))
    assert main(["check", str(path), "--alpha", "1/2"]) == 1


def test_parse_error_positions(tmp_path, capsys):
    path = tmp_path / "bad.json"
    payload = {"lines": [["1", "0", "0"]], "weights": ["1/0"], "alpha": "1/2"}
    path.write_text(json.dumps(payload))
    assert main(["check", str(path), "--alpha", "1/2"]) == 1
    err = capsys.readouterr().err
    assert "weights[0]" in err

    path.write_text("{not json")
    assert main(["lelong", str(path), "--point", "1,0,0"]) == 1


def test_lelong_command(instance_files, capsys):
    code = main(["lelong", instance_files["seven-lines"], "--point", "1,0,1"])
    assert code == 0
    out = capsys.readouterr().out
    assert json.loads(out)["lelong"] == "7/15"


def test_levelset_command(instance_files, tmp_path, capsys):
    out_path = tmp_path / "level.json"
    code = main(
        [
            "levelset",
            instance_files["three-lines"],
            "--threshold",
            "2/9",
            "--strict",
            "--out",
            str(out_path),
        ]
    )
    assert code == 0
    report = json.loads(out_path.read_text())
    assert len(report["level_set"]["component_curves"]) == 3
    assert report["level_set"]["isolated_points"] == []


def test_mj_command(tmp_path, capsys):
    arr = build("six-lines")
    wide = arr.current.level_set(Fraction(1, 3), strict=False)
    path = tmp_path / "points.json"
    path.write_text(
        serialize.dumps({"points": [serialize.point_to_json(p) for p in wide.isolated_points]})
    )
    assert main(["mj", str(path), "--degree", "2"]) == 0
    out = capsys.readouterr().out
    assert json.loads(out)["max_on_curve"] == 5
    assert main(["mj", str(path), "--degree", "1"]) == 0


def test_check_counterexample_exit_code(instance_files, tmp_path, monkeypatch):
    # the theorem guarantees no real counterexample, so force one to pin
    # down the exit-code wiring
    import planecurrents.cli as cli_mod
    from planecurrents.cover import NotCoverable, UncoveredPoints
    from planecurrents.projective import Point

    fake = NotCoverable(UncoveredPoints((Point(1, 0, 0), Point(0, 1, 0))))

    def fake_evaluate(current, alpha):
        from planecurrents.cover import CoverInstance, find_heavy_points

        inst = CoverInstance(current, alpha, find_heavy_points(current, alpha))
        return inst, inst.level(), fake

    monkeypatch.setattr(cli_mod, "evaluate_cover", fake_evaluate)
    report_path = tmp_path / "cex.json"
    code = main(["check", instance_files["four-lines"], "--alpha", "1/2", "--out", str(report_path)])
    assert code == 3
    report = json.loads(report_path.read_text())
    assert report["status"] == "counterexample"
    assert report["verdict"]["obstruction"]["kind"] == "points"


def test_verify_examples_fails_on_broken_fact(monkeypatch, capsys):
    import planecurrents.cli as cli_mod
    from planecurrents.gallery import Fact

    real_verify = cli_mod.gallery.verify
    monkeypatch.setattr(
        cli_mod.gallery,
        "verify",
        lambda arr: real_verify(arr) + (Fact("forced-failure", False, "injected"),),
    )
    assert main(["verify-examples"]) == 1
    assert "[FAIL]" in capsys.readouterr().out


def test_check_instance_with_conic_component(tmp_path):
    # a unit-mass instance with a conic component entering through the
    # "conics" field of the file format
    payload = {
        "lines": [["1", "0", "0"], ["0", "0", "1"]],
        "conics": [["0", "0", "1", "-1", "0", "0"]],
        "weights": ["1/20", "1/20", "9/20"],
        "alpha": "9/20",
    }
    path = tmp_path / "conic.json"
    path.write_text(json.dumps(payload))
    report_path = tmp_path / "conic-report.json"
    assert main(["check", str(path), "--out", str(report_path)]) == 0
    report = json.loads(report_path.read_text())
    assert report["status"] == "covered"
    assert report["verdict"]["witness"]["kind"] == "conic"


def test_search_deterministic_reports(tmp_path):
    args = [
        "search", "--lines", "5", "--trials", "60", "--seed", "7",
        "--alpha", "1/2", "--coeff-bound", "5",
    ]
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    report = json.loads(out1.read_text())
    assert report["counterexamples"] == []
    assert report["valid"] > 0


def test_search_usage_errors(capsys):
    assert main(["search", "--lines", "5", "--trials", "0"]) == 1
    assert main(["search", "--lines", "2", "--trials", "1"]) == 1


def test_unknown_flag_exits_one():
    assert main(["check", "--bogus"]) == 1


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "planecurrents.cli"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode in (1, 2)  # missing subcommand is a usage error


def test_module_invocation_verify(capsys):
    # direct main() covers the console-script path; run one end-to-end too
    proc = subprocess.run(
        [sys.executable, "-c", "from planecurrents.cli import main; raise SystemExit(main(['verify-examples']))"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "all facts pass" in proc.stdout
