import json
import subprocess
import sys

import pytest

from tscalc.cli import main, run
from tscalc.inequalities import ChainReport, Hypothesis, Verdict
from tscalc.report import emit_report, report_from_dict, report_to_dict

Z_CONFIG = {
    "scale1": {"kind": "integers", "lo": 0, "hi": 2},
    "scale2": {"kind": "integers", "lo": 1, "hi": 3},
    "window": [0, 2, 1, 3],
    "functions": ["x^2+y^2"],
    "alphas": [1],
    "chains": ["mr3", "paper_example"],
    "output": "json",
}

UNIT_CONFIG = {
    "scale1": {"kind": "interval", "lo": 0, "hi": 1},
    "scale2": {"kind": "interval", "lo": 0, "hi": 1},
    "window": [0, 1, 0, 1],
    "functions": ["x^2+y^2"],
    "chains": ["dragomir_r"],
    "output": "json",
}


def test_integer_example_run():
    status, reports, out = run(Z_CONFIG)
    assert status == 0
    data = json.loads(out)
    assert [d["chain_id"] for d in data] == ["MR3", "PAPER_EXAMPLE"]
    assert data[0]["coefficients"] == {"A1": 1.5, "A2": 1.0, "A3": 1.0, "A4": 0.5}


def test_bad_alpha_is_config_error():
    status, reports, out = run({**Z_CONFIG, "alphas": [1.5]})
    assert status == 2 and reports == []
    assert "alphas[0]" in out


def test_dragomir_run():
    status, _, out = run(UNIT_CONFIG)
    assert status == 0
    (data,) = json.loads(out)
    assert [m["value"] for m in data["members"]] == pytest.approx([0.5, 7 / 12, 2 / 3, 5 / 6, 1.0], rel=1e-8)


@pytest.mark.parametrize("patch, path", [
    ({"window": [0, 2]}, "chains[0]"),
    ({"functions": ["x + * y"]}, "functions[0]"),
    ({"functions": ["sin(x)"]}, "functions[0]"),
    ({"scale1": {"kind": "h_grid", "h": -1, "lo": 0, "hi": 1}}, "scale1"),
    ({"window": [0, 2, 1, 3.5]}, "window[3]"),
    ({"chains": ["mr9"]}, "chains[0]"),
    ({"chains": ["dragomir_r"]}, "chains[0]"),
    ({"quadrature": {"rel_tol": -1}}, "quadrature"),
    ({"quadrature": {"max_intervals": 0}}, "quadrature"),
])
def test_config_errors(patch, path):
    status, _, out = run({**Z_CONFIG, **patch})
    assert status == 2
    assert out.startswith(f"config error: {path}")


def test_domain_error_does_not_abort_batch():
    cfg = {**Z_CONFIG, "functions": ["log(x)", "x^2+y^2"], "chains": ["mr1"]}
    status, reports, _ = run(cfg)
    assert status == 1
    assert reports[0].error.startswith("DomainError")
    assert reports[1].ok


def test_hypothesis_failure_exit_and_override():
    cfg = {**Z_CONFIG, "functions": ["-x^2"], "chains": ["mr3"], "output": "text"}
    status, reports, out = run(cfg)
    assert status == 1
    assert "HYPOTHESIS FAILED" in out
    assert run({**cfg, "allow_hypothesis_failure": True})[0] == 0
    status, reports, _ = run({**cfg, "check_hypothesis": False})
    assert reports[0].hypothesis.checked is False and reports[0].members


def test_default_chains():
    cfg = {k: v for k, v in UNIT_CONFIG.items() if k != "chains"}
    _, reports, _ = run({**cfg, "alphas": [0.5]})
    assert [r.chain_id for r in reports] == ["MR1", "MR2", "MR3", "DRAGOMIR_R"]
    cfg = {k: v for k, v in Z_CONFIG.items() if k != "chains"}
    _, reports, _ = run({**cfg, "window": [0, 1, 1, 3]})
    assert [r.chain_id for r in reports] == ["MR1", "MR3"]


def test_one_dimensional_run():
    cfg = {"scale1": {"kind": "q_scale", "q": 2, "kmin": 0, "kmax": 4}, "window": [1, 16],
           "functions": ["exp(x/8)"], "alphas": [0, 0.5, 1]}
    status, reports, _ = run(cfg)
    assert status == 0 and [r.chain_id for r in reports] == ["DINU_1D"] * 3


def test_exit_status_deterministic():
    assert run(Z_CONFIG)[0] == run(Z_CONFIG)[0] == 0
    assert run(Z_CONFIG)[2] == run(Z_CONFIG)[2]


class TestEmit:
    def test_empty(self):
        assert emit_report([], "json") == "[]"
        assert emit_report([], "text") == ""

    def test_satisfied_marks(self):
        _, reports, _ = run(UNIT_CONFIG)
        text = emit_report(reports, "text")
        assert text.count("✓") == 4 and "✗" not in text
        assert "centre value = 0.5" in text

    def test_json_round_trip_bit_exact(self):
        _, reports, _ = run({**Z_CONFIG, "functions": ["exp(x+y)/3", "max(x, y)^2"], "alphas": [0, 0.3, 1],
                             "chains": ["mr1", "mr2", "mr3", "paper_example"]})
        text = emit_report(reports, "json")
        back = [report_from_dict(d) for d in json.loads(text)]
        assert back == reports

    def test_witness_serialized(self):
        r = ChainReport("MR1", 0.5, hypothesis=Hypothesis(True, False, (1.0, (0.0, 1.0, 2.0))))
        d = json.loads(emit_report([r], "json"))[0]
        assert d["hypothesis"] == {"checked": True, "passed": False, "witness": [1.0, [0.0, 1.0, 2.0]]}
        assert report_from_dict(d) == r

    def test_seventeen_digits(self):
        r = ChainReport("DINU_1D", 0.5, members=[("m", 1 / 3)], verdicts=[Verdict("a", "b", True, 0.1)])
        assert "0.33333333333333331" in emit_report([r], "json")
        assert report_to_dict(r)["members"][0]["value"] == 1 / 3


def test_main_flags_override_config(tmp_path, capsys):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(Z_CONFIG))
    out_path = tmp_path / "report.json"
    code = main(["verify", "--config", str(path), "--alpha", "0.5", "--chains", "mr3",
                 "--out", str(out_path)])
    assert code == 0
    data = json.loads(out_path.read_text())
    assert [d["alpha"] for d in data] == [0.5]
    assert data[0]["coefficients"]["A1"] == 1.0
    assert json.loads(capsys.readouterr().out) == data


def test_main_flags_only(capsys):
    code = main(["verify", "--scale1", '{"kind":"interval","lo":0,"hi":1}',
                 "--scale2", '{"kind":"interval","lo":0,"hi":1}', "--window", "0,1,0,1",
                 "--function", "(x+y)^2", "--chains", "dragomir_r", "--output", "text"])
    assert code == 0
    assert "[DRAGOMIR_R]" in capsys.readouterr().out


def test_main_bad_flag_json(capsys):
    assert main(["verify", "--scale1", "{oops"]) == 2
    assert "config error" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tscalc", "verify", "--scale1",
                           '{"kind":"integers","lo":0,"hi":4}', "--window", "0,4", "--function", "x^2",
                           "--alpha", "1.5"], capture_output=True, text=True)
    assert proc.returncode == 2
    assert "alphas[0]" in proc.stderr
