"""
Testes da linha de comando
"""

import json

import pytest

from src.core.classify import EXACT, HOLDS, PROPERTIES, Verdict
from src.core.config import parse_config
from src.core.systems import WeightSequence
from src.ui.cli import (
    EXIT_INVALID,
    EXIT_NO_SPLITTING,
    EXIT_OK,
    EXIT_VIOLATION,
    TOOL_NAME,
    build_parser,
    cmd_audit,
    main,
)

from conftest import CANONICAL_RATIOS, config_path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestClassify:
    """Subcomando classify"""

    def test_json_report(self, capsys):
        code, out, _ = run(capsys, "classify", config_path("valley"), "--json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["tool"] == TOOL_NAME
        assert payload["kind"] == "dissipative"
        assert payload["verdicts"]["SSS"]["status"] == "Holds"
        assert payload["verdicts"]["Hyperbolic"]["status"] == "Fails"
        assert payload["side_rates"] == {"g_neg": 2.0, "g_pos": 0.5}
        assert payload["audit"] == []
        assert all(c["agree"] for c in payload["horizon"]["checks"])

    def test_byte_identical(self, capsys):
        for name in CANONICAL_RATIOS:
            _, first, _ = run(capsys, "classify", config_path(name), "--json")
            _, second, _ = run(capsys, "classify", config_path(name), "--json")
            assert first == second

    def test_flat_undecided(self, capsys):
        code, out, _ = run(capsys, "classify", config_path("flat"), "--json")
        assert code == EXIT_OK
        verdict = json.loads(out)["verdicts"]["SSS"]
        assert verdict["status"] == "Undecided"
        assert verdict["citation"] == "OpenProblem"

    def test_table(self, capsys):
        code, out, _ = run(capsys, "classify", config_path("peak"))
        assert code == EXIT_OK
        assert "StructStable" in out
        assert "P41" in out
        assert "\033[" not in out

    def test_atomic(self, capsys):
        code, out, _ = run(capsys, "classify", config_path("cycle_line"), "--json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert set(payload["verdicts"]) == set(PROPERTIES)
        assert payload["verdicts"]["PE"]["status"] == "Fails"
        assert payload["verdicts"]["SSS"]["status"] == "Undecided"

    def test_shift(self, capsys):
        code, out, _ = run(capsys, "classify", config_path("shift_split"), "--json")
        assert code == EXIT_OK
        assert json.loads(out)["verdicts"]["SSS"]["citation"] == "B-c"

    def test_invalid_config(self, capsys, tmp_path):
        path = tmp_path / "ruim.json"
        path.write_text('{\n  "kind": "dissipative",\n  "p": 0\n}', encoding="utf-8")
        code, _, err = run(capsys, "classify", str(path))
        assert code == EXIT_INVALID
        assert "linha 3" in err

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["--version"])
        assert info.value.code == 0
        assert TOOL_NAME in capsys.readouterr().out


class TestSimulate:
    """Subcomando simulate"""

    def test_double_csv(self, capsys):
        code, out, _ = run(capsys, "simulate", config_path("shift_double"), "--vector", "0", "--range", "0:3")
        assert code == EXIT_OK
        assert out == "n,norm\n0,1\n1,2\n2,4\n3,8\n"

    def test_descending_range(self, capsys):
        code, out, _ = run(capsys, "simulate", config_path("valley"), "--range", "1:-1")
        assert code == EXIT_OK
        assert out.splitlines()[1:] == ["1,0.5", "0,1", "-1,0.5"]

    def test_cycle_site(self, capsys):
        code, out, _ = run(capsys, "simulate", config_path("cycle_line"), "--vector", "1,1", "--range", "0:3")
        assert code == EXIT_OK
        assert out.splitlines()[1:] == ["0,1", "1,0.5", "2,1.5", "3,1"]

    def test_bad_range(self, capsys):
        code, _, err = run(capsys, "simulate", config_path("valley"), "--range", "zero")
        assert code == EXIT_INVALID
        assert "--range" in err


class TestShadow:
    """Subcomando shadow"""

    def test_double(self, capsys):
        code, out, _ = run(capsys, "shadow", config_path("shift_double"), "--length", "51", "--seed", "3", "--json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["splitting"] == "unstable"
        assert payload["pass"] is True
        assert payload["orbit_ok"] is True
        assert payload["epsilon"] <= 1e-3 + 1e-12

    def test_dissipative_goes_through_induced_weights(self, capsys):
        code, out, _ = run(capsys, "shadow", config_path("valley"), "--length", "41", "--json")
        assert code == EXIT_OK
        assert json.loads(out)["splitting"] == "cut"

    def test_flat_refused(self, capsys):
        code, _, err = run(capsys, "shadow", config_path("flat"))
        assert code == EXIT_NO_SPLITTING
        assert "❌" in err

    def test_atomic_refused(self, capsys):
        code, _, _ = run(capsys, "shadow", config_path("cycle_line"))
        assert code == EXIT_NO_SPLITTING

    def test_even_length(self, capsys):
        code, _, err = run(capsys, "shadow", config_path("shift_double"), "--length", "10")
        assert code == EXIT_INVALID
        assert "--length" in err


class TestReduce:
    """Subcomando reduce"""

    def test_round_trip(self, capsys):
        code, out, _ = run(capsys, "reduce", config_path("valley"))
        assert code == EXIT_OK
        w = parse_config(out).build()
        assert isinstance(w, WeightSequence)
        assert [float(w.weights[k]) for k in (-1, 0, 1, 2)] == [0.5, 0.5, 2.0, 2.0]

    def test_rejects_shift(self, capsys):
        code, _, err = run(capsys, "reduce", config_path("shift_double"))
        assert code == EXIT_INVALID
        assert "dissipativa" in err


class TestAudit:
    """Subcomando audit"""

    def test_flat_config(self, capsys):
        code, out, _ = run(capsys, "audit", config_path("flat"), "--json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["count"] == 1
        assert payload["violations"] == []
        assert payload["distribution"]["SSS"] == {"Undecided": 1}

    def test_small_random_sweep(self, capsys):
        code, out, _ = run(capsys, "audit", "--count", "5", "--seed", "7", "--json")
        assert code == EXIT_OK
        assert json.loads(out)["count"] == 5

    def test_corrupted_report_exits_violation(self, capsys):
        def corrupt(report):
            report.verdicts["GeneralizedHyperbolic"] = Verdict(HOLDS, EXACT, "GH")

        args = build_parser().parse_args(["audit", config_path("flat"), "--no-oracle", "--json"])
        assert cmd_audit(args, corrupt) == EXIT_VIOLATION
        violations = json.loads(capsys.readouterr().out)["violations"]
        assert any("GH ⇒ Shadowing" in v for v in violations)

    def test_rejects_atomic(self, capsys):
        code, _, _ = run(capsys, "audit", config_path("cycle_line"))
        assert code == EXIT_INVALID
