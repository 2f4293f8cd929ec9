import json

import pytest

from lefschetz_lab.cli import main

IKEDA_ARGS = [
    "analyze",
    "--poly",
    "x0*u1^3*u2 + x1*u1*u2^3 + x0^3*x1^2",
    "--vars",
    "x0,x1,u1,u2",
    "--split",
    "2",
]


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestAnalyze:
    def test_ikeda_summary(self, capsys, tmp_path):
        report = tmp_path / "report.json"
        code, out, _ = run(IKEDA_ARGS + ["--json", str(report)], capsys)
        assert code == 0
        assert "hilbert vector  (1, 4, 10, 10, 4, 1)" in out
        assert "hessian[2]      = 0" in out
        assert "strong property fails at order 2" in out
        data = json.loads(report.read_text())
        assert data["slp"]["level"] == 2
        assert data["hilbert"] == [1, 4, 10, 10, 4, 1]
        assert len(data["certificates"]) >= 1

    def test_binary_cubic_holds(self, capsys):
        code, out, _ = run(
            ["analyze", "--poly", "x^3+y^3", "--vars", "x,y"], capsys
        )
        assert code == 0
        assert "strong property holds" in out
        assert "weak property   holds" in out

    def test_parse_error_exit_code(self, capsys):
        code, _, err = run(["analyze", "--poly", "x^2+q", "--vars", "x,y"], capsys)
        assert code == 2
        assert "undeclared" in err

    def test_deterministic_report(self, capsys, tmp_path):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for path in paths:
            code, _, _ = run(IKEDA_ARGS + ["--seed", "5", "--json", str(path)], capsys)
            assert code == 0
        reports = [json.loads(p.read_text()) for p in paths]
        for rep in reports:
            rep.pop("timing_ms")
        assert reports[0] == reports[1]

    def test_json_round_trip_stable(self, capsys, tmp_path):
        path = tmp_path / "r.json"
        run(IKEDA_ARGS + ["--json", str(path)], capsys)
        text = path.read_text()
        reparsed = json.dumps(json.loads(text), indent=2, sort_keys=True) + "\n"
        assert reparsed == text

    def test_exact_mode(self, capsys):
        code, out, _ = run(IKEDA_ARGS + ["--mode", "exact"], capsys)
        assert code == 0
        assert "hessian[1]      != 0   (exact)" in out


class TestGenerate:
    def test_gnp_text(self, capsys):
        code, out, _ = run(
            ["generate", "--family", "gnp", "--m", "2", "--n", "2", "--k", "1", "--e", "2"],
            capsys,
        )
        assert code == 0
        assert out.splitlines()[0] == "x*u^2 + y*u*v + z*v^2"

    def test_excluded_pair_exit_two(self, capsys):
        code, _, err = run(
            ["generate", "--family", "thmwlp", "--n", "3", "--d", "6"], capsys
        )
        assert code == 2
        assert "(N,d)=(3,6)" in err

    def test_exceptional(self, capsys):
        code, out, _ = run(
            ["generate", "--family", "exceptional", "--n", "3", "--d", "5", "--k", "2"],
            capsys,
        )
        assert code == 0
        payload = json.loads("\n".join(out.splitlines()[1:]))
        assert payload["params"] == {"n": 3, "d": 5, "k": 2}

    def test_missing_parameter(self, capsys):
        code, _, err = run(["generate", "--family", "exceptional", "--n", "3"], capsys)
        assert code == 2
        assert "--d" in err

    def test_generate_then_analyze(self, capsys, tmp_path):
        out_path = tmp_path / "instance.json"
        code, _, _ = run(
            ["generate", "--family", "thmwlp", "--n", "5", "--d", "4", "--out", str(out_path)],
            capsys,
        )
        assert code == 0
        code, out, _ = run(["analyze", "--in", str(out_path)], capsys)
        assert code == 0
        assert "weak property   fails at map A_1 -> A_2" in out

    def test_prop44_case(self, capsys):
        code, out, _ = run(["generate", "--family", "prop44", "--case", "iii"], capsys)
        assert code == 0
        assert "x0*u^2*v" in out


class TestReproduce:
    def test_unknown_suite(self, capsys):
        code, _, err = run(["reproduce", "--suite", "mystery"], capsys)
        assert code == 2
        assert "unknown suite" in err

    def test_paper_suite_passes(self, capsys, tmp_path):
        path = tmp_path / "suite.json"
        code, out, _ = run(["reproduce", "--json", str(path)], capsys)
        assert code == 0
        assert "FAIL" not in out
        rows = json.loads(path.read_text())
        assert all(row["passed"] for row in rows)
        assert {row["criterion"] for row in rows} == set(range(1, 10))


class TestSeedEnvFallback:
    def test_env_seed(self, capsys, monkeypatch, tmp_path):
        monkeypatch.setenv("LEFSCHETZ_LAB_SEED", "9")
        path = tmp_path / "r.json"
        code, _, _ = run(IKEDA_ARGS + ["--json", str(path)], capsys)
        assert code == 0
        assert json.loads(path.read_text())["seed"] == 9


class TestStrict:
    def test_exit_three_on_undetermined(self, capsys, monkeypatch):
        import lefschetz_lab.cli as cli_mod
        from lefschetz_lab.apolar import hilbert_vector
        from lefschetz_lab.lefschetz import LefschetzReport
        from lefschetz_lab.polycore import VariableSet, parse_poly

        def fake_wlp(f, trials=0, seed=0):
            hv = hilbert_vector(f)
            return LefschetzReport("WLP", "undetermined", hv, True)

        monkeypatch.setattr(cli_mod, "wlp_generic", fake_wlp)
        code, out, _ = run(
            ["analyze", "--poly", "x^3+y^3", "--vars", "x,y", "--strict"], capsys
        )
        assert code == 3
        assert "undetermined" in out


class TestExactSuite:
    def test_reproduce_exact_mode_passes(self, capsys):
        code, out, _ = run(["reproduce", "--mode", "exact"], capsys)
        assert code == 0
        assert "FAIL" not in out


class TestMaxK:
    def test_capped_profile(self, capsys):
        code, out, _ = run(IKEDA_ARGS + ["--max-k", "1"], capsys)
        assert code == 0
        assert "hessian[2]" not in out
        assert "strong property undetermined" in out
