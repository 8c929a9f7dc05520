import json
from fractions import Fraction

import pytest

from tilted import cli, galois
from tilted.errors import ParseError


def run(capsys, *argv):
    code = cli.dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


class TestLiterals:
    def test_group_parse(self):
        g = cli.parse_group("tau^2*gamma_4")
        assert (g.c, g.a) == (2, 4)
        assert cli.parse_group("tau") == galois.tau(1)
        assert cli.parse_group("gamma_-2").a == -2

    def test_group_parse_composes_left_to_right(self):
        g = cli.parse_group("gamma_4*tau")
        assert (g.c, g.a) == (4, 4)

    def test_group_rejects(self):
        with pytest.raises(ParseError):
            cli.parse_group("sigma^2")

    def test_ppow_parse(self):
        b = cli.parse_ppow("3/2*p^{1/2}")
        assert (b.q, b.s) == (Fraction(3, 2), Fraction(1, 2))
        assert cli.parse_ppow("5").s == 0

    def test_ppow_rejects(self):
        with pytest.raises(ParseError):
            cli.parse_ppow("p^x")


class TestBasicCommands:
    def test_eval(self, capsys):
        code, obj = run_json(capsys, "eval", "t^2+u+t")
        assert code == 0
        assert obj == {"schema": 1, "series": "t + u + t^{2}", "val": "1", "prec": None}

    def test_val(self, capsys):
        code, obj = run_json(capsys, "val", "u^{1/3}")
        assert code == 0
        assert obj["val"] == "1/2"

    def test_act(self, capsys):
        code, obj = run_json(capsys, "act", "tau", "t", "--prec", "4")
        assert code == 0
        assert obj["series"] == "t + u*t + O(4)"

    def test_parse_error_is_exit_3(self, capsys):
        code, out, err = run(capsys, "eval", "%%%")
        assert code == 3 and out == "" and "error" in err

    def test_usage_error_is_exit_3(self, capsys):
        code, _, _ = run(capsys, "no-such-command")
        assert code == 3

    def test_deterministic_output(self, capsys):
        _, out1, _ = run(capsys, "act", "tau^2*gamma_4", "t+u", "--prec", "9")
        _, out2, _ = run(capsys, "act", "tau^2*gamma_4", "t+u", "--prec", "9")
        assert out1 == out2


class TestShCommands:
    def test_pass(self, capsys):
        code, obj = run_json(capsys, "sh-test", "t", "--plambda", "3/2", "--mu", "1")
        assert code == 0 and obj["status"] == "pass"

    def test_fail(self, capsys):
        code, obj = run_json(capsys, "sh-test", "t", "--plambda", "3/2", "--mu", "2")
        assert code == 1 and obj["status"] == "fail"

    def test_inconclusive(self, capsys):
        code, obj = run_json(
            capsys, "sh-test", "t+O(3)", "--plambda", "3/2", "--mu", "1"
        )
        assert code == 2 and obj["status"] == "inconclusive"

    def test_refute(self, capsys):
        code, obj = run_json(
            capsys, "sh-test", "t", "--plambda", "3/2*p^{1/2}", "--mu", "0", "--refute"
        )
        assert code == 0 and obj["refuted"] is True

    def test_estimate(self, capsys):
        code, obj = run_json(capsys, "sh-estimate", "t^{1/3}")
        assert code == 0
        assert obj["plambda_hat"] == "1/2" and obj["consistent"] is True

    def test_estimate_degenerate_is_exit_2(self, capsys):
        code, _, err = run(capsys, "sh-estimate", "u")
        assert code == 2 and "inconclusive" in err

    def test_deperfect(self, capsys):
        code, obj = run_json(capsys, "deperfect", "t^{1/9}")
        assert code == 0 and obj["level"] == 2


class TestModuleCommands:
    @pytest.fixture
    def module_file(self, tmp_path, capsys):
        path = tmp_path / "m.mod"
        code, _ = run_json(
            capsys, "module", "gen", "--d", "2", "--seed", "4", "--out", str(path)
        )
        assert code == 0
        return str(path)

    def test_gen_stdout(self, capsys):
        code, out, _ = run(capsys, "module", "gen", "--d", "1", "--seed", "3")
        assert code == 0
        assert out.startswith("p=3 d=1 prec=24 cap=6\n[P]\n")

    def test_seed_env_override(self, capsys, monkeypatch):
        _, base, _ = run(capsys, "module", "gen", "--d", "1", "--seed", "3")
        monkeypatch.setenv("TILTED_SEED", "3")
        _, out, _ = run(capsys, "module", "gen", "--d", "1", "--seed", "0")
        assert out == base

    def test_check(self, capsys, module_file):
        code, obj = run_json(capsys, "module", "check", module_file, "--c", "2")
        assert code == 0 and obj["ok"] is True

    def test_check_missing_file(self, capsys):
        code, _, _ = run(capsys, "module", "check", "/no/such/file")
        assert code == 3

    def test_descend(self, capsys, module_file):
        code, obj = run_json(capsys, "module", "descend", module_file, "--target", "8")
        assert code == 0 and obj["matches_direct"] is True

    def test_sh(self, capsys, module_file):
        code, obj = run_json(capsys, "module", "sh", module_file)
        assert code == 0 and obj["consistent"] is True
        fit = obj["vectors"][0]["basis_fit"]
        assert fit["plambda"] == "3/2"


class TestNewtonCommand:
    def test_elementary(self, capsys):
        code, obj = run_json(capsys, "newton", "--p", "5", "--eK", "1", "--n", "1")
        assert code == 0 and obj["elementary"] is True
        assert obj["slope"] == obj["expected_slope"]
        assert obj["dropped"] == [0]


class TestSelftestCommand:
    def test_selected_criteria(self, capsys):
        code, obj = run_json(
            capsys, "selftest", "--only", "refutation", "--only", "deperfection"
        )
        assert code == 0 and obj["passed"] is True
        assert sorted(r["id"] for r in obj["results"]) == ["deperfection", "refutation"]

    def test_unknown_criterion(self, capsys):
        code, _, _ = run(capsys, "selftest", "--only", "bogus")
        assert code == 3
