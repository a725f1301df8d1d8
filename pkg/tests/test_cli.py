import json

import pytest

from app.cli.commands import _render_identity
from app.cli.parser import CommandConfig, parse_command
from app.main import main
from app.services.identities import IdentityReport, RowStatus, Witness


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParser:
    def test_default_formats(self):
        assert parse_command(["table", "--class", "R", "--n-max", "3"]).fmt == "csv"
        assert parse_command(["verify", "--identity", "dnk", "--n-max", "3"]).fmt == "json"
        assert parse_command(["count", "--class", "RB", "--n", "3"]).fmt == "text"

    def test_rational_parameters(self):
        config = parse_command(["series", "--target", "R", "--x", "5/2", "--order", "4"])
        assert config.x_value.numerator == 5
        assert config.x_value.denominator == 2
        assert config.order == 4
        config = parse_command(["verify", "--identity", "foata", "--n-max", "3", "--xs", "1/2,3"])
        assert [str(x) for x in config.sample_xs] == ["1/2", "3"]

    def test_validation(self):
        with pytest.raises(ValueError):
            CommandConfig(subcommand="count", class_name="RB", n=-1)
        with pytest.raises(ValueError):
            CommandConfig(subcommand="series", target="R", x="one")


class TestTable:
    def test_R_csv(self, capsys):
        code, out, _ = run(capsys, "table", "--class", "R", "--n-max", "4")
        assert code == 0
        assert out.splitlines() == ["1", "1,1", "1,6", "1,23,9", "1,76,121"]

    def test_T_last_row(self, capsys):
        code, out, _ = run(capsys, "table", "--class", "T", "--n-max", "4")
        assert code == 0
        assert out.splitlines()[-1] == "0,40,59"
        assert out.splitlines()[0] == "0"

    def test_row_zero_only(self, capsys):
        _, out, _ = run(capsys, "table", "--class", "R", "--n-max", "0")
        assert out == "1\n"

    def test_json(self, capsys):
        _, out, _ = run(capsys, "table", "--class", "D", "--n-max", "2", "--format", "json")
        assert json.loads(out) == {"class": "D", "rows": [["1"], ["1"], ["1", "2"]]}

    def test_text(self, capsys):
        _, out, _ = run(capsys, "table", "--class", "R", "--n-max", "4", "--format", "text")
        assert out.splitlines()[-1] == "R_4(x) = 1 + 76x + 121x^2"

    def test_chebyshev(self, capsys):
        _, out, _ = run(capsys, "table", "--class", "U", "--n-max", "3")
        assert out.splitlines() == ["1", "0,2", "-1,0,4", "0,-4,0,8"]

    def test_brute_matches_recurrence(self, capsys):
        _, recurrence, _ = run(capsys, "table", "--class", "D-", "--n-max", "5")
        _, brute, _ = run(capsys, "table", "--class", "D-", "--n-max", "5", "--brute")
        assert brute == recurrence

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "tables" / "R.csv"
        code, out, _ = run(capsys, "table", "--class", "R", "--n-max", "2", "--out", str(target))
        assert code == 0
        assert out == ""
        assert target.read_text() == "1\n1,1\n1,6\n"

    def test_deterministic(self, capsys):
        first = run(capsys, "table", "--class", "T-", "--n-max", "30")[1]
        second = run(capsys, "table", "--class", "T-", "--n-max", "30")[1]
        assert first == second


class TestCountAndEnumerate:
    def test_count(self, capsys):
        assert run(capsys, "count", "--class", "RB", "--n", "2")[1] == "7\n"
        assert run(capsys, "count", "--class", "RS", "--n", "5")[1] == "61\n"

    def test_count_json(self, capsys):
        _, out, _ = run(capsys, "count", "--class", "RB+", "--n", "3", "--format", "json")
        assert json.loads(out) == {"class": "RB+", "n": 3, "count": "17"}

    def test_enumerate_RB2(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--class", "RB", "--n", "2")
        lines = out.splitlines()
        assert code == 0
        assert lines[-1] == "count: 7"
        assert lines[:-1] == ["-2,-1", "-2,1", "-1,2", "1,-2", "1,2", "2,-1", "2,1"]

    def test_enumerate_empty_word(self, capsys):
        _, out, _ = run(capsys, "enumerate", "--class", "RB", "--n", "0")
        assert out == "\ncount: 1\n"

    def test_enumerate_RD1(self, capsys):
        _, out, _ = run(capsys, "enumerate", "--class", "RD", "--n", "1", "--format", "csv")
        assert out == "1\n"

    def test_insertion_matches_filter(self, capsys):
        _, inserted, _ = run(capsys, "enumerate", "--class", "RB", "--n", "4", "--insertion")
        _, filtered, _ = run(capsys, "enumerate", "--class", "RB", "--n", "4", "--strategy", "filter")
        assert inserted == filtered
        assert inserted.splitlines()[-1] == "count: 198"

    def test_insertion_is_RB_only(self, capsys, stderr_json):
        code, _, err = run(capsys, "enumerate", "--class", "RD", "--n", "3", "--insertion")
        assert code == 2
        assert stderr_json(err)["error"] == "UsageError"


class TestVerifyAndSeries:
    def test_verify_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--identity", "dnk", "--n-max", "30")
        payload = json.loads(out)
        assert code == 0
        assert payload["holds"] is True
        assert payload["identity"] == "dnk"
        assert len(payload["rows"]) == 31

    def test_verify_with_sample_points(self, capsys):
        code, _, _ = run(capsys, "verify", "--identity", "foata", "--n-max", "6", "--xs", "1/2,3", "--format", "text")
        assert code == 0

    def test_verify_csv(self, capsys):
        code, out, _ = run(capsys, "verify", "--identity", "dnk", "--n-max", "3", "--format", "csv")
        assert code == 0
        assert out.splitlines() == ["n,holds,k,x,lhs,rhs", "0,true,,,,", "1,true,,,,", "2,true,,,,", "3,true,,,,"]

    def test_failing_report_csv(self):
        report = IdentityReport(
            identity="dnk",
            n_min=0,
            n_max=1,
            rows=[RowStatus(n=0, holds=True), RowStatus(n=1, holds=False, witness=Witness(n=1, k=1, lhs="2", rhs="-1"))],
        )
        assert _render_identity(report, "csv").splitlines()[-1] == "1,false,1,,2,-1"

    def test_verify_text(self, capsys):
        _, out, _ = run(capsys, "verify", "--identity", "thm02", "--n-max", "10", "--format", "text")
        assert out == "thm02: holds for n = 0..10\n"

    @pytest.mark.parametrize("target", ["R", "Rprime1", "RS"])
    def test_series_passes(self, capsys, target):
        code, out, _ = run(capsys, "series", "--target", target, "--x", "1", "--order", "7")
        payload = json.loads(out)
        assert code == 0
        assert payload["pass"] is True
        assert len(payload["coefficients"]) == 8

    def test_series_fractional_x(self, capsys):
        code, _, _ = run(capsys, "series", "--target", "R", "--x", "5/2", "--order", "10", "--format", "text")
        assert code == 0


class TestExitCodes:
    def test_unknown_class(self, capsys):
        code, _, _ = run(capsys, "table", "--class", "Q", "--n-max", "3")
        assert code == 2

    def test_negative_n(self, capsys, stderr_json):
        code, _, err = run(capsys, "count", "--class", "RB", "--n", "-1")
        assert code == 2
        assert stderr_json(err)["exit_code"] == 2

    def test_invalid_sample_points(self, capsys):
        assert run(capsys, "verify", "--identity", "foata", "--n-max", "3", "--xs", "abc")[0] == 2
        assert run(capsys, "verify", "--identity", "foata", "--n-max", "3", "--xs=-1")[0] == 2

    def test_cap_exceeded(self, capsys, stderr_json, cap):
        cap(4)
        code, out, err = run(capsys, "count", "--class", "RB", "--n", "5")
        payload = stderr_json(err)
        assert code == 3
        assert out == ""
        assert payload["n"] == 5
        assert payload["cap"] == 4
        assert payload["error"] == "InfeasibleEnumerationError"

    def test_default_cap(self, capsys):
        assert run(capsys, "enumerate", "--class", "RB", "--n", "10")[0] == 3

    def test_series_domain(self, capsys, stderr_json):
        code, _, err = run(capsys, "series", "--target", "R", "--x", "1/2")
        assert code == 4
        assert stderr_json(err)["error"] == "SeriesDomainError"

    def test_series_order_too_large(self, capsys):
        assert run(capsys, "series", "--target", "RS", "--order", "1000")[0] == 2
