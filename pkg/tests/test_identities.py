from fractions import Fraction

import pytest
from pydantic import ValidationError

from app.core.exceptions import InfeasibleEnumerationError, UsageError
from app.services.identities import (
    IDENTITIES,
    IdentityReport,
    RowStatus,
    Witness,
    check_chebyshev,
    check_convolution_W,
    check_corollary_split,
    check_degrees,
    check_dnk,
    check_enk,
    check_euler_numbers,
    check_fibonacci_corollary,
    check_foata,
    check_oracle,
    check_partition,
    check_prop_DT,
    check_prop_R,
    check_thm02_chain,
    run_identity,
    sample_points,
)


class TestTableIdentities:
    @pytest.mark.parametrize(
        "check",
        [check_dnk, check_thm02_chain, check_corollary_split, check_fibonacci_corollary, check_chebyshev],
    )
    def test_holds_to_200(self, check):
        report = check(200)
        assert report.holds
        assert report.n_min == 0
        assert len(report.rows) == 201

    def test_degrees(self):
        report = check_degrees(200)
        assert report.holds
        assert report.n_min == 1
        with pytest.raises(UsageError):
            check_degrees(0)

    @pytest.mark.parametrize("check", [check_prop_R, check_prop_DT])
    def test_operator_consistency(self, check):
        assert check(50).holds

    def test_negative_n_max(self):
        with pytest.raises(UsageError):
            check_dnk(-1)


class TestSampleIdentities:
    def test_foata(self):
        assert check_foata(7).holds

    def test_foata_with_fractional_points(self):
        assert check_foata(6, [Fraction(1, 2), Fraction(-1, 3), Fraction(0)]).holds

    def test_foata_brute_eulerian(self):
        assert check_foata(5, method="brute").holds

    def test_convolution(self):
        assert check_convolution_W(7).holds

    def test_sample_points(self):
        assert sample_points(3) == [Fraction(v) for v in range(1, 9)]
        assert sample_points(3, [Fraction(5)]) == [Fraction(5), Fraction(1), Fraction(2)]
        assert sample_points(2, [Fraction(2), Fraction(2)]) == [Fraction(2), Fraction(1)]
        assert len(sample_points(12)) == 12

    def test_pole_rejected(self):
        with pytest.raises(UsageError):
            sample_points(1, [Fraction(-1)])


class TestEnumerationIdentities:
    def test_enk(self):
        assert check_enk(6).holds

    @pytest.mark.slow
    def test_enk_n8(self):
        assert check_enk(8, jobs=2).holds

    def test_euler_numbers(self):
        assert check_euler_numbers(7).holds

    def test_partition(self):
        assert check_partition(5).holds
        assert check_partition(4, strategy="filter").holds

    @pytest.mark.parametrize("group", ["R", "DT", "S"])
    def test_oracle(self, group):
        report = check_oracle(group, 6)
        assert report.holds
        assert report.identity == f"oracle-{group}"

    @pytest.mark.slow
    @pytest.mark.parametrize("group", ["R", "DT"])
    def test_oracle_n8(self, group):
        assert check_oracle(group, 8, jobs=2).holds

    def test_oracle_unknown_group(self):
        with pytest.raises(UsageError):
            check_oracle("Q", 3)

    def test_oracle_beyond_cap(self, cap):
        cap(4)
        with pytest.raises(InfeasibleEnumerationError):
            check_oracle("R", 5)


class TestReports:
    def test_failing_row_needs_witness(self):
        with pytest.raises(ValidationError):
            RowStatus(n=3, holds=False)

    def test_report_holds_is_computed(self):
        witness = Witness(n=2, k=1, lhs="6", rhs="5")
        report = IdentityReport(
            identity="dnk",
            n_min=0,
            n_max=2,
            rows=[RowStatus(n=0, holds=True), RowStatus(n=2, holds=False, witness=witness)],
        )
        assert not report.holds
        assert [row.n for row in report.failures()] == [2]
        dumped = report.model_dump()
        assert dumped["holds"] is False
        assert dumped["rows"][1]["witness"]["k"] == 1

    def test_registry(self):
        assert set(IDENTITIES) >= {"dnk", "thm02", "split", "fib", "enk", "foata", "convolution", "degrees", "oracle-R", "oracle-DT", "oracle-S"}

    @pytest.mark.parametrize("name", ["dnk", "thm02", "split", "fib", "degrees", "foata", "convolution", "enk", "oracle-R", "oracle-DT", "oracle-S"])
    def test_run_identity(self, name):
        report = run_identity(name, 5)
        assert report.holds
        assert report.n_max == 5

    def test_run_identity_unknown(self):
        with pytest.raises(UsageError):
            run_identity("riemann", 3)
