from math import factorial

import pytest

from app.core.enumeration import (
    SIGNED_SIMSUN_FAMILIES,
    Family,
    brute_count,
    brute_polynomial,
    brute_polynomials,
    class_spec,
    class_words,
    count_alternating,
    insertion_stream_RB,
    merge_histograms,
    partition_histogram,
    partitions,
    stream_hyperoctahedral,
    stream_symmetric,
)
from app.core.exceptions import InfeasibleEnumerationError, UsageError
from app.core.permcore import SignedWord, is_simsun_B
from tests.conftest import EULER_NUMBERS, R_AT_ONE


class TestStreams:
    @pytest.mark.parametrize("n", range(6))
    def test_symmetric_count(self, n):
        words = list(stream_symmetric(n))
        assert len(words) == factorial(n)
        assert len(set(words)) == len(words)

    @pytest.mark.parametrize("n", range(5))
    def test_hyperoctahedral_count(self, n):
        words = list(stream_hyperoctahedral(n))
        assert len(words) == 2 ** n * factorial(n)
        assert len(set(words)) == len(words)

    def test_hyperoctahedral_lex_order(self):
        words = [w.entries for w in stream_hyperoctahedral(3)]
        assert words == sorted(words)
        assert words[0] == (-3, -2, -1)
        assert words[-1] == (3, 2, 1)

    def test_symmetric_lex_order(self):
        words = [w.entries for w in stream_symmetric(5)]
        assert words[0] == (1, 2, 3, 4, 5)
        assert words == sorted(words)

    def test_empty_stream_has_one_word(self):
        assert [w.entries for w in stream_hyperoctahedral(0)] == [()]
        assert [w.entries for w in stream_symmetric(0)] == [()]

    def test_first_entry_partition(self):
        assert [w.entries for w in stream_symmetric(3, first=2)] == [(2, 1, 3), (2, 3, 1)]
        assert all(w[0] == -2 for w in stream_hyperoctahedral(3, first=-2))

    def test_negative_n(self):
        with pytest.raises(UsageError):
            stream_symmetric(-1)
        with pytest.raises(UsageError):
            brute_polynomial("RB", -2)

    def test_cap_exceeded(self, cap):
        cap(3)
        with pytest.raises(InfeasibleEnumerationError) as exc_info:
            stream_hyperoctahedral(4)
        assert exc_info.value.n == 4
        assert exc_info.value.cap == 3
        with pytest.raises(InfeasibleEnumerationError):
            brute_polynomial("RS", 4)
        # at the cap itself enumeration proceeds
        assert brute_count("RB", 3) == R_AT_ONE[3]


class TestClasses:
    def test_class_lookup(self):
        assert class_spec("RB+").family is Family.RB_POS
        assert class_spec(Family.EULERIAN_D).ambient == "B"
        spec = class_spec("RS")
        assert class_spec(spec) is spec
        assert brute_polynomial(spec, 4).coeffs == (1, 11, 4)
        with pytest.raises(UsageError):
            class_spec("RQ")

    def test_signed_simsun_families(self):
        assert len(SIGNED_SIMSUN_FAMILIES) == 9
        assert Family.RS not in SIGNED_SIMSUN_FAMILIES

    def test_unknown_strategy(self):
        with pytest.raises(UsageError):
            class_words("RB", 3, strategy="guess")

    def test_class_words_are_members(self):
        words = list(class_words("RD-", 4))
        assert words
        for w in words:
            assert is_simsun_B(w)
            assert w[0] < 0
            assert sum(1 for v in w if v < 0) % 2 == 0

    @pytest.mark.parametrize(
        "family,n,coeffs",
        [
            ("RB", 2, (1, 6)),
            ("RB-", 3, (0, 7, 9)),
            ("RD", 4, (1, 36, 62)),
            ("RT", 4, (0, 40, 59)),
            ("RB+", 4, (1, 61, 41)),
            ("RS", 4, (1, 11, 4)),
            ("EulerianA", 3, (1, 4, 1)),
            ("EulerianB", 2, (1, 6, 1)),
        ],
    )
    def test_brute_polynomial(self, family, n, coeffs):
        assert brute_polynomial(family, n).coeffs == coeffs

    def test_brute_polynomial_labels(self):
        p = brute_polynomial("RD", 3)
        assert p.family == "RD"
        assert p.n == 3

    def test_empty_word_conventions(self):
        assert brute_count("RB", 0) == 1
        assert brute_count("RB+", 0) == 1
        assert brute_count("RB-", 0) == 0
        assert brute_count("RT", 0) == 0
        assert brute_polynomial("RD", 0).coeffs == (1,)

    def test_seven_simsun_words_in_B2(self):
        assert brute_count("RB", 2) == 7

    @pytest.mark.parametrize("n", range(6))
    def test_RB_counts(self, n):
        assert brute_count("RB", n) == R_AT_ONE[n]

    @pytest.mark.parametrize("n", range(8))
    def test_RS_counts_are_euler_numbers(self, n):
        assert brute_count("RS", n) == EULER_NUMBERS[n + 1]

    @pytest.mark.parametrize("m", range(9))
    def test_count_alternating(self, m):
        assert count_alternating(m) == EULER_NUMBERS[m]

    @pytest.mark.parametrize("n", range(6))
    def test_parity_split_of_eulerian_B(self, n):
        whole = brute_polynomial("EulerianB", n)
        assert brute_polynomial("EulerianD", n) + brute_polynomial("EulerianT", n) == whole

    @pytest.mark.parametrize("n", range(6))
    def test_sign_and_parity_splits(self, n):
        polys = brute_polynomials(SIGNED_SIMSUN_FAMILIES, n)
        assert polys[Family.RB_POS] + polys[Family.RB_NEG] == polys[Family.RB]
        assert polys[Family.RD] + polys[Family.RT] == polys[Family.RB]
        assert polys[Family.RD_POS] + polys[Family.RD_NEG] == polys[Family.RD]
        assert polys[Family.RT_POS] + polys[Family.RT_NEG] == polys[Family.RT]


class TestStrategies:
    @pytest.mark.parametrize("n", range(7))
    def test_insertion_matches_filter(self, n):
        inserted = list(insertion_stream_RB(n))
        assert len(inserted) == len(set(inserted))
        assert set(inserted) == {SignedWord(w) for w in class_words("RB", n, strategy="filter")}

    @pytest.mark.slow
    def test_insertion_matches_filter_n7(self):
        inserted = list(insertion_stream_RB(7))
        assert len(inserted) == len(set(inserted)) == R_AT_ONE[7]
        assert set(inserted) == {SignedWord(w) for w in class_words("RB", 7, strategy="filter")}

    def test_insertion_rejects_negative_n(self):
        with pytest.raises(UsageError):
            list(insertion_stream_RB(-1))

    @pytest.mark.parametrize("n", range(6))
    def test_search_matches_filter(self, n):
        search = brute_polynomials(SIGNED_SIMSUN_FAMILIES, n, strategy="search")
        filtered = brute_polynomials(SIGNED_SIMSUN_FAMILIES, n, strategy="filter")
        assert search == filtered

    def test_job_count_does_not_change_result(self):
        one = brute_polynomials(SIGNED_SIMSUN_FAMILIES, 5, jobs=1)
        two = brute_polynomials(SIGNED_SIMSUN_FAMILIES, 5, jobs=2)
        assert one == two

    def test_invalid_jobs(self):
        with pytest.raises(UsageError):
            brute_polynomial("RB", 2, jobs=0)


class TestPartitions:
    def test_partitions(self):
        assert partitions("RB", 2) == [-2, -1, 1, 2]
        assert partitions("RB+", 2) == [1, 2]
        assert partitions("RD-", 2) == [-2, -1]
        assert partitions("RS", 3) == [1, 2, 3]
        assert partitions("RB", 0) == [None]

    def test_partition_histograms_merge_to_class(self):
        hists = [partition_histogram("RT", 4, first) for first in partitions("RT", 4)]
        assert merge_histograms(hists) == list(brute_polynomial("RT", 4).coeffs)

    def test_merge_histograms(self):
        assert merge_histograms([[1, 2], [0, 1, 3]]) == [1, 3, 3]
        assert merge_histograms([[0, 1, 3], [1, 2]]) == [1, 3, 3]
        assert merge_histograms([]) == []
