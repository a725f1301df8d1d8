#!/usr/bin/env python3
"""
Acceptance runner for the signed simsun toolkit.

Runs every acceptance check end to end, times it against its budget and
prints one line per check, then a JSON summary. Exits 0 only if every
check passed within budget.

    python scripts/run_acceptance.py --jobs 8
    python scripts/run_acceptance.py --quick      # skip the n = 8 enumerations
"""

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, List, Optional

# Add the parent directory to sys.path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.core.enumeration import brute_count, count_alternating
from app.core.exceptions import SimsunError
from app.services.identities import (
    check_chebyshev,
    check_convolution_W,
    check_corollary_split,
    check_degrees,
    check_dnk,
    check_enk,
    check_fibonacci_corollary,
    check_foata,
    check_oracle,
    check_thm02_chain,
)
from app.services.series import exact_targets, expand_R, expand_RS, expand_Rprime_at_1, series_match
from app.services.triangles import table_DT, table_R
from app.utils.logger import logger

PUBLISHED_ROWS = {
    "R+": [(1,), (1, 3), (1, 16), (1, 61, 41)],
    "R-": [(0, 1), (0, 3), (0, 7, 9), (0, 15, 80)],
    "R": [(1, 1), (1, 6), (1, 23, 9), (1, 76, 121)],
    "D+": [(1,), (1, 1), (1, 7), (1, 29, 21)],
    "T+": [(), (0, 2), (0, 9), (0, 32, 20)],
    "D-": [(), (0, 1), (0, 3, 5), (0, 7, 41)],
    "T-": [(0, 1), (0, 2), (0, 4, 4), (0, 8, 39)],
    "D": [(1,), (1, 2), (1, 10, 5), (1, 36, 62)],
    "T": [(0, 1), (0, 4), (0, 13, 4), (0, 40, 59)],
}
R_AT_ONE = [1, 2, 7, 33, 198, 1439, 12291, 120622]
S_PRIME_AT_ONE = [0, 1, 6, 41, 318, 2840, 28736, 325991]


@dataclass
class CheckResult:
    name: str
    passed: bool
    seconds: float
    budget: float
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.passed and self.seconds <= self.budget


def golden_rows() -> str:
    tables = dict(zip(("R+", "R-", "R"), table_R(4)))
    tables.update(table_DT(4))
    for tag, rows in PUBLISHED_ROWS.items():
        got = [tables[tag][n].coeffs for n in range(1, 5)]
        if got != rows:
            raise AssertionError(f"{tag}: {got} != {rows}")
    return f"{len(PUBLISHED_ROWS)} triangles, rows 1..4"


def series_at_one() -> str:
    total = expand_R(Fraction(1), 7, 60)[2]
    report = series_match(total, [Fraction(v) for v in R_AT_ONE], x=Fraction(1))
    if not report.passed:
        raise AssertionError(report.to_json())
    return f"max error {report.max_error}"


def derivative_series() -> str:
    report = series_match(expand_Rprime_at_1(7, 60), [Fraction(v) for v in S_PRIME_AT_ONE], x=Fraction(1))
    if not report.passed:
        raise AssertionError(report.to_json())
    return f"max error {report.max_error}"


def oracle(jobs: Optional[int], n_max: int) -> Callable[[], str]:
    def run() -> str:
        for group in ("R", "DT", "S"):
            report = check_oracle(group, n_max, jobs)
            if not report.holds:
                raise AssertionError(report.model_dump_json())
        return f"R, DT and S groups for n <= {n_max}"

    return run


def exact_identities() -> str:
    for check in (check_dnk, check_thm02_chain, check_corollary_split, check_fibonacci_corollary, check_degrees):
        report = check(200)
        if not report.holds:
            raise AssertionError(report.model_dump_json())
    if not check_chebyshev(64).holds:
        raise AssertionError("Chebyshev paths disagree")
    return "five identities to n = 200, Chebyshev to 64"


def enumeration_identities(jobs: Optional[int], enk_max: int) -> Callable[[], str]:
    def run() -> str:
        reports = [check_enk(enk_max, jobs), check_foata(7), check_convolution_W(7, jobs=jobs)]
        for report in reports:
            if not report.holds:
                raise AssertionError(report.model_dump_json())
        return f"enk to {enk_max}, foata and convolution to 7"

    return run


def euler_numbers(jobs: Optional[int]) -> str:
    for n in range(8):
        simsun, alternating = brute_count("RS", n, jobs), count_alternating(n + 1)
        if simsun != alternating:
            raise AssertionError(f"|RS_{n}| = {simsun} but E_{n + 1} = {alternating}")
    return "n <= 7"


def simsun_series() -> str:
    for x in (Fraction(1), Fraction(2)):
        report = series_match(expand_RS(x, 10, 60), exact_targets("RS", x, 10), x=x)
        if not report.passed:
            raise AssertionError(report.to_json())
    return "x in {1, 2}, K = 10"


def run_check(name: str, budget: float, func: Callable[[], str]) -> CheckResult:
    logger.info(f"Running {name}")
    start_time = time.time()
    try:
        detail = func()
        passed = True
    except (AssertionError, SimsunError) as e:
        detail = str(e)
        passed = False
    result = CheckResult(name, passed, round(time.time() - start_time, 3), budget, detail)
    status = "PASS" if result.ok else "FAIL"
    print(f"[{status}] {name:<28} {result.seconds:>8.2f}s / {budget:.0f}s  {detail}")
    return result


def main() -> int:
    parser = argparse.ArgumentParser(description="Run the acceptance checks with timing.")
    parser.add_argument("--jobs", type=int, default=1, help="Worker processes for enumeration.")
    parser.add_argument("--quick", action="store_true", help="Stop the enumerations at n = 6.")
    args = parser.parse_args()

    n_max = 6 if args.quick else 8
    oracle_budget = 300.0 if args.jobs == 1 else 60.0
    results: List[CheckResult] = [
        run_check("golden rows", 1, golden_rows),
        run_check("R series at x = 1", 5, series_at_one),
        run_check("R' series at x = 1", 5, derivative_series),
        run_check("oracle equivalence", oracle_budget, oracle(args.jobs, n_max)),
        run_check("exact identities", 30, exact_identities),
        run_check("enumeration identities", 300, enumeration_identities(args.jobs, n_max)),
        run_check("Euler numbers", 60, lambda: euler_numbers(args.jobs)),
        run_check("simsun series", 10, simsun_series),
    ]

    summary = {
        "passed": all(r.ok for r in results),
        "jobs": args.jobs,
        "n_max": n_max,
        "checks": [dict(asdict(r), ok=r.ok) for r in results],
    }
    print(json.dumps(summary, indent=2))
    return 0 if summary["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
