"""Identity checkers over the recurrence tables and the brute-force oracle."""
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from loguru import logger
from pydantic import BaseModel, computed_field, model_validator

from app.core.enumeration import (
    SIGNED_SIMSUN_FAMILIES,
    Family,
    brute_count,
    brute_polynomials,
    check_feasible,
    count_alternating,
)
from app.core.exceptions import UsageError
from app.core.polynomial import DescentPolynomial, format_polynomial
from app.services.triangles import (
    alternating_binomial_row,
    binomial,
    chebyshev_U,
    chebyshev_U_explicit,
    chebyshev_chain_rhs,
    eulerian_A,
    fibonacci,
    leftpeak_W,
    table_DT,
    table_DT_prop,
    table_R,
    table_R_prop,
    table_S,
)
from app.utils.helpers import format_rational

DEFAULT_SAMPLE_POINTS = tuple(Fraction(v) for v in range(1, 9))
ORACLE_GROUPS = ("R", "DT", "S")

ORACLE_FAMILIES = {
    "R": {"R+": Family.RB_POS, "R-": Family.RB_NEG, "R": Family.RB},
    "DT": {
        "D+": Family.RD_POS, "D-": Family.RD_NEG, "T+": Family.RT_POS,
        "T-": Family.RT_NEG, "D": Family.RD, "T": Family.RT,
    },
    "S": {"S": Family.RS},
}


class Witness(BaseModel):
    n: int
    k: Optional[int] = None
    x: Optional[str] = None
    lhs: str
    rhs: str
    detail: Optional[str] = None


class RowStatus(BaseModel):
    n: int
    holds: bool
    witness: Optional[Witness] = None

    @model_validator(mode="after")
    def failing_row_has_witness(self):
        if not self.holds and self.witness is None:
            raise ValueError(f"row {self.n} fails without a witness")
        return self


class IdentityReport(BaseModel):
    identity: str
    n_min: int
    n_max: int
    rows: List[RowStatus]

    @computed_field
    @property
    def holds(self) -> bool:
        return all(row.holds for row in self.rows)

    def failures(self) -> List[RowStatus]:
        return [row for row in self.rows if not row.holds]


# ---------------------------------------------------------------------------
# Row helpers
# ---------------------------------------------------------------------------

def _ok(n: int) -> RowStatus:
    return RowStatus(n=n, holds=True)


def _compare_polys(n: int, lhs: DescentPolynomial, rhs: DescentPolynomial, detail: Optional[str] = None) -> RowStatus:
    if lhs == rhs:
        return _ok(n)
    size = max(len(lhs.coeffs), len(rhs.coeffs))
    k = next(i for i in range(size) if lhs[i] != rhs[i])
    return RowStatus(
        n=n,
        holds=False,
        witness=Witness(n=n, k=k, lhs=str(lhs[k]), rhs=str(rhs[k]), detail=detail),
    )


def _compare_values(n: int, lhs, rhs, detail: Optional[str] = None, x: Optional[Fraction] = None) -> RowStatus:
    if lhs == rhs:
        return _ok(n)
    return RowStatus(
        n=n,
        holds=False,
        witness=Witness(
            n=n,
            x=format_rational(x) if x is not None else None,
            lhs=format_rational(lhs) if isinstance(lhs, Fraction) else str(lhs),
            rhs=format_rational(rhs) if isinstance(rhs, Fraction) else str(rhs),
            detail=detail,
        ),
    )


def _first_failure(rows: Sequence[RowStatus], n: int) -> RowStatus:
    for row in rows:
        if not row.holds:
            return row
    return _ok(n)


def _report(identity: str, n_min: int, n_max: int, rows: List[RowStatus]) -> IdentityReport:
    report = IdentityReport(identity=identity, n_min=n_min, n_max=n_max, rows=rows)
    if report.holds:
        logger.info(f"{identity}: holds for n = {n_min}..{n_max}")
    else:
        failing = [row.n for row in report.failures()]
        logger.warning(f"{identity}: fails at n = {failing}")
    return report


def _check_n(N: int, minimum: int = 0) -> None:
    if N < minimum:
        raise UsageError(f"n-max must be at least {minimum}, got {N}")


def sample_points(count: int, xs: Optional[Sequence[Fraction]] = None) -> List[Fraction]:
    """
    Distinct sample points, at least ``count`` of them.

    Starts from ``xs`` (default 1..8) and appends the next unused positive
    integers. x = -1 is rejected since the Foata substitution has a pole there.
    """
    points: List[Fraction] = []
    for x in xs if xs is not None else DEFAULT_SAMPLE_POINTS:
        x = Fraction(x)
        if x == -1:
            raise UsageError("sample point x = -1 is not allowed")
        if x not in points:
            points.append(x)
    candidate = 1
    while len(points) < count:
        if Fraction(candidate) not in points:
            points.append(Fraction(candidate))
        candidate += 1
    return points


# ---------------------------------------------------------------------------
# Enumeration-free identities
# ---------------------------------------------------------------------------

def check_dnk(N: int) -> IdentityReport:
    """D(n,k) - T(n,k) = (-1)^k C(n-k+1, k)."""
    _check_n(N)
    dt = table_DT(N)
    rows = [
        _compare_polys(n, dt["D"][n] - dt["T"][n], alternating_binomial_row(n), "D_n - T_n")
        for n in range(N + 1)
    ]
    return _report("dnk", 0, N, rows)


def check_thm02_chain(N: int) -> IdentityReport:
    """
    D_n - T_n = D+_{n+1} - T+_{n+1} = (T-_{n+2} - D-_{n+2}) / x
              = x^((n+1)/2) U_{n+1}(1/(2 sqrt x)) = sum (-1)^k C(n-k+1, k) x^k
    """
    _check_n(N)
    dt = table_DT(N + 2)
    rows = []
    for n in range(N + 1):
        base = dt["D"][n] - dt["T"][n]
        shifted = dt["T-"][n + 2] - dt["D-"][n + 2]
        if shifted[0] != 0:
            rows.append(_compare_values(n, shifted[0], 0, "constant term of T-_{n+2} - D-_{n+2}"))
            continue
        legs = [
            ("D+_{n+1} - T+_{n+1}", dt["D+"][n + 1] - dt["T+"][n + 1]),
            ("(T-_{n+2} - D-_{n+2}) / x", shifted.divide_by_x()),
            ("Chebyshev U_{n+1} form", chebyshev_chain_rhs(n)),
            ("alternating binomial sum", alternating_binomial_row(n)),
        ]
        rows.append(_first_failure(
            [_compare_polys(n, base, leg, f"D_n - T_n vs {name}") for name, leg in legs], n
        ))
    return _report("thm02", 0, N, rows)


def check_corollary_split(N: int) -> IdentityReport:
    """D(n,k) = R(n,k)/2 + (-1)^k C(n-k+1,k)/2 and T(n,k) = R(n,k)/2 - (same)."""
    _check_n(N)
    r = table_R(N)[2]
    dt = table_DT(N)
    rows = []
    for n in range(N + 1):
        checks = []
        for k in range(n + 2):
            half_r = Fraction(r[n][k], 2)
            half_b = Fraction((-1) ** k * binomial(n - k + 1, k), 2)
            for tag, rhs in (("D", half_r + half_b), ("T", half_r - half_b)):
                lhs = Fraction(dt[tag][n][k])
                if lhs != rhs:
                    checks.append(RowStatus(
                        n=n,
                        holds=False,
                        witness=Witness(n=n, k=k, lhs=format_rational(lhs), rhs=format_rational(rhs), detail=f"{tag}(n,k)"),
                    ))
        rows.append(_first_failure(checks, n))
    return _report("split", 0, N, rows)


def check_fibonacci_corollary(N: int) -> IdentityReport:
    """D_n(-1) - T_n(-1) = F_{n+2}."""
    _check_n(N)
    dt = table_DT(N)
    rows = [
        _compare_values(n, dt["D"][n].evaluate(-1) - dt["T"][n].evaluate(-1), fibonacci(n + 2), "d_n - t_n")
        for n in range(N + 1)
    ]
    return _report("fib", 0, N, rows)


def check_degrees(N: int) -> IdentityReport:
    """deg R+_n = floor(n/2) and deg R-_n = deg R_n = ceil(n/2), for n >= 1."""
    _check_n(N, 1)
    r_plus, r_minus, r_total = table_R(N)
    rows = []
    for n in range(1, N + 1):
        expected = ((r_plus, n // 2, "deg R+_n"), (r_minus, (n + 1) // 2, "deg R-_n"), (r_total, (n + 1) // 2, "deg R_n"))
        rows.append(_first_failure(
            [_compare_values(n, tri[n].degree, want, name) for tri, want, name in expected], n
        ))
    return _report("degrees", 1, N, rows)


def check_prop_R(N: int) -> IdentityReport:
    """Coefficient recurrences and polynomial-operator recurrences give the same R tables."""
    _check_n(N)
    coefficientwise = table_R(N)
    operator = table_R_prop(N)
    rows = [
        _first_failure(
            [_compare_polys(n, a[n], b[n], a.tag) for a, b in zip(coefficientwise, operator)], n
        )
        for n in range(N + 1)
    ]
    return _report("prop-R", 0, N, rows)


def check_prop_DT(N: int) -> IdentityReport:
    """Same consistency for the six D/T tables."""
    _check_n(N)
    coefficientwise = table_DT(N)
    operator = table_DT_prop(N)
    rows = [
        _first_failure(
            [_compare_polys(n, coefficientwise[tag][n], operator[tag][n], tag) for tag in coefficientwise], n
        )
        for n in range(N + 1)
    ]
    return _report("prop-DT", 0, N, rows)


def check_chebyshev(N: int) -> IdentityReport:
    """Recurrence and explicit-sum Chebyshev polynomials agree."""
    _check_n(N)
    rows = [_compare_polys(n, chebyshev_U(n), chebyshev_U_explicit(n), "U_n") for n in range(N + 1)]
    return _report("chebyshev", 0, N, rows)


# ---------------------------------------------------------------------------
# Sample-point identities
# ---------------------------------------------------------------------------

def check_foata(N: int, xs: Optional[Sequence[Fraction]] = None, method: str = "recurrence") -> IdentityReport:
    """
    S_n(2x/(1+x)^2) = A_{n+1}(x) / (1+x)^n at sample points.

    Both sides are multiplied by (1+x)^n, which turns the left side into
    sum_k s_k (2x)^k (1+x)^(n-2k), a polynomial of degree <= n since
    deg S_n <= n/2. Agreement at n+1 distinct points certifies the row.
    """
    _check_n(N)
    s_table = table_S(N)
    a_table = eulerian_A(N + 1, method)
    rows = []
    for n in range(N + 1):
        checks = []
        for x in sample_points(n + 1, xs):
            lhs = s_table[n].evaluate(2 * x / (1 + x) ** 2) * (1 + x) ** n
            rhs = Fraction(a_table[n + 1].evaluate(x))
            checks.append(_compare_values(n, lhs, rhs, "S_n(2x/(1+x)^2) (1+x)^n vs A_{n+1}(x)", x))
        rows.append(_first_failure(checks, n))
    return _report("foata", 0, N, rows)


def check_convolution_W(N: int, xs: Optional[Sequence[Fraction]] = None, jobs: Optional[int] = None) -> IdentityReport:
    """S_n(x) = 2^-n sum_k C(n,k) W_k(2x) W_{n-k}(2x) at n+1 or more sample points."""
    _check_n(N)
    s_table = table_S(N)
    w_table = leftpeak_W(N, jobs)
    rows = []
    for n in range(N + 1):
        checks = []
        for x in sample_points(n + 1, xs):
            w = [w_table[k].evaluate(2 * x) for k in range(n + 1)]
            rhs = Fraction(sum(binomial(n, k) * w[k] * w[n - k] for k in range(n + 1)), 2 ** n)
            checks.append(_compare_values(n, Fraction(s_table[n].evaluate(x)), rhs, "S_n(x) vs left-peak convolution", x))
        rows.append(_first_failure(checks, n))
    return _report("convolution", 0, N, rows)


# ---------------------------------------------------------------------------
# Enumeration-backed identities
# ---------------------------------------------------------------------------

def check_enk(N: int, jobs: Optional[int] = None) -> IdentityReport:
    """E(n,k) - E~(n,k) = (-1)^k C(n,k), with both sides of the left counted over D_n and B_n \\ D_n."""
    _check_n(N)
    check_feasible("B", N)
    rows = []
    for n in range(N + 1):
        polys = brute_polynomials([Family.EULERIAN_D, Family.EULERIAN_T], n, jobs)
        expected = DescentPolynomial(tuple((-1) ** k * binomial(n, k) for k in range(n + 1)))
        rows.append(_compare_polys(n, polys[Family.EULERIAN_D] - polys[Family.EULERIAN_T], expected, "E_n - E~_n"))
    return _report("enk", 0, N, rows)


def check_euler_numbers(N: int, jobs: Optional[int] = None) -> IdentityReport:
    """|RS_n| = E_{n+1} against alternating permutations, and S_n(1) = E_{n+1}."""
    _check_n(N)
    check_feasible("A", N + 1)
    s_table = table_S(N)
    rows = []
    for n in range(N + 1):
        euler = count_alternating(n + 1)
        rows.append(_first_failure([
            _compare_values(n, brute_count(Family.RS, n, jobs), euler, "|RS_n| vs E_{n+1}"),
            _compare_values(n, s_table[n].evaluate(1), euler, "S_n(1) vs E_{n+1}"),
        ], n))
    return _report("euler", 0, N, rows)


PARTITION_SUMS: Tuple[Tuple[Family, Tuple[Family, Family]], ...] = (
    (Family.RB, (Family.RB_POS, Family.RB_NEG)),
    (Family.RB, (Family.RD, Family.RT)),
    (Family.RB_POS, (Family.RD_POS, Family.RT_POS)),
    (Family.RB_NEG, (Family.RD_NEG, Family.RT_NEG)),
    (Family.EULERIAN_B, (Family.EULERIAN_D, Family.EULERIAN_T)),
)


def check_partition(N: int, jobs: Optional[int] = None, strategy: str = "search") -> IdentityReport:
    """Brute-force class polynomials add up along every ± and D/T split."""
    _check_n(N)
    check_feasible("B", N)
    families = list(SIGNED_SIMSUN_FAMILIES) + [Family.EULERIAN_B, Family.EULERIAN_D, Family.EULERIAN_T]
    rows = []
    for n in range(N + 1):
        polys = brute_polynomials(families, n, jobs, strategy)
        checks = [
            _compare_polys(n, polys[whole], polys[a] + polys[b], f"{whole.value} = {a.value} + {b.value}")
            for whole, (a, b) in PARTITION_SUMS
        ]
        checks.append(_compare_values(
            n, polys[Family.EULERIAN_B].evaluate(1), 2 ** n * factorial(n), "|B_n| = 2^n n!"
        ))
        rows.append(_first_failure(checks, n))
    return _report("partition", 0, N, rows)


def check_oracle(group: str, N: int, jobs: Optional[int] = None, strategy: str = "search") -> IdentityReport:
    """
    Brute-force triangles equal the recurrence triangles.

    Args:
        group: "R" (R+, R-, R), "DT" (the six D/T classes) or "S"
        N: Last row
        jobs: Workers for enumeration
        strategy: Signed simsun generation strategy

    Returns:
        IdentityReport: identity name ``oracle-<group>``
    """
    if group not in ORACLE_GROUPS:
        raise UsageError(f"unknown oracle group {group!r}; expected one of {ORACLE_GROUPS}")
    _check_n(N)
    families = ORACLE_FAMILIES[group]
    check_feasible("A" if group == "S" else "B", N)
    if group == "R":
        tables = dict(zip(("R+", "R-", "R"), table_R(N)))
    elif group == "DT":
        tables = table_DT(N)
    else:
        tables = {"S": table_S(N)}

    rows = []
    for n in range(N + 1):
        polys = brute_polynomials(list(families.values()), n, jobs, strategy)
        rows.append(_first_failure(
            [
                _compare_polys(n, polys[family], tables[tag][n], f"{tag}: brute {format_polynomial(polys[family])}")
                for tag, family in families.items()
            ],
            n,
        ))
    return _report(f"oracle-{group}", 0, N, rows)


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

IDENTITIES: Dict[str, Callable[..., IdentityReport]] = {
    "dnk": lambda N, **_: check_dnk(N),
    "thm02": lambda N, **_: check_thm02_chain(N),
    "split": lambda N, **_: check_corollary_split(N),
    "fib": lambda N, **_: check_fibonacci_corollary(N),
    "enk": lambda N, jobs=None, **_: check_enk(N, jobs),
    "foata": lambda N, xs=None, **_: check_foata(N, xs),
    "convolution": lambda N, xs=None, jobs=None, **_: check_convolution_W(N, xs, jobs),
    "degrees": lambda N, **_: check_degrees(N),
    "oracle-R": lambda N, jobs=None, strategy="search", **_: check_oracle("R", N, jobs, strategy),
    "oracle-DT": lambda N, jobs=None, strategy="search", **_: check_oracle("DT", N, jobs, strategy),
    "oracle-S": lambda N, jobs=None, **_: check_oracle("S", N, jobs),
    "prop-R": lambda N, **_: check_prop_R(N),
    "prop-DT": lambda N, **_: check_prop_DT(N),
    "chebyshev": lambda N, **_: check_chebyshev(N),
    "euler": lambda N, jobs=None, **_: check_euler_numbers(N, jobs),
    "partition": lambda N, jobs=None, strategy="search", **_: check_partition(N, jobs, strategy),
}


def run_identity(
    name: str,
    n_max: int,
    xs: Optional[Sequence[Fraction]] = None,
    jobs: Optional[int] = None,
    strategy: str = "search",
) -> IdentityReport:
    """Run a registered identity check by its selector name."""
    if name not in IDENTITIES:
        raise UsageError(f"unknown identity {name!r}; expected one of: {', '.join(IDENTITIES)}")
    return IDENTITIES[name](n_max, xs=xs, jobs=jobs, strategy=strategy)
