"""Exact recurrence tables for the simsun, Eulerian, left-peak and Chebyshev families."""
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from app.core.enumeration import Family, brute_polynomials, check_feasible, class_spec
from app.core.exceptions import UsageError
from app.core.polynomial import ONE, X, ZERO, DescentPolynomial, x_one_minus_2x_derivative

# tags of class triangles (nonnegative); "U" is the Chebyshev table
CLASS_TAGS = ("R+", "R-", "R", "D+", "D-", "T+", "T-", "D", "T", "S", "A", "W")
TABLE_TAGS = CLASS_TAGS + ("U",)

BRUTE_FAMILIES = {
    "R+": Family.RB_POS,
    "R-": Family.RB_NEG,
    "R": Family.RB,
    "D+": Family.RD_POS,
    "D-": Family.RD_NEG,
    "T+": Family.RT_POS,
    "T-": Family.RT_NEG,
    "D": Family.RD,
    "T": Family.RT,
    "S": Family.RS,
    "A": Family.EULERIAN_A,
    "W": Family.LEFT_PEAK_W,
}

EULERIAN_METHODS = ("recurrence", "brute")


@dataclass(frozen=True)
class Triangle:
    """Rows 0..N of one family."""

    tag: str
    rows: Tuple[DescentPolynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if self.tag in CLASS_TAGS:
            for n, row in enumerate(self.rows):
                if not row.is_nonnegative():
                    raise ValueError(f"{self.tag} row {n} has a negative coefficient: {row.coeffs}")

    @property
    def n_max(self) -> int:
        return len(self.rows) - 1

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, n: int) -> DescentPolynomial:
        return self.rows[n]

    def coefficient(self, n: int, k: int) -> int:
        return self.rows[n][k]


def _check_n(N: int) -> None:
    if N < 0:
        raise UsageError(f"n-max must be nonnegative, got {N}")


def _label(tag: str, rows: Sequence[Sequence[int]]) -> Triangle:
    return Triangle(tag, tuple(DescentPolynomial(tuple(r), tag, n) for n, r in enumerate(rows)))


def _get(row: Sequence[int], k: int) -> int:
    return row[k] if 0 <= k < len(row) else 0


# ---------------------------------------------------------------------------
# Signed simsun triangles
# ---------------------------------------------------------------------------

@lru_cache(maxsize=16)
def table_R(N: int) -> Tuple[Triangle, Triangle, Triangle]:
    """
    R+, R- and R for rows 0..N by the coupled coefficient recurrences.

    Rows 0 and 1 are the initial conditions R+_0 = R_0 = 1, R-_0 = 0,
    R+_1 = 1, R-_1 = x; later rows use, for n >= 2,

        R+(n,k) = 2k R+(n-1,k) + (2n-4k+2) R+(n-1,k-1) + R(n-1,k)
        R-(n,k) = 2k R-(n-1,k) + (2n-4k+3) R-(n-1,k-1) + R(n-1,k-1)
        R(n,k)  = (2k+1) R(n-1,k) + (2n-4k+3) R(n-1,k-1) + R-(n-1,k-1)

    Args:
        N: Last row

    Returns:
        tuple: (R+, R-, R) triangles
    """
    _check_n(N)
    plus: List[List[int]] = [[1], [1]]
    minus: List[List[int]] = [[], [0, 1]]
    total: List[List[int]] = [[1], [1, 1]]

    for n in range(2, N + 1):
        p, m, r = plus[n - 1], minus[n - 1], total[n - 1]
        width = n // 2 + 2
        plus.append([
            2 * k * _get(p, k) + (2 * n - 4 * k + 2) * _get(p, k - 1) + _get(r, k)
            for k in range(width)
        ])
        minus.append([
            2 * k * _get(m, k) + (2 * n - 4 * k + 3) * _get(m, k - 1) + _get(r, k - 1)
            for k in range(width)
        ])
        total.append([
            (2 * k + 1) * _get(r, k) + (2 * n - 4 * k + 3) * _get(r, k - 1) + _get(m, k - 1)
            for k in range(width)
        ])

    logger.debug(f"table_R built through row {N}")
    return (
        _label("R+", plus[: N + 1]),
        _label("R-", minus[: N + 1]),
        _label("R", total[: N + 1]),
    )


def table_R_prop(N: int) -> Tuple[Triangle, Triangle, Triangle]:
    """R+, R- and R through the polynomial-operator recurrences, from row 0."""
    _check_n(N)
    plus, minus, total = [ONE], [ZERO], [ONE]
    for n in range(N):
        p, m, r = plus[-1], minus[-1], total[-1]
        plus.append(X * (2 * n) * p + 2 * x_one_minus_2x_derivative(p) + r)
        minus.append(X * (2 * n + 1) * m + 2 * x_one_minus_2x_derivative(m) + X * r)
        total.append(
            DescentPolynomial((1, 2 * n + 1)) * r + 2 * x_one_minus_2x_derivative(r) + X * m
        )
    return (
        Triangle("R+", tuple(row.labeled("R+", n) for n, row in enumerate(plus))),
        Triangle("R-", tuple(row.labeled("R-", n) for n, row in enumerate(minus))),
        Triangle("R", tuple(row.labeled("R", n) for n, row in enumerate(total))),
    )


@lru_cache(maxsize=16)
def table_DT(N: int) -> Dict[str, Triangle]:
    """
    The six even/odd signed triangles D+, D-, T+, T-, D, T for rows 0..N.

    Rows 0 and 1 are seeded (D+_0 = D_0 = 1, the rest 0; D+_1 = D_1 = 1,
    T-_1 = T_1 = x, D-_1 = T+_1 = 0). For n >= 2 the coefficient
    recurrences read R+ and R- from table_R:

        D+(n,k) = k R+(n-1,k) + (n-2k+1) R+(n-1,k-1) + D(n-1,k)
        D-(n,k) = k R-(n-1,k) + (n-2k+2) R-(n-1,k-1) + T+(n-1,k-1)
        D(n,k)  = (1+k) D(n-1,k) + (n-2k+1) D(n-1,k-1)
                  + k T(n-1,k) + (n-2k+2) T(n-1,k-1) + D-(n-1,k-1)

    and symmetrically for T+, T-, T with D and T exchanged.

    Returns:
        dict: tag -> Triangle
    """
    _check_n(N)
    r_plus, r_minus, _ = table_R(max(N, 1))
    dp: List[List[int]] = [[1], [1]]
    tp: List[List[int]] = [[], []]
    dm: List[List[int]] = [[], []]
    tm: List[List[int]] = [[], [0, 1]]
    d: List[List[int]] = [[1], [1]]
    t: List[List[int]] = [[], [0, 1]]

    for n in range(2, N + 1):
        rp, rm = r_plus[n - 1].coeffs, r_minus[n - 1].coeffs
        width = n // 2 + 2

        def shared_plus(k: int) -> int:
            return k * _get(rp, k) + (n - 2 * k + 1) * _get(rp, k - 1)

        def shared_minus(k: int) -> int:
            return k * _get(rm, k) + (n - 2 * k + 2) * _get(rm, k - 1)

        def full(same: List[int], other: List[int], own_minus: List[int], k: int) -> int:
            return (
                (1 + k) * _get(same, k)
                + (n - 2 * k + 1) * _get(same, k - 1)
                + k * _get(other, k)
                + (n - 2 * k + 2) * _get(other, k - 1)
                + _get(own_minus, k - 1)
            )

        dp.append([shared_plus(k) + _get(d[n - 1], k) for k in range(width)])
        tp.append([shared_plus(k) + _get(t[n - 1], k) for k in range(width)])
        dm.append([shared_minus(k) + _get(tp[n - 1], k - 1) for k in range(width)])
        tm.append([shared_minus(k) + _get(dp[n - 1], k - 1) for k in range(width)])
        d.append([full(d[n - 1], t[n - 1], dm[n - 1], k) for k in range(width)])
        t.append([full(t[n - 1], d[n - 1], tm[n - 1], k) for k in range(width)])

    logger.debug(f"table_DT built through row {N}")
    rows = {"D+": dp, "D-": dm, "T+": tp, "T-": tm, "D": d, "T": t}
    return {tag: _label(tag, r[: N + 1]) for tag, r in rows.items()}


def table_DT_prop(N: int) -> Dict[str, Triangle]:
    """The six D/T triangles through the polynomial-operator recurrences."""
    _check_n(N)
    r_plus, r_minus, r_total = table_R(N)
    rows: Dict[str, List[DescentPolynomial]] = {
        "D+": [ONE], "D-": [ZERO], "T+": [ZERO], "T-": [ZERO], "D": [ONE], "T": [ZERO],
    }
    for n in range(N):
        rp, rm, r = r_plus[n], r_minus[n], r_total[n]
        dp, dm, tp, tm, d, t = (rows[tag][n] for tag in ("D+", "D-", "T+", "T-", "D", "T"))
        plus_part = X * n * rp + x_one_minus_2x_derivative(rp)
        minus_part = X * (n + 1) * rm + x_one_minus_2x_derivative(rm)
        drift = x_one_minus_2x_derivative(r)
        one_nx = DescentPolynomial((1, n))
        rows["D+"].append(plus_part + d)
        rows["T+"].append(plus_part + t)
        rows["D-"].append(minus_part + X * tp)
        rows["T-"].append(minus_part + X * dp)
        rows["D"].append(one_nx * d + X * (n + 1) * t + drift + X * dm)
        rows["T"].append(one_nx * t + X * (n + 1) * d + drift + X * tm)
    return {
        tag: Triangle(tag, tuple(row.labeled(tag, n) for n, row in enumerate(polys)))
        for tag, polys in rows.items()
    }


# ---------------------------------------------------------------------------
# Type-A families
# ---------------------------------------------------------------------------

@lru_cache(maxsize=16)
def table_S(N: int) -> Triangle:
    """Type-A simsun polynomials: S_0 = 1, S_{n+1} = (1+nx) S_n + x(1-2x) S_n'."""
    _check_n(N)
    rows = [ONE]
    for n in range(N):
        s = rows[-1]
        rows.append(DescentPolynomial((1, n)) * s + x_one_minus_2x_derivative(s))
    return Triangle("S", tuple(row.labeled("S", n) for n, row in enumerate(rows)))


def eulerian_A(N: int, method: str = "recurrence", jobs: Optional[int] = None) -> Triangle:
    """
    Classical Eulerian polynomials A_0..A_N.

    Args:
        N: Last row
        method: "recurrence" (A(n,k) = (k+1)A(n-1,k) + (n-k)A(n-1,k-1))
            or "brute" (des_A over every permutation)
        jobs: Workers for the brute-force path

    Returns:
        Triangle: tag "A"
    """
    _check_n(N)
    if method == "brute":
        return triangle_by_brute_force("A", N, jobs)
    if method != "recurrence":
        raise UsageError(f"unknown method {method!r}; expected one of {EULERIAN_METHODS}")

    rows: List[List[int]] = [[1]]
    for n in range(1, N + 1):
        prev = rows[-1]
        rows.append([(k + 1) * _get(prev, k) + (n - k) * _get(prev, k - 1) for k in range(n)])
    return _label("A", rows)


def leftpeak_W(N: int, jobs: Optional[int] = None) -> Triangle:
    """Left-peak polynomials W_0..W_N by brute force over S_n."""
    return triangle_by_brute_force("W", N, jobs)


def triangle_by_brute_force(tag: str, N: int, jobs: Optional[int] = None, strategy: str = "search") -> Triangle:
    """
    Any class triangle computed row by row from enumeration.

    Args:
        tag: One of CLASS_TAGS
        N: Last row
        jobs: Workers for the partition fan-out
        strategy: Signed simsun generation strategy

    Returns:
        Triangle: rows 0..N
    """
    _check_n(N)
    if tag not in BRUTE_FAMILIES:
        raise UsageError(f"no enumeration for {tag!r}; expected one of {', '.join(BRUTE_FAMILIES)}")
    family = BRUTE_FAMILIES[tag]
    check_feasible(class_spec(family).ambient, N)
    rows = tuple(
        brute_polynomials([family], n, jobs, strategy)[family].labeled(tag, n)
        for n in range(N + 1)
    )
    return Triangle(tag, rows)


# ---------------------------------------------------------------------------
# Chebyshev, Fibonacci, binomial
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def chebyshev_U(n: int) -> DescentPolynomial:
    """Chebyshev polynomial of the second kind by U_{n+1} = 2x U_n - U_{n-1}."""
    if n < 0:
        raise UsageError(f"Chebyshev index must be nonnegative, got {n}")
    if n == 0:
        return ONE
    prev, cur = ONE, DescentPolynomial((0, 2))
    for _ in range(1, n):
        prev, cur = cur, (X * 2) * cur - prev
    return cur


def chebyshev_U_explicit(n: int) -> DescentPolynomial:
    """U_n = sum over k <= n/2 of (-1)^k C(n-k, k) (2x)^(n-2k)."""
    if n < 0:
        raise UsageError(f"Chebyshev index must be nonnegative, got {n}")
    coeffs = [0] * (n + 1)
    for k in range(n // 2 + 1):
        coeffs[n - 2 * k] = (-1) ** k * comb(n - k, k) * 2 ** (n - 2 * k)
    return DescentPolynomial(tuple(coeffs))


def chebyshev_chain_rhs(n: int) -> DescentPolynomial:
    """
    x^((n+1)/2) U_{n+1}(1/(2 sqrt x)) as a polynomial in x.

    The term of U_{n+1} of degree d = n+1-2k becomes c_d / 2^d times x^k,
    so the result is read off U_{n+1}'s coefficients without radicals.
    """
    u = chebyshev_U(n + 1)
    coeffs = []
    for k in range((n + 1) // 2 + 1):
        d = n + 1 - 2 * k
        q, r = divmod(u[d], 2 ** d)
        if r:
            raise ArithmeticError(f"U_{n + 1} coefficient {u[d]} at degree {d} is not divisible by 2^{d}")
        coeffs.append(q)
    return DescentPolynomial(tuple(coeffs))


def alternating_binomial_row(n: int) -> DescentPolynomial:
    """sum over k of (-1)^k C(n-k+1, k) x^k."""
    return DescentPolynomial(tuple((-1) ** k * binomial(n - k + 1, k) for k in range(n + 2)))


def fibonacci(n: int) -> int:
    if n < 0:
        raise UsageError(f"Fibonacci index must be nonnegative, got {n}")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def binomial(n: int, k: int) -> int:
    """n choose k, zero when k < 0 or k > n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def build_triangle(tag: str, N: int, brute: bool = False, jobs: Optional[int] = None) -> Triangle:
    """
    Triangle for a table tag, by recurrence unless ``brute`` is set.

    Args:
        tag: One of TABLE_TAGS
        N: Last row
        brute: Compute class rows by enumeration
        jobs: Workers for enumeration

    Returns:
        Triangle: rows 0..N
    """
    _check_n(N)
    if tag not in TABLE_TAGS:
        raise UsageError(f"unknown class {tag!r}; expected one of {', '.join(TABLE_TAGS)}")
    if tag == "U":
        if brute:
            raise UsageError("the Chebyshev table has no enumeration")
        return Triangle("U", tuple(chebyshev_U(n).labeled("U", n) for n in range(N + 1)))
    if brute or tag == "W":
        return triangle_by_brute_force(tag, N, jobs)
    if tag in ("R+", "R-", "R"):
        return dict(zip(("R+", "R-", "R"), table_R(N)))[tag]
    if tag == "S":
        return table_S(N)
    if tag == "A":
        return eulerian_A(N)
    return table_DT(N)[tag]
