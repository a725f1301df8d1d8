"""Truncated power series with multiprecision coefficients."""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, List, Optional, Sequence, Tuple

import mpmath
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from app.config import settings
from app.core.exceptions import BranchError, SeriesDomainError, UsageError
from app.services.triangles import table_R, table_S
from app.utils.helpers import format_rational

MIN_DIGITS = 30
ARITH_OPS = ("add", "sub", "mul", "div")
ELEMENTARY = ("sin", "cos", "tan", "exp", "log", "arctan", "sqrt")
TARGETS = ("R", "Rprime1", "RS")


@lru_cache(maxsize=None)
def _context(digits: int) -> mpmath.MPContext:
    ctx = mpmath.MPContext()
    ctx.dps = digits
    return ctx


def _to_mpf(ctx: mpmath.MPContext, value: Any):
    if isinstance(value, Fraction):
        return ctx.mpf(value.numerator) / value.denominator
    return ctx.mpf(value)


def _tiny(ctx: mpmath.MPContext, digits: int):
    return ctx.mpf(10) ** (-(digits // 2))


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """
    Taylor polynomial c_0 + c_1 t + ... + c_K t^K.

    Args:
        coeffs: Coefficients c_0..c_K (ints, Fractions, floats or mpf)
        digits: Working precision in decimal digits (at least 30)
    """

    coeffs: Tuple[Any, ...]
    digits: int = field(default_factory=lambda: settings.SERIES_DIGITS)

    def __post_init__(self):
        if self.digits < MIN_DIGITS:
            raise UsageError(f"precision must be at least {MIN_DIGITS} digits, got {self.digits}")
        if len(self.coeffs) == 0:
            raise UsageError("a truncated series needs at least the constant term")
        ctx = _context(self.digits)
        object.__setattr__(self, "coeffs", tuple(_to_mpf(ctx, c) for c in self.coeffs))

    @classmethod
    def constant(cls, value: Any, order: int, digits: Optional[int] = None) -> "TruncatedSeries":
        digits = digits or settings.SERIES_DIGITS
        return cls((value,) + (0,) * order, digits)

    @classmethod
    def variable(cls, order: int, digits: Optional[int] = None, center: Any = 0) -> "TruncatedSeries":
        """The series center + t, truncated at ``order``."""
        digits = digits or settings.SERIES_DIGITS
        coeffs = [center, 1] + [0] * (order - 1)
        return cls(tuple(coeffs[: order + 1]), digits)

    @property
    def ctx(self) -> mpmath.MPContext:
        return _context(self.digits)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def _coerce(self, other: Any) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries.constant(other, self.order, self.digits)

    def __add__(self, other):
        return ts_arith(self, self._coerce(other), "add")

    def __radd__(self, other):
        return ts_arith(self._coerce(other), self, "add")

    def __sub__(self, other):
        return ts_arith(self, self._coerce(other), "sub")

    def __rsub__(self, other):
        return ts_arith(self._coerce(other), self, "sub")

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = _to_mpf(self.ctx, other)
            return TruncatedSeries(tuple(c * a for a in self.coeffs), self.digits)
        return ts_arith(self, other, "mul")

    __rmul__ = __mul__

    def __truediv__(self, other):
        return ts_arith(self, self._coerce(other), "div")

    def __rtruediv__(self, other):
        return ts_arith(self._coerce(other), self, "div")

    def __neg__(self):
        return TruncatedSeries(tuple(-a for a in self.coeffs), self.digits)

    def __pow__(self, e):
        if isinstance(e, int) and e >= 0:
            out = TruncatedSeries.constant(1, self.order, self.digits)
            for _ in range(e):
                out = out * self
            return out
        if isinstance(e, int):
            return 1 / self ** -e
        return ts_pow_real(self, e)

    def deriv(self) -> "TruncatedSeries":
        """d/dt; the result has order K-1 (order 0 stays a zero constant)."""
        if self.order == 0:
            return TruncatedSeries((0,), self.digits)
        return TruncatedSeries(tuple(n * c for n, c in enumerate(self.coeffs) if n > 0), self.digits)

    def integ(self, constant: Any = 0) -> "TruncatedSeries":
        """Antiderivative with the given constant term; the order grows by one."""
        return TruncatedSeries(
            (constant,) + tuple(c / (n + 1) for n, c in enumerate(self.coeffs)), self.digits
        )

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs[: order + 1], self.digits)

    def egf_values(self) -> List[Any]:
        """n! c_n for n = 0..K, the sequence this series generates exponentially."""
        return [self.ctx.factorial(n) * c for n, c in enumerate(self.coeffs)]

    def __repr__(self) -> str:
        shown = ", ".join(self.ctx.nstr(c, 8) for c in self.coeffs)
        return f"TruncatedSeries(order={self.order}, digits={self.digits}, [{shown}])"


# ---------------------------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------------------------

def ts_arith(a: TruncatedSeries, b: TruncatedSeries, op: str) -> TruncatedSeries:
    """
    Truncated Cauchy arithmetic on two series of equal order and precision.

    Args:
        a: Left operand
        b: Right operand
        op: One of "add", "sub", "mul", "div"

    Returns:
        TruncatedSeries: a op b, truncated at the common order
    """
    if op not in ARITH_OPS:
        raise UsageError(f"unknown series operation {op!r}")
    if a.order != b.order or a.digits != b.digits:
        raise UsageError(
            f"series operands differ: order {a.order} vs {b.order}, digits {a.digits} vs {b.digits}"
        )
    K = a.order
    x, y = a.coeffs, b.coeffs

    if op == "add":
        out = [x[n] + y[n] for n in range(K + 1)]
    elif op == "sub":
        out = [x[n] - y[n] for n in range(K + 1)]
    elif op == "mul":
        out = [sum((x[i] * y[n - i] for i in range(n + 1)), a.ctx.mpf(0)) for n in range(K + 1)]
    else:
        if abs(y[0]) <= _tiny(a.ctx, a.digits):
            raise SeriesDomainError(f"division by a series with constant term {a.ctx.nstr(y[0], 5)}")
        out = []
        for n in range(K + 1):
            acc = x[n]
            for i in range(n):
                acc -= out[i] * y[n - i]
            out.append(acc / y[0])
    return TruncatedSeries(tuple(out), a.digits)


def _compose(s: TruncatedSeries, taylor: Sequence[Any]) -> TruncatedSeries:
    # sum over j of taylor[j] * (s - c_0)^j, by Horner's rule
    h = s - s[0]
    out = TruncatedSeries.constant(taylor[s.order], s.order, s.digits)
    for j in range(s.order - 1, -1, -1):
        out = h * out + taylor[j]
    return out


def ts_elementary(f: str, s: TruncatedSeries) -> TruncatedSeries:
    """
    Compose an elementary function with a series, about its constant term.

    Args:
        f: One of "sin", "cos", "tan", "exp", "log", "arctan", "sqrt"
        s: Argument series

    Returns:
        TruncatedSeries: f(s) to the order of s
    """
    ctx, K, c0 = s.ctx, s.order, s[0]
    tiny = _tiny(ctx, s.digits)

    if f in ("sin", "cos"):
        sc, cc = ctx.sin(c0), ctx.cos(c0)
        cycle = [sc, cc, -sc, -cc] if f == "sin" else [cc, -sc, -cc, sc]
        return _compose(s, [cycle[j % 4] / ctx.factorial(j) for j in range(K + 1)])
    if f == "tan":
        if abs(ctx.cos(c0)) <= tiny:
            raise SeriesDomainError(f"tan is singular at constant term {ctx.nstr(c0, 10)}")
        return ts_elementary("sin", s) / ts_elementary("cos", s)
    if f == "exp":
        return ctx.exp(c0) * _compose(s, [1 / ctx.factorial(j) for j in range(K + 1)])
    if f == "log":
        if c0 <= 0:
            raise SeriesDomainError(f"log needs a positive constant term, got {ctx.nstr(c0, 10)}")
        # log(c0 + h) = log c0 - sum (-h/c0)^j / j
        taylor = [ctx.log(c0)] + [-((-1 / c0) ** j) / j for j in range(1, K + 1)]
        return _compose(s, taylor)
    if f == "arctan":
        if K == 0:
            return TruncatedSeries((ctx.atan(c0),), s.digits)
        # derivative 1/(1+(c0+h)^2) as a series in h, integrated term by term
        h = TruncatedSeries.variable(K - 1, s.digits, center=c0)
        slope = 1 / (1 + h * h)
        taylor = [ctx.atan(c0)] + [slope[j - 1] / j for j in range(1, K + 1)]
        return _compose(s, taylor)
    if f == "sqrt":
        if c0 <= 0:
            raise SeriesDomainError(f"sqrt needs a positive constant term, got {ctx.nstr(c0, 10)}")
        return ts_pow_real(s, Fraction(1, 2))
    raise UsageError(f"unknown elementary function {f!r}; expected one of {ELEMENTARY}")


def ts_pow_real(s: TruncatedSeries, e: Any) -> TruncatedSeries:
    """s^e = exp(e log s) for a real exponent and a positive constant term."""
    if s[0] <= 0:
        raise SeriesDomainError(f"real power needs a positive constant term, got {s.ctx.nstr(s[0], 10)}")
    exponent = _to_mpf(s.ctx, e)
    if exponent == 0:
        return TruncatedSeries.constant(1, s.order, s.digits)
    return ts_elementary("exp", ts_elementary("log", s) * exponent)


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosedFormParams:
    """The fixed parameter x > 1/2 and its radicals at a working precision."""

    x: Fraction
    digits: int

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        if self.x <= Fraction(1, 2):
            raise SeriesDomainError(f"x must exceed 1/2 for real radicals, got {format_rational(self.x)}")

    @cached_property
    def ctx(self) -> mpmath.MPContext:
        return _context(self.digits)

    @cached_property
    def xv(self):
        return _to_mpf(self.ctx, self.x)

    @cached_property
    def a(self):
        """sqrt(2x - 1)"""
        return self.ctx.sqrt(2 * self.xv - 1)

    @cached_property
    def b(self):
        """sqrt(2x)"""
        return self.ctx.sqrt(2 * self.xv)

    @cached_property
    def theta(self):
        """arctan(sqrt(2x - 1))"""
        return self.ctx.atan(self.a)

    @cached_property
    def p(self):
        if abs(self.b - 1) <= _tiny(self.ctx, self.digits):
            raise SeriesDomainError("p(x) is infinite at sqrt(2x) = 1")
        return self.ctx.power((self.b + 1) / (self.b - 1), self.ctx.sqrt(2) / 4)


def _check_order(K: int, digits: int) -> None:
    if K < 0 or K > settings.SERIES_MAX_ORDER:
        raise UsageError(f"order must be in 0..{settings.SERIES_MAX_ORDER}, got {K}")
    if digits < MIN_DIGITS:
        raise UsageError(f"precision must be at least {MIN_DIGITS} digits, got {digits}")


def _F(u: TruncatedSeries, e) -> TruncatedSeries:
    # -1/(sqrt2 sin u) * (-sin u / (1 + cos u))^e
    sin_u = ts_elementary("sin", u)
    cos_u = ts_elementary("cos", u)
    if sin_u[0] >= 0:
        raise BranchError(f"sin u has constant term {u.ctx.nstr(sin_u[0], 10)}; expected a negative value")
    g = -sin_u / (1 + cos_u)
    if g[0] <= 0:
        raise BranchError(f"-sin u / (1 + cos u) has constant term {u.ctx.nstr(g[0], 10)}; expected a positive value")
    return -1 / (u.ctx.sqrt(2) * sin_u) * ts_pow_real(g, e)


def expand_R(x: Fraction, K: int, digits: Optional[int] = None) -> Tuple[TruncatedSeries, TruncatedSeries, TruncatedSeries]:
    """
    Taylor coefficients in t of the closed forms of R+(x;t), R-(x;t), R(x;t).

    With u = t sqrt(2x-1) - arctan sqrt(2x-1), p = ((sqrt(2x)+1)/(sqrt(2x)-1))^(sqrt2/4),
    and F_1, F_2 the exponent -1/sqrt2 and +1/sqrt2 variants of F:

        R+ = sqrt(2x-1) / (2 sqrt(x) p) * (p^2 F_2(u) + F_1(u))
        R- = -sqrt(2x-1) / (2 p)        * (p^2 F_2(u) - F_1(u))

    Args:
        x: Rational parameter, x > 1/2
        K: Truncation order
        digits: Working precision

    Returns:
        tuple: (R+, R-, R) series in t
    """
    digits = digits or settings.SERIES_DIGITS
    _check_order(K, digits)
    params = ClosedFormParams(Fraction(x), digits)
    ctx = params.ctx

    t = TruncatedSeries.variable(K, digits)
    u = t * params.a - params.theta
    inv_root2 = 1 / ctx.sqrt(2)
    f1 = _F(u, -inv_root2)
    f2 = _F(u, inv_root2)
    p = params.p

    plus = (params.a / (2 * ctx.sqrt(params.xv) * p)) * (p * p * f2 + f1)
    minus = (-params.a / (2 * p)) * (p * p * f2 - f1)
    logger.debug(f"expanded R(x;t) at x={format_rational(params.x)} to order {K}")
    return plus, minus, plus + minus


def expand_Rprime_at_1(K: int, digits: Optional[int] = None) -> TruncatedSeries:
    """
    d/dx R(x;t) at x = 1, from its two-term closed form with a = sqrt2:

        ((a-1)/(a+1))^(a/4) ((3+4t)cos t + (4t-7) sin t + 4t - 2) / (4(1 - sin 2t)) Q^(-a/2)
      + ((a+1)/(a-1))^(a/4) (sin t - cos t) / (4(1 - sin 2t)) Q^(a/2)

    where Q = (cos t - sin t) / (a + sin t + cos t).
    """
    digits = digits or settings.SERIES_DIGITS
    _check_order(K, digits)
    ctx = _context(digits)
    alpha = ctx.sqrt(2)

    t = TruncatedSeries.variable(K, digits)
    sin_t, cos_t = ts_elementary("sin", t), ts_elementary("cos", t)
    denom = 4 * (1 - ts_elementary("sin", 2 * t))
    if denom[0] <= _tiny(ctx, digits):
        raise SeriesDomainError("1 - sin 2t vanishes at t = 0")
    q = (cos_t - sin_t) / (alpha + sin_t + cos_t)

    first = (
        ctx.power((alpha - 1) / (alpha + 1), alpha / 4)
        * ((3 + 4 * t) * cos_t + (4 * t - 7) * sin_t + 4 * t - 2)
        / denom
        * ts_pow_real(q, -alpha / 2)
    )
    second = (
        ctx.power((alpha + 1) / (alpha - 1), alpha / 4)
        * (sin_t - cos_t)
        / denom
        * ts_pow_real(q, alpha / 2)
    )
    return first + second


def expand_RS(x: Fraction, K: int, digits: Optional[int] = None) -> TruncatedSeries:
    """
    Exponential generating function of the type-A simsun polynomials in z:

        (sqrt(2x-1) sec(w) / (sqrt(2x-1) - tan(w)))^2,  w = (z/2) sqrt(2x-1)
    """
    digits = digits or settings.SERIES_DIGITS
    _check_order(K, digits)
    params = ClosedFormParams(Fraction(x), digits)

    z = TruncatedSeries.variable(K, digits)
    w = z * (params.a / 2)
    ratio = params.a / ts_elementary("cos", w) / (params.a - ts_elementary("tan", w))
    return ratio * ratio


# ---------------------------------------------------------------------------
# Matching against exact tables
# ---------------------------------------------------------------------------

def exact_targets(target: str, x: Fraction, K: int) -> List[Fraction]:
    """
    Exact values n! c_n should reproduce, n = 0..K.

    R: R_n(x); Rprime1: s_n = sum_k k R(n,k) (x is ignored); RS: S_n(x).
    """
    x = Fraction(x)
    if target == "R":
        rows = table_R(K)[2]
        return [Fraction(rows[n].evaluate(x)) for n in range(K + 1)]
    if target == "Rprime1":
        rows = table_R(K)[2]
        return [Fraction(rows[n].derivative().evaluate(1)) for n in range(K + 1)]
    if target == "RS":
        rows = table_S(K)
        return [Fraction(rows[n].evaluate(x)) for n in range(K + 1)]
    raise UsageError(f"unknown series target {target!r}; expected one of {TARGETS}")


class CoefficientMatch(BaseModel):
    n: int
    exact: str
    numeric: str
    rel_err: str
    ok: bool


class MatchReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    x: Optional[str] = None
    order: int
    digits: int
    coefficients: List[CoefficientMatch]
    max_error: str
    passed: bool = Field(alias="pass")

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


def series_match(
    s: TruncatedSeries,
    exact: Sequence[Fraction],
    rel_tol: Optional[float] = None,
    x: Optional[Fraction] = None,
) -> MatchReport:
    """
    Compare n! c_n with exact values.

    Nonzero exact values use relative error against ``rel_tol``; a zero
    exact value uses absolute error against 10^(-digits/2).

    Args:
        s: Expanded series
        exact: Exact values for n = 0..len(exact)-1
        rel_tol: Relative tolerance (default SERIES_REL_TOL)
        x: Parameter recorded in the report

    Returns:
        MatchReport: per-coefficient errors and the overall verdict
    """
    if len(exact) > s.order + 1:
        raise UsageError(f"{len(exact)} exact values for a series of order {s.order}")
    rel_tol = settings.SERIES_REL_TOL if rel_tol is None else rel_tol
    ctx = s.ctx
    tol = _to_mpf(ctx, rel_tol)
    abs_tol = _tiny(ctx, s.digits)
    numeric = s.egf_values()

    matches = []
    worst = ctx.mpf(0)
    for n, value in enumerate(exact):
        value = Fraction(value)
        target = _to_mpf(ctx, value)
        if value == 0:
            err = abs(numeric[n])
            ok = err <= abs_tol
        else:
            err = abs(numeric[n] - target) / abs(target)
            ok = err <= tol
        worst = max(worst, err)
        matches.append(CoefficientMatch(
            n=n,
            exact=str(value.numerator) if value.denominator == 1 else format_rational(value),
            numeric=ctx.nstr(numeric[n], 20),
            rel_err=ctx.nstr(err, 6),
            ok=bool(ok),
        ))

    report = MatchReport(
        x=format_rational(x) if x is not None else None,
        order=s.order,
        digits=s.digits,
        coefficients=matches,
        max_error=ctx.nstr(worst, 6),
        passed=all(m.ok for m in matches),
    )
    failing = [m.n for m in matches if not m.ok]
    if failing:
        logger.warning(f"series mismatch at n = {failing} (max error {report.max_error})")
    return report


def run_series(target: str, x: Fraction, K: int, digits: Optional[int] = None, rel_tol: Optional[float] = None) -> MatchReport:
    """Expand a target closed form and match it against the exact table."""
    digits = digits or settings.SERIES_DIGITS
    x = Fraction(x)
    if target == "R":
        series = expand_R(x, K, digits)[2]
    elif target == "Rprime1":
        x = Fraction(1)
        series = expand_Rprime_at_1(K, digits)
    elif target == "RS":
        series = expand_RS(x, K, digits)
    else:
        raise UsageError(f"unknown series target {target!r}; expected one of {TARGETS}")
    return series_match(series, exact_targets(target, x, K), rel_tol, x)
