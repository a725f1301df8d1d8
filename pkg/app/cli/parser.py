import argparse
from fractions import Fraction
from typing import List, Literal, Optional

from pydantic import BaseModel, field_validator, model_validator

from app.config import settings
from app.core.enumeration import STRATEGIES, Family
from app.services.identities import IDENTITIES
from app.services.reporting import FORMATS
from app.services.series import TARGETS
from app.services.triangles import TABLE_TAGS
from app.utils.helpers import parse_rational, parse_rational_list

SUBCOMMANDS = ("table", "count", "enumerate", "verify", "series")

DEFAULT_FORMATS = {
    "table": "csv",
    "count": "text",
    "enumerate": "text",
    "verify": "json",
    "series": "json",
}

CLASS_NAMES = tuple(f.value for f in Family)


class CommandConfig(BaseModel):
    """One validated invocation of the command-line surface."""

    subcommand: Literal["table", "count", "enumerate", "verify", "series"]
    class_name: Optional[str] = None
    identity: Optional[str] = None
    target: Optional[str] = None
    n: Optional[int] = None
    n_max: Optional[int] = None
    x: str = "1"
    xs: Optional[str] = None
    order: int = 7
    digits: int = settings.SERIES_DIGITS
    rel_tol: Optional[float] = None
    fmt: Optional[str] = None
    out: Optional[str] = None
    jobs: Optional[int] = None
    log_level: Optional[str] = None
    brute: bool = False
    insertion: bool = False
    strategy: str = "search"

    @field_validator("x")
    @classmethod
    def x_is_rational(cls, v):
        parse_rational(v)
        return v

    @field_validator("xs")
    @classmethod
    def xs_are_rational(cls, v):
        if v is not None:
            parse_rational_list(v)
        return v

    @field_validator("n", "n_max")
    @classmethod
    def nonnegative(cls, v):
        if v is not None and v < 0:
            raise ValueError("must be nonnegative")
        return v

    @field_validator("jobs")
    @classmethod
    def positive_jobs(cls, v):
        if v is not None and v < 1:
            raise ValueError("must be at least 1")
        return v

    @model_validator(mode="after")
    def default_format(self):
        if self.fmt is None:
            self.fmt = DEFAULT_FORMATS[self.subcommand]
        return self

    @property
    def x_value(self) -> Fraction:
        return parse_rational(self.x)

    @property
    def sample_xs(self) -> Optional[List[Fraction]]:
        return parse_rational_list(self.xs) if self.xs is not None else None

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "CommandConfig":
        values = {k: v for k, v in vars(ns).items() if v is not None}
        return cls(**values)


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=FORMATS, help="Output format (default depends on the subcommand).")
    common.add_argument("--out", help="Write output to this path instead of standard output.")
    common.add_argument("--jobs", type=int, help="Worker processes for enumeration (default: DEFAULT_JOBS).")
    common.add_argument("--log-level", dest="log_level", help="Log level for messages on standard error.")
    return common


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser.

    Returns:
        argparse.ArgumentParser: Parser with one subparser per subcommand
    """
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="simsun",
        description="Signed simsun permutations: enumeration, recurrence tables, identities and series.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    table = sub.add_parser("table", parents=[common], help="Print a triangle of polynomials.")
    table.add_argument("--class", dest="class_name", required=True, choices=TABLE_TAGS)
    table.add_argument("--n-max", dest="n_max", type=int, required=True)
    table.add_argument("--brute", action="store_true", help="Compute rows by enumeration.")

    count = sub.add_parser("count", parents=[common], help="Count a class by enumeration.")
    count.add_argument("--class", dest="class_name", required=True, choices=CLASS_NAMES)
    count.add_argument("--n", type=int, required=True)
    count.add_argument("--strategy", choices=STRATEGIES)

    enum = sub.add_parser("enumerate", parents=[common], help="List the words of a class.")
    enum.add_argument("--class", dest="class_name", required=True, choices=CLASS_NAMES)
    enum.add_argument("--n", type=int, required=True)
    enum.add_argument("--insertion", action="store_true", help="Generate RB by the insertion rules.")
    enum.add_argument("--strategy", choices=STRATEGIES)

    verify = sub.add_parser("verify", parents=[common], help="Check an identity over a range of n.")
    verify.add_argument("--identity", required=True, choices=tuple(IDENTITIES))
    verify.add_argument("--n-max", dest="n_max", type=int, required=True)
    verify.add_argument("--xs", help="Comma-separated rational sample points (default 1..8).")
    verify.add_argument("--strategy", choices=STRATEGIES)

    series = sub.add_parser("series", parents=[common], help="Expand a closed form and match it.")
    series.add_argument("--target", required=True, choices=TARGETS)
    series.add_argument("--x", help="Rational parameter x > 1/2, as p/q (default 1).")
    series.add_argument("--order", type=int, help="Truncation order K (default 7).")
    series.add_argument("--digits", type=int, help=f"Working precision (default {settings.SERIES_DIGITS}).")
    series.add_argument("--rel-tol", dest="rel_tol", type=float, help="Relative tolerance.")

    return parser


def parse_command(argv: Optional[List[str]] = None) -> CommandConfig:
    """Parse and validate arguments into a CommandConfig."""
    ns = build_parser().parse_args(argv)
    return CommandConfig.from_namespace(ns)
