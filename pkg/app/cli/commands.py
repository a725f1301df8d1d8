from loguru import logger

from app.cli.parser import CommandConfig
from app.core.enumeration import Family, brute_count, check_feasible, class_words, insertion_stream_RB
from app.core.exceptions import UsageError
from app.services.identities import IdentityReport, run_identity
from app.services.reporting import render_count, render_triangle, render_words, write_output
from app.services.series import MatchReport, run_series
from app.services.triangles import build_triangle


def cmd_table(config: CommandConfig) -> int:
    triangle = build_triangle(config.class_name, config.n_max, brute=config.brute, jobs=config.jobs)
    write_output(render_triangle(triangle, config.fmt), config.out)
    return 0


def cmd_count(config: CommandConfig) -> int:
    count = brute_count(config.class_name, config.n, config.jobs, config.strategy)
    write_output(render_count(count, config.fmt, config.class_name, config.n), config.out)
    return 0


def cmd_enumerate(config: CommandConfig) -> int:
    """List words in lexicographic order under -n < ... < -1 < 1 < ... < n."""
    if config.insertion:
        if config.class_name != Family.RB.value:
            raise UsageError("--insertion generates class RB only")
        check_feasible("B", config.n)
        words = sorted(w.entries for w in insertion_stream_RB(config.n))
    else:
        words = sorted(class_words(config.class_name, config.n, config.strategy))
    logger.debug(f"{config.class_name}_{config.n}: {len(words)} words")
    write_output(render_words(words, config.fmt, config.class_name, config.n), config.out)
    return 0


def _render_identity(report: IdentityReport, fmt: str) -> str:
    if fmt == "json":
        return report.model_dump_json(indent=2) + "\n"
    if fmt == "csv":
        lines = ["n,holds,k,x,lhs,rhs"]
        for row in report.rows:
            w = row.witness
            cells = [w.k, w.x, w.lhs, w.rhs] if w else [None] * 4
            lines.append(",".join([str(row.n), str(row.holds).lower()] + ["" if c is None else str(c) for c in cells]))
        return "\n".join(lines) + "\n"
    if not report.holds:
        lines = [f"{report.identity}: FAILS"]
        for row in report.failures():
            w = row.witness
            at = f"k={w.k}" if w.k is not None else f"x={w.x}"
            lines.append(f"  n={row.n} {at}: {w.lhs} != {w.rhs} ({w.detail})")
        return "\n".join(lines) + "\n"
    return f"{report.identity}: holds for n = {report.n_min}..{report.n_max}\n"


def cmd_verify(config: CommandConfig) -> int:
    """Exit 0 iff every checked row holds."""
    report = run_identity(
        config.identity, config.n_max, xs=config.sample_xs, jobs=config.jobs, strategy=config.strategy
    )
    write_output(_render_identity(report, config.fmt), config.out)
    return 0 if report.holds else 1


def _render_match(report: MatchReport, fmt: str) -> str:
    if fmt == "json":
        return report.to_json() + "\n"
    lines = ["n,exact,numeric,rel_err"] if fmt == "csv" else []
    for m in report.coefficients:
        if fmt == "csv":
            lines.append(f"{m.n},{m.exact},{m.numeric},{m.rel_err}")
        else:
            lines.append(f"n={m.n:<3} exact={m.exact:<12} numeric={m.numeric}  err={m.rel_err}{'' if m.ok else '  MISMATCH'}")
    if fmt == "text":
        lines.append(f"{'pass' if report.passed else 'fail'} (max error {report.max_error})")
    return "\n".join(lines) + "\n"


def cmd_series(config: CommandConfig) -> int:
    """Exit 0 iff every coefficient matches."""
    report = run_series(config.target, config.x_value, config.order, config.digits, config.rel_tol)
    write_output(_render_match(report, config.fmt), config.out)
    return 0 if report.passed else 1


COMMANDS = {
    "table": cmd_table,
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "series": cmd_series,
}


def dispatch(config: CommandConfig) -> int:
    return COMMANDS[config.subcommand](config)
