import json
import sys
from pathlib import Path
from typing import Iterable, Optional, Sequence

from loguru import logger

from app.core.exceptions import UsageError
from app.core.permcore import format_word
from app.core.polynomial import format_polynomial
from app.services.triangles import Triangle
from app.utils.helpers import format_coefficients

FORMATS = ("json", "csv", "text")


def render_triangle(triangle: Triangle, fmt: str) -> str:
    """
    Serialize a triangle.

    Args:
        triangle: Rows 0..N
        fmt: "csv" (one row per n, no header), "json" ({"class", "rows"}
            with integers as decimal strings) or "text" (polynomials)

    Returns:
        str: Serialized triangle ending with a newline
    """
    if fmt == "csv":
        return "".join(",".join(format_coefficients(row.coeffs)) + "\n" for row in triangle.rows)
    if fmt == "json":
        payload = {
            "class": triangle.tag,
            "rows": [format_coefficients(row.coeffs) for row in triangle.rows],
        }
        return json.dumps(payload) + "\n"
    if fmt == "text":
        return "".join(
            f"{triangle.tag}_{n}(x) = {format_polynomial(row)}\n" for n, row in enumerate(triangle.rows)
        )
    raise UsageError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def render_words(words: Iterable[Sequence[int]], fmt: str, family: str, n: int) -> str:
    """One word per line in comma form; text output ends with a count line."""
    listing = [format_word(w) for w in words]
    if fmt == "text":
        return "".join(line + "\n" for line in listing) + f"count: {len(listing)}\n"
    if fmt == "csv":
        return "".join(line + "\n" for line in listing)
    if fmt == "json":
        return json.dumps({"class": family, "n": n, "words": listing, "count": str(len(listing))}) + "\n"
    raise UsageError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def render_count(count: int, fmt: str, family: str, n: int) -> str:
    if fmt == "json":
        return json.dumps({"class": family, "n": n, "count": str(count)}) + "\n"
    if fmt in ("text", "csv"):
        return f"{count}\n"
    raise UsageError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def write_output(text: str, out: Optional[str] = None) -> None:
    """Write to ``out`` if given, otherwise to standard output."""
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    logger.info(f"Wrote {len(text)} bytes to {path}")
