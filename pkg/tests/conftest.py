import json

import pytest

from app.config import settings

# Rows n = 1..4 of every signed triangle, as published with the recurrences
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

ROW_ZERO = {"R+": (1,), "R-": (), "R": (1,), "D+": (1,), "D-": (), "T+": (), "T-": (), "D": (1,), "T": ()}

# E_0 .. E_8
EULER_NUMBERS = [1, 1, 1, 2, 5, 16, 61, 272, 1385]

# n! [t^n] R(1; t) and of its x-derivative at x = 1
R_AT_ONE = [1, 2, 7, 33, 198, 1439, 12291, 120622]
S_PRIME_AT_ONE = [0, 1, 6, 41, 318, 2840, 28736, 325991]


@pytest.fixture
def published_rows():
    """Published rows 0..4 of the nine signed triangles."""
    return {tag: [ROW_ZERO[tag]] + rows for tag, rows in PUBLISHED_ROWS.items()}


@pytest.fixture
def cap(monkeypatch):
    """Lower both enumeration caps to a given n."""

    def _set(n):
        monkeypatch.setattr(settings, "SIMSUN_MAX_N", n)

    return _set


@pytest.fixture
def stderr_json():
    """Extract the JSON diagnostic line from captured standard error."""

    def _parse(err: str) -> dict:
        lines = [line for line in err.splitlines() if line.startswith("{")]
        assert lines, f"no JSON diagnostic in: {err!r}"
        return json.loads(lines[-1])

    return _parse
