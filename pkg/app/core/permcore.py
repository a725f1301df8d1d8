"""
Signed and unsigned permutation words and the simsun predicates.

Words are stored without the sentinel π(0)=0; des_B, lpk and
has_double_descent prepend it logically.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence, Set, Tuple, Union

from app.core.exceptions import InvalidWordError, UsageError
from app.utils.helpers import split_int_list

Entries = Tuple[int, ...]


@dataclass(frozen=True)
class SignedWord:
    """A signed permutation of ``±[n]`` in window notation."""

    entries: Entries

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if any(not isinstance(v, int) or v == 0 for v in entries):
            raise InvalidWordError(f"signed word entries must be nonzero integers: {entries}")
        if sorted(abs(v) for v in entries) != list(range(1, len(entries) + 1)):
            raise InvalidWordError(f"absolute values must be exactly 1..{len(entries)}: {entries}")

    @classmethod
    def parse(cls, text: str) -> "SignedWord":
        """Parse the comma text form, e.g. ``1,-3,2,-5,4``; ``""`` is the empty word."""
        try:
            return cls(tuple(split_int_list(text)))
        except UsageError as e:
            raise InvalidWordError(e.detail) from e

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self) -> str:
        return format_word(self.entries)


@dataclass(frozen=True)
class UnsignedWord:
    """A permutation of ``[n]`` in one-line notation."""

    entries: Entries

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if sorted(entries) != list(range(1, len(entries) + 1)):
            raise InvalidWordError(f"not a permutation of 1..{len(entries)}: {entries}")

    @classmethod
    def parse(cls, text: str) -> "UnsignedWord":
        """Parse the comma text form, e.g. ``3,5,1,4,2``."""
        try:
            return cls(tuple(split_int_list(text)))
        except UsageError as e:
            raise InvalidWordError(e.detail) from e

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self) -> str:
        return format_word(self.entries)


Word = Union[SignedWord, UnsignedWord, Sequence[int]]


class ParityClass(str, Enum):
    D = "D"  # even number of negative entries
    T = "T"


class FirstSign(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    EMPTY = "empty"


def _entries(w: Word) -> Sequence[int]:
    if isinstance(w, (SignedWord, UnsignedWord)):
        return w.entries
    return w


def format_word(w: Word) -> str:
    """Comma text form of a word; the empty word is the empty string."""
    return ",".join(str(v) for v in _entries(w))


def parse_signed_word(text: str) -> SignedWord:
    return SignedWord.parse(text)


def parse_unsigned_word(text: str) -> UnsignedWord:
    return UnsignedWord.parse(text)


# ---------------------------------------------------------------------------
# Statistics
# ---------------------------------------------------------------------------

def des_A(w: Word) -> int:
    """Number of i in 1..n-1 with π(i) > π(i+1). No sentinel."""
    e = _entries(w)
    return sum(1 for i in range(len(e) - 1) if e[i] > e[i + 1])


def des_B(w: Word) -> int:
    """Number of i in 0..n-1 with π(i) > π(i+1), where π(0) = 0."""
    e = _entries(w)
    prev = 0
    count = 0
    for v in e:
        if prev > v:
            count += 1
        prev = v
    return count


def lpk(w: Word) -> int:
    """Number of left peaks: i in 1..n-1 with π(i-1) < π(i) > π(i+1), π(0) = 0."""
    e = _entries(w)
    count = 0
    prev = 0
    for i in range(len(e) - 1):
        if prev < e[i] > e[i + 1]:
            count += 1
        prev = e[i]
    return count


def has_double_descent(w: Word) -> bool:
    """True iff some i in 1..n-1 has π(i-1) > π(i) > π(i+1), with π(0) = 0."""
    e = _entries(w)
    a = 0
    for i in range(len(e) - 1):
        b = e[i]
        if a > b > e[i + 1]:
            return True
        a = b
    return False


def _has_double_descent_A(e: Sequence[int]) -> bool:
    # type-A test: interior triples only, no sentinel
    for i in range(len(e) - 2):
        if e[i] > e[i + 1] > e[i + 2]:
            return True
    return False


def descent_tops(w: Word) -> Set[int]:
    """1-based positions i in 1..n-1 with π(i) > π(i+1)."""
    e = _entries(w)
    return {i + 1 for i in range(len(e) - 1) if e[i] > e[i + 1]}


def descent_bottoms(w: Word) -> Set[int]:
    """1-based positions i in 1..n with π(i-1) > π(i); the sentinel counts."""
    e = _entries(w)
    bottoms = set()
    prev = 0
    for i, v in enumerate(e, start=1):
        if prev > v:
            bottoms.add(i)
        prev = v
    return bottoms


def is_alternating(w: Word) -> bool:
    """True iff π(1) > π(2) < π(3) > … (down-up)."""
    e = _entries(w)
    for i in range(len(e) - 1):
        if (e[i] > e[i + 1]) != (i % 2 == 0):
            return False
    return True


# ---------------------------------------------------------------------------
# Restrictions and removals
# ---------------------------------------------------------------------------

def restrict_A(w: Word, k: int) -> UnsignedWord:
    """Subword of entries <= k, order preserved."""
    e = _entries(w)
    if not 0 <= k <= len(e):
        raise UsageError(f"restriction size k={k} outside 0..{len(e)}")
    return UnsignedWord(tuple(v for v in e if v <= k))


def remove_top_signed(w: Word, k: int) -> SignedWord:
    """Remove the k entries ±n, ±(n-1), …, ±(n-k+1), order preserved."""
    e = _entries(w)
    if not 0 <= k <= len(e):
        raise UsageError(f"removal count k={k} outside 0..{len(e)}")
    limit = len(e) - k
    return SignedWord(tuple(v for v in e if abs(v) <= limit))


# ---------------------------------------------------------------------------
# Simsun predicates
# ---------------------------------------------------------------------------

def is_simsun_A(w: Word) -> bool:
    """True iff every restriction to [k], 0 <= k <= n, has no double descent."""
    e = tuple(_entries(w))
    for k in range(len(e), 2, -1):
        if _has_double_descent_A(tuple(v for v in e if v <= k)):
            return False
    return True


def is_simsun_B(w: Word) -> bool:
    """True iff removing ±n, …, ±(n-k+1) leaves no double descent, for all k."""
    e = tuple(_entries(w))
    for limit in range(len(e), 1, -1):
        if has_double_descent(tuple(v for v in e if abs(v) <= limit)):
            return False
    return True


def parity_class(w: Word) -> ParityClass:
    negatives = sum(1 for v in _entries(w) if v < 0)
    return ParityClass.D if negatives % 2 == 0 else ParityClass.T


def first_sign(w: Word) -> FirstSign:
    e = _entries(w)
    if not e:
        return FirstSign.EMPTY
    return FirstSign.POSITIVE if e[0] > 0 else FirstSign.NEGATIVE
