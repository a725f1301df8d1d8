"""Exhaustive streams over S_n and B_n and brute-force descent polynomials."""
from dataclasses import dataclass
from enum import Enum
from itertools import permutations, product
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from loguru import logger

from app.config import get_signed_cap, get_symmetric_cap
from app.core.exceptions import InfeasibleEnumerationError, UsageError
from app.core.permcore import (
    FirstSign,
    ParityClass,
    SignedWord,
    UnsignedWord,
    des_A,
    des_B,
    descent_bottoms,
    descent_tops,
    has_double_descent,
    is_alternating,
    is_simsun_A,
    is_simsun_B,
    lpk,
)
from app.core.polynomial import DescentPolynomial
from app.core.scheduler import run_tasks

STRATEGIES = ("search", "filter")


class Family(str, Enum):
    RS = "RS"
    RB = "RB"
    RB_POS = "RB+"
    RB_NEG = "RB-"
    RD = "RD"
    RD_POS = "RD+"
    RD_NEG = "RD-"
    RT = "RT"
    RT_POS = "RT+"
    RT_NEG = "RT-"
    EULERIAN_A = "EulerianA"
    EULERIAN_B = "EulerianB"
    EULERIAN_D = "EulerianD"
    EULERIAN_T = "EulerianT"
    LEFT_PEAK_W = "LeftPeakW"


@dataclass(frozen=True)
class ClassSpec:
    """Ambient group, filter predicate and statistic of a permutation class."""

    family: Family
    ambient: str  # "A" for S_n, "B" for B_n
    simsun: bool
    parity: Optional[ParityClass]
    sign: Optional[FirstSign]
    statistic: Callable[[Sequence[int]], int]

    def accepts(self, w: Sequence[int]) -> bool:
        """Parity and first-sign filters (the empty word counts as positive)."""
        if self.parity is not None:
            negatives = sum(1 for v in w if v < 0)
            if (negatives % 2 == 0) != (self.parity is ParityClass.D):
                return False
        if self.sign is FirstSign.POSITIVE and w and w[0] < 0:
            return False
        if self.sign is FirstSign.NEGATIVE and (not w or w[0] > 0):
            return False
        return True

    def contains(self, w: Sequence[int]) -> bool:
        """Full membership test for a word of the ambient group."""
        if self.simsun:
            member = is_simsun_A(w) if self.ambient == "A" else is_simsun_B(w)
            if not member:
                return False
        return self.accepts(w)


def _signed(family: Family, parity: Optional[ParityClass], sign: Optional[FirstSign]) -> ClassSpec:
    return ClassSpec(family, "B", True, parity, sign, des_B)


CLASS_SPECS = {
    Family.RS: ClassSpec(Family.RS, "A", True, None, None, des_A),
    Family.RB: _signed(Family.RB, None, None),
    Family.RB_POS: _signed(Family.RB_POS, None, FirstSign.POSITIVE),
    Family.RB_NEG: _signed(Family.RB_NEG, None, FirstSign.NEGATIVE),
    Family.RD: _signed(Family.RD, ParityClass.D, None),
    Family.RD_POS: _signed(Family.RD_POS, ParityClass.D, FirstSign.POSITIVE),
    Family.RD_NEG: _signed(Family.RD_NEG, ParityClass.D, FirstSign.NEGATIVE),
    Family.RT: _signed(Family.RT, ParityClass.T, None),
    Family.RT_POS: _signed(Family.RT_POS, ParityClass.T, FirstSign.POSITIVE),
    Family.RT_NEG: _signed(Family.RT_NEG, ParityClass.T, FirstSign.NEGATIVE),
    Family.EULERIAN_A: ClassSpec(Family.EULERIAN_A, "A", False, None, None, des_A),
    Family.EULERIAN_B: ClassSpec(Family.EULERIAN_B, "B", False, None, None, des_B),
    Family.EULERIAN_D: ClassSpec(Family.EULERIAN_D, "B", False, ParityClass.D, None, des_B),
    Family.EULERIAN_T: ClassSpec(Family.EULERIAN_T, "B", False, ParityClass.T, None, des_B),
    Family.LEFT_PEAK_W: ClassSpec(Family.LEFT_PEAK_W, "A", False, None, None, lpk),
}

SIGNED_SIMSUN_FAMILIES = tuple(f for f, s in CLASS_SPECS.items() if s.simsun and s.ambient == "B")


def class_spec(family: Union[ClassSpec, Family, str]) -> ClassSpec:
    """Look up a class by Family or by its name (``"RB+"``, ``"EulerianD"``, ...)."""
    if isinstance(family, ClassSpec):
        return family
    try:
        return CLASS_SPECS[Family(family)]
    except ValueError as e:
        names = ", ".join(f.value for f in Family)
        raise UsageError(f"unknown class {family!r}; expected one of: {names}") from e


def check_feasible(ambient: str, n: int) -> None:
    """Raise unless n is within the enumeration cap of the ambient group."""
    if n < 0:
        raise UsageError(f"n must be nonnegative, got {n}")
    cap = get_symmetric_cap() if ambient == "A" else get_signed_cap()
    if n > cap:
        raise InfeasibleEnumerationError(n, cap, "S" if ambient == "A" else "B")


# ---------------------------------------------------------------------------
# Raw generators (tuples, no validation)
# ---------------------------------------------------------------------------

def _symmetric_tuples(n: int, first: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    if first is None:
        yield from permutations(range(1, n + 1))
        return
    rest = [v for v in range(1, n + 1) if v != first]
    for tail in permutations(rest):
        yield (first,) + tail


def _signed_lex(n: int, prefix: Tuple[int, ...], used: int) -> Iterator[Tuple[int, ...]]:
    # used is a bitmask of magnitudes already placed
    if len(prefix) == n:
        yield prefix
        return
    for v in range(-n, n + 1):
        if v != 0 and not used & (1 << abs(v)):
            yield from _signed_lex(n, prefix + (v,), used | (1 << abs(v)))


def _signed_tuples(n: int, first: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Signed words in lexicographic order under -n < ... < -1 < 1 < ... < n."""
    if first is None:
        return _signed_lex(n, (), 0)
    return _signed_lex(n, (first,), 1 << abs(first))


def _insertions(m: int, length: int, first: Optional[int]) -> Iterator[Tuple[int, int]]:
    """(slot, value) pairs for placing ±m into a word of the given length."""
    if first is not None and abs(first) == m:
        yield 0, first
        return
    lowest = 1 if first is not None and abs(first) < m else 0
    for slot in range(lowest, length + 1):
        yield slot, m
        yield slot, -m


def _signed_simsun_search(n: int, first: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """
    Signed simsun words of length n, grown by value.

    The word on ±[m] is obtained from a member of RB_{m-1} by inserting ±m;
    removing ±n, …, ±(m+1) from a signed simsun word gives exactly these
    intermediate words, so discarding every intermediate word with a double
    descent applies the definition level by level.
    """

    def grow(w: Tuple[int, ...], m: int) -> Iterator[Tuple[int, ...]]:
        if m > n:
            yield w
            return
        for slot, v in _insertions(m, len(w), first):
            child = w[:slot] + (v,) + w[slot:]
            if not has_double_descent(child):
                yield from grow(child, m + 1)

    return grow((), 1)


def _eulerian_B_histogram(n: int, first: Optional[int], parity: Optional[ParityClass]) -> List[int]:
    # tight loop over magnitudes x signs; B_8 has ten million words
    hist = [0] * (n + 1)
    if first is None:
        head: Tuple[int, ...] = ()
        rest = list(range(1, n + 1))
    else:
        head = (first,)
        rest = [v for v in range(1, n + 1) if v != abs(first)]
    head_negatives = 1 if first is not None and first < 0 else 0
    sign_vectors = [
        s
        for s in product((1, -1), repeat=len(rest))
        if parity is None or ((s.count(-1) + head_negatives) % 2 == 0) == (parity is ParityClass.D)
    ]
    start_desc = 1 if head_negatives else 0
    start_prev = first if first is not None else 0
    for magnitudes in permutations(rest):
        for signs in sign_vectors:
            prev = start_prev
            d = start_desc
            for a, s in zip(magnitudes, signs):
                v = a * s
                if prev > v:
                    d += 1
                prev = v
            hist[d] += 1
    return hist


# ---------------------------------------------------------------------------
# Public streams
# ---------------------------------------------------------------------------

def stream_symmetric(n: int, first: Optional[int] = None) -> Iterator[UnsignedWord]:
    """
    Yield every permutation of [n] once, in lexicographic order.

    Args:
        n: Length
        first: Restrict to words starting with this entry (one partition)

    Returns:
        iterator: UnsignedWord values
    """
    check_feasible("A", n)
    return (UnsignedWord(w) for w in _symmetric_tuples(n, first))


def stream_hyperoctahedral(n: int, first: Optional[int] = None) -> Iterator[SignedWord]:
    """
    Yield every signed permutation of B_n once, in lexicographic order
    under -n < ... < -1 < 1 < ... < n.

    Args:
        n: Length
        first: Restrict to words starting with this entry (one partition)

    Returns:
        iterator: SignedWord values
    """
    check_feasible("B", n)
    return (SignedWord(w) for w in _signed_tuples(n, first))


def insertion_stream_RB(n: int) -> Iterator[SignedWord]:
    """
    Yield the members of RB_n by the insertion rules, without filtering.

    From a member of RB_{n-1} (read with π(0)=0): the entry n may be inserted
    anywhere except immediately before a descent top, and -n anywhere except
    immediately after a descent bottom. Every member of RB_n arises exactly
    once, from the word left after removing ±n. The stream is lazy and has
    no enumeration cap.
    """
    if n < 0:
        raise UsageError(f"n must be nonnegative, got {n}")

    def grow(w: Tuple[int, ...], m: int) -> Iterator[Tuple[int, ...]]:
        if m > n:
            yield w
            return
        tops = descent_tops(w)
        bottoms = descent_bottoms(w)
        for slot in range(len(w) + 1):
            # slot j sits between π(j) and π(j+1)
            if slot + 1 not in tops:
                yield from grow(w[:slot] + (m,) + w[slot:], m + 1)
            if slot not in bottoms:
                yield from grow(w[:slot] + (-m,) + w[slot:], m + 1)

    return (SignedWord(w) for w in grow((), 1))


def class_words(family: Union[ClassSpec, Family, str], n: int, strategy: str = "search") -> Iterator[Tuple[int, ...]]:
    """Raw words of a class in generation order (callers sort if needed)."""
    spec = class_spec(family)
    check_feasible(spec.ambient, n)
    if strategy not in STRATEGIES:
        raise UsageError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    return (
        w
        for first in partitions(spec.family, n)
        for w in _partition_words(spec, n, first, strategy)
        if spec.accepts(w)
    )


# ---------------------------------------------------------------------------
# Partitioned brute force
# ---------------------------------------------------------------------------

def partitions(family: Union[Family, str], n: int) -> List[Optional[int]]:
    """
    First entries that split a class into disjoint partitions.

    Partitions whose first entry has the wrong sign for a ± class are
    skipped; ``[None]`` stands for the single empty word when n = 0.
    """
    spec = class_spec(family)
    if n == 0:
        return [None]
    if spec.ambient == "A":
        return list(range(1, n + 1))
    firsts = list(range(-n, 0)) + list(range(1, n + 1))
    if spec.sign is FirstSign.POSITIVE:
        return [v for v in firsts if v > 0]
    if spec.sign is FirstSign.NEGATIVE:
        return [v for v in firsts if v < 0]
    return firsts


def _partition_words(spec: ClassSpec, n: int, first: Optional[int], strategy: str) -> Iterator[Tuple[int, ...]]:
    # words of the ambient class (simsun or all) before parity/sign filters
    if spec.ambient == "A":
        words = _symmetric_tuples(n, first)
        return (w for w in words if is_simsun_A(w)) if spec.simsun else words
    if spec.simsun and strategy == "search":
        return _signed_simsun_search(n, first)
    words = _signed_tuples(n, first)
    return (w for w in words if is_simsun_B(w)) if spec.simsun else words


def partition_histogram(family: Union[Family, str], n: int, first: Optional[int], strategy: str = "search") -> List[int]:
    """
    Histogram of the class statistic over one partition.

    Args:
        family: Permutation class
        n: Length
        first: First entry of the partition (None when n = 0)
        strategy: "search" grows signed simsun words by value; "filter"
            filters the full B_n stream with is_simsun_B. Classes that are
            not signed simsun classes ignore it.

    Returns:
        list: hist[k] = number of words with statistic k
    """
    return partition_histograms([family], n, first, strategy)[0]


def _same_ambient(specs: Sequence[ClassSpec]) -> Tuple[str, bool]:
    kinds = {(s.ambient, s.simsun) for s in specs}
    if len(kinds) != 1:
        raise UsageError("classes enumerated together must share the ambient group and the simsun filter")
    return kinds.pop()


def partition_histograms(
    families: Sequence[Union[Family, str]],
    n: int,
    first: Optional[int],
    strategy: str = "search",
) -> List[List[int]]:
    """
    Histograms of several classes over one partition, from a single pass.

    All classes must share the ambient group and the simsun filter (for
    example the nine signed simsun classes); each word is tested against
    every class's parity and sign filters.
    """
    if strategy not in STRATEGIES:
        raise UsageError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    specs = [class_spec(f) for f in families]
    ambient, simsun = _same_ambient(specs)
    if ambient == "B" and not simsun:
        return [_eulerian_B_histogram(n, first, s.parity) for s in specs]

    hists = [[0] * (n + 1) for _ in specs]
    for w in _partition_words(specs[0], n, first, strategy):
        for spec, hist in zip(specs, hists):
            if spec.accepts(w):
                hist[spec.statistic(w)] += 1
    return hists


def merge_histograms(histograms: Sequence[Sequence[int]]) -> List[int]:
    """Coefficient-wise sum of histograms (associative, order independent)."""
    size = max((len(h) for h in histograms), default=0)
    merged = [0] * size
    for h in histograms:
        for k, c in enumerate(h):
            merged[k] += c
    return merged


def brute_polynomial(
    family: Union[ClassSpec, Family, str],
    n: int,
    jobs: Optional[int] = None,
    strategy: str = "search",
) -> DescentPolynomial:
    """
    Descent polynomial of a class by exhaustive enumeration.

    Args:
        family: Permutation class
        n: Length
        jobs: Worker processes for the partition fan-out
        strategy: "search" or "filter" (see partition_histogram)

    Returns:
        DescentPolynomial: coefficient k counts the words with statistic k
    """
    spec = class_spec(family)
    return brute_polynomials([spec.family], n, jobs, strategy)[spec.family]


def brute_polynomials(
    families: Sequence[Union[Family, str]],
    n: int,
    jobs: Optional[int] = None,
    strategy: str = "search",
) -> Dict[Family, DescentPolynomial]:
    """
    Descent polynomials of several classes, sharing one enumeration per
    ambient group.

    Args:
        families: Permutation classes (any mix of ambient groups)
        n: Length
        jobs: Worker processes for the partition fan-out
        strategy: "search" or "filter" (see partition_histogram)

    Returns:
        dict: Family -> DescentPolynomial
    """
    specs = [class_spec(f) for f in families]
    groups: Dict[Tuple[str, bool], List[ClassSpec]] = {}
    for spec in specs:
        check_feasible(spec.ambient, n)
        groups.setdefault((spec.ambient, spec.simsun), []).append(spec)

    result: Dict[Family, DescentPolynomial] = {}
    for group in groups.values():
        names = [s.family for s in group]
        firsts = sorted(
            {v for s in group for v in partitions(s.family, n)},
            key=lambda v: (v is not None, v or 0),
        )
        tasks = [(names, n, first, strategy) for first in firsts]
        per_partition = run_tasks(partition_histograms, tasks, jobs)
        for i, spec in enumerate(group):
            merged = merge_histograms([hists[i] for hists in per_partition])
            poly = DescentPolynomial.from_histogram(merged, spec.family.value, n)
            logger.debug(f"brute {spec.family.value}_{n} = {poly.coeffs}")
            result[spec.family] = poly
    return result


def brute_count(
    family: Union[ClassSpec, Family, str],
    n: int,
    jobs: Optional[int] = None,
    strategy: str = "search",
) -> int:
    """Number of words in a class: the row sum of brute_polynomial."""
    return sum(brute_polynomial(family, n, jobs, strategy).coeffs)


def count_alternating(m: int) -> int:
    """Euler number E_m, counted by brute force over S_m (down-up words)."""
    check_feasible("A", m)
    return sum(1 for w in _symmetric_tuples(m) if is_alternating(w))
