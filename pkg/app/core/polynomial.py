"""Exact integer polynomials in x."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

Number = Union[int, Fraction]


def _strip(coeffs: Iterable[int]) -> Tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class DescentPolynomial:
    coeffs: Tuple[int, ...]
    family: Optional[str] = None
    n: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @classmethod
    def from_histogram(cls, histogram: Sequence[int], family: Optional[str] = None, n: Optional[int] = None):
        return cls(tuple(histogram), family, n)

    # -- structure -------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __getitem__(self, k: int) -> int:
        """Coefficient of x^k; zero outside the stored range."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __eq__(self, other) -> bool:
        # rows compare by coefficients only; family and n are labels
        if isinstance(other, DescentPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def labeled(self, family: Optional[str], n: Optional[int]) -> "DescentPolynomial":
        return DescentPolynomial(self.coeffs, family, n)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "DescentPolynomial") -> "DescentPolynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        return DescentPolynomial(tuple(self[k] + other[k] for k in range(size)))

    def __sub__(self, other: "DescentPolynomial") -> "DescentPolynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        return DescentPolynomial(tuple(self[k] - other[k] for k in range(size)))

    def __neg__(self) -> "DescentPolynomial":
        return DescentPolynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other: Union["DescentPolynomial", int]) -> "DescentPolynomial":
        if isinstance(other, int):
            return DescentPolynomial(tuple(other * c for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return DescentPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return DescentPolynomial(tuple(out))

    __rmul__ = __mul__

    def shift(self, k: int = 1) -> "DescentPolynomial":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return DescentPolynomial((0,) * k + self.coeffs)

    def divide_by_x(self) -> "DescentPolynomial":
        """Exact division by x; raises ValueError if the constant term is nonzero."""
        if self[0] != 0:
            raise ValueError(f"constant term {self[0]} is not divisible by x")
        return DescentPolynomial(self.coeffs[1:])

    def derivative(self) -> "DescentPolynomial":
        """Formal derivative d/dx."""
        return DescentPolynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def evaluate(self, x: Number) -> Number:
        """Exact evaluation by Horner's rule (int or Fraction in, same out)."""
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        label = f"{self.family}_{self.n}" if self.family is not None else "P"
        return f"{label}({format_polynomial(self)})"


ZERO = DescentPolynomial(())
ONE = DescentPolynomial((1,))
X = DescentPolynomial((0, 1))


def x_one_minus_2x_derivative(p: DescentPolynomial) -> DescentPolynomial:
    """The operator x(1-2x) d/dx, exact on coefficient vectors."""
    d = p.derivative()
    return d.shift(1) - 2 * d.shift(2)


def format_polynomial(p: DescentPolynomial) -> str:
    """Human-readable form such as ``1 + 76x + 121x^2``."""
    if p.is_zero():
        return "0"
    terms = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            mag = "" if abs(c) == 1 else str(abs(c))
            body = f"{mag}x" if k == 1 else f"{mag}x^{k}"
        terms.append(("-" if c < 0 else "+", body))
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
