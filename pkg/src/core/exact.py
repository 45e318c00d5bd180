"""
Exact degree and slope values
Rational degrees, log-rational Arakelov degrees and the infinite slope sentinels,
all totally ordered without floating point
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Union

from .errors import ExactArithmeticError, ZeroObjectError

_RATIONAL_PATTERN = re.compile(r"[+-]?\d+(/\d+)?")

Rational = Union[int, Fraction]


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse an "a/b" string (or an int / Fraction) into a Fraction"""
    if isinstance(text, bool):
        raise ExactArithmeticError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, str) and _RATIONAL_PATTERN.fullmatch(text.strip()):
        try:
            return Fraction(text.strip())
        except ZeroDivisionError:
            raise ExactArithmeticError(f"zero denominator in {text!r}") from None
    raise ExactArithmeticError(f"not a rational: {text!r}")


def _integer_root(n: int, k: int) -> int:
    """Exact k-th root of a non-negative integer, or -1 when n is not a perfect power"""
    if n < 2:
        return n
    # Start above the root, then integer Newton steps down to the floor root
    root = 1 << (n.bit_length() // k + 1)
    while True:
        better = ((k - 1) * root + n // root ** (k - 1)) // k
        if better >= root:
            break
        root = better
    while root ** k > n:
        root -= 1
    while (root + 1) ** k <= n:
        root += 1
    return root if root ** k == n else -1


def _rational_root(q: Fraction, k: int) -> Fraction:
    num = _integer_root(q.numerator, k)
    den = _integer_root(q.denominator, k)
    if num < 0 or den < 0:
        return Fraction(-1)
    return Fraction(num, den)


class ExactDegree:
    """
    Base class of exact degree values

    Values form an ordered Q-vector space: they add, subtract, negate and
    scale by rationals. Ordering is exact; floats only appear in renderings.
    """

    kind = "abstract"

    def is_zero(self) -> bool:
        raise NotImplementedError

    def sign(self) -> int:
        raise NotImplementedError

    def scale(self, factor: Rational) -> "ExactDegree":
        raise NotImplementedError

    def to_decimal(self, digits: int) -> Decimal:
        raise NotImplementedError

    def __neg__(self) -> "ExactDegree":
        return self.scale(-1)

    def __add__(self, other: object) -> "ExactDegree":
        return _add(self, as_exact(other))

    def __radd__(self, other: object) -> "ExactDegree":
        return _add(as_exact(other), self)

    def __sub__(self, other: object) -> "ExactDegree":
        return _add(self, -as_exact(other))

    def __rsub__(self, other: object) -> "ExactDegree":
        return _add(as_exact(other), -self)

    def __mul__(self, factor: Rational) -> "ExactDegree":
        if not isinstance(factor, (int, Fraction)) or isinstance(factor, bool):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def __truediv__(self, divisor: Rational) -> "ExactDegree":
        if not isinstance(divisor, (int, Fraction)) or isinstance(divisor, bool):
            return NotImplemented
        if divisor == 0:
            raise ExactArithmeticError("division of an exact degree by zero")
        return self.scale(1 / Fraction(divisor))

    def __eq__(self, other: object) -> bool:
        try:
            return compare_exact(self, other) == 0
        except ExactArithmeticError:
            return False

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    def __lt__(self, other: object) -> bool:
        return compare_exact(self, other) < 0

    def __le__(self, other: object) -> bool:
        return compare_exact(self, other) <= 0

    def __gt__(self, other: object) -> bool:
        return compare_exact(self, other) > 0

    def __ge__(self, other: object) -> bool:
        return compare_exact(self, other) >= 0


@dataclass(frozen=True, eq=False)
class RationalDegree(ExactDegree):
    """Degree with a rational value (filtered vector spaces)"""

    value: Fraction

    kind = "rational"

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def sign(self) -> int:
        return (self.value > 0) - (self.value < 0)

    def scale(self, factor: Rational) -> ExactDegree:
        return RationalDegree(self.value * Fraction(factor))

    def to_decimal(self, digits: int) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits + 30 + len(str(abs(self.value.numerator)))
            value = Decimal(self.value.numerator) / Decimal(self.value.denominator)
            return value.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN)

    def __float__(self) -> float:
        return float(self.value)

    def __hash__(self) -> int:
        return hash(self.value)

    def __repr__(self) -> str:
        return f"Rational({self.value})"


@dataclass(frozen=True, eq=False)
class LogRationalDegree(ExactDegree):
    """
    Degree -log(d)/(2*root) with d a positive rational

    root = 1 is the Arakelov degree of a lattice with Gram determinant d;
    larger roots appear when such degrees are divided by ranks. The pair is
    kept reduced (smallest root), so equal values have equal fields.
    """

    d: Fraction
    root: int = 1

    kind = "log_rational"

    def __post_init__(self):
        d = Fraction(self.d)
        if d <= 0:
            raise ExactArithmeticError(f"log-rational degree needs d > 0, got {d}")
        if self.root <= 0:
            raise ExactArithmeticError(f"log-rational root must be positive, got {self.root}")
        root = self.root
        if d == 1:
            root = 1
        else:
            for k in sorted((k for k in range(2, root + 1) if root % k == 0), reverse=True):
                reduced = _rational_root(d, k)
                if reduced > 0:
                    d, root = reduced, root // k
                    break
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "root", root)

    def is_zero(self) -> bool:
        return self.d == 1

    def sign(self) -> int:
        return (self.d < 1) - (self.d > 1)

    def scale(self, factor: Rational) -> ExactDegree:
        factor = Fraction(factor)
        if factor == 0:
            return LogRationalDegree(Fraction(1))
        return LogRationalDegree(self.d ** factor.numerator, self.root * factor.denominator)

    def to_decimal(self, digits: int) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits + 30
            log_d = Decimal(self.d.numerator).ln() - Decimal(self.d.denominator).ln()
            value = -log_d / (2 * self.root)
            return value.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN)

    def __float__(self) -> float:
        return -(math.log(self.d.numerator) - math.log(self.d.denominator)) / (2 * self.root)

    def __hash__(self) -> int:
        return hash(Fraction(0)) if self.is_zero() else hash((self.d, self.root))

    def __repr__(self) -> str:
        suffix = "" if self.root == 1 else f", root={self.root}"
        return f"LogRational({self.d}{suffix})"


@dataclass(frozen=True, eq=False)
class InfiniteSlope:
    """The +inf / -inf sentinels used for mu_min(0) and mu_max(0)"""

    direction: int

    def __eq__(self, other: object) -> bool:
        return isinstance(other, InfiniteSlope) and other.direction == self.direction

    def __hash__(self) -> int:
        return hash(("inf", self.direction))

    def __lt__(self, other: object) -> bool:
        return compare_exact(self, other) < 0

    def __le__(self, other: object) -> bool:
        return compare_exact(self, other) <= 0

    def __gt__(self, other: object) -> bool:
        return compare_exact(self, other) > 0

    def __ge__(self, other: object) -> bool:
        return compare_exact(self, other) >= 0

    def _no_arithmetic(self, *_args):
        raise ExactArithmeticError("arithmetic on an infinite slope sentinel")

    __add__ = __radd__ = __sub__ = __rsub__ = __mul__ = __rmul__ = __truediv__ = _no_arithmetic
    __neg__ = _no_arithmetic

    def __repr__(self) -> str:
        return "+inf" if self.direction > 0 else "-inf"


NEG_INFINITY = InfiniteSlope(-1)
POS_INFINITY = InfiniteSlope(1)

ExactSlope = ExactDegree
ExtendedSlope = Union[ExactDegree, InfiniteSlope]


def as_exact(value: object) -> Union[ExactDegree, InfiniteSlope]:
    """Coerce ints, Fractions, floats and "a/b" strings into exact values"""
    if isinstance(value, (ExactDegree, InfiniteSlope)):
        return value
    if isinstance(value, bool):
        raise ExactArithmeticError(f"not an exact value: {value!r}")
    if isinstance(value, (int, Fraction)):
        return RationalDegree(Fraction(value))
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ExactArithmeticError(f"non-finite float {value!r}")
        return RationalDegree(Fraction(value))
    if isinstance(value, str):
        return RationalDegree(parse_rational(value))
    raise ExactArithmeticError(f"not an exact value: {value!r}")


def compare_exact(a: object, b: object) -> int:
    """Three-way exact comparison: -1, 0 or 1"""
    a, b = as_exact(a), as_exact(b)
    if isinstance(a, InfiniteSlope) or isinstance(b, InfiniteSlope):
        rank_a = a.direction if isinstance(a, InfiniteSlope) else 0
        rank_b = b.direction if isinstance(b, InfiniteSlope) else 0
        return (rank_a > rank_b) - (rank_a < rank_b)
    if isinstance(a, RationalDegree) and isinstance(b, RationalDegree):
        return (a.value > b.value) - (a.value < b.value)
    if a.is_zero():
        return -b.sign()
    if b.is_zero():
        return a.sign()
    if isinstance(a, LogRationalDegree) and isinstance(b, LogRationalDegree):
        return compare_log_rational(a.d, a.root, b.d, b.root)
    raise ExactArithmeticError(f"cannot compare {a!r} with {b!r} exactly")


def compare_log_rational(d1: Fraction, r1: int, d2: Fraction, r2: int) -> int:
    """
    Compare -log(d1)/(2 r1) with -log(d2)/(2 r2)

    Uses d1^r2 against d2^r1 with the order reversed; both sides are exact rationals.
    """
    if d1 <= 0 or d2 <= 0:
        raise ExactArithmeticError("log-rational comparison needs positive arguments")
    if r1 <= 0 or r2 <= 0:
        raise ExactArithmeticError("log-rational comparison needs positive ranks")
    lhs = Fraction(d1) ** r2
    rhs = Fraction(d2) ** r1
    return (lhs < rhs) - (lhs > rhs)


def _add(a: Union[ExactDegree, InfiniteSlope], b: Union[ExactDegree, InfiniteSlope]) -> ExactDegree:
    if isinstance(a, InfiniteSlope) or isinstance(b, InfiniteSlope):
        raise ExactArithmeticError("arithmetic on an infinite slope sentinel")
    if b.is_zero():
        return a
    if a.is_zero():
        return b
    if isinstance(a, RationalDegree) and isinstance(b, RationalDegree):
        return RationalDegree(a.value + b.value)
    if isinstance(a, LogRationalDegree) and isinstance(b, LogRationalDegree):
        common = a.root * b.root // math.gcd(a.root, b.root)
        return LogRationalDegree(a.d ** (common // a.root) * b.d ** (common // b.root), common)
    raise ExactArithmeticError(f"cannot add {a!r} and {b!r} exactly")


def zero_like(value: ExactDegree) -> ExactDegree:
    return LogRationalDegree(Fraction(1)) if isinstance(value, LogRationalDegree) else RationalDegree(Fraction(0))


def unit_like(value: ExactDegree) -> ExactDegree:
    """A positive value of the same kind: 1, or log 2 for log-rational values"""
    return LogRationalDegree(Fraction(1, 4)) if isinstance(value, LogRationalDegree) else RationalDegree(Fraction(1))


def slope_of(degree: ExactDegree, rank: int) -> ExactSlope:
    """Exact slope degree / rank; rank 0 is an error"""
    if rank <= 0:
        raise ZeroObjectError("slope of the zero object is undefined")
    return degree / rank


def exact_sum(values, start: ExactDegree = None) -> ExactDegree:
    total = start if start is not None else RationalDegree(Fraction(0))
    for value in values:
        total = total + value
    return total


def format_decimal(value: Decimal) -> str:
    """Plain decimal text with trailing zeros stripped ("0.5", "-2", "0")"""
    text = format(value, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    if text in ("", "-0"):
        text = "0"
    return text


def render_decimal(value: object, digits: int) -> str:
    """Decimal rendering of any exact value at the given number of fractional digits"""
    value = as_exact(value)
    if isinstance(value, InfiniteSlope):
        return "inf" if value.direction > 0 else "-inf"
    return format_decimal(value.to_decimal(digits))
