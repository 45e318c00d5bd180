"""
Coefficient fields for exact linear algebra
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from ..core.errors import DimensionMismatchError

Scalar = Union[int, Fraction]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p; elements are ints in [0, p)"""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise DimensionMismatchError(f"{self.p} is not a prime")

    @property
    def name(self) -> str:
        return f"F_{self.p}"

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def normalize(self, a: Scalar) -> int:
        if isinstance(a, Fraction):
            return a.numerator * pow(a.denominator, -1, self.p) % self.p
        return a % self.p

    def inv(self, a: int) -> int:
        return pow(a, -1, self.p)

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    @property
    def size(self) -> int:
        return self.p


@dataclass(frozen=True)
class RationalField:
    """The field Q; elements are Fractions"""

    @property
    def name(self) -> str:
        return "Q"

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def normalize(self, a: Scalar) -> Fraction:
        return Fraction(a)

    def inv(self, a: Fraction) -> Fraction:
        return 1 / Fraction(a)


QQ = RationalField()

Field = Union[PrimeField, RationalField]
