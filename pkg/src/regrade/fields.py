"""Exact coefficient fields: prime fields F_p and the rationals.

Scalars are plain Python values (ints for F_p, fractions.Fraction for Q) so
all arithmetic is exact and hashable.  A field object bundles the operations
and the JSON codec for its scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import UnsupportedFieldError

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class PrimeField:
    """The field with p elements, p prime; scalars are ints in [0, p)."""

    p: int

    def __post_init__(self) -> None:
        if self.p < 2 or any(self.p % q == 0 for q in range(2, int(self.p**0.5) + 1)):
            raise ValueError(f"{self.p} is not prime")

    @property
    def name(self) -> str:
        return f"F{self.p}"

    @property
    def size(self) -> int | None:
        return self.p

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def coerce(self, x: object) -> int:
        if isinstance(x, bool) or not isinstance(x, int):
            if isinstance(x, Fraction) and x.denominator == 1:
                x = x.numerator
            elif isinstance(x, str):
                x = int(x)
            else:
                raise TypeError(f"cannot coerce {x!r} into {self.name}")
        return x % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self.name}")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: int) -> bool:
        return a % self.p == 0

    def elements(self) -> Iterable[int]:
        return range(self.p)

    def to_json(self, a: int) -> int:
        return a % self.p

    def from_json(self, j: object) -> int:
        if not isinstance(j, int) or isinstance(j, bool):
            raise ValueError(f"{self.name} scalar must be an integer, got {j!r}")
        return j % self.p


@dataclass(frozen=True)
class RationalField:
    """The rationals; scalars are fractions.Fraction values."""

    @property
    def name(self) -> str:
        return "Q"

    @property
    def size(self) -> int | None:
        return None

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def coerce(self, x: object) -> Fraction:
        if isinstance(x, bool):
            raise TypeError("cannot coerce bool into Q")
        if isinstance(x, (int, Fraction, str)):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in Q")
        return 1 / a

    def div(self, a: Fraction, b: Fraction) -> Fraction:
        return a / self.coerce(b) if b != 0 else a / b

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    def elements(self) -> Iterable[Fraction]:
        raise UnsupportedFieldError("Q is infinite; cannot enumerate its elements")

    def to_json(self, a: Fraction) -> str:
        return str(a)

    def from_json(self, j: object) -> Fraction:
        if isinstance(j, bool):
            raise ValueError("Q scalar must be an int or a 'p/q' string")
        if isinstance(j, (int, str)):
            return Fraction(j)
        raise ValueError(f"Q scalar must be an int or a 'p/q' string, got {j!r}")


ExactField = Union[PrimeField, RationalField]

F2 = PrimeField(2)
F3 = PrimeField(3)
QQ = RationalField()

_BY_NAME: dict[str, ExactField] = {"Q": QQ}


def field_from_name(name: str) -> ExactField:
    """Look up a field by its JSON name: "F2", "F3", "F5", ..., or "Q"."""
    if name in _BY_NAME:
        return _BY_NAME[name]
    if name.startswith("F") and name[1:].isdigit():
        try:
            return PrimeField(int(name[1:]))
        except ValueError as exc:
            raise UnsupportedFieldError(str(exc)) from None
    raise UnsupportedFieldError(f"unknown field name {name!r}")
