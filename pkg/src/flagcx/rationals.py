"""Gaussian rational scalars: exact complex numbers with Fraction parts."""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Union

Scalar = Union[int, Q, "GQ"]


class GQ:
    """A Gaussian rational ``re + im*i`` with exact :class:`~fractions.Fraction` parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Q] = 0, im: Union[int, Q] = 0) -> None:
        object.__setattr__(self, "re", Q(re))
        object.__setattr__(self, "im", Q(im))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("GQ is immutable")

    @staticmethod
    def of(value: Scalar) -> GQ:
        """Coerce an int, Fraction, or GQ into a GQ."""
        if isinstance(value, GQ):
            return value
        return GQ(value)

    def __add__(self, other: Scalar) -> GQ:
        o = GQ.of(other)
        return GQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> GQ:
        o = GQ.of(other)
        return GQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Scalar) -> GQ:
        return GQ.of(other) - self

    def __neg__(self) -> GQ:
        return GQ(-self.re, -self.im)

    def __mul__(self, other: Scalar) -> GQ:
        o = GQ.of(other)
        return GQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> GQ:
        o = GQ.of(other)
        n2 = o.re * o.re + o.im * o.im
        if n2 == 0:
            raise ZeroDivisionError("division by zero GQ")
        return GQ((self.re * o.re + self.im * o.im) / n2, (self.im * o.re - self.re * o.im) / n2)

    def __rtruediv__(self, other: Scalar) -> GQ:
        return GQ.of(other) / self

    def conjugate(self) -> GQ:
        """Complex conjugate."""
        return GQ(self.re, -self.im)

    def norm2(self) -> Q:
        """Squared modulus ``re**2 + im**2`` (an exact Fraction)."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Q)):
            other = GQ(other)
        if not isinstance(other, GQ):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"GQ({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = GQ(0)
ONE = GQ(1)
I = GQ(0, 1)
