"""Exact integer, rational and prime-field arithmetic.

Rationals are plain :class:`fractions.Fraction` values; prime-field elements
are :class:`Fp` instances.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt
from numbers import Rational

from .exceptions import ParameterError

__all__ = [
    "Fp",
    "fp_arith",
    "floor_log2",
    "is_prime",
    "mod_reduce",
    "parse_rational",
    "rational_to_str",
    "smallest_prime_above",
    "to_fp",
]


@lru_cache(maxsize=4096)
def is_prime(x: int) -> bool:
    """Deterministic trial division up to sqrt(x)."""
    if x < 2:
        return False
    if x < 4:
        return True
    if x % 2 == 0:
        return False
    for q in range(3, isqrt(x) + 1, 2):
        if x % q == 0:
            return False
    return True


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or p < 2 or not is_prime(p):
        raise ParameterError(f"modulus must be a prime >= 2, got {p!r}")


def mod_reduce(a: int, p: int) -> int:
    """Return the unique residue of ``a`` in ``[0, p-1]``; negative ``a`` allowed."""
    _check_prime(p)
    return a % p


def smallest_prime_above(x: int) -> int:
    """Least prime strictly greater than ``x``."""
    if x < 1:
        raise ParameterError(f"x must be >= 1, got {x}")
    q = x + 1
    while not is_prime(q):
        q += 1
    return q


def floor_log2(p: int) -> int:
    """``floor(log2 p)`` for a positive integer, computed exactly."""
    if p < 1:
        raise ParameterError(f"floor_log2 needs a positive integer, got {p}")
    return p.bit_length() - 1


class Fp:
    """An element of the prime field F_p."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        _check_prime(modulus)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "value", value % modulus)

    def __setattr__(self, name, value):
        raise AttributeError("Fp elements are immutable")

    def _coerce(self, other) -> Fp:
        if isinstance(other, Fp):
            if other.modulus != self.modulus:
                raise ParameterError(
                    f"modulus mismatch: {self.modulus} vs {other.modulus}"
                )
            return other
        if isinstance(other, Rational):
            return to_fp(other, self.modulus)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value + o.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value - o.value, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o.value - self.value, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value * o.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> Fp:
        return Fp(-self.value, self.modulus)

    def __pow__(self, k: int) -> Fp:
        if k < 0:
            return self.inverse() ** (-k)
        return Fp(pow(self.value, k, self.modulus), self.modulus)

    def inverse(self) -> Fp:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.modulus}")
        return Fp(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, Fp):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Fp({self.value}, {self.modulus})"

    def __str__(self) -> str:
        return str(self.value)


def to_fp(x, p: int) -> Fp:
    """Map an integer or rational into F_p (numerator times inverse denominator)."""
    if isinstance(x, Fp):
        if x.modulus != p:
            raise ParameterError(f"modulus mismatch: {x.modulus} vs {p}")
        return x
    q = Fraction(x)
    num = Fp(q.numerator, p)
    if q.denominator == 1:
        return num
    return num / Fp(q.denominator, p)


def fp_arith(op: str, a: Fp, b: Fp | None = None) -> Fp:
    """Dispatch ``add``, ``mul``, ``neg`` or ``inv`` on field elements."""
    if op in ("add", "mul"):
        if b is None:
            raise ParameterError(f"{op} needs two operands")
        if a.modulus != b.modulus:
            raise ParameterError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
        return a + b if op == "add" else a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ParameterError(f"unknown field operation {op!r}")


def rational_to_str(x) -> str:
    """Serialize as ``"num/den"``, omitting the denominator when it is 1."""
    if isinstance(x, Fp):
        return str(x.value)
    return str(Fraction(x))


def parse_rational(s) -> Fraction:
    if isinstance(s, str):
        return Fraction(s.strip())
    if isinstance(s, float):
        raise ParameterError("floats are not exact; pass an int, Fraction or 'num/den'")
    return Fraction(s)
