"""Exact arithmetic building blocks.

Rationals are :class:`fractions.Fraction` (always canonical: reduced,
positive denominator, zero stored as ``0/1``).  On top of that this module
provides a shared factorial table, multinomial coefficients, a truncated
power-series ring in one variable ``u``, the series ``g_m(u)`` and a
division-free determinant for matrices over any commutative ring.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, TypeVar

Rational = Fraction

__all__ = [
    "Rational",
    "TruncatedSeries",
    "factorial",
    "multinomial",
    "g_series",
    "laplace_det",
    "series_det",
]

_FACTORIALS: list[int] = [1]
_FACTORIAL_LOCK = threading.Lock()


def factorial(n: int) -> int:
    """Return ``n!`` from a process-wide cache that grows on demand."""
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    table = _FACTORIALS
    if n < len(table):
        return table[n]
    with _FACTORIAL_LOCK:
        while len(table) <= n:
            table.append(table[-1] * len(table))
    return table[n]


def multinomial(n: int, parts: Sequence[int]) -> int:
    """Return ``n! / prod(p! for p in parts)``.

    Raises
    ------
    ValueError
        If the parts do not sum to ``n`` or any part is negative.
    """
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {tuple(parts)}")
    if sum(parts) != n:
        raise ValueError(f"parts {tuple(parts)} do not sum to {n}")
    out = factorial(n)
    for p in parts:
        out //= factorial(p)
    return out


@dataclass(frozen=True)
class TruncatedSeries:
    """Element of ``Q[u] / (u^(M+1))`` stored as ``coeffs[j] = [u^j]``."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant term")

    @classmethod
    def from_iterable(cls, values: Iterable, degree: int | None = None) -> "TruncatedSeries":
        coeffs = [Fraction(v) for v in values]
        if degree is not None:
            coeffs = (coeffs + [Fraction(0)] * (degree + 1))[: degree + 1]
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, value, degree: int) -> "TruncatedSeries":
        return cls((Fraction(value),) + (Fraction(0),) * degree)

    @classmethod
    def zero(cls, degree: int) -> "TruncatedSeries":
        return cls((Fraction(0),) * (degree + 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _check(self, other: "TruncatedSeries") -> None:
        if other.degree != self.degree:
            raise ValueError(
                f"truncation degrees differ: {self.degree} vs {other.degree}"
            )

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        return TruncatedSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return TruncatedSeries(tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(tuple(a * other for a in self.coeffs))
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        a, b = self.coeffs, other.coeffs
        m = len(a)
        out = [Fraction(0)] * m
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j in range(m - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return TruncatedSeries(tuple(out))

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __getitem__(self, j: int) -> Fraction:
        return self.coeffs[j]

    def derivative_at_zero(self, order: int) -> Fraction:
        """``(d/du)^order`` of the series evaluated at ``u = 0``."""
        if order > self.degree:
            raise ValueError(f"order {order} exceeds truncation degree {self.degree}")
        return factorial(order) * self.coeffs[order]


def g_series(m: int, degree: int) -> TruncatedSeries:
    """Truncation of ``g_m(u) = [w^m] exp(w + u / w^2)`` at ``u^degree``.

    The coefficient of ``u^j`` is ``1 / (j! (m + 2j)!)``; terms with
    ``m + 2j < 0`` vanish (``1/Gamma`` at a non-positive integer).
    """
    coeffs = []
    for j in range(degree + 1):
        idx = m + 2 * j
        coeffs.append(Fraction(1, factorial(j) * factorial(idx)) if idx >= 0 else Fraction(0))
    return TruncatedSeries(tuple(coeffs))


T = TypeVar("T")


def laplace_det(matrix: Sequence[Sequence[T]], zero: T) -> T:
    """Determinant by cofactor expansion with memoised minors.

    Works over any commutative ring whose elements support ``+``, ``*``,
    unary ``-`` and truth testing (falsy means zero).  Minors are keyed by
    the set of remaining columns, so the cost is ``O(2^k k)`` ring
    multiplications and no division is ever performed.
    """
    k = len(matrix)
    if k == 0:
        raise ValueError("empty matrix")
    if any(len(row) != k for row in matrix):
        raise ValueError("matrix is not square")

    memo: dict[int, T] = {}
    full = (1 << k) - 1

    def minor(cols: int) -> T:
        # rows row..k-1 against the columns in the bitmask `cols`
        if cols in memo:
            return memo[cols]
        row = k - bin(cols).count("1")
        if row == k - 1:
            result = matrix[row][cols.bit_length() - 1]
        else:
            result = zero
            sign_flip = False
            for c in range(k):
                if not cols >> c & 1:
                    continue
                entry = matrix[row][c]
                if entry:
                    sub = minor(cols & ~(1 << c))
                    if sub:
                        term = entry * sub
                        result = result - term if sign_flip else result + term
                sign_flip = not sign_flip
        memo[cols] = result
        return result

    return minor(full)


def series_det(entries: Sequence[Sequence[TruncatedSeries]]) -> TruncatedSeries:
    """Determinant of a square matrix of truncated series (same degree)."""
    k = len(entries)
    if k == 0 or any(len(row) != k for row in entries):
        raise ValueError("series_det needs a non-empty square matrix")
    degree = entries[0][0].degree
    if any(e.degree != degree for row in entries for e in row):
        raise ValueError("entries have mixed truncation degrees")
    return laplace_det(entries, TruncatedSeries.zero(degree))

