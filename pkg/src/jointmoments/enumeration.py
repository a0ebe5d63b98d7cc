"""Deterministic enumeration of the index families summed over by the
coefficient formulae.

Every enumerator yields in lexicographic order so that partial sums can be
chunked reproducibly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .exact import factorial

__all__ = [
    "DerivTuple",
    "BoundedRowMatrix",
    "enum_deriv_tuples",
    "enum_weak_compositions",
    "enum_bounded_rows",
    "enum_bounded_matrices",
]

# A row-bounded matrix is a tuple of rows; each row is a tuple of
# nonnegative ints with 2 * sum(row) <= bound.
BoundedRowMatrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class DerivTuple:
    """``(a_0; a_1, ..., a_h)`` with ``a_0 + 2 * sum(j * a_j) = n``, ``h = n // 2``."""

    a0: int
    higher: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.a0 + 2 * sum(j * a for j, a in enumerate(self.higher, start=1))

    def factorial_product(self) -> int:
        """``a_0! a_1! ... a_h!``.

        ``a_0!`` is included: it is the ``m_1!`` of the Faa di Bruno
        multinomial ``n! / (m_1! m_2! m_4! ...)``.
        """
        out = factorial(self.a0)
        for a in self.higher:
            out *= factorial(a)
        return out


def _bounded_weighted(length: int, budget: int, weight: int = 1) -> Iterator[tuple[int, ...]]:
    # tuples (x_weight, ..., x_{weight+length-1}) with sum(j * x_j) <= budget, lex order
    if length == 0:
        yield ()
        return
    for x in range(budget // weight + 1):
        for rest in _bounded_weighted(length - 1, budget - x * weight, weight + 1):
            yield (x,) + rest


def enum_deriv_tuples(n: int) -> list[DerivTuple]:
    """All ``DerivTuple`` of order ``n``, lexicographic in ``(a_1, ..., a_h)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    h = n // 2
    out = []
    for higher in _bounded_weighted(h, h):
        a0 = n - 2 * sum(j * a for j, a in enumerate(higher, start=1))
        out.append(DerivTuple(a0, higher))
    return out


def enum_weak_compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    """Tuples of ``parts`` nonnegative ints summing to ``total``, lexicographic."""
    if parts < 1:
        raise ValueError("parts must be positive")
    if total < 0:
        return []

    def rec(remaining: int, slots: int) -> Iterator[tuple[int, ...]]:
        if slots == 1:
            yield (remaining,)
            return
        for x in range(remaining + 1):
            for rest in rec(remaining - x, slots - 1):
                yield (x,) + rest

    return list(rec(total, parts))


def enum_bounded_rows(cols: int, bound: int) -> list[tuple[int, ...]]:
    """Rows ``(e_1, ..., e_cols)`` of nonnegative ints with ``2 * sum <= bound``."""
    if cols < 1:
        raise ValueError("cols must be positive")
    limit = bound // 2
    rows = []
    for total in range(limit + 1):
        rows.extend(enum_weak_compositions(total, cols))
    rows.sort()
    return rows


def enum_bounded_matrices(rows: int, cols: int, bound: int) -> Iterator[BoundedRowMatrix]:
    """Stream every ``rows x cols`` matrix whose rows satisfy ``2 * sum(row) <= bound``.

    Row-major lexicographic order.  ``rows == 0`` yields the single empty
    matrix.  Nothing beyond the list of admissible rows is materialised.
    """
    if rows < 0:
        raise ValueError("rows must be nonnegative")
    candidates = enum_bounded_rows(cols, bound)
    return itertools.product(candidates, repeat=rows)
