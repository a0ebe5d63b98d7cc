"""Leading-order coefficients of joint moments of characteristic-polynomial
derivatives over Sp(2N), SO(2N) and O^-(2N).

For ``A`` Haar-distributed in the ensemble and ``Lambda_A(s) = det(I - A s)``,

    E[(Lambda^(n1)(1))^k1 (Lambda^(n2)(1))^k2]  ~  b * (2N)^e

as ``N -> oo``.  ``b`` is computed exactly in two independent ways:

* ``det``  -- sums over derivative tuples and weak compositions of
  ``u``-derivatives of determinants of ``g_m(u)`` series;
* ``comb`` -- sums over row-bounded integer matrices of reciprocal
  factorials times a Vandermonde-type product.

O^- coefficients are reduced to Sp ones with either backend.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod

from .enumeration import (
    enum_bounded_matrices,
    enum_deriv_tuples,
    enum_weak_compositions,
)
from .exact import factorial, g_series, multinomial, series_det

__all__ = [
    "Ensemble",
    "CoeffQuery",
    "CoeffResult",
    "InvalidQuery",
    "scaling_exponent",
    "b_det",
    "b_comb",
    "b_ominus",
    "coefficient",
    "first_moment_closed_form",
    "det_inner_sum",
    "true_sign",
]


class InvalidQuery(ValueError):
    """A query violates the admissible parameter range."""


class Ensemble(str, enum.Enum):
    SP = "sp"
    SO = "so"
    OMINUS = "ominus"

    @classmethod
    def parse(cls, value) -> "Ensemble":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "").replace("_", "")
        aliases = {"sp": cls.SP, "so": cls.SO, "ominus": cls.OMINUS, "o": cls.OMINUS}
        if key not in aliases:
            raise InvalidQuery(f"unknown ensemble {value!r}")
        return aliases[key]


@dataclass(frozen=True)
class CoeffQuery:
    """Identifies one coefficient ``b_{k1,k2}^G(n1, n2)``."""

    ensemble: Ensemble
    k1: int
    k2: int
    n1: int
    n2: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "ensemble", Ensemble.parse(self.ensemble))

    @property
    def k(self) -> int:
        return self.k1 + self.k2

    def validate(self) -> "CoeffQuery":
        for name in ("k1", "k2", "n1", "n2"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise InvalidQuery(f"{name} must be a nonnegative integer, got {value!r}")
        if self.n1 > self.n2:
            raise InvalidQuery(f"require n1 <= n2, got n1={self.n1}, n2={self.n2}")
        if self.k1 == 0 and self.k2 == 0:
            raise InvalidQuery("k1 and k2 must not both be 0")
        if self.ensemble is Ensemble.OMINUS and self.n1 < 1:
            raise InvalidQuery(f"O^- requires n1 >= 1, got n1={self.n1}")
        return self

    def with_ensemble(self, ensemble) -> "CoeffQuery":
        return CoeffQuery(ensemble, self.k1, self.k2, self.n1, self.n2)


@dataclass(frozen=True)
class CoeffResult:
    value: Fraction
    exponent: int
    formula_tag: str
    query: CoeffQuery


def scaling_exponent(q: CoeffQuery) -> int:
    """Power of ``2N`` multiplying the coefficient."""
    q.validate()
    k = q.k
    if q.ensemble is Ensemble.SP:
        return k * (k + 1) // 2 + q.k1 * q.n1 + q.k2 * q.n2
    if q.ensemble is Ensemble.SO:
        return k * (k - 1) // 2 + q.k1 * q.n1 + q.k2 * q.n2
    return k * (k + 1) // 2 + q.k1 * (q.n1 - 1) + q.k2 * (q.n2 - 1)


def true_sign(q: CoeffQuery) -> int:
    """Sign relating ``b`` to the moment of s-derivatives of ``det(I - A s)``.

    The coefficients are those of derivatives in the shift ``alpha`` of
    ``Lambda(e^{-alpha})`` (Sp) and of the O^- contour formula; the moment of
    ``Lambda^(n)(1)`` itself is ``true_sign(q) * b * (2N)^e`` to leading order.
    """
    if q.ensemble is Ensemble.SP:
        return -1 if (q.k1 * q.n1 + q.k2 * q.n2) % 2 else 1
    if q.ensemble is Ensemble.OMINUS:
        return -1 if q.k % 2 else 1
    return 1


def _pow2(e: int) -> Fraction:
    return Fraction(2) ** e


# --- determinant formula -------------------------------------------------


def _family_weights(n: int, count: int, length: int) -> dict[tuple[int, ...], Fraction]:
    """Aggregate the composition sum for ``count`` factors of order ``n``.

    Maps the contributed ``(m_1, ..., m_length)`` to the total weight
    ``multinomial(count; u) (n!)^count / prod (a_i!)^{u_i} / prod_j j^{m_j}``.
    """
    tuples = enum_deriv_tuples(n)
    out: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
    if count == 0:
        out[(0,) * length] = Fraction(1)
        return out
    nfact = factorial(n) ** count
    for u in enum_weak_compositions(count, len(tuples)):
        m = [0] * length
        denom = 1
        for ui, t in zip(u, tuples):
            if not ui:
                continue
            denom *= t.factorial_product() ** ui
            for j, a in enumerate(t.higher):
                m[j] += ui * a
        for j, mj in enumerate(m, start=1):
            denom *= j ** mj
        out[tuple(m)] += Fraction(multinomial(count, u) * nfact, denom)
    return out


@lru_cache(maxsize=None)
def _det_coefficient(k: int, offset: int, shifts: tuple[int, ...], order: int) -> Fraction:
    # order! [u^order] det( g_{2i - j + offset + shifts[i]}(u) ), i, j = 1..k
    entries = [
        [g_series(2 * i - j + offset + shifts[i - 1], order) for j in range(1, k + 1)]
        for i in range(1, k + 1)
    ]
    return series_det(entries).derivative_at_zero(order)


@lru_cache(maxsize=None)
def det_inner_sum(k: int, m: tuple[int, ...], offset: int) -> Fraction:
    """Inner sum over splittings of ``m_2, ..., m_n`` into ``k`` parts.

    ``sum prod_s multinomial(m_s; m_{s,.}) (d/du)^{m_1} det(g_{2i-j+offset+2 sum_s s m_{s,i}}(u))|_{u=0}``
    with ``n = len(m)``; ``offset`` is 0 for Sp and -1 for SO.
    """
    m1 = m[0] if m else 0
    splits_per_s = [
        [(c, multinomial(ms, c)) for c in enum_weak_compositions(ms, k)] for ms in m[1:]
    ]
    total = Fraction(0)
    # accumulate by row-shift vector: different splittings can give the same shifts
    by_shift: dict[tuple[int, ...], int] = defaultdict(int)

    def rec(s_index: int, shifts: list[int], weight: int) -> None:
        if s_index == len(splits_per_s):
            by_shift[tuple(shifts)] += weight
            return
        s = s_index + 2
        for comp, mult in splits_per_s[s_index]:
            rec(
                s_index + 1,
                [sh + 2 * s * c for sh, c in zip(shifts, comp)],
                weight * mult,
            )

    rec(0, [0] * k, 1)
    for shifts, weight in by_shift.items():
        total += weight * _det_coefficient(k, offset, shifts, m1)
    return total


def b_det(q: CoeffQuery) -> CoeffResult:
    """Coefficient for Sp or SO via determinants of ``g_m(u)`` series."""
    q.validate()
    if q.ensemble is Ensemble.OMINUS:
        raise InvalidQuery("b_det handles Sp and SO; use b_ominus for O^-")
    k, k1, k2, n1, n2 = q.k, q.k1, q.k2, q.n1, q.n2
    h2 = n2 // 2
    first = _family_weights(n1, k1, h2)
    second = _family_weights(n2, k2, h2)
    offset = 0 if q.ensemble is Ensemble.SP else -1

    total = Fraction(0)
    for ma, wa in first.items():
        for mb, wb in second.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            inner = det_inner_sum(k, m, offset)
            if inner:
                total += wa * wb * inner

    e = k1 * n1 + k2 * n2
    if q.ensemble is Ensemble.SP:
        sign = -1 if e % 2 else 1
        value = sign * total / _pow2(k * (k + 1) // 2 + e)
    else:
        value = total / _pow2(k * (k - 3) // 2 + e)
    return CoeffResult(value, scaling_exponent(q), "det", q)


# --- combinatorial formula -----------------------------------------------


def _column_sums(count: int, k: int, n: int) -> dict[tuple[int, ...], int]:
    """Stream the row-bounded matrices and aggregate by column sums.

    Each row ``l`` carries the integer weight ``n! / (n - 2 sum(l))!``.
    """
    out: dict[tuple[int, ...], int] = defaultdict(int)
    nfact = factorial(n)
    row_weight = {}
    for mat in enum_bounded_matrices(count, k, n):
        w = 1
        for row in mat:
            rw = row_weight.get(row)
            if rw is None:
                rw = row_weight[row] = nfact // factorial(n - 2 * sum(row))
            w *= rw
        cols = tuple(map(sum, zip(*mat))) if mat else (0,) * k
        out[cols] += w
    return out


def _vandermonde_term(V: tuple[int, ...], k: int, shift: int) -> Fraction:
    # prod_j 1/(2k + V_j - 2j + shift)!  *  prod_{i<j} (V_j - V_i - 2j + 2i)
    num = 1
    for i in range(k):
        for j in range(i + 1, k):
            num *= V[j] - V[i] - 2 * (j - i)
            if not num:
                return Fraction(0)
    den = prod(factorial(2 * k + V[j] - 2 * (j + 1) + shift) for j in range(k))
    return Fraction(num, den)


def b_comb(q: CoeffQuery) -> CoeffResult:
    """Coefficient for Sp or SO via sums over row-bounded integer matrices."""
    q.validate()
    if q.ensemble is Ensemble.OMINUS:
        raise InvalidQuery("b_comb handles Sp and SO; use b_ominus for O^-")
    k, k1, k2, n1, n2 = q.k, q.k1, q.k2, q.n1, q.n2
    shift = 1 if q.ensemble is Ensemble.SP else 0
    first = _column_sums(k1, k, n1)
    second = _column_sums(k2, k, n2)

    grouped: dict[tuple[int, ...], int] = defaultdict(int)
    for ca, wa in first.items():
        for cb, wb in second.items():
            grouped[tuple(2 * (a + b) for a, b in zip(ca, cb))] += wa * wb
    total = Fraction(0)
    for V, w in grouped.items():
        total += w * _vandermonde_term(V, k, shift)

    e = k1 * n1 + k2 * n2
    tri = k * (k - 1) // 2
    if q.ensemble is Ensemble.SP:
        sign = -1 if (tri + e) % 2 else 1
        value = sign * total / _pow2(k * (k + 1) // 2 + e)
    else:
        sign = -1 if tri % 2 else 1
        value = sign * total / _pow2(k * (k - 3) // 2 + e)
    return CoeffResult(value, scaling_exponent(q), "comb", q)


# --- O^- and dispatch ----------------------------------------------------

_BACKENDS = {"det": b_det, "comb": b_comb}


def b_ominus(q: CoeffQuery, backend: str = "comb") -> CoeffResult:
    """O^- coefficient through its reduction to ``b^Sp(k1, k2, n1-1, n2-1)``."""
    if q.ensemble is not Ensemble.OMINUS:
        raise InvalidQuery("b_ominus needs an O^- query")
    q.validate()
    if backend not in _BACKENDS:
        raise ValueError(f"unknown backend {backend!r}")
    sp = CoeffQuery(Ensemble.SP, q.k1, q.k2, q.n1 - 1, q.n2 - 1)
    base = _BACKENDS[backend](sp).value
    sign = -1 if (q.k1 * (q.n1 - 1) + q.k2 * (q.n2 - 1)) % 2 else 1
    value = sign * 2**q.k * q.n1**q.k1 * q.n2**q.k2 * base
    return CoeffResult(value, scaling_exponent(q), "ominus_reduction", q)


def coefficient(q: CoeffQuery, backend: str = "comb") -> CoeffResult:
    """Dispatch on ensemble; ``backend`` is ``det`` or ``comb``."""
    if backend not in _BACKENDS:
        raise ValueError(f"unknown backend {backend!r}")
    if Ensemble.parse(q.ensemble) is Ensemble.OMINUS:
        return b_ominus(q, backend)
    return _BACKENDS[backend](q)


def first_moment_closed_form(ensemble, n: int) -> Fraction:
    """``b_{0,1}(0, n)``: ``(-1)^n / (2(n+1))`` for Sp and ``1`` for SO."""
    ensemble = Ensemble.parse(ensemble)
    if n < 1:
        raise InvalidQuery(f"closed form needs n >= 1, got {n}")
    if ensemble is Ensemble.SP:
        return Fraction((-1) ** n, 2 * (n + 1))
    if ensemble is Ensemble.SO:
        return Fraction(1)
    raise InvalidQuery("closed form is stated for Sp and SO only")
