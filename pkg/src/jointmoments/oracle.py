"""Brute-force verification of the intermediate identities, and exact
small-N Weyl quadrature used as ground truth for the Monte Carlo engine.

Contour integrals ``(2 pi i)^{-k} \\oint ... dw / w^d`` are evaluated as
coefficient extraction from exactly expanded Laurent series whose
coefficients are polynomials in a formal symbol ``N``.  Every identity is
therefore an equality of polynomials with rational coefficients.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np

from .coefficients import (
    CoeffQuery,
    Ensemble,
    b_comb,
    b_det,
    det_inner_sum,
    first_moment_closed_form,
)
from .enumeration import enum_deriv_tuples, enum_weak_compositions
from .exact import TruncatedSeries, factorial, laplace_det

__all__ = [
    "FormalPolyN",
    "MultiLaurent",
    "WindowError",
    "CheckResult",
    "contour_extract",
    "vandermonde",
    "power_sum",
    "exp_linear",
    "check_integral_prop1",
    "check_integral_prop2",
    "derivative_three_ways",
    "check_derivative_lemmas",
    "check_gamma_det",
    "weyl_quadrature_moment",
    "run_suite",
    "SUITES",
]


# --- polynomials in N ----------------------------------------------------


class FormalPolyN:
    """Polynomial in the formal symbol ``N`` with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()) -> None:
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, coeff, power: int) -> "FormalPolyN":
        if power < 0:
            raise ValueError("negative power of N")
        return cls([0] * power + [coeff])

    @classmethod
    def const(cls, value) -> "FormalPolyN":
        return cls([value])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FormalPolyN.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return FormalPolyN([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return FormalPolyN([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FormalPolyN([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return FormalPolyN()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return FormalPolyN(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = FormalPolyN.const(other)
        if not isinstance(other, FormalPolyN):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = [f"({c})*N^{p}" for p, c in enumerate(self.coeffs) if c]
        return " + ".join(terms)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


# --- multivariate Laurent series -----------------------------------------


class WindowError(ValueError):
    """The requested coefficient lies outside the expansion window."""


Window = tuple[tuple[int, int], ...]


class MultiLaurent:
    """Sparse Laurent series in ``w_1..w_k`` over ``Q[N]``.

    Only exponents inside ``window`` (per-variable ``[lo, hi]``) are kept;
    products drop every term that leaves the window.
    """

    __slots__ = ("window", "terms")

    def __init__(self, window: Sequence[tuple[int, int]], terms: dict | None = None) -> None:
        self.window: Window = tuple((int(lo), int(hi)) for lo, hi in window)
        self.terms: dict[tuple[int, ...], FormalPolyN] = {}
        for exps, c in (terms or {}).items():
            self._add_term(tuple(exps), c if isinstance(c, FormalPolyN) else FormalPolyN.const(c))

    @property
    def nvars(self) -> int:
        return len(self.window)

    def _inside(self, exps: tuple[int, ...]) -> bool:
        return all(lo <= e <= hi for e, (lo, hi) in zip(exps, self.window))

    def _add_term(self, exps: tuple[int, ...], c: FormalPolyN) -> None:
        if not c or not self._inside(exps):
            return
        prev = self.terms.get(exps)
        new = c if prev is None else prev + c
        if new:
            self.terms[exps] = new
        elif prev is not None:
            del self.terms[exps]

    @classmethod
    def one(cls, window) -> "MultiLaurent":
        return cls(window, {(0,) * len(window): 1})

    def _compatible(self, other: "MultiLaurent") -> None:
        if self.window != other.window:
            raise WindowError(f"window mismatch: {self.window} vs {other.window}")

    def __add__(self, other: "MultiLaurent") -> "MultiLaurent":
        self._compatible(other)
        out = MultiLaurent(self.window, dict(self.terms))
        for exps, c in other.terms.items():
            out._add_term(exps, c)
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FormalPolyN)):
            out = MultiLaurent(self.window)
            for exps, c in self.terms.items():
                out._add_term(exps, c * other)
            return out
        self._compatible(other)
        out = MultiLaurent(self.window)
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                if self._inside(exps):
                    out._add_term(exps, ca * cb)
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiLaurent":
        out = MultiLaurent.one(self.window)
        for _ in range(n):
            out = out * self
        return out

    def coefficient(self, exps: Sequence[int]) -> FormalPolyN:
        exps = tuple(exps)
        if not self._inside(exps):
            raise WindowError(f"exponent {exps} outside window {self.window}")
        return self.terms.get(exps, FormalPolyN())

    def widened(self, window) -> "MultiLaurent":
        """Same terms restricted to a new window (used to test monotonicity)."""
        return MultiLaurent(window, self.terms)


def contour_extract(integrand: MultiLaurent, divisor_exponents: Sequence[int]) -> FormalPolyN:
    """``(2 pi i)^{-k} \\oint ... integrand prod dw_i / w_i^{d_i}``.

    Equals the coefficient of ``prod w_i^{d_i - 1}``.  Raises
    :class:`WindowError` if that exponent lies outside the window.
    """
    if len(divisor_exponents) != integrand.nvars:
        raise ValueError("one divisor exponent per variable is required")
    return integrand.coefficient([d - 1 for d in divisor_exponents])


def vandermonde(window, squared: bool = False) -> MultiLaurent:
    """``prod_{i<j} (w_i - w_j)``, or of the squares when ``squared``."""
    k = len(window)
    p = 2 if squared else 1
    out = MultiLaurent.one(window)
    for i in range(k):
        for j in range(i + 1, k):
            ei = tuple(p if t == i else 0 for t in range(k))
            ej = tuple(p if t == j else 0 for t in range(k))
            out = out * MultiLaurent(window, {ei: 1, ej: -1})
    return out


def power_sum(window, power: int) -> MultiLaurent:
    """``sum_i w_i^power``."""
    k = len(window)
    return MultiLaurent(window, {tuple(power if t == i else 0 for t in range(k)): 1 for i in range(k)})


def exp_linear(window, var: int, step: int = 1) -> MultiLaurent:
    """``exp(N w_var^step)`` expanded as far as the window allows (``step`` may be negative)."""
    k = len(window)
    lo, hi = window[var]
    out = MultiLaurent(window)
    t = 0
    while True:
        e = step * t
        if e > hi or e < lo:
            break
        exps = tuple(e if v == var else 0 for v in range(k))
        out._add_term(exps, FormalPolyN.monomial(Fraction(1, factorial(t)), t))
        t += 1
    return out


# --- identity checks -----------------------------------------------------


@dataclass
class CheckResult:
    name: str
    params: dict[str, Any]
    passed: bool
    witness: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        out = {"identity": self.name, "params": self.params, "passed": self.passed}
        if not self.passed:
            out["witness"] = self.witness
        return out


def _poly_witness(lhs, rhs) -> dict[str, Any]:
    conv = (lambda p: p.to_json()) if isinstance(lhs, FormalPolyN) else str
    return {"lhs": conv(lhs), "rhs": conv(rhs)}


def check_integral_prop1(k: int, m: Sequence[int], identity: int = 1) -> CheckResult:
    """Contour integral of ``Delta(w) Delta(w^2) e^{N sum w} prod_j (sum_i w_i^{-2j})^{m_j}``.

    ``identity=1`` uses the divisor ``w_i^{2k}`` (Sp-type rows ``g_{2i-j+...}``),
    ``identity=2`` the divisor ``w_i^{2k-1}`` (SO-type rows ``g_{2i-j-1+...}``).
    The brute-force extraction must equal the determinant expression exactly.
    """
    if identity not in (1, 2):
        raise ValueError("identity must be 1 or 2")
    m = tuple(m)
    if k < 1 or not m or any(x < 0 for x in m):
        raise ValueError("need k >= 1 and a nonempty tuple of nonnegative m_j")
    d = 2 * k if identity == 1 else 2 * k - 1
    weighted = sum(j * mj for j, mj in enumerate(m, start=1))
    negcap = 2 * weighted
    window = ((-negcap, d - 1 + negcap),) * k

    integrand = vandermonde(window) * vandermonde(window, squared=True)
    for j, mj in enumerate(m, start=1):
        if mj:
            integrand = integrand * power_sum(window, -2 * j) ** mj
    for v in range(k):
        integrand = integrand * exp_linear(window, v)
    lhs = contour_extract(integrand, [d] * k)

    base = k * (k + 1) // 2 if identity == 1 else k * (k - 1) // 2
    sign = -1 if (k * (k - 1) // 2) % 2 else 1
    inner = det_inner_sum(k, m, 0 if identity == 1 else -1)
    rhs = FormalPolyN.monomial(sign * factorial(k) * inner, base + 2 * weighted)
    return CheckResult(
        "integral_prop1", {"k": k, "m": list(m), "identity": identity}, lhs == rhs, _poly_witness(lhs, rhs)
    )


def _gamma_entry_poly(p: int) -> FormalPolyN:
    # N^p / Gamma(p + 1), zero when p + 1 is a non-positive integer
    if p < 0:
        return FormalPolyN()
    return FormalPolyN.monomial(Fraction(1, factorial(p)), p)


def check_integral_prop2(k: int, m: Sequence[int]) -> CheckResult:
    """``\\oint Delta(w) Delta(w^2) e^{N sum w} / prod w_j^{2k+m_j}`` against the
    permutation sum of determinants of ``N^p / Gamma(p+1)``."""
    m = tuple(m)
    if len(m) != k or k < 1:
        raise ValueError("need k >= 1 and len(m) == k")
    targets = [2 * k + mj - 1 for mj in m]
    window = tuple((min(0, t), max(0, t)) for t in targets)
    integrand = vandermonde(window) * vandermonde(window, squared=True)
    for v in range(k):
        integrand = integrand * exp_linear(window, v)
    lhs = contour_extract(integrand, [2 * k + mj for mj in m])

    rhs = FormalPolyN()
    for mu in itertools.permutations(range(k)):
        mat = [
            [_gamma_entry_poly(2 * k + m[mu[i - 1]] - 2 * i - j + 2) for j in range(1, k + 1)]
            for i in range(1, k + 1)
        ]
        rhs = rhs + laplace_det(mat, FormalPolyN())
    return CheckResult("integral_prop2", {"k": k, "m": list(m)}, lhs == rhs, _poly_witness(lhs, rhs))


def derivative_three_ways(n: int, w: Sequence[Fraction], N: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    """``(d/dalpha)^n e^{-N alpha} / prod_i (w_i^2 - alpha^2)`` at ``alpha = 0``.

    Returned as (direct series expansion, sum over even ``l_j``,
    Faa di Bruno sum over partitions with odd parts > 1 excluded).
    """
    k = len(w)
    inv_sq = Fraction(1)
    for wi in w:
        inv_sq /= wi * wi

    series = TruncatedSeries.from_iterable(
        [(-N) ** t / factorial(t) for t in range(n + 1)]
    )
    for wi in w:
        geo = [Fraction(0)] * (n + 1)
        for t in range(0, n + 1, 2):
            geo[t] = 1 / wi ** (t + 2)
        series = series * TruncatedSeries(tuple(geo))
    direct = series.derivative_at_zero(n)

    even_sum = Fraction(0)
    for mm in range(0, n + 1, 2):
        inner = Fraction(0)
        for half in enum_weak_compositions(mm // 2, k):
            term = Fraction(1)
            for wi, h in zip(w, half):
                term /= wi ** (2 * h)
            inner += term
        even_sum += math.comb(n, mm) * (-N) ** (n - mm) * factorial(mm) * inner
    even_sum *= inv_sq

    faa = Fraction(0)
    for t in enum_deriv_tuples(n):
        term = Fraction(factorial(n), t.factorial_product()) * (-N) ** t.a0
        for j, mult in enumerate(t.higher, start=1):
            if mult:
                ps = sum(1 / wi ** (2 * j) for wi in w)
                term *= (ps / j) ** mult
        faa += term
    faa *= inv_sq
    return direct, even_sum, faa


def _draw_points(rng: random.Random, k: int) -> tuple[list[Fraction], Fraction]:
    while True:
        w = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9)) for _ in range(k)]
        if len({abs(x) for x in w}) == k:
            break
    N = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    return w, N


def check_derivative_lemmas(n: int, k: int, trials: int = 50, seed: int = 0) -> CheckResult:
    """Threefold agreement of :func:`derivative_three_ways` at random rational points."""
    rng = random.Random(f"derivative-lemmas:{seed}:{n}:{k}")
    for trial in range(trials):
        w, N = _draw_points(rng, k)
        values = derivative_three_ways(n, w, N)
        if not (values[0] == values[1] == values[2]):
            return CheckResult(
                "derivative_lemmas",
                {"n": n, "k": k, "trials": trials, "seed": seed},
                False,
                {"trial": trial, "w": [str(x) for x in w], "N": str(N), "values": [str(v) for v in values]},
            )
    return CheckResult("derivative_lemmas", {"n": n, "k": k, "trials": trials, "seed": seed}, True)


def check_gamma_det(k: int, m: Sequence[int]) -> CheckResult:
    """``det(1/Gamma(2k + m_i - 2i - j + 2))`` against its product form."""
    m = tuple(m)
    if len(m) != k or any(x < 0 for x in m):
        raise ValueError("need k nonnegative m_j")

    def inv_gamma(z: int) -> Fraction:
        return Fraction(1, factorial(z - 1)) if z >= 1 else Fraction(0)

    mat = [[inv_gamma(2 * k + m[i - 1] - 2 * i - j + 2) for j in range(1, k + 1)] for i in range(1, k + 1)]
    lhs = laplace_det(mat, Fraction(0))
    rhs = Fraction(1)
    for j in range(1, k + 1):
        rhs /= factorial(2 * k + m[j - 1] - 2 * j)
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            rhs *= m[j - 1] - m[i - 1] - 2 * j + 2 * i
    return CheckResult("gamma_det", {"k": k, "m": list(m)}, lhs == rhs, _poly_witness(lhs, rhs))


# --- small-N Weyl quadrature ---------------------------------------------

_QUAD_NODES = 48


def _chebyshev_rule(kind: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    # Gauss-Chebyshev nodes/weights for weight (1-x^2)^{-1/2} (kind 1) or (1-x^2)^{1/2} (kind 2)
    if kind == 1:
        x, wts = np.polynomial.chebyshev.chebgauss(n)
        return x, wts
    t = np.arange(1, n + 1) * np.pi / (n + 1)
    return np.cos(t), np.pi / (n + 1) * np.sin(t) ** 2


def _lambda_derivative(cosines: Sequence[float], fixed: Sequence[int], order: int) -> float:
    # Lambda(s) = prod (1 - 2 x s + s^2) prod (1 - eps s); coefficients then sum c_j j!/(j-n)!
    poly = np.array([1.0])
    for x in cosines:
        poly = np.polynomial.polynomial.polymul(poly, [1.0, -2.0 * x, 1.0])
    for eps in fixed:
        poly = np.polynomial.polynomial.polymul(poly, [1.0, -float(eps)])
    if order >= len(poly):
        return 0.0
    return float(sum(c * math.perm(j, order) for j, c in enumerate(poly) if j >= order))


def _falling(i: int, n: int) -> int:
    out = 1
    for t in range(n):
        out *= i - t
    return out


def _invariant_multiplicity(ensemble: Ensemble, N: int, i: int, j: int) -> int:
    """``E[e_i(A) e_j(A)]``, the multiplicity of the trivial representation in
    ``Lambda^i (x) Lambda^j`` of the standard representation."""
    mi, mj = min(i, 2 * N - i), min(j, 2 * N - j)
    if ensemble is Ensemble.SP:
        # Lambda^i = omega_m + omega_{m-2} + ..., all self-dual
        return min(mi, mj) // 2 + 1 if (i - j) % 2 == 0 else 0
    # Lambda^i = Lambda^{2N-i} is irreducible except at the middle, which splits in two
    return (2 if mi == N else 1) if mi == mj else 0


def exact_pair_moment(q: CoeffQuery, N: int) -> int:
    """Exact finite-``N`` moment for Sp or SO when ``k1 + k2 <= 2``.

    Expands ``Lambda(s) = sum_i (-1)^i e_i(A) s^i`` and averages products of
    elementary symmetric functions by representation theory, so any ``N``
    is cheap.
    """
    ensemble = Ensemble.parse(q.ensemble)
    if ensemble is Ensemble.OMINUS or q.k1 + q.k2 > 2:
        raise ValueError("exact pair moments cover Sp and SO with k1 + k2 <= 2")
    # coefficient of e_i in each factor; an absent factor is the constant 1
    factors = [[(-1) ** i * _falling(i, order) for i in range(2 * N + 1)] for order in [q.n1] * q.k1 + [q.n2] * q.k2]
    while len(factors) < 2:
        factors.append([1])
    return sum(
        ci * cj * _invariant_multiplicity(ensemble, N, i, j)
        for i, ci in enumerate(factors[0])
        for j, cj in enumerate(factors[1])
    )


def weyl_quadrature_moment(q: CoeffQuery, N: int) -> float:
    """``E[(Lambda^(n1)(1))^k1 (Lambda^(n2)(1))^k2]`` for ``2N <= 4`` by Weyl integration.

    In ``x = cos(theta)`` the eigenangle densities are
    ``prod_{i<j} (x_i - x_j)^2 prod_i (1 - x_i^2)^{+-1/2}`` (``+`` for Sp and
    for the ``N-1`` free angles of O^-, ``-`` for SO), with O^- carrying
    the fixed eigenvalues ``+1, -1``.  The integrand is a polynomial in the
    ``x_i``, so the tensor Gauss-Chebyshev rule is exact up to rounding;
    normalisation uses the same rule.
    """
    ensemble = Ensemble.parse(q.ensemble)
    if N not in (1, 2):
        raise ValueError(f"quadrature oracle supports N in (1, 2), got N={N}")
    if ensemble is Ensemble.OMINUS:
        n_angles, fixed, kind = N - 1, (1, -1), 2
    else:
        n_angles, fixed, kind = N, (), (2 if ensemble is Ensemble.SP else 1)

    def integrand(xs: Sequence[float]) -> float:
        out = 1.0
        for count, order in ((q.k1, q.n1), (q.k2, q.n2)):
            if count:
                out *= _lambda_derivative(xs, fixed, order) ** count
        return out

    if n_angles == 0:
        return integrand(())
    x, wts = _chebyshev_rule(kind, _QUAD_NODES)
    num = den = 0.0
    for idx in itertools.product(range(_QUAD_NODES), repeat=n_angles):
        xs = [x[i] for i in idx]
        weight = math.prod(wts[i] for i in idx)
        for a in range(n_angles):
            for b in range(a + 1, n_angles):
                weight *= (xs[a] - xs[b]) ** 2
        num += weight * integrand(xs)
        den += weight
    return num / den


# --- suites --------------------------------------------------------------


def _m_tuples(max_weight: int) -> list[tuple[int, ...]]:
    # tuples (m_1..m_n), n >= 1, with sum j*m_j <= max_weight and a nonzero last entry (or n=1)
    out = []
    for n in range(1, max_weight + 1 if max_weight > 0 else 2):
        for t in itertools.product(*(range(max_weight // j + 1) for j in range(1, n + 1))):
            if sum(j * x for j, x in enumerate(t, start=1)) <= max_weight and (n == 1 or t[-1]):
                out.append(t)
    return out


def suite_props(max_k: int = 2, max_weight: int = 3, max_k2: int = 3, max_abs_m: int = 4) -> list[CheckResult]:
    results = []
    for k in range(1, max_k + 1):
        for m in _m_tuples(max_weight):
            for identity in (1, 2):
                results.append(check_integral_prop1(k, m, identity))
    for k in range(1, max_k2 + 1):
        for m in itertools.product(range(-max_abs_m, max_abs_m + 1), repeat=k):
            results.append(check_integral_prop2(k, m))
    return results


def suite_lemmas(max_n: int = 6, max_k: int = 3, trials: int = 50, seed: int = 0) -> list[CheckResult]:
    return [
        check_derivative_lemmas(n, k, trials, seed)
        for n in range(max_n + 1)
        for k in range(1, max_k + 1)
    ]


def suite_gamma(max_k: int = 5, max_m: int = 6) -> list[CheckResult]:
    return [
        check_gamma_det(k, m)
        for k in range(1, max_k + 1)
        for m in itertools.product(range(max_m + 1), repeat=k)
    ]


def suite_closed(max_n: int = 20) -> list[CheckResult]:
    results = []
    for ens in (Ensemble.SP, Ensemble.SO):
        for n in range(1, max_n + 1):
            got = b_comb(CoeffQuery(ens, 0, 1, 0, n)).value
            want = first_moment_closed_form(ens, n)
            results.append(
                CheckResult("closed_form", {"ensemble": ens.value, "n": n}, got == want, _poly_witness(got, want))
            )
    return results


def suite_cross(max_k: int = 4, max_n: int = 5) -> list[CheckResult]:
    results = []
    for ens in (Ensemble.SP, Ensemble.SO):
        for k in range(1, max_k + 1):
            for k1 in range(k + 1):
                for n2 in range(max_n + 1):
                    for n1 in range(n2 + 1):
                        q = CoeffQuery(ens, k1, k - k1, n1, n2)
                        d, c = b_det(q).value, b_comb(q).value
                        results.append(
                            CheckResult(
                                "cross_formula",
                                {"ensemble": ens.value, "k1": k1, "k2": k - k1, "n1": n1, "n2": n2},
                                d == c,
                                {"det": str(d), "comb": str(c)},
                            )
                        )
    return results


SUITES = ("props", "lemmas", "gamma", "closed", "cross")


def run_suite(name: str, max_k: int | None = None, max_n: int | None = None, seed: int = 0) -> list[CheckResult]:
    """Run a named suite; ``max_k``/``max_n`` override the default grid bounds."""
    if name == "props":
        k = 2 if max_k is None else max_k
        return suite_props(max_k=k, max_weight=3 if max_n is None else max_n, max_k2=max(k, 3) if max_k is None else k)
    if name == "lemmas":
        return suite_lemmas(max_n=6 if max_n is None else max_n, max_k=3 if max_k is None else max_k, seed=seed)
    if name == "gamma":
        return suite_gamma(max_k=5 if max_k is None else max_k, max_m=6 if max_n is None else max_n)
    if name == "closed":
        return suite_closed(max_n=20 if max_n is None else max_n)
    if name == "cross":
        return suite_cross(max_k=4 if max_k is None else max_k, max_n=5 if max_n is None else max_n)
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
