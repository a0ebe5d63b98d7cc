"""Haar Monte Carlo for joint moments of ``Lambda_A^(n)(1)``, ``Lambda_A(s) = det(I - A s)``.

Samples are produced in fixed-size chunks.  Chunk ``i`` draws from
``Philox(seed)`` jumped ``i`` times, so the stream depends only on
``(seed, count)`` and never on the number of worker threads.  Chunk
statistics are merged with a fixed pairwise tree, which makes the float
result bit-identical across runs and thread counts.

Backends
--------
``lapack``
    Default.  SO/O^-: QR of a Gaussian matrix with sign-corrected ``R``,
    determinant fixed by negating the first column, eigenvalues of the
    symmetric part.  Sp: complex QR of a quaternion-structured Gaussian matrix with
    phase-corrected ``R``, eigenvalues of the Hermitian part.
``jacobi``
    Same matrices, eigenvalues by cyclic Jacobi sweeps.  Slow; for tests.
``metropolis``
    Random-walk Metropolis on the Weyl eigenangle density.  Cross-check only.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .coefficients import (
    CoeffQuery,
    Ensemble,
    InvalidQuery,
    coefficient,
    scaling_exponent,
    true_sign,
)

__all__ = [
    "CHUNK_SIZE",
    "PAIR_TOL",
    "BACKENDS",
    "HaarSample",
    "MomentEstimate",
    "AsymptoticReport",
    "JacobiNonConvergence",
    "chunk_rng",
    "sample",
    "sample_cosines",
    "jacobi_eigvalsh",
    "lambda_taylor_at_one",
    "char_derivs_at_one",
    "normalization_exponent",
    "estimate_moment",
    "estimate_moments",
    "asymptotic_report",
    "asymptotic_reports",
]

log = logging.getLogger(__name__)

CHUNK_SIZE = 1000
PAIR_TOL = 1e-8
BACKENDS = ("lapack", "jacobi", "metropolis")


def chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    """Counter-based generator for chunk ``chunk`` of stream ``seed``."""
    return np.random.Generator(np.random.Philox(seed).jumped(chunk))


# --- samples -------------------------------------------------------------


def _fixed_eigs(ensemble: Ensemble) -> tuple[int, ...]:
    return (1, -1) if ensemble is Ensemble.OMINUS else ()


def _n_pairs(ensemble: Ensemble, N: int) -> int:
    return N - 1 if ensemble is Ensemble.OMINUS else N


@dataclass(frozen=True)
class HaarSample:
    """Eigenangles (one per conjugate pair) and fixed eigenvalues of a sample."""

    ensemble: Ensemble
    angles: tuple[float, ...]
    fixed_eigs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "ensemble", Ensemble.parse(self.ensemble))
        if tuple(self.fixed_eigs) != _fixed_eigs(self.ensemble):
            raise ValueError(f"{self.ensemble.value} samples carry fixed eigenvalues {_fixed_eigs(self.ensemble)}")
        if any(not 0.0 <= a <= math.pi for a in self.angles):
            raise ValueError("angles must lie in [0, pi]")

    @property
    def N(self) -> int:
        return (2 * len(self.angles) + len(self.fixed_eigs)) // 2

    @property
    def cosines(self) -> np.ndarray:
        return np.cos(np.asarray(self.angles, dtype=float))

    def eigenvalues(self) -> np.ndarray:
        theta = np.asarray(self.angles, dtype=float)
        pairs = np.concatenate([np.exp(1j * theta), np.exp(-1j * theta)])
        return np.concatenate([pairs, np.asarray(self.fixed_eigs, dtype=complex)])


class JacobiNonConvergence(RuntimeError):
    """Cyclic Jacobi exceeded its sweep budget."""


def jacobi_eigvalsh(S: np.ndarray, tol: float = 1e-14, max_sweeps: int = 60) -> np.ndarray:
    """Ascending eigenvalues of a real symmetric or complex Hermitian matrix.

    Complex input is embedded as ``[[Re, -Im], [Im, Re]]``, whose spectrum
    is that of ``S`` with every eigenvalue doubled; the doubled values are
    returned as computed.
    """
    S = np.asarray(S)
    if np.iscomplexobj(S):
        re, im = S.real, S.imag
        A = np.block([[re, -im], [im, re]])
    else:
        A = np.array(S, dtype=float)
    n = A.shape[0]
    scale = max(np.abs(A).max(), 1.0)
    for _ in range(max_sweeps):
        off = math.sqrt(np.sum(np.triu(A, 1) ** 2))
        if off <= tol * scale:
            return np.sort(np.diag(A))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-18 * scale:
                    A[p, q] = A[q, p] = 0.0
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :], A[q, :] = c * rp - s * rq, s * rp + c * rq
                cp, cq = A[:, p].copy(), A[:, q].copy()
                A[:, p], A[:, q] = c * cp - s * cq, s * cp + c * cq
                A[p, q] = A[q, p] = 0.0
    raise JacobiNonConvergence(f"no convergence in {max_sweeps} sweeps (n={n})")


def _haar_orthogonal(rng: np.random.Generator, N: int, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Haar ``O(2N)`` matrices and their determinants."""
    n = 2 * N
    Q, R = np.linalg.qr(rng.standard_normal((count, n, n)))
    signs = np.sign(np.diagonal(R, axis1=1, axis2=2))
    Q *= signs[:, None, :]
    # LAPACK's Householder Q is a product of n - 1 reflections
    det = (-1.0) ** (n - 1) * np.prod(signs, axis=1)
    if np.sign(np.linalg.det(Q[0])) != det[0]:
        det = np.sign(np.linalg.det(Q))
    return Q, det


def _to_component(Q: np.ndarray, det: np.ndarray, det_sign: int) -> np.ndarray:
    # right multiplication by a fixed reflection preserves Haar measure and flips det
    Q[det != det_sign, :, 0] *= -1.0
    return Q


def _orthogonal_matrices(rng: np.random.Generator, N: int, count: int, det_sign: int) -> np.ndarray:
    Q, det = _haar_orthogonal(rng, N, count)
    return _to_component(Q, det, det_sign)


def _symplectic_matrices(rng: np.random.Generator, N: int, count: int) -> np.ndarray:
    # Coordinates interleaved (x_1, y_1, x_2, y_2, ...); the partner of v is
    # (-conj y_1, conj x_1, ...).  QR of columns (g_1, partner g_1, g_2, ...)
    # with positive diagonal equals symplectic Gram-Schmidt, hence lies in
    # USp(2N) (in this basis) and is Haar by left equivariance.
    n = 2 * N
    # standard complex Gaussians up to a positive scale, which QR ignores
    g = rng.standard_normal((count, n, 2 * N)).view(complex)
    M = np.empty((count, n, n), dtype=complex)
    M[:, :, 0::2] = g
    M[:, 0::2, 1::2] = -np.conj(g[:, 1::2])
    M[:, 1::2, 1::2] = np.conj(g[:, 0::2])
    Q, R = np.linalg.qr(M)
    d = np.diagonal(R, axis1=1, axis2=2)
    Q *= (d / np.abs(d))[:, None, :]
    return Q


def _pair_cosines(ev: np.ndarray, ensemble: Ensemble) -> tuple[np.ndarray, np.ndarray]:
    """Sorted spectra of the symmetric part -> (cosines, ok mask)."""
    ok = np.ones(ev.shape[0], dtype=bool)
    if ensemble is Ensemble.OMINUS:
        ok &= (np.abs(ev[:, 0] + 1.0) <= PAIR_TOL) & (np.abs(ev[:, -1] - 1.0) <= PAIR_TOL)
        ev = ev[:, 1:-1]
    lo, hi = ev[:, 0::2], ev[:, 1::2]
    if lo.shape[1]:
        ok &= np.max(np.abs(hi - lo), axis=1) <= PAIR_TOL
    return np.clip(0.5 * (lo + hi), -1.0, 1.0), ok


def _spectrum_cosines(Q: np.ndarray, ensemble: Ensemble, jacobi: bool) -> tuple[np.ndarray, int]:
    """Cosines from the Hermitian part of each ``Q``; flagged samples dropped."""
    count = Q.shape[0]
    QH = np.swapaxes(Q, 1, 2)
    S = 0.5 * (Q + (np.conj(QH) if np.iscomplexobj(Q) else QH))
    if jacobi:
        rows, ok_solver = [], np.ones(count, dtype=bool)
        for i in range(count):
            try:
                ev = jacobi_eigvalsh(S[i])
                if np.iscomplexobj(S):
                    ev = ev[0::2]
                rows.append(ev)
            except JacobiNonConvergence:
                ok_solver[i] = False
                rows.append(np.zeros(S.shape[1]))
        ev = np.array(rows)
    else:
        ev = np.linalg.eigvalsh(S)
        ok_solver = np.ones(count, dtype=bool)
    cos, ok = _pair_cosines(ev, ensemble)
    ok &= ok_solver
    bad = int(count - ok.sum())
    if bad:
        log.warning("discarded %d of %d %s samples (eigenvalue pairing or solver failure)", bad, count, ensemble.value)
    return cos[ok], bad


def _lapack_cosines(ensemble: Ensemble, N: int, count: int, rng, jacobi: bool) -> tuple[np.ndarray, int]:
    if ensemble is Ensemble.SP:
        Q = _symplectic_matrices(rng, N, count)
    else:
        Q = _orthogonal_matrices(rng, N, count, 1 if ensemble is Ensemble.SO else -1)
    return _spectrum_cosines(Q, ensemble, jacobi)


def _orthogonal_pair_cosines(N: int, count: int, rng, jacobi: bool) -> dict[Ensemble, tuple[np.ndarray, int]]:
    """SO and O^- samples from shared Haar O(2N) draws.

    Each draw yields the same SO (resp. O^-) matrix that the single-ensemble
    sampler produces from the same stream, so estimates do not depend on
    whether the other component is requested.
    """
    Q, det = _haar_orthogonal(rng, N, count)
    so = _to_component(Q.copy(), det, 1)
    ominus = _to_component(Q, det, -1)
    return {
        Ensemble.SO: _spectrum_cosines(so, Ensemble.SO, jacobi),
        Ensemble.OMINUS: _spectrum_cosines(ominus, Ensemble.OMINUS, jacobi),
    }


def _weyl_log_density(ensemble: Ensemble, theta: np.ndarray) -> np.ndarray:
    c = np.cos(theta)
    out = np.zeros(theta.shape[0])
    m = theta.shape[1]
    for i in range(m):
        for j in range(i + 1, m):
            out += 2.0 * np.log(np.abs(c[:, i] - c[:, j]) + 1e-300)
    if ensemble is not Ensemble.SO:
        out += 2.0 * np.log(np.abs(np.sin(theta)) + 1e-300).sum(axis=1)
    return out


def _metropolis_cosines(ensemble: Ensemble, N: int, count: int, rng, burn: int = 400, step: float = 0.6) -> np.ndarray:
    # one independent chain per output sample, vectorized across chains
    m = _n_pairs(ensemble, N)
    if m == 0:
        return np.zeros((count, 0))
    theta = rng.uniform(0.0, math.pi, size=(count, m))
    logp = _weyl_log_density(ensemble, theta)
    for _ in range(burn):
        for i in range(m):
            prop = theta.copy()
            x = prop[:, i] + step * rng.standard_normal(count)
            # reflect into [0, pi]: keeps the proposal symmetric
            x = np.mod(x, 2.0 * math.pi)
            prop[:, i] = np.where(x > math.pi, 2.0 * math.pi - x, x)
            logq = _weyl_log_density(ensemble, prop)
            accept = np.log(rng.uniform(size=count)) < logq - logp
            theta[accept] = prop[accept]
            logp[accept] = logq[accept]
    return np.cos(theta)


def sample_cosines(ensemble, N: int, count: int, rng: np.random.Generator, backend: str = "lapack") -> tuple[np.ndarray, int]:
    """Up to ``count`` samples as an array of ``cos(theta)`` (one column per pair).

    Returns ``(cosines, discarded)``; flagged samples are dropped and logged.
    """
    ensemble = Ensemble.parse(ensemble)
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; choose from {', '.join(BACKENDS)}")
    if backend == "metropolis":
        return _metropolis_cosines(ensemble, N, count, rng), 0
    return _lapack_cosines(ensemble, N, count, rng, jacobi=backend == "jacobi")


def sample(ensemble, N: int, rng: np.random.Generator, backend: str = "lapack") -> HaarSample:
    """One Haar sample from ``Sp(2N)``, ``SO(2N)`` or ``O^-(2N)``."""
    ensemble = Ensemble.parse(ensemble)
    while True:
        cos, _ = sample_cosines(ensemble, N, 1, rng, backend)
        if cos.shape[0]:
            break
    angles = tuple(float(a) for a in np.sort(np.arccos(cos[0])))
    return HaarSample(ensemble, angles, _fixed_eigs(ensemble))


# --- characteristic polynomial ------------------------------------------


def lambda_taylor_at_one(cosines: np.ndarray, fixed: Sequence[int], degree: int) -> np.ndarray:
    """Taylor coefficients of ``Lambda(1 + t)`` up to ``t^degree``, batched.

    Each pair contributes ``(2 - 2c) + (2 - 2c) t + t^2``, a fixed ``+1``
    contributes ``-t`` and a fixed ``-1`` contributes ``2 + t``.  Expanding
    at ``s = 1`` avoids the cancellation of summing ``c_j j!/(j-n)!``.
    """
    cosines = np.atleast_2d(np.asarray(cosines, dtype=float))
    B = cosines.shape[0]
    poly = np.zeros((B, degree + 1))
    poly[:, 0] = 1.0
    for col in range(cosines.shape[1]):
        a = (2.0 - 2.0 * cosines[:, col])[:, None]
        new = a * poly
        new[:, 1:] += a * poly[:, :-1]
        new[:, 2:] += poly[:, :-2]
        poly = new
    for eps in fixed:
        new = np.zeros_like(poly)
        if eps == 1:
            new[:, 1:] = -poly[:, :-1]
        else:
            new = 2.0 * poly
            new[:, 1:] += poly[:, :-1]
        poly = new
    return poly


def _derivs(cosines: np.ndarray, fixed: Sequence[int], N: int, orders: Iterable[int]) -> dict[int, np.ndarray]:
    orders = sorted(set(int(n) for n in orders))
    if any(n < 0 for n in orders):
        raise ValueError("derivative orders must be nonnegative")
    top = min(max(orders, default=0), 2 * N)
    taylor = lambda_taylor_at_one(cosines, fixed, top)
    out = {}
    for n in orders:
        out[n] = taylor[:, n] * math.factorial(n) if n <= 2 * N else np.zeros(taylor.shape[0])
    return out


def char_derivs_at_one(s: HaarSample, orders: Iterable[int]) -> dict[int, float]:
    """``{n: Lambda^(n)(1)}``; orders above ``2N`` give exactly 0."""
    values = _derivs(s.cosines[None, :], s.fixed_eigs, s.N, orders)
    return {n: float(v[0]) for n, v in values.items()}


# --- estimation ----------------------------------------------------------


def normalization_exponent(q: CoeffQuery) -> int:
    """Power of ``2N`` divided out of every sample before accumulation.

    The scaling exponent of the query, or 0 for O^- queries outside the
    theorem's range (``n1 = 0``), whose moments are not of that order.
    """
    try:
        return scaling_exponent(q)
    except InvalidQuery:
        q.with_ensemble(Ensemble.SP).validate()
        return 0


@dataclass(frozen=True)
class MomentEstimate:
    mean: float
    stderr: float
    sample_count: int
    query: CoeffQuery
    N: int
    seed: int
    discarded: int = 0

    def to_json(self) -> dict:
        return {
            "ensemble": self.query.ensemble.value,
            "N": self.N,
            "k1": self.query.k1,
            "k2": self.query.k2,
            "n1": self.query.n1,
            "n2": self.query.n2,
            "count": self.sample_count,
            "seed": self.seed,
            "discarded": self.discarded,
            "mean": self.mean,
            "stderr": self.stderr,
        }


@dataclass(frozen=True)
class _Stats:
    n: int
    mean: np.ndarray
    m2: np.ndarray


def _merge(a: _Stats, b: _Stats) -> _Stats:
    if a.n == 0:
        return b
    if b.n == 0:
        return a
    n = a.n + b.n
    delta = b.mean - a.mean
    return _Stats(n, a.mean + delta * (b.n / n), a.m2 + b.m2 + delta * delta * (a.n * b.n / n))


def _tree_reduce(parts: list[_Stats]) -> _Stats:
    while len(parts) > 1:
        nxt = [_merge(parts[i], parts[i + 1]) for i in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            nxt.append(parts[-1])
        parts = nxt
    return parts[0]


def _query_stats(
    cos: np.ndarray, ensemble: Ensemble, N: int, queries: Sequence[CoeffQuery], exponents: Sequence[int]
) -> _Stats:
    n = cos.shape[0]
    if n == 0:
        return _Stats(0, np.zeros(len(queries)), np.zeros(len(queries)))
    orders = {q.n1 for q in queries if q.k1} | {q.n2 for q in queries if q.k2}
    derivs = _derivs(cos, _fixed_eigs(ensemble), N, orders)
    scale = 2.0 * N
    cols = []
    for q, e in zip(queries, exponents):
        x = np.ones(n)
        if q.k1:
            x = x * derivs[q.n1] ** q.k1
        if q.k2:
            x = x * derivs[q.n2] ** q.k2
        cols.append(x / scale**e)
    # per-query reductions on contiguous arrays: a query's result does not
    # depend on which other queries share the stream
    mean = np.array([x.mean() for x in cols])
    m2 = np.array([((x - mu) ** 2).sum() for x, mu in zip(cols, mean)])
    return _Stats(n, mean, m2)


def _chunk_stats(
    groups: dict[Ensemble, tuple[list[CoeffQuery], list[int]]],
    N: int,
    seed: int,
    chunk: int,
    size: int,
    backend: str,
) -> dict[Ensemble, tuple[_Stats, int]]:
    rng = chunk_rng(seed, chunk)
    if len(groups) == 2 and backend != "metropolis":
        samples = _orthogonal_pair_cosines(N, size, rng, jacobi=backend == "jacobi")
    else:
        samples = {ensemble: sample_cosines(ensemble, N, size, rng, backend) for ensemble in groups}
    out = {}
    for ensemble, (queries, exponents) in groups.items():
        cos, bad = samples[ensemble]
        out[ensemble] = (_query_stats(cos, ensemble, N, queries, exponents), bad)
    return out


def estimate_moments(
    queries: Sequence[CoeffQuery],
    N: int,
    count: int,
    seed: int,
    threads: int = 1,
    backend: str = "lapack",
    chunk_size: int = CHUNK_SIZE,
) -> list[MomentEstimate]:
    """Estimates for several queries from one sample stream.

    The queries share an ensemble, except that SO and O^- queries may be
    mixed: both components are then taken from the same Haar O(2N) draws,
    with the same result as separate calls and about half the QR work.
    """
    if not queries:
        raise ValueError("no queries")
    groups: dict[Ensemble, tuple[list[CoeffQuery], list[int]]] = {}
    for q in queries:
        qs, es = groups.setdefault(Ensemble.parse(q.ensemble), ([], []))
        qs.append(q)
        es.append(normalization_exponent(q))
    if len(groups) > 1 and set(groups) != {Ensemble.SO, Ensemble.OMINUS}:
        raise ValueError("queries must share an ensemble (SO and O^- may be mixed)")
    if count < 2:
        raise ValueError("count must be at least 2")
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    sizes = [min(chunk_size, count - start) for start in range(0, count, chunk_size)]

    def work(idx: int):
        return _chunk_stats(groups, N, seed, idx, sizes[idx], backend)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, range(len(sizes))))
    else:
        results = [work(i) for i in range(len(sizes))]

    estimates: dict[CoeffQuery, MomentEstimate] = {}
    for ensemble, (group, exponents) in groups.items():
        total = _tree_reduce([r[ensemble][0] for r in results])
        discarded = sum(r[ensemble][1] for r in results)
        if total.n < 2:
            raise RuntimeError(f"fewer than two usable {ensemble.value} samples")
        for i, (q, e) in enumerate(zip(group, exponents)):
            factor = (2.0 * N) ** e
            mean = float(total.mean[i])
            var = float(total.m2[i]) / (total.n - 1)
            stderr = math.sqrt(max(var, 0.0) / total.n)
            mean, stderr = mean * factor, stderr * factor
            if not (math.isfinite(mean) and math.isfinite(stderr)):
                log.error("non-finite moment estimate for %s at N=%d", q, N)
            estimates[q] = MomentEstimate(mean, stderr, total.n, q, N, seed, discarded)
    return [estimates[q] for q in queries]


def estimate_moment(q: CoeffQuery, N: int, count: int, seed: int, threads: int = 1, backend: str = "lapack") -> MomentEstimate:
    """Monte Carlo ``E[(Lambda^(n1)(1))^k1 (Lambda^(n2)(1))^k2]`` over the query's ensemble."""
    return estimate_moments([q], N, count, seed, threads, backend)[0]


@dataclass(frozen=True)
class AsymptoticReport:
    """Empirical moment against ``b (2N)^e``.

    ``signed_ratio`` and ``signed_z`` compare against
    ``true_sign(q) * b (2N)^e``, the leading term of the moment of
    s-derivatives.
    """

    estimate: MomentEstimate
    b: object
    exponent: int
    predicted: float
    ratio: float
    ratio_stderr: float
    z: float
    sign: int
    signed_ratio: float
    signed_z: float

    def to_json(self) -> dict:
        out = self.estimate.to_json()
        out.update(
            {
                "b": str(self.b),
                "exponent": self.exponent,
                "predicted": self.predicted,
                "ratio": self.ratio,
                "ratio_stderr": self.ratio_stderr,
                "z": self.z,
                "sign": self.sign,
                "signed_ratio": self.signed_ratio,
                "signed_z": self.signed_z,
            }
        )
        return out


def _z(value: float, stderr: float) -> float:
    if stderr > 0:
        return (value - 1.0) / stderr
    return 0.0 if value == 1.0 else math.copysign(math.inf, value - 1.0)


def _report(est: MomentEstimate) -> AsymptoticReport:
    q = est.query
    res = coefficient(q, backend="comb")
    predicted = float(res.value) * (2.0 * est.N) ** res.exponent
    ratio = est.mean / predicted
    ratio_stderr = est.stderr / abs(predicted)
    sign = true_sign(q)
    signed = ratio * sign
    return AsymptoticReport(
        est, res.value, res.exponent, predicted, ratio, ratio_stderr,
        _z(ratio, ratio_stderr), sign, signed, _z(signed, ratio_stderr),
    )


def asymptotic_reports(queries: Sequence[CoeffQuery], N: int, count: int, seed: int, threads: int = 1, backend: str = "lapack") -> list[AsymptoticReport]:
    """Reports for several queries sharing one sample stream."""
    for q in queries:
        q.validate()
    return [_report(e) for e in estimate_moments(queries, N, count, seed, threads, backend)]


def asymptotic_report(q: CoeffQuery, N: int, count: int, seed: int, threads: int = 1, backend: str = "lapack") -> AsymptoticReport:
    """Ratio of the empirical moment to ``b (2N)^e`` with its stderr and z-score."""
    return asymptotic_reports([q], N, count, seed, threads, backend)[0]
