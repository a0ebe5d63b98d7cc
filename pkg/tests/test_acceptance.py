"""Acceptance criteria, one PASS/FAIL line each in the terminal summary.

Run with ``pytest -v tests/test_acceptance.py`` (about half an hour: the
2N = 60 Monte Carlo runs dominate).
"""

import json
import subprocess
import sys
import time

import pytest

from jointmoments.coefficients import CoeffQuery, Ensemble, InvalidQuery, b_comb, b_det, first_moment_closed_form
from jointmoments.oracle import (
    check_derivative_lemmas,
    check_gamma_det,
    check_integral_prop1,
    check_integral_prop2,
    exact_pair_moment,
    run_suite,
    suite_gamma,
    suite_lemmas,
    suite_props,
    weyl_quadrature_moment,
)
from jointmoments.rmt_mc import asymptotic_reports, estimate_moments
from reference_values import reference_table

from fractions import Fraction

criterion = pytest.mark.criterion

MC_SEED = 7
ASYMPTOTIC_N = 30
ASYMPTOTIC_SAMPLES = 10**6
QUAD_SAMPLES = 10**5


def Q(ens, k1, k2, n1, n2):
    return CoeffQuery(Ensemble.parse(ens), k1, k2, n1, n2)


# --- 1 -------------------------------------------------------------------


@criterion(1)
def test_criterion1_reference_table():
    start = time.perf_counter()
    table = reference_table()
    assert len(table) == 52
    wrong = []
    for key, value in table.items():
        q = Q(*key)
        for fn in (b_det, b_comb):
            got = fn(q).value
            if got != value:
                wrong.append((key, fn.__name__, got, value))
    elapsed = time.perf_counter() - start
    assert not wrong, wrong
    assert elapsed < 60, f"took {elapsed:.1f}s"


# --- 2 -------------------------------------------------------------------


@criterion(2)
def test_criterion2_cross_formula_identity():
    start = time.perf_counter()
    checked, wrong = 0, []
    for ens in ("sp", "so"):
        for k in range(1, 5):
            for k1 in range(k + 1):
                for n2 in range(6):
                    for n1 in range(n2 + 1):
                        q = Q(ens, k1, k - k1, n1, n2)
                        d, c = b_det(q).value, b_comb(q).value
                        checked += 1
                        if d != c:
                            wrong.append((q, d, c))
    elapsed = time.perf_counter() - start
    assert checked == 588
    assert not wrong, wrong[:5]
    assert elapsed < 600, f"took {elapsed:.1f}s"


# --- 3 -------------------------------------------------------------------


@criterion(3)
@pytest.mark.parametrize("ens", ["sp", "so"])
def test_criterion3_closed_forms(ens):
    for n in range(1, 21):
        got = b_comb(Q(ens, 0, 1, 0, n)).value
        want = Fraction((-1) ** n, 2 * (n + 1)) if ens == "sp" else Fraction(1)
        assert got == want == first_moment_closed_form(ens, n), n


# --- 4 -------------------------------------------------------------------


@criterion(4)
def test_criterion4_internal_consistency():
    table = reference_table()
    assert table[("sp", 0, 1, 0, 3)] == first_moment_closed_form("sp", 3) == b_comb(Q("sp", 0, 1, 0, 3)).value == Fraction(-1, 8)
    assert b_comb(Q("sp", 1, 1, 0, 2)).value == b_det(Q("sp", 1, 1, 0, 2)).value == Fraction(1, 80)
    assert table[("sp", 1, 1, 0, 2)] == Fraction(1, 80)


# --- 5 -------------------------------------------------------------------

_suite_seconds: dict[str, float] = {}


def _timed(name, fn):
    start = time.perf_counter()
    results = fn()
    _suite_seconds[name] = time.perf_counter() - start
    failed = [r.to_json() for r in results if not r.passed]
    assert results and not failed, failed[:3]
    return results


@criterion(5)
def test_criterion5_integral_prop1():
    results = _timed("prop1", lambda: [r for r in suite_props(max_k=2, max_weight=3, max_k2=0)])
    assert {r.params["identity"] for r in results} == {1, 2}
    assert max(r.params["k"] for r in results) == 2


@criterion(5)
def test_criterion5_integral_prop2():
    results = _timed("prop2", lambda: suite_props(max_k=0, max_k2=3, max_abs_m=4))
    assert len(results) == 9 + 81 + 729


@criterion(5)
def test_criterion5_derivative_lemmas():
    results = _timed("lemmas", lambda: suite_lemmas(max_n=6, max_k=3, trials=50, seed=0))
    assert len(results) == 7 * 3


@criterion(5)
def test_criterion5_gamma_det():
    results = _timed("gamma", lambda: suite_gamma(max_k=5, max_m=6))
    assert len(results) == sum(7**k for k in range(1, 6))


@criterion(5)
def test_criterion5_runtime():
    assert set(_suite_seconds) == {"prop1", "prop2", "lemmas", "gamma"}
    assert sum(_suite_seconds.values()) < 900, _suite_seconds


# --- 6 -------------------------------------------------------------------


def _quadrature_queries(ens):
    out = []
    for k1, k2 in [(0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]:
        for n2 in range(3):
            for n1 in range(n2 + 1):
                q = Q(ens, k1, k2, n1, n2)
                try:
                    q.validate()
                except InvalidQuery:
                    continue
                out.append(q)
    return out


@criterion(6)
@pytest.mark.parametrize("N", [1, 2])
@pytest.mark.parametrize("ens", ["sp", "so", "ominus"])
def test_criterion6_mc_vs_quadrature(ens, N):
    queries = _quadrature_queries(ens)
    estimates = estimate_moments(queries, N, QUAD_SAMPLES, seed=MC_SEED)
    bad = []
    for q, est in zip(queries, estimates):
        ref = weyl_quadrature_moment(q, N)
        # the extra 1e-9 covers quadrature rounding for zero-variance moments
        if abs(est.mean - ref) > 4 * est.stderr + 1e-9 * max(1.0, abs(ref)):
            bad.append((q, est.mean, est.stderr, ref))
    assert not bad, bad


# --- 8 -------------------------------------------------------------------


def _exact_snapshot():
    values = {str(k): str(b_comb(Q(*k)).value) + "|" + str(b_det(Q(*k)).value) for k in reference_table()}
    suites = {name: [r.to_json() for r in run_suite(name, max_k=2, max_n=3)] for name in ("props", "lemmas", "gamma", "closed", "cross")}
    return json.dumps({"values": values, "suites": suites}, sort_keys=True)


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "jointmoments", *args], capture_output=True, text=True, check=True).stdout


@criterion(8)
def test_criterion8_exact_results_repeat():
    assert _exact_snapshot() == _exact_snapshot()
    args = ("verify", "--suite", "lemmas", "--seed", "3")
    assert _cli(*args) == _cli(*args)


@criterion(8)
def test_criterion8_mc_repeat():
    qs = [Q("sp", 1, 1, 0, 2), Q("sp", 0, 1, 0, 2)]
    runs = [estimate_moments(qs, 6, 20000, seed=MC_SEED, threads=t) for t in (1, 1, 3)]
    assert runs[0] == runs[1] == runs[2]
    args = ("mc", "--ensemble", "so", "--N", "4", "--k1", "1", "--k2", "1", "--n1", "0", "--n2", "1", "--samples", "20000", "--seed", "7")
    assert _cli(*args, "--threads", "1") == _cli(*args, "--threads", "1") == _cli(*args, "--threads", "2")


# --- 7 -------------------------------------------------------------------

# SO and O^- share their Haar O(2N) draws; results equal separate runs
ASYMPTOTIC_GROUPS = [
    [Q("sp", 0, 1, 0, 2), Q("sp", 1, 1, 0, 2)],
    [Q("so", 1, 1, 0, 1), Q("ominus", 0, 1, 1, 1)],
]


@pytest.fixture(scope="module")
def asymptotic_run():
    start = time.perf_counter()
    reports = {}
    for group in ASYMPTOTIC_GROUPS:
        for rep in asymptotic_reports(group, ASYMPTOTIC_N, ASYMPTOTIC_SAMPLES, seed=MC_SEED):
            reports[rep.estimate.query] = rep
            print(json.dumps(rep.to_json()))
    return reports, time.perf_counter() - start


def _within(ratio, ratio_stderr):
    return 0.95 <= ratio <= 1.05 or abs(ratio - 1.0) <= 4 * ratio_stderr


@criterion(7)
@pytest.mark.parametrize(
    "q",
    [Q("sp", 0, 1, 0, 2), Q("so", 1, 1, 0, 1), Q("ominus", 0, 1, 1, 1), Q("sp", 1, 1, 0, 2)],
    ids=["sp-0102", "so-1101", "ominus-0111", "sp-1102"],
)
def test_criterion7_asymptotic_ratio(asymptotic_run, q):
    rep = asymptotic_run[0][q]
    assert rep.estimate.sample_count + rep.estimate.discarded == ASYMPTOTIC_SAMPLES
    assert _within(rep.ratio, rep.ratio_stderr), (
        f"ratio {rep.ratio:.5f} +- {rep.ratio_stderr:.5f} (b = {rep.b}, mean = {rep.estimate.mean:.6g})"
    )


@criterion(7)
def test_criterion7_runtime(asymptotic_run):
    assert asymptotic_run[1] < 1800, f"took {asymptotic_run[1]:.0f}s"


def test_ominus_ratio_with_derivative_sign(asymptotic_run):
    # moments of s-derivatives carry the extra sign (-1)^k for O^-
    rep = asymptotic_run[0][Q("ominus", 0, 1, 1, 1)]
    assert rep.sign == -1
    assert _within(rep.signed_ratio, rep.ratio_stderr)


@pytest.mark.parametrize("q", [Q("sp", 0, 1, 0, 2), Q("so", 1, 1, 0, 1), Q("sp", 1, 1, 0, 2)], ids=["sp-0102", "so-1101", "sp-1102"])
def test_asymptotic_means_match_exact_finite_n(asymptotic_run, q):
    # the exact moment at 2N = 60 includes the lower-order terms the ratio test ignores
    rep = asymptotic_run[0][q]
    exact = exact_pair_moment(q, ASYMPTOTIC_N)
    assert abs(rep.estimate.mean - exact) <= 4 * rep.estimate.stderr, (rep.estimate.mean, rep.estimate.stderr, exact)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
