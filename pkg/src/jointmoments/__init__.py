"""Leading-order joint moments of derivatives of characteristic polynomials
over Sp(2N), SO(2N) and O^-(2N): exact coefficients, brute-force identity
oracles and Haar Monte Carlo."""

from .coefficients import (
    CoeffQuery,
    CoeffResult,
    Ensemble,
    InvalidQuery,
    b_comb,
    b_det,
    b_ominus,
    coefficient,
    first_moment_closed_form,
    scaling_exponent,
)
from .exact import Rational, TruncatedSeries, factorial, g_series, multinomial, series_det

__version__ = "0.1.0"

__all__ = [
    "CoeffQuery",
    "CoeffResult",
    "Ensemble",
    "InvalidQuery",
    "Rational",
    "TruncatedSeries",
    "b_comb",
    "b_det",
    "b_ominus",
    "coefficient",
    "factorial",
    "first_moment_closed_form",
    "g_series",
    "multinomial",
    "scaling_exponent",
    "series_det",
]
