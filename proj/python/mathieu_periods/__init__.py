"""Floquet exponents of the Mathieu equation from WKB periods on its curve."""

import json
from fractions import Fraction

from ._core import (
    IntegratorFailure,
    NotConverged,
    SeriesDiverges,
    __version__,
    characteristic_value,
    floquet_nu,
    large_q_lambda,
    series_latex,
)
from . import _core

__all__ = [
    "IntegratorFailure",
    "NotConverged",
    "SeriesDiverges",
    "__version__",
    "characteristic_value",
    "floquet_nu",
    "large_q_lambda",
    "series",
    "series_latex",
    "generating_operator",
    "verify",
]


def series(which, order=None):
    """Exact series as parsed JSON; coefficients stay strings like "124/945"."""
    return json.loads(_core.series_json(which, -1 if order is None else order))


def generating_operator(m, determine=False):
    """D_m as a list of (Fraction, w power, d power).

    determine=True re-solves D_3 / D_4 from the small-q input instead of
    reading the table.
    """
    raw = _core.determine_operator_json(m) if determine else _core.operator_json(m)
    return [(Fraction(t["coeff"]), t["wpow"], t["dpow"]) for t in json.loads(raw)]


def verify(suite, tol=1e-5):
    return [json.loads(r) for r in _core.run_suite(suite, tol)]
