"""Input validation for exact point arrays."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import numpy as np

from .arith import parse_rational
from .exceptions import ParameterError


def _to_fraction(x) -> Fraction:
    if isinstance(x, (bool, np.bool_)):
        raise ParameterError("booleans are not accepted as coordinates")
    if isinstance(x, (np.integer,)):
        return Fraction(int(x))
    if isinstance(x, (Rational, str)):
        return parse_rational(x)
    raise ParameterError(f"coordinate {x!r} is not an exact rational")


def check_rational_array(X, n_features: int | None = None) -> list[list[Fraction]]:
    """Coerce a 2-D array-like of exact values into lists of Fractions.

    Rejects floats, ragged rows, empty input and (when ``n_features`` is
    given) a width mismatch.
    """
    if isinstance(X, np.ndarray):
        if X.ndim != 2:
            raise ParameterError(f"expected a 2-D array, got ndim={X.ndim}")
        if X.dtype.kind == "f":
            raise ParameterError("floating-point arrays are not exact")
        rows = X.tolist()
    else:
        rows = [list(r) for r in X]
    if not rows:
        raise ParameterError("need at least one sample")
    width = len(rows[0])
    if width == 0:
        raise ParameterError("need at least one feature")
    if any(len(r) != width for r in rows):
        raise ParameterError("ragged input")
    if n_features is not None and width != n_features:
        raise ParameterError(f"expected {n_features} features, got {width}")
    return [[_to_fraction(x) for x in r] for r in rows]
