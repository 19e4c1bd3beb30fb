"""Exact search for low-degree equations vanishing on a point set.

An equation of degree <= D for a set of points is a kernel vector of the
matrix whose rows are the points' Veronese embeddings (every monomial of
degree <= D, graded-lex). Kernels are found with fraction-free elimination,
so a "vanishes" verdict is never approximate.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .arith import smallest_prime_above
from .circuits import Circuit, circuit_compose, circuit_eval, syntactic_degree
from .exceptions import ParameterError, ResourceError
from .gadgets import PolyMap
from .polynomials import (
    DEFAULT_TERM_CAP,
    SparsePoly,
    monomials_upto,
    poly_eval,
    poly_eval_mod,
    poly_substitute,
    poly_to_json,
)
from .validation import check_rational_array

__all__ = [
    "EquationFinder",
    "HittingResult",
    "check_equation_vanishes",
    "find_equations",
    "hitting_check",
    "nullspace",
    "rank",
    "veronese_row",
    "x_labels",
]


def x_labels(N: int) -> list[str]:
    return [f"x{k + 1}" for k in range(N)]


def veronese_row(point: Sequence, D: int) -> list[Fraction]:
    """Values of all monomials of degree <= D at ``point``, graded-lex; starts with 1."""
    if D < 0:
        raise ParameterError("D must be nonnegative")
    pt = [Fraction(x) for x in point]
    row = []
    for exp in monomials_upto(len(pt), D):
        val = Fraction(1)
        for x, e in zip(pt, exp):
            if e:
                val *= x**e
        row.append(val)
    return row


def _integer_rows(M: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in M:
        fr = [Fraction(x) for x in row]
        scale = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * scale) for x in fr])
    return out


def _bareiss_echelon(M: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (rows, pivot columns).

    Pivot search is leftmost column first, then the first usable row in the
    given order. Every division is exact.
    """
    A = _integer_rows(M)
    if not A:
        return [], []
    ncols = len(A[0])
    if any(len(r) != ncols for r in A):
        raise ParameterError("ragged matrix")
    nrows = len(A)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if k is None:
            continue
        if k != r:
            A[r], A[k] = A[k], A[r]
        piv = A[r][c]
        for i in range(r + 1, nrows):
            a_ic = A[i][c]
            row_i, row_r = A[i], A[r]
            for j in range(c + 1, ncols):
                q, rem = divmod(piv * row_i[j] - a_ic * row_r[j], prev)
                assert rem == 0, "Bareiss division must be exact"
                row_i[j] = q
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M: Sequence[Sequence]) -> int:
    return len(_bareiss_echelon(M)[1])


def nullspace(M: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column.

    Each vector is scaled so its first nonzero coordinate is 1. ``ncols`` is
    only needed for a matrix with no rows.
    """
    rows, pivots = _bareiss_echelon(M)
    if ncols is None:
        if not M:
            raise ParameterError("ncols is required for an empty matrix")
        ncols = len(M[0])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            s = sum((rows[r][j] * x[j] for j in range(c + 1, ncols) if x[j]), Fraction(0))
            x[c] = -s / rows[r][c]
        lead = next(v for v in x if v != 0)
        basis.append([v / lead for v in x])
    return basis


def find_equations(points: Sequence[Sequence], D: int) -> list[SparsePoly]:
    """Basis of all polynomials of degree <= D vanishing on every point."""
    pts = [[Fraction(x) for x in pt] for pt in points]
    if not pts:
        raise ParameterError("need at least one point")
    N = len(pts[0])
    if any(len(pt) != N for pt in pts):
        raise ParameterError("points must all have the same length")
    exps = list(monomials_upto(N, D))
    M = [veronese_row(pt, D) for pt in pts]
    ctx = x_labels(N)
    return [
        SparsePoly(ctx, {e: c for e, c in zip(exps, vec) if c != 0})
        for vec in nullspace(M, len(exps))
    ]


def check_equation_vanishes(P: SparsePoly, points: Sequence[Sequence]) -> dict:
    """``{"is_equation": bool, "witnesses": [...]}``; witnesses are the points where P is nonzero."""
    if P.is_zero():
        raise ParameterError("the zero polynomial is not an equation")
    witnesses = []
    for pt in points:
        if len(pt) != len(P.vars):
            raise ParameterError(f"point {pt} does not match {len(P.vars)} variables")
        if poly_eval(P, [Fraction(x) for x in pt]) != 0:
            witnesses.append(list(pt))
    return {"is_equation": not witnesses, "witnesses": witnesses}


def _entry_index(P: Circuit, G: PolyMap, label: str) -> int:
    named = x_labels(len(G))
    if set(P.input_labels) <= set(named):
        return named.index(label)
    return P.input_labels.index(label)


def _circuit_images(P: Circuit, G: PolyMap) -> dict[str, SparsePoly]:
    """Inputs labelled ``x1..xN`` take the matching entry; otherwise order of appearance."""
    return {lab: G.entries[_entry_index(P, G, lab)] for lab in P.input_labels}


@dataclass(frozen=True)
class HittingResult:
    """Outcome of a hitting check. ``exact`` is False for the random-evaluation fallback."""

    hits: bool
    exact: bool
    method: str

    def __bool__(self) -> bool:
        return self.hits


def hitting_check(
    P: SparsePoly | Circuit,
    G: PolyMap,
    term_cap: int = DEFAULT_TERM_CAP,
    trials: int = 20,
    seed: int = 0,
) -> HittingResult:
    """Decide whether ``P o G`` is nonzero.

    Symbolic composition gives an exact answer. When it blows the term cap
    the composition is evaluated at random points over a prime field larger
    than 100 times the degree bound, which can only certify nonzeroness.
    """
    if isinstance(P, Circuit):
        arity = len(P.input_labels)
    else:
        arity = len(P.vars)
    if arity > len(G):
        raise ParameterError(f"P has {arity} inputs but G has {len(G)} entries")
    if isinstance(P, SparsePoly) and arity != len(G):
        raise ParameterError(f"P has {arity} variables but G has {len(G)} entries")
    if isinstance(P, Circuit) and len(P.outputs) != 1:
        raise ParameterError("hitting_check needs a single-output circuit")

    try:
        if isinstance(P, Circuit):
            images = _circuit_images(P, G)
            composed = circuit_compose(P, images, G.vars, term_cap)[0]
        else:
            composed = poly_substitute(P, G.entries, term_cap)
        return HittingResult(not composed.is_zero(), True, "symbolic")
    except ResourceError:
        pass

    if isinstance(P, Circuit):
        deg_P = syntactic_degree(P)
    else:
        deg_P = max(P.degree(), 0)
    deg_G = max((max(g.degree(), 0) for g in G.entries), default=0)
    p = smallest_prime_above(max(100 * max(deg_P * deg_G, 1), 2))
    rng = random.Random(seed)
    for _ in range(trials):
        z = [rng.randrange(p) for _ in G.vars]
        vals = [poly_eval_mod(g, z, p) for g in G.entries]
        if isinstance(P, Circuit):
            point = {lab: vals[_entry_index(P, G, lab)] for lab in P.input_labels}
            out = circuit_eval(P, point, p=p)[0]
        else:
            out = poly_eval_mod(P, [v.value for v in vals], p)
        if out != 0:
            return HittingResult(True, False, "random-evaluation")
    return HittingResult(False, False, "random-evaluation")


class EquationFinder(TransformerMixin, BaseEstimator):
    """Learn the space of degree-<=``degree`` equations vanishing on training points.

    ``fit`` stores a basis in ``equations_``; ``transform`` evaluates every
    basis equation at new points, so rows of zeros mark points that satisfy
    all learned equations.

    Points are exact: ints, Fractions, or ``"num/den"`` strings. Floats are
    rejected.
    """

    def __init__(self, degree: int = 1):
        self.degree = degree

    def fit(self, X, y=None):
        X = check_rational_array(X)
        if not isinstance(self.degree, int) or self.degree < 0:
            raise ParameterError(f"degree must be a nonnegative int, got {self.degree!r}")
        self.n_features_in_ = len(X[0])
        self.n_columns_ = comb(self.n_features_in_ + self.degree, self.degree)
        self.equations_ = find_equations(X, self.degree)
        self.rank_ = self.n_columns_ - len(self.equations_)
        return self

    def transform(self, X):
        check_is_fitted(self, "equations_")
        X = check_rational_array(X, n_features=self.n_features_in_)
        out = np.empty((len(X), len(self.equations_)), dtype=object)
        for i, pt in enumerate(X):
            for j, eq in enumerate(self.equations_):
                out[i, j] = poly_eval(eq, pt)
        return out

    def vanishes(self, X) -> np.ndarray:
        """Boolean mask: which points satisfy every learned equation."""
        vals = self.transform(X)
        return np.array([all(v == 0 for v in row) for row in vals], dtype=bool)

    def report(self) -> dict:
        check_is_fitted(self, "equations_")
        return {
            "N": self.n_features_in_,
            "D": self.degree,
            "columns": self.n_columns_,
            "rank": self.rank_,
            "equations": [poly_to_json(e) for e in self.equations_],
        }
