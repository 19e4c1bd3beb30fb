"""Permanents, the KI generator, and the exponential-sum polynomial F_{n,a,p}.

F is stored coefficient-indexed: a map from y-exponent vectors to
polynomials in the z grid. At boolean t, Mon collapses to one monomial, so the
sum over t never needs general (y, z) multiplication.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import permutations, product
from math import comb, isqrt
from typing import Callable, Mapping, Sequence

from .arith import floor_log2, is_prime
from .designs import Codeword, Design, codeword_to_set
from .exceptions import ParameterError, ResourceError
from .gadgets import (
    PolyMap,
    binary_digits,
    mon_monomial,
    rs_design_select,
    z_labels,
)
from .polynomials import (
    SparsePoly,
    monomials_upto,
    poly_from_json,
    poly_to_json,
)

__all__ = [
    "CoeffVector",
    "SuccinctF",
    "build_F",
    "check_succinctness",
    "codeword_design",
    "coeff_vector_of_F",
    "ki_gen",
    "ki_gen_point",
    "perm_p",
    "permanent_oracle",
    "permanent_ryser",
    "truncate_F",
]

log = logging.getLogger(__name__)

MAX_R = 20
ORACLE_MAX_M = 6


def _square(M) -> list[list]:
    rows = [list(row) for row in M]
    m = len(rows)
    if m < 1 or any(len(row) != m for row in rows):
        raise ParameterError("permanent needs a nonempty square matrix")
    return rows


def permanent_ryser(M) -> object:
    """Ryser's inclusion-exclusion formula with Gray-code column updates.

    ``perm(M) = (-1)^m * sum_S (-1)^|S| prod_i sum_{j in S} M[i][j]``; stepping
    through subsets in Gray-code order changes one column per step, so the row
    sums are updated in O(m).
    """
    rows = _square(M)
    m = len(rows)
    row_sums: list = [0] * m
    total = 0
    in_set = [False] * m
    size = 0
    for k in range(1, 1 << m):
        # column that flips between Gray codes k-1 and k
        j = (k & -k).bit_length() - 1
        if in_set[j]:
            in_set[j] = False
            size -= 1
            row_sums = [s - row[j] for s, row in zip(row_sums, rows)]
        else:
            in_set[j] = True
            size += 1
            row_sums = [s + row[j] for s, row in zip(row_sums, rows)]
        prod = row_sums[0]
        for s in row_sums[1:]:
            prod = prod * s
        total = total + prod if size % 2 == 0 else total - prod
    return total if m % 2 == 0 else -total


def permanent_oracle(M) -> object:
    """Sum over all m! permutations; the independent check on Ryser."""
    rows = _square(M)
    m = len(rows)
    if m > ORACLE_MAX_M:
        raise ResourceError(f"brute-force permanent limited to m <= {ORACLE_MAX_M}")
    total = 0
    for sigma in permutations(range(m)):
        prod = rows[0][sigma[0]]
        for i in range(1, m):
            prod = prod * rows[i][sigma[i]]
        total = total + prod
    return total


def perm_p(p: int, w: Sequence) -> object:
    """Permanent of the first m*m entries of ``w`` laid out row-major, m = isqrt(p)."""
    if len(w) != p:
        raise ParameterError(f"perm_p expects {p} entries, got {len(w)}")
    m = isqrt(p)
    return permanent_ryser([list(w[i * m:(i + 1) * m]) for i in range(m)])


# -- KI generator ------------------------------------------------------------


def _universe_vars(design: Design, labels: Sequence[str] | None) -> list[str]:
    labels = list(labels) if labels is not None else [f"z{k}" for k in range(design.ell)]
    if len(labels) != design.ell:
        raise ParameterError(f"need {design.ell} universe labels, got {len(labels)}")
    return labels


def ki_gen(
    design: Design,
    f: Callable[[Sequence], object],
    arity: int | None = None,
    labels: Sequence[str] | None = None,
) -> PolyMap:
    """Symbolic map ``z -> (f(z_S) for S in design)``; S is read in sorted order."""
    if arity is not None and arity != design.m:
        raise ParameterError(f"f takes {arity} inputs but design sets have size {design.m}")
    labels = _universe_vars(design, labels)
    zs = [SparsePoly.variable(labels, lab) for lab in labels]
    entries = []
    for s in design.sets:
        val = f([zs[k] for k in s])
        if not isinstance(val, SparsePoly):
            val = SparsePoly.constant(labels, val)
        entries.append(val)
    return PolyMap(tuple(entries))


def ki_gen_point(
    design: Design, f: Callable[[Sequence], object], point: Sequence, arity: int | None = None
) -> list:
    """Evaluate the KI generator at one point of the universe."""
    if arity is not None and arity != design.m:
        raise ParameterError(f"f takes {arity} inputs but design sets have size {design.m}")
    if len(point) != design.ell:
        raise ParameterError(f"point needs {design.ell} coordinates")
    return [f([point[k] for k in s]) for s in design.sets]


# -- F_{n,a,p} ---------------------------------------------------------------


@dataclass
class SuccinctF:
    """F_{n,a,p} as a map from y-exponent vectors to z-polynomials."""

    n: int
    a: int
    p: int
    terms: dict[tuple[int, ...], SparsePoly] = field(default_factory=dict)

    @property
    def r(self) -> int:
        return self.a * floor_log2(self.p)

    @property
    def z_vars(self) -> tuple[str, ...]:
        return tuple(z_labels(self.p))

    def max_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def to_flat(self) -> SparsePoly:
        """The same polynomial in context ``y1..yn, z...`` (small cases only)."""
        ctx = tuple(f"y{k + 1}" for k in range(self.n)) + self.z_vars
        flat = {}
        for e, poly in self.terms.items():
            for ze, c in poly.terms.items():
                flat[tuple(e) + ze] = c
        return SparsePoly(ctx, flat)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "a": self.a,
            "p": self.p,
            "terms": [
                {"y_exp": list(e), "z_poly": poly_to_json(self.terms[e])}
                for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e)))
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> SuccinctF:
        return cls(
            obj["n"],
            obj["a"],
            obj["p"],
            {tuple(t["y_exp"]): poly_from_json(t["z_poly"]) for t in obj["terms"]},
        )


def _check_F_params(n: int, a: int, p: int) -> None:
    if not is_prime(p):
        raise ParameterError(f"p must be prime, got {p}")
    if not 1 <= a <= p:
        raise ParameterError(f"need 1 <= a <= p, got a={a}, p={p}")
    if n < 1:
        raise ParameterError("n must be >= 1")
    r = a * floor_log2(p)
    if r < n:
        raise ParameterError(f"r = a*floor(log2 p) = {r} must be >= n = {n}")
    if r > MAX_R:
        raise ResourceError(f"r = {r} exceeds the exponential-sum cap of {MAX_R}")


def build_F(n: int, a: int, p: int) -> SuccinctF:
    """Sum over t in {0,1}^r of Mon(t, y) * Perm_[p](RS-Design(t, z)).

    The y-monomial comes from :func:`mon_monomial`, the permanent's inputs
    from :func:`rs_design_select`; coinciding keys are summed.
    """
    _check_F_params(n, a, p)
    F = SuccinctF(n, a, p)
    ctx = F.z_vars
    for t in product((0, 1), repeat=F.r):
        key = mon_monomial(t, n)
        ws = [SparsePoly.variable(ctx, lab) for lab in rs_design_select(t, p, a)]
        val = perm_p(p, ws)
        if key in F.terms:
            val = F.terms[key] + val
            if val.is_zero():
                del F.terms[key]
                continue
        F.terms[key] = val
    log.debug("built F(n=%d, a=%d, p=%d) with %d y-monomials", n, a, p, len(F.terms))
    return F


def truncate_F(F: SuccinctF, d: int) -> SuccinctF:
    """Keep the y-monomials of total degree <= d."""
    if d < 0:
        raise ParameterError("d must be nonnegative")
    return SuccinctF(F.n, F.a, F.p, {e: v for e, v in F.terms.items() if sum(e) <= d})


@dataclass(frozen=True)
class CoeffVector:
    """Coefficients of an n-variate polynomial of degree <= d in graded-lex order."""

    n: int
    d: int
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) != comb(self.n + self.d, self.n):
            raise ParameterError("entry count must equal C(n+d, n)")

    @property
    def exponents(self) -> list[tuple[int, ...]]:
        return list(monomials_upto(self.n, self.d))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def as_polymap(self) -> PolyMap:
        return PolyMap(self.entries)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "entries": [
                {"y_exp": list(e), "z_poly": poly_to_json(v)}
                for e, v in zip(self.exponents, self.entries)
            ],
        }


def coeff_vector_of_F(F: SuccinctF, d: int) -> CoeffVector:
    """Graded-lex coefficient vector of a truncated F; absent keys are zero."""
    if any(sum(e) > d for e in F.terms):
        raise ParameterError(f"F has y-monomials of degree above {d}; truncate first")
    zero = SparsePoly.zero(F.z_vars)
    return CoeffVector(
        F.n, d, tuple(F.terms.get(e, zero) for e in monomials_upto(F.n, d))
    )


def codeword_design(n: int, d: int, p: int) -> Design:
    """Design whose k-th set is the graph of the codeword Bin(e_1)||...||Bin(e_n).

    ``e`` runs over the exponent vectors of degree <= d in graded-lex order,
    each Bin taking floor(log2 p) bits.
    """
    w = floor_log2(p)
    sets = []
    for e in monomials_upto(n, d):
        bits = sum((binary_digits(x, w) for x in e), ())
        sets.append(codeword_to_set(Codeword(bits, p, n)))
    return Design(ell=p * p, m=p, n=n, sets=tuple(sets))


def check_succinctness(
    n: int,
    d: int,
    p: int,
    design_hook: Callable[[Design], Design] | None = None,
) -> dict:
    """Compare the coefficient vector of F_{n,n,p}^{<=d} with the KI generator.

    The right-hand side is built independently: codewords are decoded to
    univariates, their graphs form the design, and ``perm_p`` is applied to each
    set. ``design_hook`` may alter that design before comparison (used for
    mutation tests).
    """
    if not is_prime(p):
        raise ParameterError(f"p must be prime, got {p}")
    w = floor_log2(p)
    if n < 1 or d < 0:
        raise ParameterError("need n >= 1 and d >= 0")
    if d > (1 << w) - 1:
        raise ParameterError(
            f"d = {d} exceeds 2^floor(log2 p) - 1 = {(1 << w) - 1}; some monomials are unreachable"
        )
    if n > p:
        raise ParameterError(f"need a = n <= p, got n={n}, p={p}")
    if n * w > MAX_R:
        raise ParameterError(f"n*floor(log2 p) = {n * w} exceeds {MAX_R}")

    F = truncate_F(build_F(n, n, p), d)
    lhs = coeff_vector_of_F(F, d)

    design = codeword_design(n, d, p)
    if design_hook is not None:
        design = design_hook(design)
    rhs = ki_gen(design, lambda ws: perm_p(p, ws), arity=p, labels=z_labels(p))

    mismatches = []
    for k, (e, left, right) in enumerate(zip(lhs.exponents, lhs.entries, rhs.entries)):
        if left != right:
            mismatches.append(
                {"index": k, "y_exp": list(e), "coeff_vector": str(left), "ki_gen": str(right)}
            )
    if len(rhs) != len(lhs):
        mismatches.append({"index": None, "length": [len(lhs), len(rhs)]})
    return {
        "n": n,
        "d": d,
        "p": p,
        "N": len(lhs),
        "holds": not mismatches,
        "mismatches": mismatches,
    }
