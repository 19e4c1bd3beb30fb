"""Encoding gadgets: Mon, Q, Sel, R and the RS-Design map.

Each gadget comes as a symbolic builder, which expands to a canonical
SparsePoly and is only feasible at toy sizes, and as a direct evaluator for
boolean inputs. Tests cross-check the two.

Variable labels: ``t1..tr`` for codeword bits, ``y1..yn`` for monomial
variables, ``u0..u{n-1}`` and ``v`` for the selector, ``z_i_j`` for the p x p
grid of design variables.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from .arith import floor_log2, is_prime
from .designs import Codeword, decode_codeword
from .exceptions import ParameterError, ResourceError
from .polynomials import (
    DEFAULT_TERM_CAP,
    RationalUniPoly,
    SparsePoly,
    lagrange_interpolate,
    partial_evaluate,
    poly_eval,
    poly_mul,
    poly_substitute,
)

__all__ = [
    "PolyMap",
    "binary_digits",
    "build_Q",
    "build_mon",
    "build_rs_design_map",
    "build_sel",
    "eval_R",
    "mon_at",
    "mon_factors",
    "mon_monomial",
    "rs_design_select",
    "sel_eval",
    "t_labels",
    "y_labels",
    "z_label",
    "z_labels",
]


def t_labels(r: int) -> list[str]:
    return [f"t{k + 1}" for k in range(r)]


def y_labels(n: int) -> list[str]:
    return [f"y{k + 1}" for k in range(n)]


def u_labels(n: int) -> list[str]:
    return [f"u{k}" for k in range(n)]


def z_label(i: int, j: int) -> str:
    return f"z_{i}_{j}"


def z_labels(p: int) -> list[str]:
    """Grid labels in flattened order ``i*p + j``."""
    return [z_label(i, j) for i in range(p) for j in range(p)]


def binary_digits(e: int, width: int) -> tuple[int, ...]:
    """``width`` bits of ``e``, least significant first."""
    if e < 0 or e >= 1 << width:
        raise ParameterError(f"{e} does not fit in {width} bits")
    return tuple((e >> k) & 1 for k in range(width))


@dataclass(frozen=True)
class PolyMap:
    """A fixed-length tuple of polynomials over one shared context."""

    entries: tuple[SparsePoly, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if entries and any(e.vars != entries[0].vars for e in entries):
            raise ParameterError("PolyMap entries must share one variable context")

    @property
    def vars(self) -> tuple[str, ...]:
        return self.entries[0].vars if self.entries else ()

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def __iter__(self):
        return iter(self.entries)

    def evaluate(self, point: Sequence) -> list:
        return [poly_eval(e, point) for e in self.entries]

    def specialize(self, assignment) -> PolyMap:
        return PolyMap(tuple(partial_evaluate(e, assignment) for e in self.entries))


# -- Mon ---------------------------------------------------------------------


def _check_mon(r: int, n: int) -> None:
    if n < 1 or r < n:
        raise ParameterError(f"need r >= n >= 1, got r={r}, n={n}")


def mon_factors(r: int, n: int) -> list[SparsePoly]:
    """The factors ``t*y_{i+1}^(2^j) + (1 - t)`` for block width ``a = r // n``."""
    _check_mon(r, n)
    a = r // n
    ctx = tuple(t_labels(r) + y_labels(n))
    factors = []
    for i in range(n):
        y = SparsePoly.variable(ctx, f"y{i + 1}")
        for j in range(a):
            t = SparsePoly.variable(ctx, f"t{i * a + j + 1}")
            factors.append(t * y ** (2**j) + (1 - t))
    return factors


def build_mon(r: int, n: int, term_cap: int = DEFAULT_TERM_CAP) -> SparsePoly:
    """Mon_{r,n}(t, y) fully expanded; up to 3**r terms, guarded by ``term_cap``."""
    factors = mon_factors(r, n)
    result = SparsePoly.constant(factors[0].vars, 1)
    for f in factors:
        result = poly_mul(result, f, term_cap)
    if len(result) > term_cap:
        raise ResourceError(f"Mon expansion exceeds the term cap of {term_cap}")
    return result


def mon_at(t: Sequence[int], n: int) -> SparsePoly:
    """Mon with the t-variables fixed, as a polynomial in y.

    Each factor is specialized before multiplying, so this stays cheap where
    the full expansion would not.
    """
    r = len(t)
    fix = dict(zip(t_labels(r), t))
    result = SparsePoly.constant(y_labels(n), 1)
    for f in mon_factors(r, n):
        result = result * partial_evaluate(f, fix)
    return result


def mon_monomial(t: Sequence[int], n: int) -> tuple[int, ...]:
    """Exponent vector encoded by boolean ``t``: block ``i`` read LSB first."""
    r = len(t)
    _check_mon(r, n)
    a = r // n
    return tuple(
        sum(t[i * a + j] << j for j in range(a)) for i in range(n)
    )


# -- Q and Sel ---------------------------------------------------------------


@lru_cache(maxsize=256)
def build_Q(i: int, b: int, p: int) -> RationalUniPoly:
    """Interpolant that is 1 on ``a = i mod p`` and 0 elsewhere for ``0 <= a < b``."""
    if not is_prime(p):
        raise ParameterError(f"p must be prime, got {p}")
    if not 0 <= i < p <= b:
        raise ParameterError(f"need 0 <= i < p <= b, got i={i}, p={p}, b={b}")
    return lagrange_interpolate([(a, 1 if a % p == i else 0) for a in range(b)])


def build_sel(n: int, b: int, p: int) -> SparsePoly:
    """Sum of ``u_i * Q_{i,b,p}(v)`` over residues ``i < p``; context ``u0..u{n-1}, v``.

    Selectors ``u_p .. u_{n-1}`` (if any) do not occur.
    """
    if n < p:
        raise ParameterError(f"need n >= p, got n={n}, p={p}")
    ctx = tuple(u_labels(n) + ["v"])
    result = SparsePoly.zero(ctx)
    for i in range(p):
        u = SparsePoly.variable(ctx, f"u{i}")
        result = result + u * build_Q(i, b, p).to_sparse(ctx, "v")
    return result


def sel_eval(u: Sequence, a: int, p: int):
    """Direct evaluator: ``u[a mod p]``."""
    return u[a % p]


# -- R and RS-Design ---------------------------------------------------------


def _row_values(t: Sequence[int], a: int, p: int) -> list[int]:
    w = floor_log2(p)
    if len(t) != a * w:
        raise ParameterError(f"t needs {a * w} bits for a={a}, p={p}; got {len(t)}")
    return [sum(t[j * w + k] << k for k in range(w)) for j in range(a)]


def eval_R(i: int, a: int, p: int, t: Sequence[int]) -> int:
    """Integer ``sum_j row_j(t) * (i**j mod p)``; congruent to g(i) mod p.

    ``0**0`` counts as 1 so that ``i = 0`` picks up the constant coefficient.
    """
    if not 0 <= i < p:
        raise ParameterError(f"i must lie in [0, {p - 1}]")
    rows = _row_values(t, a, p)
    return sum(c * pow(i, j, p) for j, c in enumerate(rows))


def R_poly(i: int, a: int, p: int) -> SparsePoly:
    """R_{i,a,p} as a linear polynomial in ``t1..tr``."""
    w = floor_log2(p)
    ctx = tuple(t_labels(a * w))
    terms = {}
    for j in range(a):
        m = pow(i, j, p)
        for k in range(w):
            exp = [0] * len(ctx)
            exp[j * w + k] = 1
            terms[tuple(exp)] = m << k
    return SparsePoly(ctx, terms)


def rs_design_select(t: Sequence[int], p: int, a: int) -> list[str]:
    """Labels ``z_{i, R_i(t) mod p}`` for each column ``i``; the RS-Design map on boolean t."""
    if not 1 <= a <= p:
        raise ParameterError(f"need 1 <= a <= p, got a={a}, p={p}")
    return [z_label(i, sel_eval(range(p), eval_R(i, a, p, t), p)) for i in range(p)]


def build_rs_design_map(p: int, a: int, term_cap: int = DEFAULT_TERM_CAP) -> PolyMap:
    """Symbolic RS-Design_{p,a} in context ``t1..tr, z_0_0..z_{p-1}_{p-1}``.

    Entry ``i`` is Sel_{p,p^3,p}(z_{i,0..p-1}, R_i(t)). The Sel polynomial has
    degree p^3 - 1 in its last argument, so only p = 2 or 3 fit under the cap.
    """
    if not is_prime(p):
        raise ParameterError(f"p must be prime, got {p}")
    if not 1 <= a <= p:
        raise ParameterError(f"need 1 <= a <= p, got a={a}, p={p}")
    r = a * floor_log2(p)
    # R is linear in r variables, so R**(p^3 - 1) has up to C(p^3 - 1 + r, r) terms
    estimate = p * comb(p**3 - 1 + r, r)
    if estimate > term_cap:
        raise ResourceError(
            f"RS-Design expansion for p={p}, a={a} needs ~{estimate} terms (cap {term_cap})"
        )
    ctx = tuple(t_labels(r) + z_labels(p))
    sel = build_sel(p, p**3, p)
    entries = []
    for i in range(p):
        R = R_poly(i, a, p)
        R = SparsePoly(ctx, {e + (0,) * (p * p): c for e, c in R.terms.items()})
        images = [SparsePoly.variable(ctx, z_label(i, j)) for j in range(p)] + [R]
        entries.append(poly_substitute(sel, images, term_cap))
    return PolyMap(tuple(entries))


def codeword_select(c: Codeword) -> list[str]:
    """Reference route via the decoded univariate: ``z_{i, g(i)}``."""
    g = decode_codeword(c)
    return [z_label(i, g(i).value) for i in range(c.p)]
