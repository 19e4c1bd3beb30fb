"""Combinatorial designs, the Reed-Solomon construction, and the bit-vector codec.

The universe F_p x F_p is flattened as ``(i, j) -> i*p + j``. A codeword is a
bit vector read as ``a`` rows of ``floor(log2 p)`` bits, least significant bit
first; row ``j`` is the coefficient of ``v**j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from .arith import floor_log2, is_prime
from .exceptions import ParameterError
from .polynomials import UniPolyFp, uni_eval_fp

__all__ = [
    "Codeword",
    "Design",
    "codeword_from_coeffs",
    "codeword_to_set",
    "decode_codeword",
    "design_from_json",
    "design_to_json",
    "rs_design",
    "verify_design",
]


@dataclass(frozen=True)
class Design:
    """A family of ``m``-subsets of ``range(ell)`` meant to intersect in fewer than ``n`` points."""

    ell: int
    m: int
    n: int
    sets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(tuple(sorted(s)) for s in self.sets))

    def __len__(self) -> int:
        return len(self.sets)


def verify_design(d: Design) -> dict:
    """Exhaustively check set sizes and pairwise intersections.

    Returns ``{"valid": bool, "violations": [...]}``; each violation names the
    offending set index or pair.
    """
    violations = []
    for k, s in enumerate(d.sets):
        if len(set(s)) != len(s):
            violations.append({"kind": "repeated_element", "set": k})
        if len(set(s)) != d.m:
            violations.append({"kind": "size", "set": k, "size": len(set(s))})
        if any(not 0 <= x < d.ell for x in s):
            violations.append({"kind": "out_of_universe", "set": k})
    as_sets = [set(s) for s in d.sets]
    for i, j in combinations(range(len(as_sets)), 2):
        common = len(as_sets[i] & as_sets[j])
        if common >= d.n:
            violations.append({"kind": "intersection", "pair": [i, j], "size": common})
    return {"valid": not violations, "violations": violations}


def _check_rs_params(p: int, a: int) -> None:
    if not is_prime(p):
        raise ParameterError(f"p must be prime, got {p}")
    if not 1 <= a <= p:
        raise ParameterError(f"need 1 <= a <= p, got a={a}, p={p}")


def graph_set(g: UniPolyFp) -> tuple[int, ...]:
    p = g.p
    return tuple(sorted(i * p + uni_eval_fp(g, i).value for i in range(p)))


def rs_design(p: int, a: int) -> Design:
    """The (p^2, p, a)-design of graphs of all univariates of degree < a.

    Sets follow the lexicographic order of (g_0, ..., g_{a-1}).
    """
    _check_rs_params(p, a)
    sets = [graph_set(UniPolyFp(coeffs, p)) for coeffs in product(range(p), repeat=a)]
    return Design(ell=p * p, m=p, n=a, sets=tuple(sets))


@dataclass(frozen=True)
class Codeword:
    bits: tuple[int, ...]
    p: int
    a: int

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        object.__setattr__(self, "bits", bits)
        if any(b not in (0, 1) for b in bits):
            raise ParameterError("codeword entries must be 0 or 1")
        _check_rs_params(self.p, self.a)
        if len(bits) != self.r:
            raise ParameterError(
                f"codeword needs {self.r} bits for p={self.p}, a={self.a}; got {len(bits)}"
            )

    @property
    def row_bits(self) -> int:
        return floor_log2(self.p)

    @property
    def r(self) -> int:
        return self.a * floor_log2(self.p)

    def rows(self) -> list[tuple[int, ...]]:
        w = self.row_bits
        return [self.bits[j * w:(j + 1) * w] for j in range(self.a)]

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


def decode_codeword(c: Codeword) -> UniPolyFp:
    """Row ``j`` read LSB first gives the coefficient of ``v**j`` (mod p)."""
    coeffs = [sum(b << k for k, b in enumerate(row)) for row in c.rows()]
    return UniPolyFp(coeffs, c.p)


def codeword_from_coeffs(coeffs: Sequence[int], p: int) -> Codeword:
    """Inverse of :func:`decode_codeword` for coefficients below 2**floor(log2 p)."""
    w = floor_log2(p)
    bits = []
    for c in coeffs:
        if not 0 <= c < (1 << w):
            raise ParameterError(f"coefficient {c} does not fit in {w} bits")
        bits.extend((c >> k) & 1 for k in range(w))
    return Codeword(tuple(bits), p, len(coeffs))


def codeword_to_set(c: Codeword) -> tuple[int, ...]:
    """Flattened graph ``{i*p + g(i)}`` of the decoded univariate."""
    return graph_set(decode_codeword(c))


def all_codewords(p: int, a: int) -> Iterable[Codeword]:
    r = a * floor_log2(p)
    for bits in product((0, 1), repeat=r):
        yield Codeword(bits, p, a)


def design_to_json(d: Design) -> dict:
    return {"ell": d.ell, "m": d.m, "n": d.n, "sets": [list(s) for s in d.sets]}


def design_from_json(obj: Mapping) -> Design:
    return Design(obj["ell"], obj["m"], obj["n"], tuple(tuple(s) for s in obj["sets"]))
