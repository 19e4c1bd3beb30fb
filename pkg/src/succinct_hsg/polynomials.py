"""Sparse multivariate polynomials, univariate polynomials and interpolation.

A :class:`SparsePoly` lives in an explicit, ordered variable context and keeps
its terms in canonical form: a dict from exponent tuple to a nonzero
coefficient. Two polynomials are equal exactly when their contexts and term
maps are equal, so identity checks are structural comparisons.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

from .arith import Fp, parse_rational, rational_to_str, to_fp
from .exceptions import ParameterError, ResourceError

__all__ = [
    "DEFAULT_TERM_CAP",
    "NEG_INF",
    "RationalUniPoly",
    "SparsePoly",
    "UniPolyFp",
    "coefficient_extract",
    "glex_key",
    "lagrange_interpolate",
    "monomials_upto",
    "num_monomials",
    "partial_evaluate",
    "poly_add",
    "poly_eval",
    "poly_from_json",
    "poly_mul",
    "poly_substitute",
    "poly_to_json",
    "truncate_total_degree",
    "uni_eval_fp",
]

DEFAULT_TERM_CAP = 10**6

# Degree of the zero polynomial; compares below every integer.
NEG_INF = float("-inf")


def glex_key(exp: Sequence[int]) -> tuple:
    """Sort key for graded-lex order: total degree first, then larger leading exponents first."""
    return (sum(exp), tuple(-e for e in exp))


def monomials_upto(n: int, d: int) -> Iterator[tuple[int, ...]]:
    """All exponent vectors of ``n`` variables with total degree <= ``d``, graded-lex.

    For n=2, d=2 this yields 1, x1, x2, x1^2, x1*x2, x2^2.
    """
    if n < 0 or d < 0:
        raise ParameterError("n and d must be nonnegative")
    for deg in range(d + 1):
        # combinations of variable indices in nondecreasing order enumerate
        # degree-deg monomials with larger early exponents first
        for combo in combinations_with_replacement(range(n), deg):
            exp = [0] * n
            for idx in combo:
                exp[idx] += 1
            yield tuple(exp)


def num_monomials(n: int, d: int) -> int:
    from math import comb

    return comb(n + d, n)


def _is_zero(c) -> bool:
    return c == 0


class SparsePoly:
    """Canonical sparse polynomial over an exact coefficient ring.

    Coefficients are ints, :class:`~fractions.Fraction` or :class:`~succinct_hsg.arith.Fp`
    values. Instances are treated as immutable.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Iterable[str], terms: Mapping[tuple, object] | None = None):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ParameterError(f"duplicate variable labels in {self.vars}")
        clean = {}
        k = len(self.vars)
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != k or any(e < 0 for e in exp):
                raise ParameterError(f"bad exponent vector {exp} for {k} variables")
            if not _is_zero(c):
                clean[exp] = clean.get(exp, 0) + c
                if _is_zero(clean[exp]):
                    del clean[exp]
        self.terms = clean

    @classmethod
    def _raw(cls, vars: tuple, terms: dict) -> SparsePoly:
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        return obj

    # constructors

    @classmethod
    def zero(cls, vars: Iterable[str]) -> SparsePoly:
        return cls._raw(tuple(vars), {})

    @classmethod
    def constant(cls, vars: Iterable[str], c) -> SparsePoly:
        vars = tuple(vars)
        if _is_zero(c):
            return cls._raw(vars, {})
        return cls._raw(vars, {(0,) * len(vars): c})

    @classmethod
    def variable(cls, vars: Iterable[str], label: str) -> SparsePoly:
        vars = tuple(vars)
        try:
            idx = vars.index(label)
        except ValueError:
            raise ParameterError(f"{label!r} is not in the context {vars}") from None
        exp = [0] * len(vars)
        exp[idx] = 1
        return cls._raw(vars, {tuple(exp): 1})

    @classmethod
    def monomial(cls, vars: Iterable[str], exp: Sequence[int], coeff=1) -> SparsePoly:
        return cls(vars, {tuple(exp): coeff})

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self, vars: Iterable[str] | None = None):
        """Total degree, optionally counted only in ``vars``; NEG_INF for zero."""
        if not self.terms:
            return NEG_INF
        idx = self._indices(vars) if vars is not None else range(len(self.vars))
        return max(sum(exp[i] for i in idx) for exp in self.terms)

    def degree_in(self, label: str):
        if not self.terms:
            return NEG_INF
        i = self._indices([label])[0]
        return max(exp[i] for exp in self.terms)

    def coefficient(self, exp: Sequence[int]):
        return self.terms.get(tuple(exp), 0)

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        return sorted(self.terms.items(), key=lambda kv: glex_key(kv[0]))

    def _indices(self, labels: Iterable[str]) -> list[int]:
        out = []
        for lab in labels:
            try:
                out.append(self.vars.index(lab))
            except ValueError:
                raise ParameterError(f"{lab!r} is not in the context {self.vars}") from None
        return out

    def __len__(self) -> int:
        return len(self.terms)

    # arithmetic

    def _lift(self, other) -> SparsePoly:
        if isinstance(other, SparsePoly):
            if other.vars != self.vars:
                raise ParameterError(
                    f"variable context mismatch: {self.vars} vs {other.vars}"
                )
            return other
        if isinstance(other, (Rational, Fp)):
            return SparsePoly.constant(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return poly_add(self, o)

    __radd__ = __add__

    def __neg__(self) -> SparsePoly:
        return SparsePoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return poly_add(self, -o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return poly_add(o, -self)

    def __mul__(self, other):
        if isinstance(other, (Rational, Fp)) and not isinstance(other, SparsePoly):
            return self.scale(other)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return poly_mul(self, o)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> SparsePoly:
        if not isinstance(k, int) or k < 0:
            raise ParameterError("exponent must be a nonnegative integer")
        result = SparsePoly.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> SparsePoly:
        if _is_zero(c):
            return SparsePoly.zero(self.vars)
        terms = {}
        for e, v in self.terms.items():
            w = v * c
            if not _is_zero(w):
                terms[e] = w
        return SparsePoly._raw(self.vars, terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (Rational, Fp)):
            if _is_zero(other):
                return not self.terms
            return self.terms == {(0,) * len(self.vars): other}
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    def __call__(self, *point):
        return poly_eval(self, point)

    def __repr__(self) -> str:
        return f"SparsePoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in reversed(self.sorted_terms()):
            mono = "*".join(
                lab if e == 1 else f"{lab}^{e}"
                for lab, e in zip(self.vars, exp)
                if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _check_same_context(f: SparsePoly, g: SparsePoly) -> None:
    if f.vars != g.vars:
        raise ParameterError(f"variable context mismatch: {f.vars} vs {g.vars}")


def poly_add(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    _check_same_context(f, g)
    if len(f.terms) < len(g.terms):
        f, g = g, f
    terms = dict(f.terms)
    for e, c in g.terms.items():
        s = terms.get(e, 0) + c
        if _is_zero(s):
            terms.pop(e, None)
        else:
            terms[e] = s
    return SparsePoly._raw(f.vars, terms)


def poly_mul(f: SparsePoly, g: SparsePoly, term_cap: int = DEFAULT_TERM_CAP) -> SparsePoly:
    """Product by exponent addition and coefficient convolution.

    Raises :class:`ResourceError` if an intermediate term map outgrows ``term_cap``.
    """
    _check_same_context(f, g)
    terms: dict = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            terms[e] = terms.get(e, 0) + c1 * c2
        if len(terms) > term_cap:
            raise ResourceError(f"product exceeds the term cap of {term_cap}")
    return SparsePoly._raw(f.vars, {e: c for e, c in terms.items() if not _is_zero(c)})


def poly_eval(f: SparsePoly, point: Sequence):
    """Exact evaluation at a point given in context order."""
    point = tuple(point)
    if len(point) != len(f.vars):
        raise ParameterError(
            f"point has {len(point)} coordinates, context has {len(f.vars)}"
        )
    total = 0
    for exp, c in f.terms.items():
        val = c
        for x, e in zip(point, exp):
            if e:
                val = val * x**e
        total = total + val
    return total


def poly_eval_mod(f: SparsePoly, point: Sequence[int], p: int) -> Fp:
    """Evaluate after mapping coefficients and point into F_p."""
    return poly_eval(
        SparsePoly._raw(f.vars, {e: to_fp(c, p) for e, c in f.terms.items()}),
        [to_fp(x, p) for x in point],
    ) + Fp(0, p)


def poly_substitute(
    f: SparsePoly, images: Sequence[SparsePoly], term_cap: int = DEFAULT_TERM_CAP
) -> SparsePoly:
    """Formal composition ``f(images[0], ..., images[k-1])``.

    The result lives in the images' shared context.
    """
    images = list(images)
    if len(images) != len(f.vars):
        raise ParameterError(
            f"need {len(f.vars)} images, got {len(images)}"
        )
    if not images:
        raise ParameterError("cannot infer a target context from zero images")
    ctx = images[0].vars
    for g in images[1:]:
        if g.vars != ctx:
            raise ParameterError("images must share one variable context")
    powers: list[dict[int, SparsePoly]] = [{1: g} for g in images]

    def power(i: int, e: int) -> SparsePoly:
        cache = powers[i]
        if e not in cache:
            cache[e] = poly_mul(power(i, e // 2), power(i, e - e // 2), term_cap)
        return cache[e]

    result = SparsePoly.zero(ctx)
    for exp, c in f.terms.items():
        term = SparsePoly.constant(ctx, c)
        for i, e in enumerate(exp):
            if e:
                term = poly_mul(term, power(i, e), term_cap)
        result = poly_add(result, term)
        if len(result.terms) > term_cap:
            raise ResourceError(f"composition exceeds the term cap of {term_cap}")
    return result


def partial_evaluate(f: SparsePoly, assignment: Mapping[str, object]) -> SparsePoly:
    """Fix the variables in ``assignment``; the result drops them from the context."""
    fixed = f._indices(assignment)
    values = [assignment[f.vars[i]] for i in fixed]
    keep = [i for i in range(len(f.vars)) if i not in set(fixed)]
    terms: dict = {}
    for exp, c in f.terms.items():
        val = c
        for i, x in zip(fixed, values):
            if exp[i]:
                val = val * x ** exp[i]
                if _is_zero(val):
                    break
        if _is_zero(val):
            continue
        key = tuple(exp[i] for i in keep)
        s = terms.get(key, 0) + val
        if _is_zero(s):
            terms.pop(key, None)
        else:
            terms[key] = s
    return SparsePoly._raw(tuple(f.vars[i] for i in keep), terms)


def truncate_total_degree(f: SparsePoly, d: int, vars: Iterable[str]) -> SparsePoly:
    """Keep only the terms of total degree <= ``d`` in ``vars``."""
    vars = list(vars)
    if d < 0:
        raise ParameterError("d must be nonnegative")
    if not vars:
        raise ParameterError("vars must be nonempty")
    idx = f._indices(vars)
    return SparsePoly._raw(
        f.vars,
        {e: c for e, c in f.terms.items() if sum(e[i] for i in idx) <= d},
    )


def coefficient_extract(
    f: SparsePoly, exp: Sequence[int], vars: Sequence[str]
) -> SparsePoly:
    """Coefficient of ``prod vars**exp`` as a polynomial in the remaining variables."""
    vars = list(vars)
    exp = tuple(exp)
    if len(exp) != len(vars):
        raise ParameterError("exponent vector and variable subset differ in length")
    idx = f._indices(vars)
    sel = set(idx)
    keep = [i for i in range(len(f.vars)) if i not in sel]
    terms = {}
    for e, c in f.terms.items():
        if all(e[i] == x for i, x in zip(idx, exp)):
            terms[tuple(e[i] for i in keep)] = c
    return SparsePoly._raw(tuple(f.vars[i] for i in keep), terms)


class UniPolyFp:
    """Univariate polynomial over F_p; ``coeffs[j]`` multiplies ``v**j``."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs: Iterable, p: int):
        cs = [to_fp(c, p).value for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.p = p

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __call__(self, x) -> Fp:
        return uni_eval_fp(self, x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPolyFp):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.coeffs, self.p))

    def __repr__(self) -> str:
        return f"UniPolyFp({list(self.coeffs)}, p={self.p})"


def uni_eval_fp(g: UniPolyFp, x) -> Fp:
    """Horner evaluation over F_p."""
    if isinstance(x, Fp):
        if x.modulus != g.p:
            raise ParameterError(f"modulus mismatch: {g.p} vs {x.modulus}")
        xv = x.value
    else:
        xv = int(x) % g.p
    acc = 0
    for c in reversed(g.coeffs):
        acc = (acc * xv + c) % g.p
    return Fp(acc, g.p)


class RationalUniPoly:
    """Univariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_sparse(self, vars: Sequence[str], label: str) -> SparsePoly:
        """Embed as a SparsePoly in ``label`` inside the context ``vars``."""
        vars = tuple(vars)
        i = vars.index(label)
        terms = {}
        for j, c in enumerate(self.coeffs):
            if c:
                exp = [0] * len(vars)
                exp[i] = j
                terms[tuple(exp)] = c
        return SparsePoly._raw(vars, terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalUniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RationalUniPoly({[str(c) for c in self.coeffs]})"


def lagrange_interpolate(points: Sequence[tuple]) -> RationalUniPoly:
    """Unique polynomial of degree <= len(points)-1 through ``points``.

    Newton divided differences, then expansion to the monomial basis; every
    step is exact.
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    if not pts:
        raise ParameterError("need at least one point")
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ParameterError("abscissas must be distinct")
    n = len(pts)
    dd = [y for _, y in pts]
    for level in range(1, n):
        for k in range(n - 1, level - 1, -1):
            dd[k] = (dd[k] - dd[k - 1]) / (xs[k] - xs[k - level])
    # Horner on the Newton form: result = dd[n-1]; result = result*(v - x_k) + dd[k]
    coeffs = [dd[n - 1]]
    for k in range(n - 2, -1, -1):
        shifted = [Fraction(0)] + coeffs
        for j, c in enumerate(coeffs):
            shifted[j] -= c * xs[k]
        shifted[0] += dd[k]
        coeffs = shifted
    return RationalUniPoly(coeffs)


def poly_to_json(f: SparsePoly) -> dict:
    return {
        "vars": list(f.vars),
        "terms": [
            {"exp": list(e), "coeff": rational_to_str(c)} for e, c in f.sorted_terms()
        ],
    }


def poly_from_json(obj: Mapping) -> SparsePoly:
    return SparsePoly(
        obj["vars"],
        {tuple(t["exp"]): parse_rational(t["coeff"]) for t in obj["terms"]},
    )
