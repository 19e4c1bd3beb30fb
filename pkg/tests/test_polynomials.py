from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from succinct_hsg.arith import Fp
from succinct_hsg.exceptions import ParameterError, ResourceError
from succinct_hsg.polynomials import (
    NEG_INF,
    RationalUniPoly,
    SparsePoly,
    UniPolyFp,
    coefficient_extract,
    glex_key,
    lagrange_interpolate,
    monomials_upto,
    num_monomials,
    partial_evaluate,
    poly_add,
    poly_eval,
    poly_from_json,
    poly_mul,
    poly_substitute,
    poly_to_json,
    truncate_total_degree,
    uni_eval_fp,
)

XY = ("x", "y")
x = SparsePoly.variable(XY, "x")
y = SparsePoly.variable(XY, "y")


def coeffs():
    return st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, vars=XY, max_terms=4, max_exp=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        exp = tuple(draw(st.integers(0, max_exp)) for _ in vars)
        terms[exp] = draw(coeffs())
    return SparsePoly(vars, terms)


points = st.tuples(coeffs(), coeffs())


def test_add_examples():
    assert (x + y) + (x - y) == 2 * x
    f = x**2 + 3 * x * y - 1
    assert (f + (-f)).terms == {}
    assert (x**2 + 1) + (x**2 + x) == 2 * x**2 + x + 1


def test_mul_examples():
    assert (x + 1) * (x - 1) == x**2 - 1
    assert (x * y + 3) * SparsePoly.zero(XY) == SparsePoly.zero(XY)
    assert (x + y) ** 2 == x**2 + 2 * x * y + y**2


def test_context_mismatch():
    other = SparsePoly.variable(("x", "z"), "x")
    with pytest.raises(ParameterError):
        poly_add(x, other)
    with pytest.raises(ParameterError):
        poly_mul(x, other)


def test_eval_examples():
    assert poly_eval(x**2 * y, (2, 3)) == 12
    assert poly_eval(SparsePoly.zero(XY), (7, 8)) == 0
    assert poly_eval(x - y, (5, 5)) == 0
    with pytest.raises(ParameterError):
        poly_eval(x, (1,))


def test_eval_over_fp():
    f = x**2 + 3 * y
    assert poly_eval(f, (Fp(2, 5), Fp(1, 5))) == Fp(2, 5)


def test_substitute_examples():
    Z = ("z",)
    z = SparsePoly.variable(Z, "z")
    assert poly_substitute(x * y, [z + 1, z - 1]) == z**2 - 1
    W = ("w",)
    w = SparsePoly.variable(W, "w")
    assert poly_substitute(x - y, [w, w]).is_zero()
    Z2 = ("z1", "z2")
    z1, z2 = (SparsePoly.variable(Z2, v) for v in Z2)
    x1 = SparsePoly.variable(("x1",), "x1")
    assert poly_substitute(x1**2, [z1 + z2]) == z1**2 + 2 * z1 * z2 + z2**2
    with pytest.raises(ParameterError):
        poly_substitute(x * y, [z])


def test_substitute_term_cap():
    Z = ("a", "b", "c")
    s = sum((SparsePoly.variable(Z, v) for v in Z), SparsePoly.zero(Z))
    with pytest.raises(ResourceError):
        poly_substitute(x**10, [s, s], term_cap=20)


def test_truncate_examples():
    Y = ("y1", "y2")
    y1, y2 = (SparsePoly.variable(Y, v) for v in Y)
    f = y1**3 + y1 * y2 + 1
    assert truncate_total_degree(f, 2, Y) == y1 * y2 + 1
    assert truncate_total_degree(f, 5, Y) == f
    YZ = ("y1", "z1")
    a, b = (SparsePoly.variable(YZ, v) for v in YZ)
    assert truncate_total_degree(a * b**5 + a**2, 1, ["y1"]) == a * b**5


def test_coefficient_extract_examples():
    ctx = ("z0", "z1", "y1")
    z0, z1, y1 = (SparsePoly.variable(ctx, v) for v in ctx)
    f = z0 + y1 * z1
    assert coefficient_extract(f, (1,), ["y1"]) == SparsePoly.variable(("z0", "z1"), "z1")
    assert coefficient_extract(f, (2,), ["y1"]).is_zero()
    Y = ("y1", "y2")
    a, b = (SparsePoly.variable(Y, v) for v in Y)
    c = coefficient_extract(3 * a**2 * b + b, (2, 1), Y)
    assert c.vars == () and c == 3


def test_zero_degree_sentinel():
    assert SparsePoly.zero(XY).degree() == NEG_INF
    assert NEG_INF < -10**9
    assert UniPolyFp([0, 0], 3).degree == NEG_INF


def test_lagrange_examples():
    v = sympy.Symbol("v")
    pts = [(0, 0), (1, 1), (2, 0), (3, 0)]
    oracle = sympy.Poly(sympy.interpolate(pts, v), v).all_coeffs()[::-1]
    q = lagrange_interpolate(pts)
    assert list(q.coeffs) == [Fraction(str(c)) for c in oracle]
    assert q == RationalUniPoly([0, 3, Fraction(-5, 2), Fraction(1, 2)])
    assert lagrange_interpolate([(0, Fraction(7, 3))]) == RationalUniPoly([Fraction(7, 3)])
    assert lagrange_interpolate([(0, 0), (1, 1)]) == RationalUniPoly([0, 1])
    with pytest.raises(ParameterError):
        lagrange_interpolate([(1, 0), (1, 2)])


@settings(max_examples=50)
@given(st.lists(st.tuples(coeffs(), coeffs()), min_size=1, max_size=8, unique_by=lambda t: t[0]))
def test_lagrange_reproduces_points(pts):
    q = lagrange_interpolate(pts)
    assert q.degree <= len(pts) - 1
    for a, b in pts:
        assert q(a) == b


def test_uni_eval_fp_examples():
    assert uni_eval_fp(UniPolyFp([1, 1], 3), Fp(2, 3)) == Fp(0, 3)
    assert uni_eval_fp(UniPolyFp([], 7), Fp(4, 7)) == Fp(0, 7)
    assert uni_eval_fp(UniPolyFp([0, 0, 1], 5), Fp(3, 5)) == Fp(4, 5)
    with pytest.raises(ParameterError):
        uni_eval_fp(UniPolyFp([1], 5), Fp(1, 7))


def test_graded_lex_order():
    assert list(monomials_upto(2, 2)) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    for n, d in [(1, 4), (3, 3), (4, 2)]:
        mons = list(monomials_upto(n, d))
        assert len(mons) == num_monomials(n, d) == len(set(mons))
        assert mons == sorted(mons, key=glex_key)


@given(polys(), polys(), polys())
def test_ring_laws(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(polys(), polys(), points)
def test_eval_is_multiplicative(f, g, pt):
    assert poly_eval(f * g, pt) == poly_eval(f, pt) * poly_eval(g, pt)


@given(polys(), polys(), st.integers(0, 6))
def test_truncation_idempotent_and_additive(f, g, d):
    t = truncate_total_degree(f, d, XY)
    assert truncate_total_degree(t, d, XY) == t
    assert truncate_total_degree(f + g, d, XY) == t + truncate_total_degree(g, d, XY)


@given(polys(vars=("y1", "z1", "z2")))
def test_coefficient_extract_reconstructs(f):
    ctx = f.vars
    keys = {e[:1] for e in f.terms}
    rebuilt = SparsePoly.zero(ctx)
    for (k,) in keys:
        c = coefficient_extract(f, (k,), ["y1"])
        lifted = SparsePoly(ctx, {(k,) + e: v for e, v in c.terms.items()})
        rebuilt = rebuilt + lifted
    assert rebuilt == f


@given(polys(), points)
def test_partial_evaluate_then_eval(f, pt):
    g = partial_evaluate(f, {"x": pt[0]})
    assert g.vars == ("y",)
    assert poly_eval(g, (pt[1],)) == poly_eval(f, pt)


@given(polys())
def test_json_round_trip(f):
    obj = poly_to_json(f)
    assert poly_from_json(obj) == f
    keys = [glex_key(t["exp"]) for t in obj["terms"]]
    assert keys == sorted(keys)


def test_canonical_form_drops_zeros():
    f = SparsePoly(XY, {(1, 0): 0, (0, 1): Fraction(2)})
    assert f.terms == {(0, 1): 2}
    assert SparsePoly(XY, {(1, 0): 1}) + SparsePoly(XY, {(1, 0): -1}) == 0
