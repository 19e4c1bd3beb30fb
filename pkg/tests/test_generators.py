import random
from itertools import permutations, product
from math import comb

import pytest

from succinct_hsg.designs import Design, rs_design
from succinct_hsg.exceptions import ParameterError, ResourceError
from succinct_hsg.gadgets import binary_digits, mon_monomial, z_labels
from succinct_hsg.generators import (
    CoeffVector,
    SuccinctF,
    build_F,
    check_succinctness,
    codeword_design,
    coeff_vector_of_F,
    ki_gen,
    ki_gen_point,
    perm_p,
    permanent_oracle,
    permanent_ryser,
    truncate_F,
)
from succinct_hsg.polynomials import SparsePoly, monomials_upto


def zvar(p, i, j):
    return SparsePoly.variable(z_labels(p), f"z_{i}_{j}")


def test_permanent_examples():
    assert permanent_ryser([[1, 2], [3, 4]]) == 10
    assert permanent_ryser([[1] * 3] * 3) == 6
    a = SparsePoly.variable(("a",), "a")
    assert permanent_ryser([[a]]) == a
    assert permanent_oracle([[0, 1], [1, 0]]) == 1
    assert permanent_oracle([[2, 0, 0], [0, 3, 0], [0, 0, 7]]) == 42
    with pytest.raises(ParameterError):
        permanent_ryser([[1, 2]])
    with pytest.raises(ResourceError):
        permanent_oracle([[1] * 7] * 7)


def test_ryser_matches_oracle_random():
    rng = random.Random(2024)
    for _ in range(200):
        m = rng.randint(1, 5)
        M = [[rng.randint(-9, 9) for _ in range(m)] for _ in range(m)]
        assert permanent_ryser(M) == permanent_oracle(M)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_ryser_matches_oracle_zero_one(m):
    for bits in product((0, 1), repeat=m * m):
        M = [list(bits[i * m:(i + 1) * m]) for i in range(m)]
        assert permanent_ryser(M) == permanent_oracle(M)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_permanent_row_linearity(m):
    ctx = tuple(f"a{i}{j}" for i in range(m) for j in range(m)) + tuple(
        f"b{j}" for j in range(m)
    ) + ("s", "t")
    var = lambda lab: SparsePoly.variable(ctx, lab)  # noqa: E731
    M = [[var(f"a{i}{j}") for j in range(m)] for i in range(m)]
    b = [var(f"b{j}") for j in range(m)]
    s, t = var("s"), var("t")
    for row in range(m):
        mixed = [r[:] for r in M]
        mixed[row] = [s * x + t * y for x, y in zip(M[row], b)]
        replaced = [r[:] for r in M]
        replaced[row] = b
        assert permanent_ryser(mixed) == s * permanent_ryser(M) + t * permanent_ryser(replaced)
        assert permanent_ryser(mixed) == permanent_oracle(mixed)


def test_perm_p_examples():
    assert perm_p(5, [1, 2, 3, 4, 9]) == 10
    assert perm_p(2, [7, 8]) == 7
    assert perm_p(3, [7, 8, 9]) == 7
    xy = SparsePoly.variable(("x", "y"), "x")
    assert perm_p(11, [1] * 9 + [xy, xy]) == 6
    with pytest.raises(ParameterError):
        perm_p(5, [1, 2])


def test_ki_gen_examples():
    d = rs_design(2, 1)
    G = ki_gen(d, lambda w: perm_p(2, w), arity=2, labels=z_labels(2))
    assert list(G) == [zvar(2, 0, 0), zvar(2, 0, 1)]
    G = ki_gen(d, lambda w: 5)
    assert all(g == 5 for g in G)
    single = Design(4, 3, 1, ((0, 2, 3),))
    (g,) = ki_gen(single, lambda w: w[0] + w[1] + w[2])
    ctx = tuple(f"z{k}" for k in range(4))
    assert g == sum((SparsePoly.variable(ctx, f"z{k}") for k in (0, 2, 3)), SparsePoly.zero(ctx))
    with pytest.raises(ParameterError):
        ki_gen(d, sum, arity=3)


def test_ki_gen_point_agrees_with_symbolic():
    d = rs_design(3, 2)
    f = lambda w: perm_p(3, w) * w[1] + w[2]  # noqa: E731
    G = ki_gen(d, f, labels=z_labels(3))
    rng = random.Random(1)
    pt = [rng.randint(-5, 5) for _ in range(9)]
    assert ki_gen_point(d, f, pt) == G.evaluate(pt)


def test_build_F_smallest():
    F = build_F(1, 1, 2)
    assert F.terms == {(0,): zvar(2, 0, 0), (1,): zvar(2, 0, 1)}
    flat = F.to_flat()
    ctx = flat.vars
    assert flat == SparsePoly.variable(ctx, "z_0_0") + SparsePoly.variable(
        ctx, "y1"
    ) * SparsePoly.variable(ctx, "z_0_1")


def oracle_F_n2_a2_p5():
    """Independent expansion: every (g0, g1) in [0,3]^2 gives key (g0, g1)."""
    p = 5
    out = {}
    for g0, g1 in product(range(4), repeat=2):
        col = [zvar(p, i, (g0 + g1 * i) % p) for i in range(p)]
        M = [[col[0], col[1]], [col[2], col[3]]]
        total = SparsePoly.zero(z_labels(p))
        for sigma in permutations(range(2)):
            total = total + M[0][sigma[0]] * M[1][sigma[1]]
        out[(g0, g1)] = total
    return out


def test_build_F_n2_a2_p5():
    F = build_F(2, 2, 5)
    assert len(F.terms) == 16
    assert set(F.terms) == set(product(range(4), repeat=2))
    assert F.terms == oracle_F_n2_a2_p5()


def test_build_F_key_bijection_when_a_equals_n():
    for n, p in [(1, 2), (2, 3), (2, 5), (3, 5), (2, 11)]:
        w = p.bit_length() - 1
        keys = [mon_monomial(t, n) for t in product((0, 1), repeat=n * w)]
        assert len(set(keys)) == len(keys) == 2 ** (n * w)
        assert set(keys) == set(product(range(2**w), repeat=n))
        assert set(build_F(n, n, p).terms) == set(keys)


def test_build_F_general_a_collisions_are_summed():
    # a=3, n=2, p=3: r=3, y-blocks of width 1 leave the last bit unused,
    # so the two codewords differing only there land on the same key
    F = build_F(2, 3, 3)
    assert set(F.terms) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    wide = build_F(3, 3, 3)
    assert len(wide.terms) == 8
    for key, poly in F.terms.items():
        t0 = (key[0], key[1], 0)
        t1 = (key[0], key[1], 1)
        assert poly == wide.terms[t0] + wide.terms[t1]


def test_build_F_guards():
    with pytest.raises(ParameterError):
        build_F(1, 3, 2)
    with pytest.raises(ParameterError):
        build_F(3, 1, 2)
    with pytest.raises(ResourceError):
        build_F(1, 11, 11)


def test_truncate_F():
    F = build_F(1, 1, 2)
    assert truncate_F(F, 1).terms == F.terms
    T = truncate_F(build_F(2, 2, 5), 2)
    assert list(sorted(T.terms)) == sorted([(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)])
    assert len(T.terms) == comb(4, 2)
    assert set(truncate_F(build_F(2, 2, 5), 0).terms) == {(0, 0)}


def test_coeff_vector_examples():
    cv = coeff_vector_of_F(truncate_F(build_F(1, 1, 2), 1), 1)
    assert list(cv.entries) == [zvar(2, 0, 0), zvar(2, 0, 1)]
    cv = coeff_vector_of_F(truncate_F(build_F(2, 2, 5), 2), 2)
    assert len(cv) == 6 and not any(e.is_zero() for e in cv.entries)
    assert cv.exponents == list(monomials_upto(2, 2))
    # d above the reachable degree pads with zeros
    F = build_F(1, 1, 2)
    cv = coeff_vector_of_F(F, 3)
    assert len(cv) == 4 and cv[2].is_zero() and cv[3].is_zero()
    with pytest.raises(ParameterError):
        coeff_vector_of_F(build_F(2, 2, 5), 2)
    with pytest.raises(ParameterError):
        CoeffVector(1, 1, (1, 2, 3))


@pytest.mark.parametrize("n, d, p", [(1, 1, 2), (1, 1, 3), (2, 1, 3), (2, 2, 5), (3, 2, 5)])
def test_check_succinctness_holds(n, d, p):
    rep = check_succinctness(n, d, p)
    assert rep["holds"], rep["mismatches"]
    assert rep["N"] == comb(n + d, n)


def test_check_succinctness_mutation_detected():
    def swap_first(design):
        sets = list(design.sets)
        sets[0] = sets[1]
        return Design(design.ell, design.m, design.n, tuple(sets))

    rep = check_succinctness(1, 1, 2, design_hook=swap_first)
    assert not rep["holds"]
    assert [m["index"] for m in rep["mismatches"]] == [0]


def test_check_succinctness_preconditions():
    with pytest.raises(ParameterError):
        check_succinctness(2, 5, 5)
    with pytest.raises(ParameterError):
        check_succinctness(3, 1, 2)
    with pytest.raises(ParameterError):
        check_succinctness(1, 1, 4)


def test_codeword_design_is_a_design():
    from succinct_hsg.designs import verify_design

    d = codeword_design(2, 2, 5)
    assert len(d) == 6
    assert verify_design(d)["valid"]
    assert d.sets[0] == tuple(i * 5 for i in range(5))
    assert binary_digits(3, 2) == (1, 1)


def test_succinct_f_json_round_trip():
    F = build_F(2, 2, 5)
    G = SuccinctF.from_json(F.to_json())
    assert G.terms == F.terms and (G.n, G.a, G.p) == (2, 2, 5)
