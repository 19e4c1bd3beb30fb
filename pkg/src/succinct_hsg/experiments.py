"""Seeded experiment drivers shared by the CLI and the acceptance suite."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from math import comb

from .arith import floor_log2
from .circuits import circuit_to_json, circuit_to_polys, random_circuit
from .designs import all_codewords, decode_codeword
from .equations import check_equation_vanishes, find_equations, hitting_check, x_labels
from .exceptions import ParameterError, ResourceError
from .gadgets import (
    PolyMap,
    build_mon,
    build_rs_design_map,
    build_sel,
    codeword_select,
    eval_R,
    mon_at,
    mon_monomial,
    rs_design_select,
    t_labels,
    y_labels,
)
from .generators import build_F, coeff_vector_of_F, truncate_F
from .polynomials import DEFAULT_TERM_CAP, SparsePoly, partial_evaluate, poly_to_json

__all__ = [
    "gadget_report",
    "generator_map",
    "image_equations",
    "pit_experiment",
    "random_rational",
    "sample_image_points",
]


def random_rational(rng: random.Random, bound: int = 9) -> Fraction:
    """Small exact rational with numerator in [-bound, bound] and denominator in [1, bound]."""
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def generator_map(n: int, d: int, p: int) -> PolyMap:
    """Coefficient vector of F_{n,n,p} truncated to degree d, as a polynomial map in z."""
    F = truncate_F(build_F(n, n, p), d)
    return coeff_vector_of_F(F, d).as_polymap()


def sample_image_points(G: PolyMap, count: int, seed: int) -> list[list[Fraction]]:
    rng = random.Random(seed)
    points = []
    for _ in range(count):
        z = [random_rational(rng) for _ in G.vars]
        points.append([Fraction(v) for v in G.evaluate(z)])
    return points


def degenerate(G: PolyMap) -> PolyMap:
    """Copy of G whose second entry duplicates the first."""
    if len(G) < 2:
        raise ParameterError("need at least two entries to degenerate")
    entries = list(G.entries)
    entries[1] = entries[0]
    return PolyMap(tuple(entries))


def image_equations(G: PolyMap, D: int, samples: int | None, seed: int) -> dict:
    """Sample the image of G and search for vanishing equations of degree <= D."""
    N = len(G)
    columns = comb(N + D, D)
    if samples is None:
        samples = columns + 5
    if samples < 1:
        raise ParameterError("samples must be >= 1")
    points = sample_image_points(G, samples, seed)
    basis = find_equations(points, D)
    sound = all(check_equation_vanishes(P, points)["is_equation"] for P in basis)
    return {
        "N": N,
        "D": D,
        "samples": samples,
        "rows": samples,
        "columns": columns,
        "rank": columns - len(basis),
        "sound": sound,
        "equations": [poly_to_json(P) for P in basis],
    }


def pit_experiment(
    G: PolyMap,
    count: int,
    seed: int,
    max_size: int = 8,
    max_vars: int = 4,
    term_cap: int = DEFAULT_TERM_CAP,
) -> dict:
    """Draw ``count`` random nonzero circuits and test whether G hits each of them.

    Circuits use inputs ``x1..xk`` with k <= min(len(G), max_vars); input
    ``xj`` is fed the j-th generator entry. Circuits that expand to zero are
    redrawn and counted separately.
    """
    N = len(G)
    kmax = min(N, max_vars)
    rng = random.Random(seed)
    results = {"circuits": 0, "zero_redrawn": 0, "hit_exact": 0, "hit_random": 0,
               "missed_exact": 0, "inconclusive": 0, "failures": []}
    ctx = x_labels(N)
    while results["circuits"] < count:
        k = rng.randint(1, kmax)
        size = rng.randint(k, max(k, max_size))
        c = random_circuit(rng.randrange(2**32), k, size)
        if circuit_to_polys(c, ctx)[0].is_zero():
            results["zero_redrawn"] += 1
            continue
        results["circuits"] += 1
        res = hitting_check(c, G, term_cap=term_cap, seed=rng.randrange(2**32))
        if res.hits:
            results["hit_exact" if res.exact else "hit_random"] += 1
        elif res.exact:
            results["missed_exact"] += 1
            results["failures"].append(circuit_to_json(c))
        else:
            results["inconclusive"] += 1
    results["holds"] = results["missed_exact"] == 0
    return results


def gadget_report(p: int, a: int, n: int, b: int | None = None,
                  term_cap: int = DEFAULT_TERM_CAP) -> dict:
    """Cross-check every gadget's symbolic form against its direct evaluator."""
    w = floor_log2(p)
    r = a * w
    report: dict = {"p": p, "a": a, "n": n, "r": r}

    # Mon: specialized factors and, where small, the full expansion
    if r < n:
        raise ParameterError(f"r = a*floor(log2 p) = {r} must be >= n = {n}")
    full = None
    if 3**r <= 10**4:
        full = build_mon(r, n, term_cap)
    mon_ok = True
    for t in product((0, 1), repeat=r):
        want = SparsePoly.monomial(y_labels(n), mon_monomial(t, n))
        if mon_at(t, n) != want:
            mon_ok = False
        if full is not None and partial_evaluate(full, dict(zip(t_labels(r), t))) != want:
            mon_ok = False
    report["mon"] = {"holds": mon_ok, "symbolic_expanded": full is not None,
                     "terms": len(full) if full is not None else None}

    # Sel over b interpolation nodes
    b = p**3 if b is None else b
    sel = build_sel(p, b, p)
    u = [SparsePoly.variable(sel.vars[:-1], f"u{i}") for i in range(p)]
    sel_ok = all(partial_evaluate(sel, {"v": x}) == u[x % p] for x in range(b))
    report["sel"] = {"holds": sel_ok, "b": b, "degree_in_v": sel.degree_in("v")}

    # RS-Design: direct evaluator vs decoded codeword, R range and residue
    rs_ok = True
    for cw in all_codewords(p, a):
        if rs_design_select(cw.bits, p, a) != codeword_select(cw):
            rs_ok = False
        g = decode_codeword(cw)
        for i in range(p):
            R = eval_R(i, a, p, cw.bits)
            if not 0 <= R <= p**3 or R % p != g(i).value:
                rs_ok = False
    symbolic = "skipped"
    try:
        if p > 3:
            raise ResourceError("symbolic RS-Design is only attempted for p <= 3")
        rs_map = build_rs_design_map(p, a, term_cap)
        symbolic = "agrees"
        for cw in all_codewords(p, a):
            fixed = rs_map.specialize(dict(zip(t_labels(r), cw.bits)))
            want = [SparsePoly.variable(fixed.vars, lab) for lab in rs_design_select(cw.bits, p, a)]
            if list(fixed.entries) != want:
                symbolic = "disagrees"
                rs_ok = False
    except ResourceError:
        pass
    report["rs_design"] = {"holds": rs_ok, "codewords": 2**r, "symbolic": symbolic}
    report["holds"] = mon_ok and sel_ok and rs_ok
    return report
