"""Exact toolkit for succinct hitting-set generators built from Reed-Solomon designs
and the permanent."""

from .arith import Fp, fp_arith, mod_reduce, smallest_prime_above
from .circuits import (
    Circuit,
    Gate,
    circuit_eval,
    circuit_size,
    circuit_to_polys,
    is_nonzero_probabilistic,
    random_circuit,
)
from .designs import Codeword, Design, codeword_to_set, decode_codeword, rs_design, verify_design
from .equations import (
    EquationFinder,
    check_equation_vanishes,
    find_equations,
    hitting_check,
    nullspace,
    veronese_row,
)
from .exceptions import ParameterError, ResourceError
from .gadgets import (
    PolyMap,
    build_mon,
    build_Q,
    build_rs_design_map,
    build_sel,
    eval_R,
    mon_monomial,
    rs_design_select,
)
from .generators import (
    CoeffVector,
    SuccinctF,
    build_F,
    check_succinctness,
    coeff_vector_of_F,
    ki_gen,
    perm_p,
    permanent_oracle,
    permanent_ryser,
    truncate_F,
)
from .polynomials import (
    RationalUniPoly,
    SparsePoly,
    UniPolyFp,
    coefficient_extract,
    lagrange_interpolate,
    poly_add,
    poly_eval,
    poly_mul,
    poly_substitute,
    truncate_total_degree,
    uni_eval_fp,
)

__version__ = "0.1.0"
