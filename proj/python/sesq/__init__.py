"""Sesquilinear forms over finite fields.

Exact classification, character sums, zero counts, and Artin-Schreier curve
analysis for forms sigma_L(u, v) = Tr(u L(v^q)) on F_{q^{2n}} over F_{q^2}.

Field elements and linearized polynomials cross the boundary as their text
forms: an element is a string of 2ne base-p digits (coordinate 0 first), and
a polynomial is a comma-separated list of n of them.
"""

from ._core import (
    CapError,
    Field,
    HypothesisError,
    UnclassifiedError,
    adjoint,
    binomial_construct,
    binomial_derive,
    classify,
    count_report,
    curve_report,
    diagonalize,
    equivalent,
    genus,
    hermitian,
    kernel_dim,
    lp_eval,
    monomial_counts,
    monomial_extremal,
    nc_bruteforce,
    nc_formula,
    s_bruteforce,
    s_formula,
    sesq_eval,
    verify,
    verify_binomial,
)

__all__ = [
    "CapError",
    "Field",
    "HypothesisError",
    "UnclassifiedError",
    "adjoint",
    "binomial_construct",
    "binomial_derive",
    "classify",
    "count_report",
    "curve_report",
    "diagonalize",
    "equivalent",
    "genus",
    "hermitian",
    "kernel_dim",
    "lp_eval",
    "monomial_counts",
    "monomial_extremal",
    "nc_bruteforce",
    "nc_formula",
    "s_bruteforce",
    "s_formula",
    "sesq_eval",
    "verify",
    "verify_binomial",
]
