"""Exact enumeration and bound evaluation for censuses of abelian varieties
over finite fields.

The heavy lifting happens in the compiled extension; this package re-exports
its functions and adds a couple of Fraction conveniences.
"""

from fractions import Fraction

from ._core import (  # noqa: F401
    PreconditionError,
    InternalAssertionError,
    weil_count,
    weil_count_dual,
    is_weil,
    weil_interval_bound,
    hilb_count,
    partition_count,
    class_number,
    class_number_one_scan,
    minkowski_bound,
    dirichlet_l_exact,
    hermitian_mass_formula,
    hermitian_mass_brute,
    hermitian_class_count,
    z_unimodular_class_count,
    trivial_cokernel_density,
    cl_sample,
    ec_point_count,
    ec_find_cm_trace,
    ec_good_prime_density,
    census_report_json,
    census_report_csv,
)


def hermitian_mass(d, n, method="formula"):
    """Mass of the unimodular hermitian genus union over Q(sqrt(-d)) as a
    Fraction, by the local-density formula or by enumeration."""
    if method == "formula":
        num, den = hermitian_mass_formula(d, n)
    elif method == "brute":
        num, den = hermitian_mass_brute(d, n)
    else:
        raise ValueError("method must be 'formula' or 'brute'")
    return Fraction(int(num), int(den))


def cokernel_trivial_density(g, ell):
    """prod_{k<=g} (1 - ell^-k) as a Fraction."""
    num, den = trivial_cokernel_density(g, ell)
    return Fraction(int(num), int(den))
