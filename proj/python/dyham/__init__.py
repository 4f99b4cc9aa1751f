"""Dyadic harmonic analysis on finite grids.

Haar transforms, Morrey / BMO / block-space norms, the dyadic fractional
integral with its paraproducts and commutators, and the seeded verification
suites, all backed by the C++ core.
"""

from ._core import (
    Coefficients,
    Function,
    Geometry,
    __version__,
    bmo_norm,
    block_bounds,
    commutator,
    commutator_tail_high,
    commutator_tail_low,
    constant,
    forward,
    fractional_integral,
    haar,
    indicator,
    inverse,
    lq_norm,
    morrey_norm,
    paraproduct,
    random_function,
    read_coefficients,
    read_function,
    square_function_total,
    suite_names,
    verify,
    vmo_distance,
    write_coefficients,
    write_function,
)

__all__ = [
    "Coefficients",
    "Function",
    "Geometry",
    "__version__",
    "bmo_norm",
    "block_bounds",
    "commutator",
    "commutator_tail_high",
    "commutator_tail_low",
    "constant",
    "forward",
    "fractional_integral",
    "haar",
    "indicator",
    "inverse",
    "lq_norm",
    "morrey_norm",
    "paraproduct",
    "random_function",
    "read_coefficients",
    "read_function",
    "square_function_total",
    "suite_names",
    "verify",
    "vmo_distance",
    "write_coefficients",
    "write_function",
]
