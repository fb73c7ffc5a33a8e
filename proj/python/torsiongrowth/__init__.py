"""Torsion growth of elliptic curves over number fields of bounded degree.

The heavy lifting is done by the C++ core; this package exposes the main
entry points:

- ``torsion_growth(ainvs, degree)``: all number fields of degree dividing
  ``degree`` with primitive torsion growth for the curve with a-invariants
  ``ainvs = [a1, a2, a3, a4, a6]``.
- ``naive_oracle(ainvs, degree)``: brute-force cross-check (small degrees).
- ``torsion_over_q(ainvs)``: rational torsion structure ``(m, n)``.
- ``conductor(ainvs)``, ``minimal_model(ainvs)``: reduction helpers.
- ``factor_q(coeffs)``: factorization of integer polynomials over Q.
"""

from ._core import (
    conductor,
    factor_q,
    minimal_model,
    naive_oracle,
    torsion_growth,
    torsion_over_q,
)

__all__ = [
    "conductor",
    "factor_q",
    "minimal_model",
    "naive_oracle",
    "torsion_growth",
    "torsion_over_q",
]
