"""Quantum cohomology of odd quadric hypersurfaces, a Laurent-polynomial
superpotential mirror, and the verification suite tying them together.

The package is organized bottom-up:

- `scalar`, `laurent`, `linalg`: exact rational-function coefficients,
  Laurent polynomials, and exact linear algebra;
- `groebner`: Groebner bases over the coefficient field, saturation,
  quotient dimensions, and local (origin-centered) multiplicity;
- `quadric_qh`: the small quantum multiplication table, germ data, and
  spectral checks;
- `lg_potential`: the torus superpotential, its partial compactification,
  and critical-scheme bookkeeping;
- `gauss_manin`: the differential-operator action on the twisted de Rham
  complex, the connection matrices, pairing constraints, and canonicity;
- `tameness`: boundary analysis of the compactified fibration;
- `report`, `cli`: structured verification reports and the `lgq` tool.
"""

from .errors import LgqError
from .gauss_manin import (
    connection_matrices,
    reduce_class,
    solve_pairing_constraints,
    weight_grading_operator,
)
from .lg_potential import (
    build_standard_potential,
    compactify,
    critical_scheme,
    integrates_table,
)
from .quadric_qh import initial_conditions, qh_mult_matrix, verify_table
from .report import Check, VerificationReport, emit_report

__version__ = "0.1.0"

__all__ = [
    "Check",
    "LgqError",
    "VerificationReport",
    "__version__",
    "build_standard_potential",
    "compactify",
    "connection_matrices",
    "critical_scheme",
    "emit_report",
    "initial_conditions",
    "integrates_table",
    "qh_mult_matrix",
    "reduce_class",
    "solve_pairing_constraints",
    "verify_table",
    "weight_grading_operator",
]
