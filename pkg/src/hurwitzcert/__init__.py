"""Exact certification of trace-coefficient nonnegativity for symmetric
matrix pencils (A + tB) with A, B positive semidefinite.

Layers, bottom up:

- ``polycore``: sparse multivariate polynomials over exact rationals.
- ``symmatrix``: polynomial matrices, Hurwitz product-sums S_{m,k}(A, B),
  trace coefficients, and the trace derivative identity.
- ``idealkit``: Buchberger Groebner engine with budgets, reduction,
  elimination, saturation, and unit-ideal tests.
- ``realroots``: exact univariate root counting via Sturm chains.
- ``bmvcert``: the m = 6, n = 3 certification pipeline (core polynomial p,
  interior representation audit, 31 boundary slices, endpoint sampling)
  with journaled, re-checkable reports.
- ``numsearch``: floating-point scans and box minimization for numeric
  corroboration.
- ``cli``: one subcommand per pipeline stage.
"""

from . import bmvcert, idealkit, numsearch, polycore, realroots, symmatrix
from .bmvcert import (
    CertificationReport,
    ProofStep,
    SliceSpec,
    build_p,
    certify_interior,
    certify_m6n3,
    certify_slice,
    enumerate_slices,
    format_report,
    parse_report,
    recheck_step,
)
from .idealkit import (
    Budget,
    BudgetExceededError,
    Ideal,
    buchberger,
    eliminate,
    ideal_quotient,
    is_unit_ideal,
    normal_form,
    saturate,
)
from .polycore import (
    GREVLEX,
    LEX,
    Polynomial,
    format_polynomial,
    parse_polynomial,
)
from .realroots import (
    UniPoly,
    count_roots_open,
    no_roots_in_unit_interval,
    sturm_sequence,
)
from .symmatrix import (
    PolyMatrix,
    hurwitz,
    hurwitz_bruteforce,
    trace_coefficients,
    verify_trace_identity,
)

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "BudgetExceededError",
    "CertificationReport",
    "GREVLEX",
    "Ideal",
    "LEX",
    "Polynomial",
    "PolyMatrix",
    "ProofStep",
    "SliceSpec",
    "UniPoly",
    "bmvcert",
    "buchberger",
    "build_p",
    "certify_interior",
    "certify_m6n3",
    "certify_slice",
    "cli",
    "count_roots_open",
    "eliminate",
    "enumerate_slices",
    "format_polynomial",
    "format_report",
    "hurwitz",
    "hurwitz_bruteforce",
    "ideal_quotient",
    "idealkit",
    "is_unit_ideal",
    "no_roots_in_unit_interval",
    "numsearch",
    "parse_polynomial",
    "parse_report",
    "polycore",
    "realroots",
    "recheck_step",
    "normal_form",
    "saturate",
    "sturm_sequence",
    "symmatrix",
    "trace_coefficients",
    "verify_trace_identity",
    "__version__",
]

from . import cli  # noqa: E402  (cycle-free: cli only imports the above)
