"""Exact ampleness verdicts and growth certificates for systems of
commuting twisted divisor classes, cross-validated by brute-force section
rings on products of projective lines."""

from .ampleness import (
    DEFAULT_SEARCH_BOUND,
    ScreenReport,
    Verdict,
    eventual_ampleness,
    nc_ample_verdict,
    nilpotency_ceiling,
    quasi_unipotent_screen,
    sigma_ample_verdict,
)
from .bimodule_system import (
    Bimodule,
    BimoduleSystem,
    class_at,
    combined_single,
    dual,
    load_system,
    make_system,
    product,
    rees,
    symbolic_class,
    system_to_document,
    veronese,
)
from .errors import (
    ArityError,
    GeometricRealizabilityWarning,
    NcampleError,
    NotNCAmple,
    NotQuasiUnipotent,
    ParseError,
)
from .gk_dimension import GkCertificate, gk, gk_bounds, hilbert_value
from .lattice_algebra import (
    Matrix,
    UniPoly,
    char_poly,
    cyclotomic,
    geometric_sum,
    is_quasi_unipotent,
    nilpotency_degree,
)
from .numeric_polynomials import (
    MultiPoly,
    PositivityResult,
    box_sum,
    compose,
    eventually_positive,
)
from .scheme_model import (
    DivisorClass,
    NumericalScheme,
    builtin_names,
    builtin_scheme,
    load_scheme,
    p1_power_scheme,
)
from .section_oracle import (
    FactorAutomorphism,
    MultiSection,
    OracleRing,
    bergman_check,
    hilbert_match,
    load_oracle,
    opposite_check,
    pullback,
    section_space_dim,
)

__version__ = "0.1.0"

__all__ = [
    "ArityError",
    "Bimodule",
    "BimoduleSystem",
    "DEFAULT_SEARCH_BOUND",
    "DivisorClass",
    "FactorAutomorphism",
    "GeometricRealizabilityWarning",
    "GkCertificate",
    "Matrix",
    "MultiPoly",
    "MultiSection",
    "NcampleError",
    "NotNCAmple",
    "NotQuasiUnipotent",
    "NumericalScheme",
    "OracleRing",
    "ParseError",
    "PositivityResult",
    "ScreenReport",
    "UniPoly",
    "Verdict",
    "bergman_check",
    "box_sum",
    "builtin_names",
    "builtin_scheme",
    "char_poly",
    "class_at",
    "combined_single",
    "compose",
    "cyclotomic",
    "dual",
    "eventual_ampleness",
    "eventually_positive",
    "geometric_sum",
    "gk",
    "gk_bounds",
    "hilbert_match",
    "hilbert_value",
    "is_quasi_unipotent",
    "load_oracle",
    "load_scheme",
    "load_system",
    "make_system",
    "nc_ample_verdict",
    "nilpotency_ceiling",
    "nilpotency_degree",
    "opposite_check",
    "p1_power_scheme",
    "product",
    "pullback",
    "quasi_unipotent_screen",
    "rees",
    "section_space_dim",
    "sigma_ample_verdict",
    "symbolic_class",
    "system_to_document",
    "veronese",
]
