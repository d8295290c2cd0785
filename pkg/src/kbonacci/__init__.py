"""k-bonacci numbers: exact integer backends, a certified closed-form
engine over the characteristic roots, an exact integer distinctness
certificate, and an exact-rational identity laboratory."""

from .binet import (
    BinetResult,
    BinetTermBreakdown,
    binet_breakdown,
    binet_eval,
    clear_root_cache,
    dominant_term_round,
    required_precision_estimate,
)
from .charpoly import (
    CharPoly,
    DiscriminantCertificate,
    RootSet,
    auxiliary_poly,
    build_char_poly,
    discriminant_certificate,
    find_roots,
    root_separation,
)
from .errors import (
    ConvergenceError,
    InvalidOrderError,
    PrecisionExhaustedError,
    PrecisionInsufficientError,
    TailBoundError,
)
from .recurrence import (
    companion_matrix,
    kbonacci_iter,
    kbonacci_matrix,
    kbonacci_recursive,
    kbonacci_window,
)
from .vandermonde import (
    cofactor_expansion_check,
    det_cofactor,
    det_exact,
    lemma_lhs,
    lemma_rhs,
    run_lemma_suite,
    sample_nodes,
    sign_identity_check,
    vdm_minor_product,
    vdm_product,
)

__version__ = "0.1.0"

__all__ = [
    "BinetResult",
    "BinetTermBreakdown",
    "CharPoly",
    "ConvergenceError",
    "DiscriminantCertificate",
    "InvalidOrderError",
    "PrecisionExhaustedError",
    "PrecisionInsufficientError",
    "RootSet",
    "TailBoundError",
    "auxiliary_poly",
    "binet_breakdown",
    "binet_eval",
    "build_char_poly",
    "clear_root_cache",
    "cofactor_expansion_check",
    "companion_matrix",
    "det_cofactor",
    "det_exact",
    "discriminant_certificate",
    "dominant_term_round",
    "find_roots",
    "kbonacci_iter",
    "kbonacci_matrix",
    "kbonacci_recursive",
    "kbonacci_window",
    "lemma_lhs",
    "lemma_rhs",
    "required_precision_estimate",
    "root_separation",
    "run_lemma_suite",
    "sample_nodes",
    "sign_identity_check",
    "vdm_minor_product",
    "vdm_product",
]
