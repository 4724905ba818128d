"""Orthogonally additive trace polynomials on weighted matrix algebras.

Finite-dimensional tracial algebras (direct sums of matrix blocks with
a weighted trace), Schatten p-(quasi-)norms, m-homogeneous trace
polynomials with q-normed codomains, extraction of the representing
operator zeta with P(x) = tau(zeta x^m), norm sandwiches with extremal
witnesses, and the rigidity counterexamples that kill orthogonal
additivity on the full algebra.
"""

from .algebra import (
    Element,
    TracialAlgebra,
    derive_seed,
    random_element,
    sample_element,
    trace,
)
from .errors import DomainError, PreconditionError, StructuralError, UsageError
from .metrics import (
    P_GRID,
    check_p,
    converse_pythagoras_probe,
    holder_check,
    is_orthogonal,
    norm_p,
    pythagoras_residual,
)
from .polynomials import (
    HomPolynomial,
    OAReport,
    QNormedCodomain,
    TraceMonomial,
    additivity_residual,
    adjoint_polynomial,
    check_orthogonal_additivity,
    evaluate,
    hermitian_defect,
    orthogonal_pair,
    polarize,
    zeta_polynomial,
)
from .representation import (
    RepresentationReport,
    dual_exponent,
    extract_phi,
    extremal_witness,
    norm_bound_suite,
    reconstruct_zeta,
    representation_report,
    upper_norm_bound,
    verify_representation,
)
from .rigidity import (
    CounterexampleWitness,
    full_oa_counterexample,
    projection_vanishing_probe,
    zero_certificate,
)
from .spectral import (
    JordanQuad,
    SpectralData,
    eig_hermitian,
    functional_calculus,
    jordan_split,
    opnorm,
    singular_values,
    spectral_projection,
    support,
)

__version__ = "0.1.0"
