"""Left-invariant sub-Lorentzian geometry on GL+(2,C).

Closed-form normal and abnormal extremals, Pontryagin-system integration,
sub-Riemannian distance brackets on SL(2,C), causal classification, and the
supporting Pauli-basis and exponential-map machinery, all cross-validated
against an independent series oracle.
"""

from .algebra import (
    DEFAULT_TOL,
    AlgCoords,
    CliffordReport,
    Mat2C,
    NotInGLPlusError,
    StructureTable,
    VectorClass,
    basis_matrix,
    clifford_check,
    commutator,
    from_coords,
    herm_form,
    lorentz_form,
    pauli,
    riem_product,
    structure_constants,
    to_coords,
    vector_class,
)
from .expmap import (
    ComplexAlgVec,
    NotHermitianError,
    NotPositiveDefiniteError,
    PolarDecomposition,
    ProductExpParams,
    exp_closed,
    exp_series,
    log_posdef,
    polar_decompose,
    su2_exp,
    su2_from_axis_angle,
)
from .subriemannian import (
    DistanceBracket,
    GeodesicWitness,
    HermiticityReport,
    SRGeodesicParams,
    boost_distance,
    cut_bound,
    distance_lower_bound,
    distance_shoot,
    hermitian_endpoint_check,
    sr_geodesic,
    sr_geodesic_control,
    sr_geodesic_two_factor,
)
from .sublorentzian import (
    REGIME_ISOTROPIC,
    REGIME_TIMELIKE,
    AbnormalCertificate,
    CausalReport,
    CovectorState,
    ExtremalParams,
    IntegrationDivergedError,
    PathSample,
    UnreachableTargetError,
    abnormal_extremal,
    canonical_reduce,
    causal_classify,
    causal_relation,
    covector_rhs,
    extremal_path,
    longest_arc,
    nonstrict_abnormal_check,
    normal_extremal,
    normal_extremal_reduced,
    pontryagin_integrate,
    su2_conjugate,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "AlgCoords",
    "AbnormalCertificate",
    "CausalReport",
    "CliffordReport",
    "ComplexAlgVec",
    "CovectorState",
    "DistanceBracket",
    "ExtremalParams",
    "GeodesicWitness",
    "HermiticityReport",
    "IntegrationDivergedError",
    "Mat2C",
    "NotHermitianError",
    "NotInGLPlusError",
    "NotPositiveDefiniteError",
    "PathSample",
    "PolarDecomposition",
    "ProductExpParams",
    "REGIME_ISOTROPIC",
    "REGIME_TIMELIKE",
    "SRGeodesicParams",
    "StructureTable",
    "UnreachableTargetError",
    "VectorClass",
    "abnormal_extremal",
    "basis_matrix",
    "boost_distance",
    "canonical_reduce",
    "causal_classify",
    "causal_relation",
    "clifford_check",
    "commutator",
    "covector_rhs",
    "cut_bound",
    "distance_lower_bound",
    "distance_shoot",
    "exp_closed",
    "exp_series",
    "extremal_path",
    "from_coords",
    "herm_form",
    "hermitian_endpoint_check",
    "log_posdef",
    "longest_arc",
    "lorentz_form",
    "nonstrict_abnormal_check",
    "normal_extremal",
    "normal_extremal_reduced",
    "pauli",
    "polar_decompose",
    "pontryagin_integrate",
    "riem_product",
    "sr_geodesic",
    "sr_geodesic_control",
    "sr_geodesic_two_factor",
    "structure_constants",
    "su2_conjugate",
    "su2_exp",
    "su2_from_axis_angle",
    "to_coords",
    "vector_class",
]
