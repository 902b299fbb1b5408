"""Polynomial commutators p(ab) - p(ba): witness constructions over
quaternions and matrices, plus norm bounds for the complex case."""

from .matrix import (
    CC,
    HF,
    HQ,
    QQ,
    RINGS,
    GenericMatrix,
    ScalarRing,
    SingularMatrixError,
    TelescopeReport,
    commutator,
    poly_commutator,
    poly_eval_matrix,
    similarity_conjugate,
    telescoping_expand,
)
from .norms import (
    BoundReport,
    ConstantEstimate,
    ConvergenceError,
    SphereEstimate,
    check_average_bound,
    check_bottcher_wenzel,
    check_bw,
    check_frobenius_bound,
    check_numrad_bound,
    empirical_constant,
    frobenius_norm,
    numerical_radius,
    operator_norm,
    spherical_average,
)
from .poly import (
    BracketError,
    OddCase,
    OddFactor,
    Polynomial,
    derive_odd_factor,
    eval_poly,
    solve_odd_equation,
)
from .quat import (
    QI,
    QJ,
    QK,
    QuatSolution,
    Quaternion,
    VerificationError,
    complexifying_conjugator,
    conjugate_by,
    factor_into_two_commutators,
    negating_conjugator,
    power_gap_witness,
    solve_poly_commutator,
)
from .realize import (
    DegreeNotBoundedError,
    DegreeProbeResult,
    RealizationWitness,
    algebraic_degree_probe,
    algebraicity_polynomial,
    nonzero_trace_witness,
    pick_distinct_preimages,
    realize_traceless,
    realize_zero_diagonal,
    traceless_to_zero_diagonal,
    triangular_diagonalize,
)
from .serialize import (
    DecodeError,
    decode_matrix,
    decode_polynomial,
    decode_quaternion,
    decode_witness,
    dumps_canonical,
    encode_matrix,
    encode_polynomial,
    encode_quaternion,
    encode_witness,
    polynomial_from_text,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BracketError",
    "CC",
    "ConstantEstimate",
    "ConvergenceError",
    "DecodeError",
    "DegreeNotBoundedError",
    "DegreeProbeResult",
    "GenericMatrix",
    "HF",
    "HQ",
    "OddCase",
    "OddFactor",
    "Polynomial",
    "QI",
    "QJ",
    "QK",
    "QQ",
    "QuatSolution",
    "Quaternion",
    "RINGS",
    "RealizationWitness",
    "ScalarRing",
    "SingularMatrixError",
    "SphereEstimate",
    "TelescopeReport",
    "VerificationError",
    "algebraic_degree_probe",
    "algebraicity_polynomial",
    "check_average_bound",
    "check_bottcher_wenzel",
    "check_bw",
    "check_frobenius_bound",
    "check_numrad_bound",
    "commutator",
    "complexifying_conjugator",
    "conjugate_by",
    "decode_matrix",
    "decode_polynomial",
    "decode_quaternion",
    "decode_witness",
    "derive_odd_factor",
    "dumps_canonical",
    "empirical_constant",
    "encode_matrix",
    "encode_polynomial",
    "encode_quaternion",
    "encode_witness",
    "eval_poly",
    "factor_into_two_commutators",
    "frobenius_norm",
    "negating_conjugator",
    "nonzero_trace_witness",
    "numerical_radius",
    "operator_norm",
    "pick_distinct_preimages",
    "poly_commutator",
    "poly_eval_matrix",
    "polynomial_from_text",
    "power_gap_witness",
    "realize_traceless",
    "realize_zero_diagonal",
    "similarity_conjugate",
    "solve_odd_equation",
    "solve_poly_commutator",
    "spherical_average",
    "telescoping_expand",
    "traceless_to_zero_diagonal",
    "triangular_diagonalize",
]
