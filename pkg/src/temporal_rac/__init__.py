"""Random access codes, temporal inequalities and LP randomness certification for qubits."""

from .bloch import BlochVector, Projector, outcome_probability, post_measurement_state, projector_overlap
from .certify import CertificationResult, JointTable, build_lp, certify, certify_conditional, sweep_and_fit
from .classical import audit_bounds, max_F_deterministic, max_K_deterministic
from .optimizer import OptimizerConfig, OptimumReport, conjecture_check, seesaw_maximize
from .rac import RacStrategy, f_from_k, k_from_f, rac_to_temporal, success_probability, temporal_to_rac
from .temporal import (
    TemporalStrategy,
    evaluate_K,
    nosignaling_max,
    sign_matrix,
    two_time_correlator,
)

__version__ = "0.1.0"

__all__ = [
    "BlochVector", "Projector", "outcome_probability", "post_measurement_state", "projector_overlap",
    "CertificationResult", "JointTable", "build_lp", "certify", "certify_conditional", "sweep_and_fit",
    "audit_bounds", "max_F_deterministic", "max_K_deterministic",
    "OptimizerConfig", "OptimumReport", "conjecture_check", "seesaw_maximize",
    "RacStrategy", "f_from_k", "k_from_f", "rac_to_temporal", "success_probability", "temporal_to_rac",
    "TemporalStrategy", "evaluate_K", "nosignaling_max", "sign_matrix", "two_time_correlator",
]
