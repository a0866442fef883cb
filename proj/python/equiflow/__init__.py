from ._equiflow import (
    EquiflowError,
    Scene,
    Slope,
    distinct_gap_count,
    error_curve,
    kronecker_points,
    lp_discrepancy,
    occupation_time,
    precision_bits,
    run_cli,
    sobolev_verdict,
    star_discrepancy,
    tau,
    tau_samples,
)

__all__ = [
    "EquiflowError",
    "Scene",
    "Slope",
    "distinct_gap_count",
    "error_curve",
    "kronecker_points",
    "lp_discrepancy",
    "occupation_time",
    "precision_bits",
    "run_cli",
    "sobolev_verdict",
    "star_discrepancy",
    "tau",
    "tau_samples",
]
