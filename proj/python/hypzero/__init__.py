"""Zeros of hypergeometric polynomials and their limiting curves."""

from ._hypzero import (
    SCHEMA,
    AccuracyError,
    ConfigError,
    ContinuationError,
    DomainError,
    Evaluation,
    HypzeroError,
    I1_asymptotic,
    IndeterminateError,
    LevelCurve,
    Polynomial,
    RegionError,
    SingularPointError,
    TracingError,
    ZeroSet,
    auto_bits,
    classify_region,
    coefficients,
    contour_split,
    crossing_point,
    euler_integral,
    evaluate,
    f_lemma_check,
    find_roots,
    halfplane_zero_free_check,
    integrate_I1,
    integrate_I2,
    level_constant,
    phi,
    phi_prime,
    run_asym_table,
    run_check,
    run_realcase,
    run_region_map,
    saddle_point,
    separatrices,
    trace_level_curve,
)

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]
