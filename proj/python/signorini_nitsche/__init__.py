"""Crouzeix-Raviart finite elements for the scalar Signorini problem with
Nitsche-type contact terms."""

from ._core import (
    BoundaryTag,
    ConfigError,
    CRSpace,
    DiagonalPattern,
    DiscreteField,
    LinearSolveError,
    Mesh,
    NitscheParams,
    Problem,
    SolveReport,
    SolverConfig,
    Strategy,
    compare_to_reference,
    contact_linear,
    contact_residual,
    eoc,
    error_vs_exact,
    export_solution,
    export_solution_string,
    integrate_positive_part,
    interpolate,
    known_problem,
    l2_norm,
    lemma1_construct,
    load,
    norm_1C,
    norm_broken_h1,
    oscillatory_problem,
    residual,
    run_study,
    solve,
    stiffness,
)

__all__ = [name for name in dir() if not name.startswith("_")]
