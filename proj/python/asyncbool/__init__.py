"""Asynchronous Boolean systems: runs, transition graphs, conjugacy and bifurcations."""

from ._asyncbool import (
    Bijection,
    CapabilityError,
    ParseError,
    TruthTable,
    accessible,
    apply_masked,
    bifurcation_classes,
    check_conjugacy,
    cli,
    enumerate_omega,
    final_value,
    find_equivalence,
    fixed_points,
    is_in_omega,
    is_transitive,
    nullclin,
    period,
    portrait,
    run_at,
    structurally_stable,
)

__all__ = [
    "Bijection",
    "CapabilityError",
    "ParseError",
    "TruthTable",
    "accessible",
    "apply_masked",
    "bifurcation_classes",
    "check_conjugacy",
    "cli",
    "enumerate_omega",
    "final_value",
    "find_equivalence",
    "fixed_points",
    "is_in_omega",
    "is_transitive",
    "nullclin",
    "period",
    "portrait",
    "run_at",
    "structurally_stable",
]
