"""Capacitated many-to-many recourse matching."""

from ._core import (
    SizeLimitError,
    ValidationError,
    brute_force_matching,
    enumerate_capacities,
    individual_welfare,
    local_search_penalized,
    min_cost_action,
    optimal_capacity,
    solve_matching,
    solve_penalized,
    to_weights,
    welfare_curve,
)

__all__ = [
    "SizeLimitError",
    "ValidationError",
    "brute_force_matching",
    "enumerate_capacities",
    "individual_welfare",
    "local_search_penalized",
    "min_cost_action",
    "optimal_capacity",
    "solve_matching",
    "solve_penalized",
    "to_weights",
    "welfare_curve",
]
