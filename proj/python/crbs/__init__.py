"""Correlation-based variable ordering for constraint satisfaction."""

from ._core import (
    Budget,
    CorrelationMatrix,
    HeuristicConfig,
    HeuristicKind,
    Problem,
    RestartPolicy,
    SearchOutcome,
    SearchStats,
    SearchStatus,
    count_solutions,
    crbs_max_score,
    crbs_sum_score,
    generate,
    parse_native,
    run_campaign,
    run_theta_sweep,
    solve,
    write_native,
)

__all__ = [
    "Budget",
    "CorrelationMatrix",
    "HeuristicConfig",
    "HeuristicKind",
    "Problem",
    "RestartPolicy",
    "SearchOutcome",
    "SearchStats",
    "SearchStatus",
    "count_solutions",
    "crbs_max_score",
    "crbs_sum_score",
    "generate",
    "parse_native",
    "run_campaign",
    "run_theta_sweep",
    "solve",
    "write_native",
]
