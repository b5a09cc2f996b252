"""Entropy-pair geometry, shock curves and T4 search for 2x2 conservation laws."""

from ._core import (
    ArgumentError,
    ConfigError,
    DomainError,
    Error,
    NumericalError,
    System,
    eigenframe,
    find_tilt,
    genuine_nonlinearity,
    hypothesis_report,
    levelset_report,
    make_system,
    planted_t4,
    run_cli,
    sector_search,
    smoller_johnson,
    t4_search,
    tn_sign_test,
    tn_solve,
    to_eulerian,
    to_lagrangian,
    trace_hugoniot,
    trace_level_set,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "ConfigError",
    "DomainError",
    "Error",
    "NumericalError",
    "System",
    "eigenframe",
    "find_tilt",
    "genuine_nonlinearity",
    "hypothesis_report",
    "levelset_report",
    "make_system",
    "planted_t4",
    "run_cli",
    "sector_search",
    "smoller_johnson",
    "t4_search",
    "tn_sign_test",
    "tn_solve",
    "to_eulerian",
    "to_lagrangian",
    "trace_hugoniot",
    "trace_level_set",
]
