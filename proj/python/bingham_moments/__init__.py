"""Moments of the Bingham distribution on the unit sphere."""

from ._core import (
    ConvergenceError,
    Evaluator,
    TableError,
    Tables,
    generate_tables,
    load_tables,
    oracle_moments,
    oracle_z,
    suggest_params,
    theorem1_bound,
)

__all__ = [
    "ConvergenceError",
    "Evaluator",
    "TableError",
    "Tables",
    "generate_tables",
    "load_tables",
    "oracle_moments",
    "oracle_z",
    "suggest_params",
    "theorem1_bound",
]
