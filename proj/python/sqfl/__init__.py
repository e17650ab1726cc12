"""Squarefull numbers in short intervals."""

from ._core import (
    SqflError,
    bateman_grosswald,
    count_near_curve,
    count_squarefull,
    diagonal_saturated,
    enumerate_squarefull,
    exceptional_measure,
    inner_sinc_sum,
    run_cli,
    short_interval_count,
    sigma,
    u_k,
    variance,
    zeta,
    zeta_constants,
)

__all__ = [
    "SqflError",
    "bateman_grosswald",
    "count_near_curve",
    "count_squarefull",
    "diagonal_saturated",
    "enumerate_squarefull",
    "exceptional_measure",
    "inner_sinc_sum",
    "run_cli",
    "short_interval_count",
    "sigma",
    "u_k",
    "variance",
    "zeta",
    "zeta_constants",
]
