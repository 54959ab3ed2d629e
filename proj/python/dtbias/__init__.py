"""Nonparametric inference for doubly truncated data.

Joint NPMLE of the target distribution and the truncation-limit law, a
bootstrap sup-norm test for ignorable sampling bias, standard-error
diagnostics, and a Monte Carlo driver for power studies.
"""

from ._core import (
    Error,
    analytic_g,
    bias_test,
    fit,
    load_dataset,
    monte_carlo,
    se_ratio,
)

__all__ = [
    "Error",
    "analytic_g",
    "bias_test",
    "fit",
    "load_dataset",
    "monte_carlo",
    "se_ratio",
]

__version__ = "1.0.0"
