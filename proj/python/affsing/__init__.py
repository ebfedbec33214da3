"""Diophantine exponents, lattice heights and dimension bounds for affine subspaces."""

import json

from ._affsing import (
    BudgetExceeded,
    ConfigError,
    DomainError,
    PrecisionError,
    dim_bound,
    dim_bound_exact,
    dplus_measure,
    omega_estimate,
    omega_lower_from_rho,
    plucker_check,
    rho_bound,
    systole,
)
from ._affsing import _run


def run(command, out, **settings):
    """Run a CLI subcommand with the given config keys; returns the JSON summary.

    Artifacts are written under `out`, as with `affsing <command> --out`.
    """
    cfg = {k: ", ".join(map(str, v)) if isinstance(v, (list, tuple)) else str(v) for k, v in settings.items()}
    cfg["out"] = str(out)
    return json.loads(_run(command, cfg))


__all__ = [
    "BudgetExceeded",
    "ConfigError",
    "DomainError",
    "PrecisionError",
    "dim_bound",
    "dim_bound_exact",
    "dplus_measure",
    "omega_estimate",
    "omega_lower_from_rho",
    "plucker_check",
    "rho_bound",
    "run",
    "systole",
]
