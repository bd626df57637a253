"""Calogero-Moser Lax matrices, dynamical r-matrices and their gauge transforms."""

import json

from ._core import (
    EvolutionError,
    X,
    build_L,
    cybe_residual,
    evolve,
    gauge,
    hamiltonian,
    r_dynamical,
    r_prime,
    r_tilde_prime,
    suites,
    verify_json,
)


def verify(suite="all", **kwargs):
    """Run a verification suite and return the report as a dict."""
    return json.loads(verify_json(suite, **kwargs))


__all__ = [
    "EvolutionError",
    "X",
    "build_L",
    "cybe_residual",
    "evolve",
    "gauge",
    "hamiltonian",
    "r_dynamical",
    "r_prime",
    "r_tilde_prime",
    "suites",
    "verify",
    "verify_json",
]
