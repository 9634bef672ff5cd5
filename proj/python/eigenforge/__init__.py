"""Polynomial Sturm-Liouville eigensolving, sigma-model iteration, action
quanta and prime-power occupation codes."""

import json

from . import _core
from ._core import (
    EigenforgeError,
    NoLatticeError,
    NonConvergenceError,
    Polynomial,
    closure_check,
    decode,
    encode,
    enumerate_definable,
    fit_lattice,
    qstar_canonical,
    qstar_classify,
    qstar_equal,
    qstar_identical,
    time_pair,
)

__all__ = [
    "EigenforgeError",
    "NoLatticeError",
    "NonConvergenceError",
    "Polynomial",
    "action_spectrum",
    "closure_check",
    "decode",
    "encode",
    "enumerate_definable",
    "fit_lattice",
    "qstar_canonical",
    "qstar_classify",
    "qstar_equal",
    "qstar_identical",
    "solve_eigen",
    "solve_sigma",
    "time_pair",
    "total_energy",
]


def solve_eigen(problem, modes=1, tol=1e-10, max_degree=40):
    """Solve a problem given as a dict in the problem JSON layout."""
    text = _core.solve_eigen(json.dumps(problem), modes, tol, max_degree)
    return json.loads(text)


def solve_sigma(model, tol=None, max_iter=None):
    return json.loads(_core.solve_sigma(json.dumps(model), tol, max_iter))


def action_spectrum(result, lattice_tol=1e-9):
    return json.loads(_core.action_spectrum(json.dumps(result), lattice_tol))


def total_energy(quantum_I, omegas, occupations):
    return json.loads(_core.total_energy(quantum_I, list(omegas), list(occupations)))
