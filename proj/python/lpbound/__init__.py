"""Linear-programming bounds over finite abelian groups."""

import json

from . import _core
from ._core import InfeasibleWitness, UndefinedBound, closed_form_c, fourier_transform, inverse_transform, run_cli

__all__ = [
    "InfeasibleWitness",
    "UndefinedBound",
    "bound",
    "brute_force_max",
    "certify_fab",
    "closed_form_c",
    "corollary",
    "fourier_transform",
    "improve",
    "inverse_transform",
    "optimize_c",
    "run_cli",
    "sweep",
    "torus_witness_ratio",
    "verify_witness",
]


def _elements(items):
    # Accept plain integers for cyclic groups.
    return [[x] if isinstance(x, int) else list(x) for x in items]


def bound(orders, forbidden, tol=1e-9):
    return json.loads(_core.bound_json(list(orders), _elements(forbidden), tol))


def brute_force_max(orders, forbidden, pinned=()):
    return json.loads(_core.max_set_json(list(orders), _elements(forbidden), _elements(pinned)))


def verify_witness(orders, forbidden, h, tol=1e-9):
    return json.loads(_core.verify_witness_json(list(orders), _elements(forbidden), [complex(v) for v in h], tol))


def improve(orders, forbidden, locations, tol=1e-9):
    return json.loads(_core.improve_json(list(orders), _elements(forbidden), _elements(locations), tol))


def corollary(orders, forbidden, pinned, m=None, tol=1e-9):
    return json.loads(_core.corollary_json(list(orders), _elements(forbidden), _elements(pinned), m, tol))


def torus_witness_ratio(n):
    return json.loads(_core.torus_witness_ratio_json(n))


def optimize_c():
    return json.loads(_core.optimize_c_json())


def certify_fab(a_phase, b_phase, samples=10, seed=1):
    return json.loads(_core.certify_fab_json(a_phase, b_phase, samples, seed))


def sweep(grid, samples=10, seed=1, jobs=1):
    return json.loads(_core.sweep_json(grid, samples, seed, jobs))
