"""Tseng forward-backward splitting for monotone inclusions in l_p, 1 < p <= 2."""

import json

import numpy as np

from ._core import (
    CompositeProblem,
    ConfigError,
    DescentViolation,
    LpSpace,
    Problem,
    gen_lasso_like,
    gen_skew_vi,
    gen_strongly_monotone,
    verify_constants,
)
from . import _core

__all__ = [
    "CompositeProblem",
    "ConfigError",
    "DescentViolation",
    "LpSpace",
    "Problem",
    "gen_lasso_like",
    "gen_skew_vi",
    "gen_strongly_monotone",
    "resolve",
    "solve",
    "solve_config",
    "verify_constants",
]


def resolve(space, pieces, lam, z):
    """Return (y, residual) with y = (J + lam B)^{-1} J z.

    pieces is one piece dict for every coordinate or a list of them, e.g.
    {"type": "abs", "alpha": 0.5} or {"type": "interval", "lo": 0, "hi": 1}.
    """
    return _core._resolve(space, json.dumps(pieces), float(lam), np.asarray(z, dtype=float))


def solve(problem, solver, start=None):
    """Run one solver (same dict layout as the CLI "solver" block)."""
    if start is None:
        start = np.zeros(problem.space.n)
    return _core._solve(problem, json.dumps(solver), np.asarray(start, dtype=float))


def solve_config(config):
    """Run a full CLI configuration (dict); returns one report per solver.

    Nothing is written to disk, so "output" may be omitted.
    """
    config = dict(config)
    config.setdefault("output", {"path": "unused.csv"})
    return _core._solve_config(json.dumps(config))
