"""Deterministic multistart Nelder-Mead used by the discord and GM optimizers."""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.stats import qmc

MAX_EVALS_PER_START = 2000
OBJECTIVE_TOL = 1e-10
BUDGET_ENV = "QRTA_EVAL_BUDGET"


def eval_budget(default: int = MAX_EVALS_PER_START) -> int:
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return default
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    return max(10, min(default, cap))


@dataclass
class SearchResult:
    x: np.ndarray
    fun: float
    nfev: int
    start_index: int


def fixed_starts(dim: int, count: int, scale) -> np.ndarray:
    """Unscrambled Halton points scaled per coordinate; identical on every call."""
    if count <= 0:
        return np.empty((0, dim))
    pts = qmc.Halton(d=dim, scramble=False).random(count + 1)[1:]
    return pts * np.asarray(scale, dtype=float)


def refine(fun, starts, step=0.2, maxfev=None) -> SearchResult:
    """Minimize ``fun`` from each start; ties go to the lowest start index."""
    maxfev = eval_budget() if maxfev is None else maxfev
    best = None
    for i, x0 in enumerate(np.atleast_2d(starts)):
        x0 = np.asarray(x0, dtype=float)
        simplex = np.vstack([x0, x0 + step * np.eye(x0.size)])
        res = minimize(
            fun,
            x0,
            method="Nelder-Mead",
            options=dict(
                initial_simplex=simplex,
                xatol=1e-7,
                fatol=OBJECTIVE_TOL * 1e-2,
                maxfev=maxfev,
            ),
        )
        cand = SearchResult(np.asarray(res.x), float(res.fun), int(res.nfev), i)
        if best is None or cand.fun < best.fun - 1e-15:
            best = cand
    return best
