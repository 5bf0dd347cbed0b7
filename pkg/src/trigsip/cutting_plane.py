"""Exchange/cutting-plane baseline.

Solves the semi-infinite program directly by alternating a finite
restricted LP with a separation oracle: the most violated index point is
refined by golden-section search and appended to the working index set.
This route never truncates the rows, so it serves as an independent
check on the moment pipeline.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .instances import (
    FINE_GRID_POINTS,
    TWO_PI,
    EvaluationGrid,
    SipInstance,
    constraint_margin,
    constraint_violation,
)
from .reports import SolveReport
from .sdp import ITERATION_LIMIT, OPTIMAL, solve_lp

_BRACKET_WIDTH = 1e-10
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def default_params() -> "CuttingPlaneParams":
    return CuttingPlaneParams(
        initial_grid=EvaluationGrid.uniform(10),
        violation_tol=1e-8,
        max_rounds=200,
        refine_grid_density=10_000,
    )


@dataclass(frozen=True)
class CuttingPlaneParams:
    """Knobs of the exchange loop.

    The defaults (10 equispaced start points, violation tolerance 1e-8,
    200 rounds, separation grid of 1e4 points) are recorded in every
    report; results can be sensitive to the start points, so
    jitter_seed optionally perturbs them with a seeded generator.
    """

    initial_grid: EvaluationGrid
    violation_tol: float = 1e-8
    max_rounds: int = 200
    refine_grid_density: int = 10_000
    jitter_seed: int | None = None

    def __post_init__(self):
        if self.violation_tol <= 0:
            raise ValueError("violation_tol must be positive")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be at least 1")
        if self.refine_grid_density < 2:
            raise ValueError("refine_grid_density must be at least 2")


def _golden_max(f, lo: float, hi: float):
    """Golden-section maximization; returns the best evaluated point."""
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    best_t, best_f = (x1, f1) if f1 >= f2 else (x2, f2)
    while b - a > _BRACKET_WIDTH:
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
        if f1 > best_f:
            best_t, best_f = x1, f1
        if f2 > best_f:
            best_t, best_f = x2, f2
    return best_t, best_f


def most_violated_point(instance: SipInstance, x, refine_grid_density: int = 10_000):
    """Locate argmax of the constraint margin over the index interval.

    Scans an equispaced grid, then golden-section refines inside the
    bracketing interval down to width 1e-10.  Ties go to the smallest t.
    Returns (t_star, violation); violation <= 0 means x is feasible.
    """
    x = np.asarray(x, dtype=float)
    grid = EvaluationGrid.uniform(refine_grid_density)
    margins = constraint_margin(instance, x, grid.points)
    idx = int(np.argmax(margins))
    t_coarse = float(grid.points[idx])
    m_coarse = float(margins[idx])

    lo = float(grid.points[max(idx - 1, 0)])
    hi = float(grid.points[min(idx + 1, grid.points.size - 1)])

    def f(t):
        return float(constraint_margin(instance, x, np.array([t]))[0])

    t_ref, m_ref = _golden_max(f, lo, hi)
    if m_ref > m_coarse or (m_ref == m_coarse and t_ref < t_coarse):
        return t_ref, m_ref
    return t_coarse, m_coarse


def solve_cutting_plane(instance: SipInstance,
                        params: CuttingPlaneParams | None = None,
                        tol: float = 1e-8) -> SolveReport:
    """Run the exchange loop until the separation oracle finds no cut.

    Each round solves the LP restricted to the current index points and
    asks ``most_violated_point`` for a new cut; the loop stops when the
    worst violation falls at or below violation_tol.  Inner LP statuses
    (infeasible/unbounded) are propagated; exhausting max_rounds, or a
    cut that duplicates an existing point, reports iteration_limit.
    """
    if params is None:
        params = default_params()
    points = np.array(params.initial_grid.points, dtype=float)
    if params.jitter_seed is not None:
        rng = np.random.default_rng(params.jitter_seed)
        spacing = TWO_PI / max(points.size, 2)
        points = np.clip(points + rng.uniform(-0.5, 0.5, points.size) * spacing,
                         0.0, TWO_PI)
        points = np.unique(points)

    start = time.perf_counter()
    values = []
    status = ITERATION_LIMIT
    res = None
    violation_sep = math.nan
    rounds = 0
    for rounds in range(1, params.max_rounds + 1):
        rows = np.stack([instance.row_values(j, points) for j in range(instance.n + 1)])
        res = solve_lp(instance.c, rows[1:].T, rows[0], tol=tol)
        if res.status != OPTIMAL:
            status = res.status
            break
        values.append(float(res.value))
        t_star, violation_sep = most_violated_point(
            instance, res.x, params.refine_grid_density)
        if violation_sep <= params.violation_tol:
            status = OPTIMAL
            break
        if np.min(np.abs(points - t_star)) < 1e-12:
            # the separating point is already in the index set; the inner
            # LP cannot improve further at its own tolerance
            status = ITERATION_LIMIT
            break
        points = np.sort(np.append(points, t_star))
    runtime = time.perf_counter() - start

    usable = res is not None and res.status == OPTIMAL
    if usable:
        x = np.asarray(res.x, dtype=float)
        value = float(res.value)
        violation = constraint_violation(
            instance, x, EvaluationGrid.uniform(FINE_GRID_POINTS))
    else:
        x = np.full(instance.n, math.nan)
        value = math.nan
        violation = math.nan

    return SolveReport(
        method="cutting_plane",
        K=None,
        N=None,
        value=value,
        x=x,
        violation=violation,
        runtime_seconds=runtime,
        status=status,
        config={
            "instance": instance.label,
            "initial_points": params.initial_grid.points.size,
            "violation_tol": params.violation_tol,
            "max_rounds": params.max_rounds,
            "refine_grid_density": params.refine_grid_density,
            "jitter_seed": params.jitter_seed,
            "tol": tol,
            "violation_grid": FINE_GRID_POINTS,
        },
        detail={
            "rounds": rounds,
            "restricted_values": values,
            "final_separation_violation": violation_sep,
            "index_points": points.tolist(),
        },
    )
