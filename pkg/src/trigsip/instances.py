"""Linear semi-infinite program instances over the index interval [0, 2*pi].

An instance is the data of the program

    minimize    c . x
    subject to  sum_j a_j(t) x_j <= a_0(t)   for every t in [0, 2*pi],

stored as a cost vector together with n+1 evaluable rows.  Row 0 is the
right-hand side a_0; rows 1..n multiply the decision variables.  All rows
accept numpy arrays and broadcast elementwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

TWO_PI = 2.0 * np.pi

# Known optimal values of the builtin instances, used for error reporting
# and by the convergence diagnostics.  Keyed by (example_id, n).
REFERENCE_OPTIMA = {
    (1, 5): 0.61740424,
    (1, 6): 0.61608515,
    (1, 7): 0.61572945,
    (1, 8): 0.61565322,
    (2, 5): 1.0,
    (2, 6): 1.0,
    (2, 7): 1.0,
    (2, 8): 1.0,
    (3, 8): 0.69314815,
    (4, 9): 0.78549953,
    (5, 10): -0.48354840,
}

# Default number of points for the standard diagnostic grid (1e4 intervals
# plus both endpoints) and for the fine grid used by feasibility reporting.
DEFAULT_GRID_POINTS = 10001
FINE_GRID_POINTS = 100001


@dataclass(frozen=True)
class SipInstance:
    """A linear semi-infinite program with index set [0, 2*pi].

    Attributes
    ----------
    n : int
        Number of decision variables.
    c : ndarray, shape (n,)
        Cost vector.
    rows : tuple of callables
        rows[0] is the right-hand side a_0; rows[j] for j = 1..n are the
        constraint coefficient functions.  Each maps t (scalar or array
        within [0, 2*pi]) to real values.
    label : str
        Identifier used in reports.
    fourier_closed_form : callable or None
        Optional registration of exact coefficients of the evenly
        reflected rows: called with a truncation order K, returns the
        (r, s) coefficient matrices of shape (n+1, K+1).
    """

    n: int
    c: np.ndarray
    rows: tuple
    label: str
    fourier_closed_form: Callable | None = field(default=None, compare=False)

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.c, dtype=float))
        if self.n < 1:
            raise ValueError("instance dimension n must be >= 1")
        if c.shape != (self.n,):
            raise ValueError(f"cost vector has shape {c.shape}, expected ({self.n},)")
        if len(self.rows) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} rows (a_0..a_n), got {len(self.rows)}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "rows", tuple(self.rows))

    def row_values(self, j: int, t) -> np.ndarray:
        """Evaluate row j on an array of index points (vectorized, unchecked)."""
        if not 0 <= j <= self.n:
            raise ValueError(f"row index {j} out of range 0..{self.n}")
        t = np.asarray(t, dtype=float)
        return np.asarray(self.rows[j](t), dtype=float)


@dataclass(frozen=True)
class EvaluationGrid:
    """Finite set of index points standing in for the interval [0, 2*pi]."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.atleast_1d(np.asarray(self.points, dtype=float))
        if pts.size < 2:
            raise ValueError("grid needs at least 2 points")
        if pts[0] < -1e-12 or pts[-1] > TWO_PI + 1e-12:
            raise ValueError("grid points must lie within [0, 2*pi]")
        if np.any(np.diff(pts) <= 0):
            raise ValueError("grid points must be strictly increasing")
        object.__setattr__(self, "points", pts)

    @property
    def density(self) -> int:
        return int(self.points.size)

    @classmethod
    def uniform(cls, num_points: int = DEFAULT_GRID_POINTS) -> "EvaluationGrid":
        return cls(np.linspace(0.0, TWO_PI, int(num_points)))


def _power_row(exponent: int):
    # exponent 0 yields the constant -1, including at t = 0
    def row(t):
        return -((t / TWO_PI) ** exponent)

    return row


def _shifted_power_row(exponent: int):
    def row(t):
        return -((t / TWO_PI + 1.0) ** exponent)

    return row


def _cos_row(j: int):
    def row(t):
        return -2.0 * np.cos((2 * j - 1) * t / 2.0)

    return row


def _example5_closed_form(K: int):
    """Exact reflected-row coefficients of example 5: row j becomes
    2*cos((2j-1)t), whose only retained coefficient is 1 at k = 2j-1;
    the constant right-hand side contributes 1 at k = 0."""
    n = 10
    r = np.zeros((n + 1, K + 1))
    s = np.zeros((n + 1, K + 1))
    r[0, 0] = 1.0
    for j in range(1, n + 1):
        if 2 * j - 1 <= K:
            r[j, 2 * j - 1] = 1.0
    return r, s


def builtin_example(example_id: int, n: int | None = None) -> SipInstance:
    """Return one of the five builtin instances.

    Instances 1 and 2 are families over n in {5,...,8} (default 5);
    instances 3, 4, 5 have fixed dimensions 8, 9, 10 and ignore n.
    """
    if example_id not in (1, 2, 3, 4, 5):
        raise ValueError(f"unknown example id {example_id}; valid ids are 1..5")

    if example_id in (1, 2):
        if n is None:
            n = 5
        if n not in (5, 6, 7, 8):
            raise ValueError(f"example {example_id} supports n in {{5,6,7,8}}, got {n}")
    else:
        n = {3: 8, 4: 9, 5: 10}[example_id]

    if example_id == 1:
        c = np.array([1.0 / j for j in range(1, n + 1)])
        rows = [lambda t: -np.tan(t / TWO_PI)]
        rows += [_power_row(j - 1) for j in range(1, n + 1)]
    elif example_id == 2:
        c = np.ones(n)
        rows = [lambda t: -TWO_PI / np.sqrt(4.0 * np.pi**2 + t**2)]
        rows += [_shifted_power_row(j - 1) for j in range(1, n + 1)]
    elif example_id == 3:
        c = np.array([1.0 / j for j in range(1, n + 1)])
        rows = [lambda t: -TWO_PI / (4.0 * np.pi - t)]
        rows += [_power_row(j - 1) for j in range(1, n + 1)]
    elif example_id == 4:
        c = np.array([1.0 / j for j in range(1, n + 1)])
        rows = [lambda t: -4.0 * np.pi**2 / (4.0 * np.pi**2 + t**2)]
        rows += [_power_row(j - 1) for j in range(1, n + 1)]
    else:
        c = np.array([-(0.95 ** (2 * j - 1)) for j in range(1, n + 1)])
        rows = [lambda t: 1.0 + 0.0 * t]
        rows += [_cos_row(j) for j in range(1, n + 1)]

    closed_form = _example5_closed_form if example_id == 5 else None
    return SipInstance(
        n=n, c=c, rows=tuple(rows), label=f"example-{example_id}-n{n}",
        fourier_closed_form=closed_form,
    )


def builtin_registry() -> list[dict]:
    """Metadata for the builtin instances (drives the CLI listing)."""
    return [
        {"id": 1, "n_choices": [5, 6, 7, 8], "description": "power rows, tangent right-hand side"},
        {"id": 2, "n_choices": [5, 6, 7, 8], "description": "shifted power rows, known optimum 1"},
        {"id": 3, "n_choices": [8], "description": "power rows, rational right-hand side"},
        {"id": 4, "n_choices": [9], "description": "power rows, rational right-hand side"},
        {"id": 5, "n_choices": [10], "description": "cosine rows, constant right-hand side"},
    ]


def eval_constraint_row(instance: SipInstance, j: int, t: float) -> float:
    """Evaluate a_j(t) with domain checks; t must lie in [0, 2*pi]."""
    if not 0 <= j <= instance.n:
        raise ValueError(f"row index {j} out of range 0..{instance.n}")
    t = float(t)
    if not (0.0 - 1e-12 <= t <= TWO_PI + 1e-12):
        raise ValueError(f"index point t={t} outside [0, 2*pi]")
    value = float(instance.rows[j](min(max(t, 0.0), TWO_PI)))
    if not np.isfinite(value):
        raise ValueError(f"row {j} of '{instance.label}' is non-finite at t={t}")
    return value


def constraint_margin(instance: SipInstance, x: np.ndarray, t) -> np.ndarray:
    """Vectorized slack sum_j a_j(t) x_j - a_0(t); positive means violated."""
    x = np.asarray(x, dtype=float)
    if x.shape != (instance.n,):
        raise ValueError(f"x has shape {x.shape}, expected ({instance.n},)")
    t = np.asarray(t, dtype=float)
    total = -instance.row_values(0, t)
    for j in range(1, instance.n + 1):
        total = total + x[j - 1] * instance.row_values(j, t)
    return total


def constraint_violation(instance: SipInstance, x, grid: EvaluationGrid) -> float:
    """Largest positive constraint slack over the grid (0 when grid-feasible)."""
    margin = constraint_margin(instance, x, grid.points)
    if not np.all(np.isfinite(margin)):
        bad = int(np.flatnonzero(~np.isfinite(margin))[0])
        raise ValueError(f"non-finite constraint value at t={grid.points[bad]}")
    return float(max(0.0, margin.max()))


def _interp_row(t_knots: np.ndarray, values: np.ndarray):
    def row(t):
        return np.interp(t, t_knots, values)

    return row


def load_instance(source) -> SipInstance:
    """Load a custom instance from a JSON file path, JSON text, or dict.

    Schema: {"n": int, "c": [real], "label": str (optional),
    "rows": [{"kind": "samples", "t": [real], "v": [real]}, ...]} with
    rows[0] the right-hand side.  Sampled rows are evaluated by linear
    interpolation and must cover [0, 2*pi].
    """
    if isinstance(source, dict):
        doc = source
    else:
        text = str(source)
        if text.lstrip().startswith("{"):
            doc = json.loads(text)
        else:
            with open(text, "r", encoding="utf-8") as fh:
                doc = json.load(fh)

    try:
        n = int(doc["n"])
        c = np.asarray(doc["c"], dtype=float)
        row_docs: Sequence[dict] = doc["rows"]
    except KeyError as exc:
        raise ValueError(f"instance document missing field {exc}") from exc

    rows = []
    for idx, rd in enumerate(row_docs):
        kind = rd.get("kind", "samples")
        if kind != "samples":
            raise ValueError(f"row {idx}: unsupported kind '{kind}'")
        t_knots = np.asarray(rd["t"], dtype=float)
        values = np.asarray(rd["v"], dtype=float)
        if t_knots.ndim != 1 or t_knots.shape != values.shape or t_knots.size < 2:
            raise ValueError(f"row {idx}: 't' and 'v' must be equal-length vectors (>= 2 entries)")
        if np.any(np.diff(t_knots) <= 0):
            raise ValueError(f"row {idx}: sample points must be strictly increasing")
        if t_knots[0] > 1e-9 or t_knots[-1] < TWO_PI - 1e-9:
            raise ValueError(f"row {idx}: samples must cover [0, 2*pi]")
        if not np.all(np.isfinite(values)):
            raise ValueError(f"row {idx}: non-finite sample values")
        rows.append(_interp_row(t_knots, values))

    return SipInstance(n=n, c=c, rows=tuple(rows), label=str(doc.get("label", "custom")))
