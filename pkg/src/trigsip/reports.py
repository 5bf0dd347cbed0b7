"""Report records shared by the solve drivers, studies, and the CLI.

CSV schemas are pinned (documented per emitter); JSON mirrors carry the
same fields plus the full resolved configuration so a report is
reproducible from its own serialization.  Figure rendering imports
matplotlib lazily and only when asked, so non-plot runs never touch it.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

KNOWN_METHODS = ("moment_real", "moment_complex", "cutting_plane", "grid_lp")

# Pinned column order for ConvergenceSeries and cross-check tables.
SERIES_CSV_HEADER = "K,value,abs_error,violation,runtime_seconds"
REPORT_CSV_HEADER = "method,K,N,status,value,violation,runtime_seconds"


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one solve of an instance by any method.

    ``violation`` is measured on the diagnostic grid recorded in
    ``config["violation_grid"]``; ``value`` and ``x`` are NaN/empty when
    the underlying solver did not reach an optimal status.  ``config``
    holds every resolved knob (K, N, tol, grid densities, method
    extras); ``detail`` holds solver diagnostics (iterations, gap,
    rounds, certificates) that do not affect reproducibility.
    """

    method: str
    K: int | None
    N: int | None
    value: float
    x: np.ndarray
    violation: float
    runtime_seconds: float
    status: str
    config: dict = field(default_factory=dict)
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in KNOWN_METHODS:
            raise ValueError(f"unknown method '{self.method}'")
        if self.status == "optimal" and not math.isfinite(self.value):
            raise ValueError("optimal report with non-finite value")
        if math.isfinite(self.violation) and self.violation < 0:
            raise ValueError("violation must be nonnegative")
        if self.runtime_seconds < 0:
            raise ValueError("runtime must be nonnegative")
        object.__setattr__(self, "x", np.atleast_1d(np.asarray(self.x, dtype=float)))

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "K": self.K,
            "N": self.N,
            "status": self.status,
            "value": _json_real(self.value),
            "x": [_json_real(v) for v in self.x],
            "violation": _json_real(self.violation),
            "runtime_seconds": self.runtime_seconds,
            "config": _jsonable(self.config),
            "detail": _jsonable(self.detail),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        row = [self.method, _csv_cell(self.K), _csv_cell(self.N), self.status,
               _csv_cell(self.value), _csv_cell(self.violation),
               _csv_cell(self.runtime_seconds)]
        return REPORT_CSV_HEADER + "\n" + ",".join(row) + "\n"

    def to_text(self) -> str:
        out = io.StringIO()
        print(f"method            {self.method}", file=out)
        print(f"status            {self.status}", file=out)
        if self.K is not None:
            print(f"K                 {self.K}", file=out)
        if self.N is not None:
            print(f"N                 {self.N}", file=out)
        print(f"value             {self.value:.10g}", file=out)
        print(f"violation         {self.violation:.3e}", file=out)
        print(f"runtime_seconds   {self.runtime_seconds:.3f}", file=out)
        print(f"x                 {np.array2string(self.x, precision=8)}", file=out)
        width = max([18] + [len(k) + 2 for k in self.detail])
        for key in sorted(self.detail):
            print(f"{key:<{width}}{self.detail[key]}", file=out)
        return out.getvalue()


@dataclass(frozen=True)
class ConvergenceEntry:
    K: int
    value: float
    abs_error: float
    violation: float
    runtime_seconds: float
    status: str

    def csv_row(self) -> str:
        return ",".join([str(self.K), _csv_cell(self.value), _csv_cell(self.abs_error),
                         _csv_cell(self.violation), _csv_cell(self.runtime_seconds)])


@dataclass(frozen=True)
class ConvergenceSeries:
    """Error trajectory of the moment pipeline over increasing K.

    ``rho[i] = abs_error[i] / (ln K[i] / K[i])`` is reported, never
    asserted against a constant; failed solves keep their status and a
    NaN error so the study stays rectangular.
    """

    label: str
    method: str
    reference: float
    entries: tuple
    config: dict = field(default_factory=dict)

    def __post_init__(self):
        ks = [e.K for e in self.entries]
        if any(k2 <= k1 for k1, k2 in zip(ks, ks[1:])):
            raise ValueError("K values must be strictly increasing")
        for e in self.entries:
            if math.isfinite(e.abs_error) and e.abs_error < 0:
                raise ValueError("errors must be nonnegative")
        object.__setattr__(self, "entries", tuple(self.entries))

    @property
    def rho(self) -> list:
        return [
            e.abs_error / (math.log(e.K) / e.K) if e.K > 1 and math.isfinite(e.abs_error) else float("nan")
            for e in self.entries
        ]

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "method": self.method,
            "reference": _json_real(self.reference),
            "entries": [
                {
                    "K": e.K,
                    "value": _json_real(e.value),
                    "abs_error": _json_real(e.abs_error),
                    "violation": _json_real(e.violation),
                    "runtime_seconds": e.runtime_seconds,
                    "status": e.status,
                }
                for e in self.entries
            ],
            "rho": [_json_real(v) for v in self.rho],
            "config": _jsonable(self.config),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        lines = [SERIES_CSV_HEADER]
        lines += [e.csv_row() for e in self.entries]
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        out = io.StringIO()
        print(f"{self.label}  method={self.method}  reference={self.reference:.8f}", file=out)
        print(f"{'K':>4} {'value':>14} {'abs_error':>12} {'violation':>12} {'rho':>10} {'status':>16}", file=out)
        for e, r in zip(self.entries, self.rho):
            print(f"{e.K:>4} {e.value:>14.8f} {e.abs_error:>12.3e} "
                  f"{e.violation:>12.3e} {r:>10.3g} {e.status:>16}", file=out)
        return out.getvalue()


def _json_real(v) -> float | str:
    # JSON has no NaN/inf literals; keep reports parseable everywhere
    v = float(v)
    if math.isfinite(v):
        return v
    return repr(v)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        return _json_real(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    return obj


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render_convergence(series: ConvergenceSeries, path: str) -> str:
    """Write a two-panel error/violation figure for a study; returns path."""
    plt = _pyplot()
    ks = [e.K for e in series.entries]
    errors = [e.abs_error for e in series.entries]
    violations = [e.violation for e in series.entries]
    guide = [math.log(k) / k if k > 1 else float("nan") for k in ks]

    fig, (ax_err, ax_vio) = plt.subplots(1, 2, figsize=(9.0, 3.6))
    ax_err.loglog(ks, errors, "o-", label="|value - reference|")
    ax_err.loglog(ks, guide, "--", color="gray", label="ln K / K")
    ax_err.set_xlabel("K")
    ax_err.set_ylabel("absolute error")
    ax_err.legend(fontsize=8)
    ax_vio.loglog(ks, violations, "s-", color="firebrick")
    ax_vio.set_xlabel("K")
    ax_vio.set_ylabel("constraint violation")
    fig.suptitle(f"{series.label} ({series.method})", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_compare(reports: list, reference: float | None, path: str) -> str:
    """Bar chart of per-method values with an optional reference line."""
    plt = _pyplot()
    labels = [r.method for r in reports]
    values = [r.value if math.isfinite(r.value) else 0.0 for r in reports]
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    bars = ax.bar(labels, values, color="steelblue")
    for bar, rep in zip(bars, reports):
        if not math.isfinite(rep.value):
            bar.set_color("lightgray")
            ax.text(bar.get_x() + bar.get_width() / 2, 0.0, rep.status,
                    ha="center", va="bottom", rotation=90, fontsize=8)
    if reference is not None:
        ax.axhline(reference, color="black", linestyle="--", linewidth=1,
                   label=f"reference {reference:.6f}")
        ax.legend(fontsize=8)
    ax.set_ylabel("value")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt
