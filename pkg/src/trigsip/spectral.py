"""Even reflection, uniform sampling, and truncated Fourier coefficient tables.

Coefficients follow the analysis convention

    a_k = (1/2*pi) * integral_0^{2*pi} a(t) e^{+ikt} dt,

approximated by the length-N discrete sum c_k = (1/N) sum_m a(t_m) e^{+ik t_m}
at t_m = 2*pi*m/N.  The matching synthesis is a_hat(t) = sum_{|k|<=K} a_k e^{-ikt}
with no extra prefactor, which collapses over conjugate pairs to

    a_hat(t) = r[0] + sum_{k=1}^{K} 2*(r[k] cos(kt) + s[k] sin(kt)).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .instances import TWO_PI, SipInstance


def reflect_even(instance: SipInstance) -> SipInstance:
    """Fold every row about t = pi so the result is even and 2*pi-periodic.

    The reflected row traverses exactly the value set of the original over
    [0, 2*pi] (each half-interval sweeps it once), so the feasible set of
    the program is unchanged.
    """

    def make(row):
        def reflected(t):
            t = np.asarray(t, dtype=float)
            left = np.clip(TWO_PI - 2.0 * t, 0.0, TWO_PI)
            right = np.clip(2.0 * t - TWO_PI, 0.0, TWO_PI)
            return np.where(t <= np.pi, row(left), row(right))

        return reflected

    return SipInstance(
        n=instance.n,
        c=instance.c,
        rows=tuple(make(row) for row in instance.rows),
        label=instance.label + "-reflected",
    )


def sample_uniform(f: Callable, N: int) -> np.ndarray:
    """Sample f at t_m = 2*pi*m/N for m = 0..N-1."""
    if N < 2:
        raise ValueError("need at least 2 samples")
    t = TWO_PI * np.arange(N) / N
    values = np.asarray(f(t), dtype=float)
    if values.shape != (N,):
        values = np.broadcast_to(values, (N,)).astype(float)
    if not np.all(np.isfinite(values)):
        bad = int(np.flatnonzero(~np.isfinite(values))[0])
        raise ValueError(f"non-finite sample at t={t[bad]}")
    return values


def _bit_reverse_indices(n: int) -> np.ndarray:
    levels = n.bit_length() - 1
    rev = np.zeros(n, dtype=np.intp)
    for i in range(1, n):
        rev[i] = (rev[i >> 1] >> 1) | ((i & 1) << (levels - 1))
    return rev


def _fft_pow2(x: np.ndarray) -> np.ndarray:
    """Radix-2 transform X_k = sum_m x_m e^{+2*pi*i*k*m/N}, N a power of two."""
    n = x.size
    out = np.asarray(x, dtype=complex)[_bit_reverse_indices(n)]
    half = 1
    while half < n:
        twiddle = np.exp((1j * np.pi / half) * np.arange(half))
        out = out.reshape(-1, 2 * half)
        even = out[:, :half].copy()
        odd = out[:, half:] * twiddle
        out[:, :half] = even + odd
        out[:, half:] = even - odd
        half *= 2
    return out.reshape(-1)


def _dft_direct(samples: np.ndarray, K: int) -> np.ndarray:
    # O(NK) fallback for sample counts that are not powers of two
    N = samples.size
    base = np.exp(2j * np.pi * np.arange(N) / N)
    coeffs = np.empty(K + 1, dtype=complex)
    kernel = np.ones(N, dtype=complex)
    for k in range(K + 1):
        coeffs[k] = kernel @ samples
        kernel *= base
    return coeffs / N


def dft_coefficients(samples, K: int) -> np.ndarray:
    """Truncated coefficients c_k = (1/N) sum_m samples[m] e^{+ik t_m}, k = 0..K.

    Parameters
    ----------
    samples : array_like, shape (N,)
        Values on the uniform grid t_m = 2*pi*m/N.  N must satisfy
        N >= 2K+2 (anti-aliasing floor).
    K : int
        Highest retained order, K >= 0.

    Returns
    -------
    ndarray of complex, shape (K+1,)

    Notes
    -----
    When N is a power of two the sum is evaluated by an O(N log N)
    radix-2 transform; otherwise by the direct O(NK) summation.
    """
    samples = np.asarray(samples, dtype=float)
    N = samples.size
    if K < 0:
        raise ValueError("K must be >= 0")
    if N < 2 * K + 2:
        raise ValueError(f"need N >= 2K+2 = {2 * K + 2} samples to resolve order {K}, got {N}")
    if N & (N - 1) == 0:
        return _fft_pow2(samples.astype(complex))[: K + 1] / N
    return _dft_direct(samples, K)


def default_sample_count(K: int) -> int:
    """Default N for DFT tables: max(256, 8K) rounded up to a power of two.

    The reflected rows are continuous with derivative kinks, so their
    coefficients decay like 1/k^2 and the DFT alias error scales like
    1/N^2; this default keeps that error well below the K-truncation
    error for the builtin instances.
    """
    n = max(256, 8 * K)
    return 1 << (n - 1).bit_length()


@dataclass(frozen=True)
class FourierTable:
    """Truncated coefficients of the n+1 rows of an instance.

    r[j][k] and s[j][k] hold the real and imaginary part of the order-k
    coefficient of row j for k = 0..K; negative orders are implied by
    r[j][-k] = r[j][k], s[j][-k] = -s[j][k].
    """

    K: int
    N: int
    r: np.ndarray
    s: np.ndarray
    source: str

    def __post_init__(self):
        r = np.atleast_2d(np.asarray(self.r, dtype=float))
        s = np.atleast_2d(np.asarray(self.s, dtype=float))
        if r.shape != s.shape or r.shape[1] != self.K + 1:
            raise ValueError(f"coefficient matrices have shape {r.shape}/{s.shape}, expected (n+1, {self.K + 1})")
        if not (np.all(np.isfinite(r)) and np.all(np.isfinite(s))):
            raise ValueError("non-finite coefficients")
        if np.any(s[:, 0] != 0.0):
            raise ValueError("order-0 coefficients must be real")
        if self.source not in ("dft", "analytic"):
            raise ValueError(f"unknown source tag '{self.source}'")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)

    @property
    def num_rows(self) -> int:
        return int(self.r.shape[0])

    def to_json(self) -> str:
        doc = {
            "K": int(self.K),
            "N": int(self.N),
            "r": self.r.tolist(),
            "s": self.s.tolist(),
            "source": self.source,
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "FourierTable":
        doc = json.loads(text)
        return cls(K=int(doc["K"]), N=int(doc["N"]), r=np.asarray(doc["r"], dtype=float),
                   s=np.asarray(doc["s"], dtype=float), source=str(doc["source"]))


def fourier_table(instance: SipInstance, K: int, N: int | None = None,
                  mode: str = "reflect_then_dft") -> FourierTable:
    """Compute the coefficient table of all rows of an instance.

    Modes
    -----
    reflect_then_dft
        Reflect the rows evenly first; the sampled sequences are then even,
        the imaginary parts must vanish (checked against 1e-10 relative,
        then zeroed exactly), and the cheap real pipeline applies.
    direct_dft
        Transform the rows as given; the imaginary parts are retained and
        the block-embedded pipeline must be used downstream.
    analytic
        Use coefficients registered on the instance in closed form
        (exact reflected-row coefficients); N is recorded but unused.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    if N is None:
        N = default_sample_count(K)
    if N < 2 * K + 2:
        raise ValueError(f"need N >= 2K+2 = {2 * K + 2}, got {N}")

    if mode == "analytic":
        if instance.fourier_closed_form is None:
            raise ValueError(f"instance '{instance.label}' registers no closed-form coefficients")
        r, s = instance.fourier_closed_form(K)
        return FourierTable(K=K, N=N, r=np.asarray(r, dtype=float),
                            s=np.asarray(s, dtype=float), source="analytic")

    if mode == "reflect_then_dft":
        worker = reflect_even(instance)
    elif mode == "direct_dft":
        worker = instance
    else:
        raise ValueError(f"unknown mode '{mode}'")

    coeffs = np.empty((instance.n + 1, K + 1), dtype=complex)
    for j in range(instance.n + 1):
        coeffs[j] = dft_coefficients(sample_uniform(worker.rows[j], N), K)

    r = coeffs.real.copy()
    s = coeffs.imag.copy()
    if mode == "reflect_then_dft":
        scale = max(1.0, np.abs(r).max())
        worst = np.abs(s).max()
        if worst > 1e-10 * scale:
            raise ValueError(f"reflection left imaginary parts of size {worst:.2e}; expected even samples")
        s[:] = 0.0
    s[:, 0] = 0.0
    return FourierTable(K=K, N=N, r=r, s=s, source="dft")


def eval_truncated(table: FourierTable, j: int, t) -> np.ndarray | float:
    """Evaluate the order-K truncated series of row j at t (scalar or array)."""
    if not 0 <= j < table.num_rows:
        raise ValueError(f"row index {j} out of range 0..{table.num_rows - 1}")
    t = np.asarray(t, dtype=float)
    k = np.arange(1, table.K + 1)
    phase = np.multiply.outer(t, k)
    values = table.r[j, 0] + 2.0 * (np.cos(phase) @ table.r[j, 1:] + np.sin(phase) @ table.s[j, 1:])
    return float(values) if values.ndim == 0 else values


def truncated_rows(table: FourierTable, t: np.ndarray) -> np.ndarray:
    """Evaluate all truncated rows on a grid; returns shape (n+1, len(t))."""
    t = np.asarray(t, dtype=float)
    k = np.arange(1, table.K + 1)
    cos_part = np.cos(np.multiply.outer(k, t))
    sin_part = np.sin(np.multiply.outer(k, t))
    return table.r[:, :1] + 2.0 * (table.r[:, 1:] @ cos_part + table.s[:, 1:] @ sin_part)
