"""Assembly of the truncated moment programs from a coefficient table.

Real path (tables with zero imaginary parts):

    maximize  -p . w
    s.t.      E w = -c,   Toeplitz(w) >= 0  (PSD),

with p[0] = r[0][0], p[k] = 2 r[0][k], E[j][0] = r[j][0], E[j][k] = 2 r[j][k].

Complex path (general tables), via the Hermitian-to-real block embedding:

    maximize  -(p . w - q . v)
    s.t.      E w - F v = -c,   [[W, V^T], [V, W]] >= 0,

where W = Toeplitz(w), V is the skew-symmetric matrix with V[k][l] = v[l-k]
above the diagonal, q[k] = 2 s[0][k] and F[j][k] = 2 s[j][k].

In both programs the Lagrange multipliers of the equality block are the
approximate solution x of the underlying semi-infinite program, and the
optimal value of the multipliers' program min c . x equals max -(p.w - q.v).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .sdp import EmbeddedBlockForm, SdpProblem, ToeplitzForm
from .spectral import FourierTable


def toeplitz_from_moments(w) -> np.ndarray:
    """Symmetric Toeplitz matrix with entry (k, l) = w[|k-l|]."""
    w = np.atleast_1d(np.asarray(w, dtype=float))
    idx = np.abs(np.subtract.outer(np.arange(w.size), np.arange(w.size)))
    return w[idx]


def skew_from_moments(v) -> np.ndarray:
    """Skew-symmetric matrix with entry (k, l) = v[l-k-1] for l > k."""
    v = np.atleast_1d(np.asarray(v, dtype=float))
    m = v.size + 1
    out = np.zeros((m, m))
    for k in range(1, m):
        idx = np.arange(m - k)
        out[idx, idx + k] = v[k - 1]
    return out - out.T


def embed_hermitian(W: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Real symmetric embedding [[W, V^T], [V, W]] of the Hermitian W + iV.

    The embedding is PSD exactly when W + iV is PSD, and its spectrum is
    the Hermitian spectrum with every eigenvalue doubled.
    """
    W = np.asarray(W, dtype=float)
    V = np.asarray(V, dtype=float)
    if W.shape != V.shape or W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise ValueError("W and V must be square matrices of equal size")
    scale = max(1.0, np.abs(W).max(), np.abs(V).max())
    if np.abs(W - W.T).max() > 1e-12 * scale:
        raise ValueError("W is not symmetric")
    if np.abs(V + V.T).max() > 1e-12 * scale:
        raise ValueError("V is not skew-symmetric")
    return np.block([[W, V.T], [V, W]])


@dataclass(frozen=True)
class MomentLmi:
    """Data (p, E, c) of the real-path moment program at order K."""

    K: int
    p: np.ndarray
    E: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        E = np.atleast_2d(np.asarray(self.E, dtype=float))
        c = np.atleast_1d(np.asarray(self.c, dtype=float))
        if p.shape != (self.K + 1,) or E.shape != (c.size, self.K + 1):
            raise ValueError("inconsistent moment program dimensions")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "c", c)

    def sdp_problem(self) -> SdpProblem:
        return SdpProblem(b=-self.p, A=self.E, a=-self.c, form=ToeplitzForm(self.K))

    def to_json(self) -> str:
        return json.dumps({"K": int(self.K), "p": self.p.tolist(), "E": self.E.tolist(),
                           "c": self.c.tolist()}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "MomentLmi":
        doc = json.loads(text)
        return cls(K=int(doc["K"]), p=np.asarray(doc["p"]), E=np.asarray(doc["E"]),
                   c=np.asarray(doc["c"]))


@dataclass(frozen=True)
class EmbeddedLmi:
    """Data (p, q, E, F, c) of the block-embedded moment program at order K."""

    K: int
    p: np.ndarray
    q: np.ndarray
    E: np.ndarray
    F: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        q = np.asarray(self.q, dtype=float)
        E = np.atleast_2d(np.asarray(self.E, dtype=float))
        F = np.atleast_2d(np.asarray(self.F, dtype=float))
        c = np.atleast_1d(np.asarray(self.c, dtype=float))
        n = c.size
        if p.shape != (self.K + 1,) or q.shape != (self.K,):
            raise ValueError("inconsistent objective dimensions")
        if E.shape != (n, self.K + 1) or F.shape != (n, self.K):
            raise ValueError("inconsistent constraint dimensions")
        for name, arr in (("p", p), ("q", q), ("E", E), ("F", F), ("c", c)):
            object.__setattr__(self, name, arr)

    @property
    def block_size(self) -> int:
        return 2 * (self.K + 1)

    def sdp_problem(self) -> SdpProblem:
        b = np.concatenate([-self.p, self.q])
        A = np.hstack([self.E, -self.F])
        return SdpProblem(b=b, A=A, a=-self.c, form=EmbeddedBlockForm(self.K))

    def to_json(self) -> str:
        return json.dumps({"K": int(self.K), "p": self.p.tolist(), "q": self.q.tolist(),
                           "E": self.E.tolist(), "F": self.F.tolist(), "c": self.c.tolist()},
                          sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "EmbeddedLmi":
        doc = json.loads(text)
        return cls(K=int(doc["K"]), p=np.asarray(doc["p"]), q=np.asarray(doc["q"]),
                   E=np.asarray(doc["E"]), F=np.asarray(doc["F"]), c=np.asarray(doc["c"]))


def _split_table(table: FourierTable, c):
    c = np.atleast_1d(np.asarray(c, dtype=float))
    if c.size != table.num_rows - 1:
        raise ValueError(f"cost vector length {c.size} does not match table rows {table.num_rows - 1}")
    doubling = np.ones(table.K + 1)
    doubling[1:] = 2.0
    p = doubling * table.r[0]
    E = doubling * table.r[1:]
    q = 2.0 * table.s[0, 1:]
    F = 2.0 * table.s[1:, 1:]
    return c, p, E, q, F


def build_real_moment_program(table: FourierTable, c) -> MomentLmi:
    """Assemble the real-path program; the table must have zero imaginary parts."""
    if np.any(table.s != 0.0):
        raise ValueError("table has nonzero imaginary parts; use the block-embedded path")
    c, p, E, _, _ = _split_table(table, c)
    return MomentLmi(K=table.K, p=p, E=E, c=c)


def build_complex_moment_program(table: FourierTable, c) -> EmbeddedLmi:
    """Assemble the block-embedded program from a general table."""
    c, p, E, q, F = _split_table(table, c)
    return EmbeddedLmi(K=table.K, p=p, q=q, E=E, F=F, c=c)
