"""Independent reference implementations used to freeze expected values.

Everything here is written straight from the mathematical definitions
(loops, quadrature, inertia bisection, vertex enumeration) and avoids
the library's own code paths, so agreement between the two is evidence
rather than tautology.
"""

import itertools

import numpy as np
import scipy.linalg

TWO_PI = 2.0 * np.pi


def naive_dft(samples, K: int) -> np.ndarray:
    """O(NK) direct evaluation of c_k = (1/N) sum_m f(t_m) e^{+ik t_m}."""
    samples = np.asarray(samples, dtype=float)
    N = samples.size
    t = TWO_PI * np.arange(N) / N
    return np.array(
        [np.sum(samples * np.exp(1j * k * t)) / N for k in range(K + 1)]
    )


def trapezoid_coefficients(row, K: int, num_points: int = 1_000_001) -> np.ndarray:
    """Composite-trapezoid quadrature of (1/2pi) int_0^{2pi} f(t) e^{+ikt} dt."""
    t = np.linspace(0.0, TWO_PI, num_points)
    f = np.asarray(row(t), dtype=float)
    return np.array(
        [np.trapezoid(f * np.exp(1j * k * t), t) / TWO_PI for k in range(K + 1)]
    )


def reflect_reference(row):
    """Even reflection written independently: a(2pi-2t) on [0,pi], a(2t-2pi) after."""

    def reflected(t):
        t = np.asarray(t, dtype=float)
        u = np.where(t <= np.pi, TWO_PI - 2.0 * t, 2.0 * t - TWO_PI)
        return np.asarray(row(u), dtype=float)

    return reflected


def min_eig_by_inertia_bisection(M, tol: float = 1e-10) -> float:
    """Smallest eigenvalue by bisection on the inertia of LDL^T factors.

    Sylvester's law: the number of negative eigenvalues of M - sigma*I
    equals the number of negative eigenvalues of its block-diagonal D.
    """
    M = np.asarray(M, dtype=float)
    m = M.shape[0]
    hi = float(np.abs(M).sum(axis=1).max()) + 1.0  # Gershgorin radius bound
    lo = -hi

    def eigs_below(sigma: float) -> int:
        _, D, _ = scipy.linalg.ldl(M - sigma * np.eye(m))
        count = 0
        k = 0
        while k < m:
            if k + 1 < m and abs(D[k + 1, k]) > 1e-14 * max(1.0, abs(D[k, k])):
                det = D[k, k] * D[k + 1, k + 1] - D[k + 1, k] * D[k, k + 1]
                if det < 0.0:
                    count += 1
                elif D[k, k] + D[k + 1, k + 1] < 0.0:
                    count += 2
                k += 2
            else:
                if D[k, k] < 0.0:
                    count += 1
                k += 1
        return count

    while hi - lo > tol * max(1.0, abs(hi)):
        mid = 0.5 * (lo + hi)
        if eigs_below(mid) >= 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def vertex_minimum(c, A, b) -> float:
    """Minimum of c.x over {A x <= b} in R^2 by enumerating basic vertices.

    Assumes the feasible polygon is nonempty and bounded (callers add a
    box); returns +inf when no feasible vertex exists.
    """
    c = np.asarray(c, dtype=float)
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    best = np.inf
    for i, j in itertools.combinations(range(A.shape[0]), 2):
        sub = A[[i, j]]
        if abs(np.linalg.det(sub)) < 1e-10:
            continue
        v = np.linalg.solve(sub, b[[i, j]])
        if np.all(A @ v <= b + 1e-9):
            best = min(best, float(c @ v))
    return best
