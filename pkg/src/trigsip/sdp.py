"""Dense interior-point solver for linear SDPs with a homogeneous LMI.

The solved problem is

    maximize    b . z
    subject to  A z = a,          (M_eq linear equalities)
                M(z) >= 0 (PSD),  (LMI, linear and homogeneous in z)

whose Lagrangian dual is

    minimize    -a . x
    subject to  M*(Y) + A^T x = -b,   Y >= 0 (PSD),

with M*(Y)_k = <M_k, Y> the adjoint of the LMI map.  The equality
multipliers x are part of the returned solution; for the moment programs
built by this package they are the approximate solution of the underlying
semi-infinite program, and -a.x = c.x at the optimum.

The LMI map is one of three structural forms (never materialized as a
basis list): symmetric Toeplitz, the 2x2-block embedding of a Hermitian
Toeplitz matrix, or diagonal (the linear-programming reduction).  The
search direction is the Nesterov-Todd scaling with a Mehrotra
predictor-corrector; iterates keep S = M(z) and Y strictly positive
definite via a fraction-to-boundary rule, starting from the (generally
infeasible) identity point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.linalg import lu_factor, lu_solve, qr, solve_triangular, svd
from scipy.sparse import bmat as sparse_bmat, diags as sparse_diags
from scipy.sparse.linalg import splu

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
ITERATION_LIMIT = "iteration_limit"
NUMERICAL_FAILURE = "numerical_failure"

TERMINATION_MESSAGES = {
    OPTIMAL: "residuals and duality gap below tolerance",
    INFEASIBLE: "equalities inconsistent or dual objective diverged",
    UNBOUNDED: "objective exceeded the divergence guard with feasible iterates",
    ITERATION_LIMIT: "iteration limit reached before certificates were met",
    NUMERICAL_FAILURE: "factorization or step computation broke down",
}

_DIVERGENCE_GUARD = 1e12


def _toeplitz(w: np.ndarray) -> np.ndarray:
    idx = np.abs(np.subtract.outer(np.arange(w.size), np.arange(w.size)))
    return w[idx]


def _skew(v: np.ndarray) -> np.ndarray:
    m = v.size + 1
    out = np.zeros((m, m))
    for k in range(1, m):
        idx = np.arange(m - k)
        out[idx, idx + k] = v[k - 1]
    return out - out.T


class ToeplitzForm:
    """z in R^{K+1} maps to the symmetric Toeplitz matrix with entry z[|k-l|]."""

    diagonal = False

    def __init__(self, order: int):
        if order < 0:
            raise ValueError("order must be >= 0")
        self.order = order
        self.dim = order + 1
        self.side = order + 1

    def mat(self, z: np.ndarray) -> np.ndarray:
        return _toeplitz(z)

    def adjoint(self, Y: np.ndarray) -> np.ndarray:
        out = np.empty(self.dim)
        out[0] = np.trace(Y)
        for k in range(1, self.dim):
            out[k] = 2.0 * Y.diagonal(k).sum()
        return out

    def scaled_basis(self, U: np.ndarray) -> np.ndarray:
        m = self.side
        out = np.empty((self.dim, m, m))
        out[0] = U @ U.T
        for k in range(1, self.dim):
            B = U[:, : m - k] @ U[:, k:].T
            out[k] = B + B.T
        return out

    def identity_z(self) -> np.ndarray:
        z = np.zeros(self.dim)
        z[0] = 1.0
        return z


class EmbeddedBlockForm:
    """z = (w, v) maps to [[W, V^T], [V, W]] with W Toeplitz and V skew.

    w has length K+1 and v length K, so dim = 2K+1 and the block side is
    2(K+1).
    """

    diagonal = False

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("order must be >= 1")
        self.order = order
        self.dim = 2 * order + 1
        self.side = 2 * (order + 1)

    def _parts(self, z):
        return z[: self.order + 1], z[self.order + 1:]

    def mat(self, z: np.ndarray) -> np.ndarray:
        w, v = self._parts(z)
        W = _toeplitz(w)
        V = _skew(v)
        return np.block([[W, V.T], [V, W]])

    def adjoint(self, Y: np.ndarray) -> np.ndarray:
        m1 = self.order + 1
        Y11 = Y[:m1, :m1]
        Y12 = Y[:m1, m1:]
        Y22 = Y[m1:, m1:]
        out = np.empty(self.dim)
        out[0] = np.trace(Y11) + np.trace(Y22)
        for k in range(1, m1):
            out[k] = 2.0 * (Y11.diagonal(k).sum() + Y22.diagonal(k).sum())
            out[self.order + k] = -2.0 * (Y12.diagonal(k).sum() - Y12.diagonal(-k).sum())
        return out

    def scaled_basis(self, U: np.ndarray) -> np.ndarray:
        m1 = self.order + 1
        U1 = U[:, :m1]
        U2 = U[:, m1:]
        out = np.empty((self.dim, self.side, self.side))
        out[0] = U1 @ U1.T + U2 @ U2.T
        for k in range(1, m1):
            B = U1[:, : m1 - k] @ U1[:, k:].T + U2[:, : m1 - k] @ U2[:, k:].T
            out[k] = B + B.T
            X = U1[:, : m1 - k] @ U2[:, k:].T - U1[:, k:] @ U2[:, : m1 - k].T
            out[self.order + k] = -(X + X.T)
        return out

    def identity_z(self) -> np.ndarray:
        z = np.zeros(self.dim)
        z[0] = 1.0
        return z


class DiagonalForm:
    """z maps to diag(z); the solver keeps this cone in vector form."""

    diagonal = True

    def __init__(self, size: int):
        if size < 1:
            raise ValueError("size must be >= 1")
        self.dim = size
        self.side = size

    def identity_z(self) -> np.ndarray:
        return np.ones(self.dim)


@dataclass(frozen=True)
class SdpProblem:
    """Problem data for `solve_sdp`; A may have zero rows (no equalities)."""

    b: np.ndarray
    A: np.ndarray
    a: np.ndarray
    form: object

    def __post_init__(self):
        b = np.atleast_1d(np.asarray(self.b, dtype=float))
        A = np.asarray(self.A, dtype=float)
        if A.size == 0:
            A = A.reshape(0, self.form.dim)
        A = np.atleast_2d(A)
        a = np.asarray(self.a, dtype=float).reshape(-1)
        if b.shape != (self.form.dim,):
            raise ValueError(f"objective has shape {b.shape}, expected ({self.form.dim},)")
        if A.shape[1] != self.form.dim or a.shape != (A.shape[0],):
            raise ValueError("equality block dimensions are inconsistent")
        if not (np.all(np.isfinite(b)) and np.all(np.isfinite(A)) and np.all(np.isfinite(a))):
            raise ValueError("problem data must be finite")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "a", a)

    @property
    def dim_w(self) -> int:
        return int(self.form.dim)

    @property
    def block_size(self) -> int:
        return int(self.form.side)


@dataclass
class SdpSolution:
    """Solver outcome with KKT certificates.

    For a diagonal form, `Y` holds the diagonal of the dual matrix rather
    than a dense m x m array (the LP reduction can have m ~ 1e5).
    """

    status: str
    w_opt: np.ndarray
    x_multipliers: np.ndarray
    Y: np.ndarray
    value: float
    dual_value: float
    gap: float
    residual_primal_eq: float
    residual_dual: float
    min_eig_lmi: float
    min_eig_dual: float
    iterations: int
    message: str
    history: list = field(default_factory=list, repr=False)


def min_eigenvalue(M) -> float:
    """Smallest eigenvalue of a symmetric matrix (checked to 1e-12 relative)."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square")
    scale = max(1.0, np.abs(M).max())
    if np.abs(M - M.T).max() > 1e-12 * scale:
        raise ValueError("matrix is not symmetric")
    return float(np.linalg.eigvalsh(M)[0])


def _presolve_equalities(A: np.ndarray, a: np.ndarray, rel_tol: float = 1e-10):
    """Select independent equality rows; detect structural inconsistency.

    Returns (keep_indices, consistent).  Dependent rows are dropped and
    their multipliers reported as zero.
    """
    m_eq = A.shape[0]
    if m_eq == 0:
        return np.empty(0, dtype=int), True
    _, R, piv = qr(A.T, mode="economic", pivoting=True)
    diag = np.abs(np.diagonal(R))
    if diag.size == 0 or diag[0] == 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(diag > rel_tol * diag[0]))
    keep = np.sort(piv[:rank])
    if rank < m_eq:
        sol, *_ = np.linalg.lstsq(A, a, rcond=None)
        if np.linalg.norm(A @ sol - a) > 1e-8 * (1.0 + np.linalg.norm(a)):
            return keep, False
    return keep, True


def _sym(M: np.ndarray) -> np.ndarray:
    return 0.5 * (M + M.T)


def _max_step_dense(L_inv: np.ndarray, D: np.ndarray) -> float:
    """Largest step alpha with P + alpha*D > 0, given P = L L^T and L_inv."""
    B = _sym(L_inv @ D @ L_inv.T)
    rho = np.linalg.eigvalsh(B)[0]
    if rho >= -1e-300:
        return np.inf
    return -1.0 / rho


def _max_step_diag(p: np.ndarray, d: np.ndarray) -> float:
    neg = d < 0
    if not np.any(neg):
        return np.inf
    return float(np.min(-p[neg] / d[neg]))


def solve_sdp(problem: SdpProblem, tol: float = 1e-8, max_iters: int = 200,
              log_stream=None) -> SdpSolution:
    """Run the interior-point method on an SdpProblem.

    Parameters
    ----------
    problem : SdpProblem
    tol : float
        Certificate tolerance for the relative equality residual, dual
        residual, and duality gap (1e-12 <= tol <= 1e-2).
    max_iters : int
    log_stream : file-like, optional
        Receives one line per iteration: iteration, primal obj, dual obj,
        gap, step lengths.

    Returns
    -------
    SdpSolution
        On status "optimal": gap <= tol, residual norms <= tol, minimum
        eigenvalues of M(z) and Y >= -tol, and |<M(z), Y>| <=
        10*tol*(1+|value|).
    """
    if not 1e-12 <= tol <= 1e-2:
        raise ValueError("tol must lie in [1e-12, 1e-2]")
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")
    form = problem.form
    diag = form.diagonal
    d = form.dim
    m = form.side

    keep, consistent = _presolve_equalities(problem.A, problem.a)
    A = problem.A[keep]
    a = problem.a[keep]
    b = problem.b
    m_eq_full = problem.A.shape[0]

    def expand_x(xk):
        full = np.zeros(m_eq_full)
        full[keep] = xk
        return full

    if not consistent:
        return SdpSolution(
            status=INFEASIBLE, w_opt=form.identity_z(), x_multipliers=np.zeros(m_eq_full),
            Y=np.ones(m) if diag else np.eye(m), value=np.nan, dual_value=np.nan,
            gap=np.inf, residual_primal_eq=np.inf, residual_dual=np.inf,
            min_eig_lmi=np.nan, min_eig_dual=np.nan, iterations=0,
            message="equality rows are structurally inconsistent",
        )

    norm_a = np.linalg.norm(a)
    norm_b = np.linalg.norm(b)
    m_eq = keep.size

    # homogeneous self-dual embedding: find (z, x, Y, tau, kappa) with
    #   A z - a tau = 0,  M*(Y) + A^T x - b tau = 0,  a.x + b.z - kappa = 0,
    #   M(z) >= 0, Y >= 0, tau >= 0, kappa >= 0,
    # driving <M(z), Y> + tau*kappa to zero.  tau > 0 at the limit gives the
    # optimum (z, x, Y)/tau; tau -> 0 with kappa > 0 certifies infeasibility
    # (a.x > 0) or unboundedness (b.z > 0).  The embedding always has a
    # strictly interior starting point, which is what makes moment programs
    # whose feasible set has (numerically) empty interior solvable here.
    z = form.identity_z()
    Y = np.ones(m) if diag else np.eye(m)
    x = np.zeros(m_eq)
    tau = 1.0
    kappa = 1.0

    status = ITERATION_LIMIT
    message = ""
    history: list[dict] = []
    it = 0
    metrics = None
    last_alpha = 0.0

    for it in range(1, max_iters + 1):
        if diag:
            S = z
            if np.any(S <= 0.0) or np.any(Y <= 0.0):
                status, message = NUMERICAL_FAILURE, "iterate left the positive orthant"
                break
            trace_SY = float(S @ Y)
        else:
            S = form.mat(z)
            try:
                L_S = np.linalg.cholesky(S)
                L_Y = np.linalg.cholesky(Y)
            except np.linalg.LinAlgError:
                status, message = NUMERICAL_FAILURE, "iterate left the PSD cone"
                break
            trace_SY = float(np.tensordot(S, Y))

        mu = (trace_SY + tau * kappa) / (m + 1)
        adj_Y = Y.copy() if diag else form.adjoint(Y)
        h_p = A @ z - a * tau
        h_d = adj_Y + A.T @ x + b * tau
        h_g = float((a @ x if m_eq else 0.0) + b @ z - kappa)

        pobj = float(b @ z) / tau
        dobj = float(-(a @ x)) / tau if m_eq else 0.0
        pinf = np.linalg.norm(h_p) / (tau * (1.0 + norm_a))
        dinf = np.linalg.norm(h_d) / (tau * (1.0 + norm_b))
        gap = abs(pobj - dobj) / (1.0 + abs(pobj) + abs(dobj))
        comp = trace_SY / (tau * tau * (1.0 + abs(pobj)))

        metrics = (pobj, dobj, gap, pinf, dinf)
        history.append({"iteration": it, "primal_obj": pobj, "dual_obj": dobj,
                        "gap": gap, "primal_res": pinf, "dual_res": dinf, "mu": mu,
                        "tau": tau, "kappa": kappa, "alpha": 0.0, "sigma": 0.0})
        if log_stream is not None:
            # step is the length of the move that produced this iterate
            log_stream.write(
                f"iter {it:3d}  pobj {pobj: .9e}  dobj {dobj: .9e}  "
                f"gap {gap:.3e}  pinf {pinf:.3e}  dinf {dinf:.3e}  "
                f"step {last_alpha:.3e}\n"
            )

        if pinf <= tol and dinf <= tol and gap <= tol and comp <= 5.0 * tol:
            status = OPTIMAL
            break
        if pobj > _DIVERGENCE_GUARD and pinf <= max(tol, 1e-9):
            status, message = UNBOUNDED, "primal objective diverged"
            break
        if dobj < -_DIVERGENCE_GUARD and dinf <= max(tol, 1e-9):
            status, message = INFEASIBLE, "dual objective diverged"
            break
        if tau <= 1e-2 * min(1.0, kappa) or tau < 1e-30:
            # ray certificates, normalized by the improving objective rate;
            # a fully collapsed path accepts a looser certificate rather
            # than underflowing
            cert_tol = tol if tau >= 1e-30 else max(tol, 1e-5)
            ray_p = float(b @ z)
            if ray_p > 0:
                resid = np.linalg.norm(A @ z) / ray_p
                if resid <= cert_tol * (1.0 + norm_a):
                    status, message = UNBOUNDED, "improving primal ray found"
                    break
            ray_d = float(a @ x) if m_eq else 0.0
            if ray_d > 0:
                resid = np.linalg.norm(A.T @ x + adj_Y) / ray_d
                if resid <= cert_tol * (1.0 + norm_b):
                    status, message = INFEASIBLE, "dual improving ray found"
                    break
            if tau < 1e-30:
                status, message = NUMERICAL_FAILURE, "homogenizing variable collapsed without a certificate"
                break

        # Nesterov-Todd scaling of the cone pair (S, Y)
        if diag:
            w_nt = np.sqrt(S / Y)
            lam = np.sqrt(S * Y)
            # bordered KKT with diagonal scaling is an arrowhead matrix;
            # a sparse LU keeps it cheap while preserving the rank
            # information that a normal-equation Schur complement loses
            # when the optimal support degenerates to a few points
            blocks = [[sparse_diags(Y / S), -A.T if m_eq else None, -b[:, None]]]
            if m_eq:
                blocks.append([A, None, -a[:, None]])
                blocks.append([b[None, :], a[None, :], [[kappa / tau]]])
            else:
                blocks.append([b[None, :], None, [[kappa / tau]]])
            kkt_sp = sparse_bmat(blocks, format="csc")
            try:
                with np.errstate(all="ignore"):
                    # natural column order keeps LU fill inside the border
                    # rows; fill-reducing orderings choke on the dense arrow
                    lu_sp = splu(kkt_sp, permc_spec="NATURAL")
            except (RuntimeError, ValueError):
                status, message = NUMERICAL_FAILURE, "KKT factorization failed"
                break
        else:
            try:
                _, lam, Vt = svd(L_Y.T @ L_S)
                L_S_inv = solve_triangular(L_S, np.eye(m), lower=True)
                L_Y_inv = solve_triangular(L_Y, np.eye(m), lower=True)
            except np.linalg.LinAlgError:
                status, message = NUMERICAL_FAILURE, "scaling factorization failed"
                break
            if lam[-1] <= 0.0:
                status, message = NUMERICAL_FAILURE, "scaling became singular"
                break
            R_inv = np.sqrt(lam)[:, None] * (Vt @ L_S_inv)
            Mt = form.scaled_basis(R_inv)
            G = _sym(np.einsum("kij,lij->kl", Mt, Mt, optimize=True))
            # bordered KKT of the embedding; one LU per iteration with one
            # round of iterative refinement per solve.  Solving the full
            # system avoids squaring the Gram conditioning through a Schur
            # complement when S nears the cone boundary.
            nk = d + m_eq + 1
            kkt = np.zeros((nk, nk))
            kkt[:d, :d] = G
            kkt[:d, -1] = -b
            kkt[-1, :d] = b
            if m_eq:
                kkt[:d, d:-1] = -A.T
                kkt[d:-1, :d] = A
                kkt[d:-1, -1] = -a
                kkt[-1, d:-1] = a
            kkt[-1, -1] = kappa / tau
            try:
                with np.errstate(all="ignore"):
                    lu_kkt = lu_factor(kkt)
                if not np.all(np.isfinite(lu_kkt[0])):
                    raise np.linalg.LinAlgError
            except (np.linalg.LinAlgError, ValueError):
                status, message = NUMERICAL_FAILURE, "KKT factorization failed"
                break

        def directions(rhs_c, rhs_tk):
            """Newton step of the embedding for scaled complementarity targets.

            rhs_c is the (S, Y) target in the scaled space, rhs_tk the
            (tau, kappa) target; returns the full direction tuple or None
            when the linear solve breaks down.
            """
            if diag:
                phi = rhs_c / S
                rhs_kkt = np.concatenate([phi + h_d, -h_p, [-h_g + rhs_tk / tau]])
                with np.errstate(all="ignore"):
                    sol_kkt = lu_sp.solve(rhs_kkt)
                    if not np.all(np.isfinite(sol_kkt)):
                        return None
                    sol_kkt += lu_sp.solve(rhs_kkt - kkt_sp @ sol_kkt)
                if not np.all(np.isfinite(sol_kkt)):
                    return None
                dz = sol_kkt[:m]
                dx = sol_kkt[m:-1]
                dtau = float(sol_kkt[-1])
                dY = (rhs_c - Y * dz) / S
                dkappa = (rhs_tk - kappa * dtau) / tau
                ds_scaled = dz / w_nt
                dy_scaled = dY * w_nt
                return dz, dx, dY, dtau, dkappa, ds_scaled, dy_scaled
            Phi = 2.0 * rhs_c / np.add.outer(lam, lam)
            phi = np.einsum("kij,ij->k", Mt, Phi, optimize=True)
            rhs_kkt = np.concatenate([phi + h_d, -h_p, [-h_g + rhs_tk / tau]])
            with np.errstate(all="ignore"):
                sol_kkt = lu_solve(lu_kkt, rhs_kkt, check_finite=False)
                if not np.all(np.isfinite(sol_kkt)):
                    return None
                sol_kkt += lu_solve(lu_kkt, rhs_kkt - kkt @ sol_kkt, check_finite=False)
            if not np.all(np.isfinite(sol_kkt)):
                return None
            dz = sol_kkt[:d]
            dx = sol_kkt[d:-1]
            dtau = float(sol_kkt[-1])
            dkappa = (rhs_tk - kappa * dtau) / tau
            ds_scaled = np.einsum("k,kij->ij", dz, Mt, optimize=True)
            dy_scaled = Phi - ds_scaled
            dY = _sym(R_inv.T @ dy_scaled @ R_inv)
            return dz, dx, dY, dtau, dkappa, ds_scaled, dy_scaled

        def max_step(dS, dY, dtau, dkappa):
            if diag:
                amax = min(_max_step_diag(S, dS), _max_step_diag(Y, dY))
            else:
                amax = min(_max_step_dense(L_S_inv, dS), _max_step_dense(L_Y_inv, dY))
            if dtau < 0:
                amax = min(amax, -tau / dtau)
            if dkappa < 0:
                amax = min(amax, -kappa / dkappa)
            return amax

        rhs_aff = -(lam * lam) if diag else np.diag(-(lam * lam))
        aff = directions(rhs_aff, -tau * kappa)
        if aff is None:
            status, message = NUMERICAL_FAILURE, "KKT solve failed"
            break
        dz_a, _, dY_a, dtau_a, dkap_a, ds_a, dy_a = aff
        dS_a = dz_a if diag else form.mat(dz_a)
        a_aff = min(1.0, 0.995 * max_step(dS_a, dY_a, dtau_a, dkap_a))
        if diag:
            tr_aff = float((S + a_aff * dS_a) @ (Y + a_aff * dY_a))
        else:
            tr_aff = float(np.tensordot(S + a_aff * dS_a, Y + a_aff * dY_a))
        mu_aff = max(tr_aff + (tau + a_aff * dtau_a) * (kappa + a_aff * dkap_a), 0.0) / (m + 1)
        sigma = min(0.99, max(1e-8, (mu_aff / mu) ** 3))

        if diag:
            rhs_cc = sigma * mu - lam * lam - ds_a * dy_a
        else:
            rhs_cc = np.diag(sigma * mu - lam * lam) - _sym(ds_a @ dy_a)
        fin = directions(rhs_cc, sigma * mu - tau * kappa - dtau_a * dkap_a)
        if fin is None:
            status, message = NUMERICAL_FAILURE, "KKT solve failed"
            break
        dz, dx, dY, dtau, dkappa, _, _ = fin
        dS = dz if diag else form.mat(dz)
        alpha = min(1.0, 0.99 * max_step(dS, dY, dtau, dkappa))
        if alpha < 1e-10:
            status, message = NUMERICAL_FAILURE, "step length underflow"
            break

        z = z + alpha * dz
        x = x + alpha * dx
        Y = Y + alpha * dY if diag else _sym(Y + alpha * dY)
        tau = tau + alpha * dtau
        kappa = kappa + alpha * dkappa
        history[-1].update(alpha=alpha, sigma=sigma)
        last_alpha = alpha

    pobj, dobj, gap, pinf, dinf = metrics if metrics is not None else (np.nan,) * 5

    if status in (OPTIMAL, ITERATION_LIMIT, NUMERICAL_FAILURE):
        z_out = z / tau
        x_out = x / tau
        Y_out = Y / tau
        value, dual_value = pobj, dobj
    else:
        # certificate rays are reported unnormalized; objective values keep
        # the de-homogenized trend that triggered the classification
        z_out, x_out, Y_out = z, x, Y
        value = pobj if status == UNBOUNDED else np.nan
        dual_value = dobj if status == INFEASIBLE else np.nan

    if diag:
        min_eig_S = float(np.min(z_out))
        min_eig_Y = float(np.min(Y_out))
    else:
        min_eig_S = float(np.linalg.eigvalsh(form.mat(z_out))[0])
        min_eig_Y = float(np.linalg.eigvalsh(_sym(Y_out))[0])

    return SdpSolution(
        status=status,
        w_opt=z_out,
        x_multipliers=expand_x(x_out),
        Y=Y_out,
        value=value,
        dual_value=dual_value,
        gap=gap,
        residual_primal_eq=pinf,
        residual_dual=dinf,
        min_eig_lmi=min_eig_S,
        min_eig_dual=min_eig_Y,
        iterations=it,
        message=message or TERMINATION_MESSAGES[status],
        history=history,
    )


class LpResult(NamedTuple):
    x: np.ndarray
    value: float
    status: str


def solve_lp(c_lp, A_ub, b_ub, tol: float = 1e-8, max_iters: int = 200) -> LpResult:
    """Minimize c_lp . x subject to A_ub x <= b_ub.

    Implemented by reduction to `solve_sdp` with a diagonal LMI block: the
    solved program is the inequality form's dual, max -b_ub.z subject to
    A_ub^T z = -c_lp and z >= 0, whose equality multipliers are the
    minimizer x.  Statuses map accordingly: an unbounded reduced program
    means the inequalities are infeasible, an infeasible reduced program
    means the objective is unbounded below.  For an unbounded LP the
    returned x is an improving ray: c_lp . x < 0 with A_ub x <= 0 up to
    the certificate tolerance.
    """
    c_lp = np.atleast_1d(np.asarray(c_lp, dtype=float))
    A_ub = np.atleast_2d(np.asarray(A_ub, dtype=float))
    b_ub = np.atleast_1d(np.asarray(b_ub, dtype=float))
    if A_ub.shape != (b_ub.size, c_lp.size):
        raise ValueError(f"A_ub has shape {A_ub.shape}, expected ({b_ub.size}, {c_lp.size})")

    problem = SdpProblem(b=-b_ub, A=A_ub.T, a=-c_lp, form=DiagonalForm(b_ub.size))
    sol = solve_sdp(problem, tol=tol, max_iters=max_iters)
    if sol.status == OPTIMAL:
        x = sol.x_multipliers
        return LpResult(x=x, value=float(c_lp @ x), status=OPTIMAL)
    if sol.status == UNBOUNDED:
        return LpResult(x=np.full(c_lp.size, np.nan), value=np.nan, status=INFEASIBLE)
    if sol.status == INFEASIBLE:
        return LpResult(x=sol.x_multipliers, value=-np.inf, status=UNBOUNDED)
    return LpResult(x=sol.x_multipliers, value=float(c_lp @ sol.x_multipliers), status=sol.status)
