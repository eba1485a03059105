"""Residuals, operator norms and essential-norm surrogates."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.sparse.linalg as spla
from scipy.linalg import eigh_tridiagonal

from .expr import FOCK, TensorExpression
from .operator import CompiledOperator, Space, interior_limits, random_vectors


class NormNotConverged(RuntimeWarning):
    pass


@dataclass(frozen=True)
class NormEstimate:
    value: float
    iterations: int
    converged: bool

    def __float__(self) -> float:
        return self.value


def _masked(op, mask):
    if mask is None:
        return op.matvec, op.rmatvec
    m = mask

    def mv(x):
        return np.where(m, op.matvec(np.where(m, x, 0)), 0)

    def rmv(x):
        return np.where(m, op.rmatvec(np.where(m, x, 0)), 0)

    return mv, rmv


def power_norm(op, *, mask=None, rtol=1e-10, maxiter=20000, seed=0) -> NormEstimate:
    """Largest singular value of ``op`` (compressed to ``mask``) by power iteration on ``A* A``.

    ``op`` needs ``matvec``, ``rmatvec`` and ``space``.  The returned value is
    ``max_k ||A x_k||`` over unit iterates, hence always a lower bound.
    """
    space = op.space
    mv, rmv = _masked(op, mask)
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(space.dims) + 1j * rng.standard_normal(space.dims)
    if mask is not None:
        x = np.where(mask, x, 0)
    nx = np.linalg.norm(x)
    if nx == 0:
        return NormEstimate(0.0, 0, True)
    x = x / nx
    best = 0.0
    lam_prev = None
    for it in range(1, maxiter + 1):
        y = mv(x)
        lam = float(np.vdot(y, y).real)
        best = max(best, lam)
        z = rmv(y)
        nz = np.linalg.norm(z)
        if nz == 0 or lam == 0:
            return NormEstimate(float(np.sqrt(best)), it, True)
        # eigen-residual of A*A at the current Rayleigh quotient
        res = np.linalg.norm(z - lam * x)
        x = z / nz
        if lam_prev is not None and abs(lam - lam_prev) <= rtol * lam and res <= np.sqrt(rtol) * lam:
            return NormEstimate(float(np.sqrt(best)), it, True)
        lam_prev = lam
    return NormEstimate(float(np.sqrt(best)), maxiter, False)


#: below this many active basis vectors the norm is taken from a dense Hermitian eigensolve
DENSE_LIMIT = 400
#: Krylov dimension of the eigenvalue-only Lanczos pass
KRYLOV_MAX = 400
#: a full Krylov pass counts as converged if the top Ritz value moved by at most
#: ``SETTLE_RTOL`` (relative) over the last ``SETTLE_WINDOW`` steps
SETTLE_WINDOW = 100
SETTLE_RTOL = 1e-7


def _lanczos_top(gram, v0: np.ndarray, kmax: int, rtol: float, check: int = 5):
    """Top Ritz pair of a Hermitian PSD operator; full reorthogonalization.

    Stops when the top Ritz value stagnates to ``rtol`` or the Krylov space
    becomes invariant; after ``kmax`` steps the slower settling rule applies.  Ritz values interlace, so the value never overshoots.
    """
    n = v0.size
    kmax = min(kmax, n)
    V = np.zeros((kmax + 1, n), dtype=complex)
    alpha: list[float] = []
    beta: list[float] = []
    V[0] = v0 / np.linalg.norm(v0)
    prev = None
    theta, y = 0.0, np.ones(1)
    history: list[tuple[int, float]] = []
    for k in range(kmax):
        w = gram(V[k])
        a = float(np.vdot(V[k], w).real)
        alpha.append(a)
        basis = V[:k + 1]
        for _ in range(2):
            # conjugating the vector instead of the basis avoids an O(kn) copy
            w = w - (basis @ w.conj()).conj() @ basis
        b = float(np.linalg.norm(w))
        invariant = b <= 1e-14 * max(abs(a), 1.0)
        if invariant or (k + 1) % check == 0 or k + 1 == kmax:
            vals, vecs = eigh_tridiagonal(np.array(alpha), np.array(beta), select="i", select_range=(k, k))
            theta, y = float(vals[-1]), vecs[:, -1]
            history.append((k + 1, theta))
            if invariant or (prev is not None and abs(theta - prev) <= rtol * abs(theta)):
                return theta, y @ basis, k + 1, True
            prev = theta
        if invariant:
            break
        beta.append(b)
        V[k + 1] = w / b
    ritz = y @ V[:y.size]
    # clustered tops creep upward slowly; accept once the value has settled
    earlier = [t for s, t in history if s <= kmax - SETTLE_WINDOW]
    settled = bool(earlier) and theta - earlier[-1] <= SETTLE_RTOL * abs(theta)
    return theta, ritz, kmax, settled


def lanczos_norm(op, *, mask=None, rtol=1e-10, maxiter=20000, seed=0) -> NormEstimate:
    """Largest singular value from a Lanczos pass on ``A* A``.

    Small problems are solved densely.  If the top Ritz value has not settled
    after ``KRYLOV_MAX`` steps, a short ARPACK run refines it from the best
    Ritz vector.
    Every returned value is a Ritz value, hence a lower bound like
    :func:`power_norm`.
    """
    space = op.space
    mv, rmv = _masked(op, mask)
    active = np.flatnonzero(np.ones(space.dims, bool) if mask is None else mask)
    n = active.size
    if n == 0:
        return NormEstimate(0.0, 0, True)
    dims = space.dims

    def gram(x_active):
        x = np.zeros(space.size, dtype=complex)
        x[active] = x_active
        return rmv(mv(x.reshape(dims))).ravel()[active]

    if n <= DENSE_LIMIT:
        G = np.column_stack([gram(np.eye(n, dtype=complex)[:, k]) for k in range(n)])
        lam = float(np.linalg.eigvalsh((G + G.conj().T) / 2)[-1])
        return NormEstimate(float(np.sqrt(max(lam, 0.0))), n, True)
    rng = np.random.default_rng(seed)
    v0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    theta, ritz, steps, ok = _lanczos_top(gram, v0, KRYLOV_MAX, rtol * 1e-3)
    if ok:
        return NormEstimate(float(np.sqrt(max(theta, 0.0))), steps, True)
    L = spla.LinearOperator((n, n), matvec=gram, dtype=complex)
    try:
        vals = spla.eigsh(L, k=1, which="LA", v0=ritz, tol=rtol, ncv=min(n - 1, 60),
                          maxiter=min(maxiter, 50), return_eigenvectors=False)
        theta = max(theta, float(vals[-1]))
        return NormEstimate(float(np.sqrt(max(theta, 0.0))), steps, True)
    except spla.ArpackNoConvergence as exc:
        if len(exc.eigenvalues):
            theta = max(theta, float(np.max(exc.eigenvalues)))
        return NormEstimate(float(np.sqrt(max(theta, 0.0))), steps + maxiter, False)


def estimate_norm(op, *, mask=None, method="lanczos", **kw) -> NormEstimate:
    if method == "lanczos":
        return lanczos_norm(op, mask=mask, **kw)
    if method == "power":
        return power_norm(op, mask=mask, **kw)
    raise ValueError(f"unknown norm method {method!r}")


def _report(est: NormEstimate, what: str) -> float:
    if not est.converged:
        warnings.warn(f"{what}: norm iteration did not converge; best lower bound {est.value:.6g}",
                      NormNotConverged, stacklevel=3)
    return est.value


def operator_norm(e: TensorExpression, q: float, N: int, grid: int = 8, *, rtol: float = 1e-10,
                  maxiter: int = 20000, seed: int = 0, method: str = "lanczos") -> float:
    op = CompiledOperator(e, q, Space(e.kinds, N, grid))
    return _report(estimate_norm(op, method=method, rtol=rtol, maxiter=maxiter, seed=seed), "operator_norm")


def essential_norm_estimate(e: TensorExpression, q: float, N: int, cut: int, grid: int = 8, *,
                            rtol: float = 1e-10, maxiter: int = 20000, seed: int = 0,
                            method: str = "lanczos") -> float:
    """``||Q e Q||`` with ``Q`` the projection onto basis vectors having some Fock index ``>= cut``."""
    if not 0 <= cut < N:
        raise ValueError(f"cut must satisfy 0 <= cut < N, got cut={cut}, N={N}")
    space = Space(e.kinds, N, grid)
    op = CompiledOperator(e, q, space)
    mask = space.tail_mask(cut)
    if not mask.any():
        return 0.0
    est = estimate_norm(op, mask=mask, method=method, rtol=rtol, maxiter=maxiter, seed=seed)
    return _report(est, "essential_norm_estimate")


def essential_norm_schedule(e: TensorExpression, q: float, N: int, cuts, grid: int = 8, **kw) -> dict[int, float]:
    return {c: essential_norm_estimate(e, q, N, c, grid, **kw) for c in cuts}


def residual(e: TensorExpression, q: float, N: int, *, trials: int = 4, grid: int = 8, seed: int = 0,
             band=None) -> float:
    """Largest ``||e v|| / ||v||`` over seeded random interior vectors."""
    if e.is_zero():
        return 0.0
    space = Space(e.kinds, N, grid)
    op = CompiledOperator(e, q, space)
    mask = space.fock_mask(interior_limits(band if band is not None else e, space))
    rng = np.random.default_rng(seed)
    worst = 0.0
    for v in random_vectors(space, trials, rng, mask):
        worst = max(worst, float(np.linalg.norm(op.matvec(v)) / np.linalg.norm(v)))
    return worst


def num_equal(a: TensorExpression, b: TensorExpression, q: float, N: int, trials: int = 4,
              tol: float = 1e-10, *, grid: int = 8, seed: int = 0) -> bool:
    """Semantic equality on interior vectors; symbolic equality short-circuits."""
    if a == b:
        return True
    try:
        r = residual(a - b, q, N, trials=trials, grid=grid, seed=seed)
    except ValueError:
        return False
    return bool(np.isfinite(r) and r <= tol)


def dq_series_check(q: float, N: int, K: int) -> float:
    """``|| d_q - sum_{j<K} q^j S^j P S*^j ||`` on the ``N``-truncation."""
    if K > N:
        raise ValueError("K must not exceed N")
    from .laurent import LaurentScalar

    partial = TensorExpression.zero((FOCK,))
    for j in range(K):
        partial = partial + TensorExpression.fock(("S",) * j + ("P",) + ("Sd",) * j,
                                                  coeff=LaurentScalar.monomial(j))
    return operator_norm(TensorExpression.fock("Dq") - partial, q, N)
