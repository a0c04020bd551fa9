"""Jacobi-preconditioned conjugate gradients with a direct fallback."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix, issparse
from scipy.sparse.linalg import spsolve

from ..errors import InvalidParameterError, NonConvergenceError

logger = logging.getLogger(__name__)

SparseSym = csr_matrix  # square, symmetric, positive diagonal


@dataclass
class SolveStats:
    iterations: int
    residual: float
    seconds: float
    method: str = "pcg"
    converged: bool = True


def as_sparse_sym(A) -> SparseSym:
    """Square CSR matrix with a positive diagonal."""
    A = csr_matrix(A) if not issparse(A) else A.tocsr()
    if A.shape[0] != A.shape[1]:
        raise InvalidParameterError(f"matrix must be square, got {A.shape}")
    if A.shape[0] and np.any(A.diagonal() <= 0.0):
        raise InvalidParameterError("matrix diagonal must be positive")
    return A


def pcg_solve(
    A: SparseSym,
    b: np.ndarray,
    tol: float = 1e-10,
    maxit: Optional[int] = None,
    x0: Optional[np.ndarray] = None,
    callback: Optional[Callable[[np.ndarray], None]] = None,
) -> Tuple[np.ndarray, SolveStats]:
    """Solve A x = b to ||b - A x|| <= tol * ||b||.

    Raises
    ------
    NonConvergenceError
        If maxit iterations do not reach the tolerance
    """
    if not tol > 0:
        raise InvalidParameterError(f"tol must be positive, got {tol}")
    A = as_sparse_sym(A)
    b = np.asarray(b, dtype=float)
    n = b.size
    if maxit is None:
        maxit = max(1, int(math.ceil(50.0 * math.sqrt(max(n, 1)))))
    start = time.perf_counter()
    bnorm = float(np.linalg.norm(b))
    if bnorm == 0.0:
        return np.zeros(n), SolveStats(0, 0.0, time.perf_counter() - start)

    dinv = 1.0 / A.diagonal()
    x = np.zeros(n) if x0 is None else np.array(x0, dtype=float)
    r = b - A @ x
    z = dinv * r
    p = z.copy()
    rz = float(r @ z)
    res = float(np.linalg.norm(r)) / bnorm
    k = 0
    while res > tol and k < maxit:
        Ap = A @ p
        alpha = rz / float(p @ Ap)
        x += alpha * p
        r -= alpha * Ap
        k += 1
        if callback is not None:
            callback(x)
        res = float(np.linalg.norm(r)) / bnorm
        if res <= tol:
            # recursive residual drifts; accept only on the true one
            r = b - A @ x
            res = float(np.linalg.norm(r)) / bnorm
            if res <= tol:
                break
            z = dinv * r
            p = z.copy()
            rz = float(r @ z)
            continue
        z = dinv * r
        rz_new = float(r @ z)
        p = z + (rz_new / rz) * p
        rz = rz_new

    stats = SolveStats(k, res, time.perf_counter() - start, converged=res <= tol)
    if not stats.converged:
        raise NonConvergenceError(
            f"PCG did not converge in {k} iterations (relative residual {res:.3e} > {tol:.1e})", stats
        )
    logger.debug("PCG converged: %d iterations, residual %.3e, %.2fs", k, res, stats.seconds)
    return x, stats


def _direct(A: SparseSym, b: np.ndarray) -> Tuple[np.ndarray, SolveStats]:
    start = time.perf_counter()
    A = as_sparse_sym(A)
    x = spsolve(A.tocsc(), b) if b.size else np.zeros(0)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    bnorm = float(np.linalg.norm(b))
    res = float(np.linalg.norm(b - A @ x)) / bnorm if bnorm else 0.0
    return x, SolveStats(1, res, time.perf_counter() - start, method="direct")


def solve_spd(
    A,
    b: np.ndarray,
    method: str = "auto",
    tol: float = 1e-10,
    maxit_factor: float = 50.0,
    maxit: Optional[int] = None,
) -> Tuple[np.ndarray, SolveStats]:
    """Dispatch to PCG, a sparse direct solve, or PCG with direct fallback."""
    if method not in ("cg", "direct", "auto"):
        raise InvalidParameterError(f"unknown solver method {method!r}")
    if method == "direct":
        return _direct(A, b)
    if maxit is None:
        maxit = max(1, int(math.ceil(maxit_factor * math.sqrt(max(np.size(b), 1)))))
    try:
        return pcg_solve(A, b, tol=tol, maxit=maxit)
    except NonConvergenceError as exc:
        if method == "cg":
            raise
        logger.warning("%s; falling back to a direct sparse solve", exc)
        return _direct(A, b)
