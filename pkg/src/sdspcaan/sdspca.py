"""Supervised discriminative sparse PCA.

Alternating closed-form updates: with the orthonormal factor Q fixed,
W = X.T @ Q and G = Y.T @ Q are exact; with them substituted back, Q is
the k trailing eigenvectors of Z = -X @ X.T - alpha * Y @ Y.T + beta * D,
where D is the diagonal row-reweighting that majorizes the L2,1 penalty.
No step involves a matrix inversion.
"""

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .pca import FitDiagnostics, ReductionModel
from .util import Array, ensure_centered, ensure_one_hot

EPS_DEFAULT = 2.0**-52


@dataclass(frozen=True)
class SdspcaParams:
    k: int
    alpha: float
    beta: float
    eps: float = EPS_DEFAULT
    tol: float = 1e-3
    T: int = 500

    def validate(self) -> None:
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be nonnegative")
        if self.eps <= 0 or self.tol <= 0:
            raise ValueError("eps and tol must be positive")
        if self.T < 1:
            raise ValueError("T must be at least 1")


@dataclass
class SdspcaState:
    """Loop state: orthonormal Q, reweighting D, cached Z0, and the
    closed-form W = X.T Q, G = Y.T Q."""

    Q: Array
    D: Array
    Z0: Array
    G: Array | None = None
    W: Array | None = None


def sdspca_objective(X, Y, Q, alpha: float, beta: float) -> float:
    """Reconstruction + label + row-sparsity objective at the closed-form
    optima of W and G:

        ||X - Q Q.T X||_F^2 + alpha ||Y - Q Q.T Y||_F^2 + beta ||Q||_2,1
    """
    Q = np.asarray(Q, dtype=float)
    gram = Q.T @ Q
    if not np.allclose(gram, np.eye(Q.shape[1]), atol=1e-8):
        raise ValueError("Q must have orthonormal columns")
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    rx = X - Q @ (Q.T @ X)
    ry = Y - Q @ (Q.T @ Y)
    return float((rx**2).sum() + alpha * (ry**2).sum() + beta * linalg.l21_norm(Q))


def _sdspca_loop(
    X: Array, Y: Array, params: SdspcaParams
) -> tuple[SdspcaState, FitDiagnostics]:
    n = X.shape[0]
    state = SdspcaState(
        Q=np.zeros((n, params.k)),
        D=np.eye(n),
        Z0=-(X @ X.T) - params.alpha * (Y @ Y.T),
    )
    diag = FitDiagnostics(converged=False)
    for _ in range(params.T):
        Z = state.Z0 + params.beta * state.D
        Q = linalg.trailing_eigvecs(Z, params.k)
        diag.n_iter += 1
        diag.objective_trace.append(
            sdspca_objective(X, Y, Q, params.alpha, params.beta)
        )
        if np.abs(Q - state.Q).sum() < params.tol:
            state.Q = Q
            diag.converged = True
            break
        state.D = linalg.reweight_diag(Q, params.eps)
        state.Q = Q
    state.W = X.T @ state.Q
    state.G = Y.T @ state.Q
    return state, diag


def fit_sdspca(X, Y, params: SdspcaParams) -> ReductionModel:
    """Fit on centered X with one-hot labels Y; W = X.T @ Q on exit.

    Stops when the entrywise L1 change of Q falls below tol (stable under
    the deterministic eigenvector signs) or after T iterations, in which
    case diagnostics.converged stays False.
    """
    params.validate()
    X = ensure_centered(X)
    Y = ensure_one_hot(Y)
    if Y.shape[0] != X.shape[0]:
        raise ValueError("X and Y must have the same number of rows")
    n, d = X.shape
    if not 1 <= params.k <= min(n, d):
        raise ValueError(f"k must be in [1, {min(n, d)}], got {params.k}")
    state, diag = _sdspca_loop(X, Y, params)
    return ReductionModel(W=state.W, k=params.k, Q=state.Q, diagnostics=diag)
