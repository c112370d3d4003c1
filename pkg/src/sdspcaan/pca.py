"""Baseline linear reducers: classic PCA, its sample-space variant, and
the identity-projection baseline.

Classic PCA keeps the k leading eigenvectors of X.T @ X.  The variant
optimizes an n-by-k orthonormal factor Q over the sample-side Gram
matrix X @ X.T and maps back with W = X.T @ Q, which scales each PCA
column by its singular value; after per-column standardization of the
scores the two are identical.
"""

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .util import Array, ensure_centered


@dataclass
class FitDiagnostics:
    objective_trace: list = field(default_factory=list)
    lambda_trace: list = field(default_factory=list)
    n_iter: int = 0
    converged: bool = True


@dataclass
class ReductionModel:
    """A learned projection W (d-by-k) with optional sample-side factor Q."""

    W: Array
    k: int
    Q: Array | None = None
    diagnostics: FitDiagnostics = field(default_factory=FitDiagnostics)


def _check_k(k: int, n: int, d: int) -> None:
    if not 1 <= k <= min(n, d):
        raise ValueError(f"k must be in [1, {min(n, d)}], got {k}")


def _gram_eigvecs(X: Array, k: int, side: str) -> Array:
    """k leading eigenvectors of X.T @ X (side='feature') or X @ X.T
    (side='sample'), computed through whichever Gram matrix is smaller.

    Rank-deficient leading eigenvalues are completed with a deterministic
    orthonormal basis of the complement so the result always has k
    orthonormal columns.
    """
    n, d = X.shape
    small_is_feature = d <= n
    G = X.T @ X if small_is_feature else X @ X.T
    spectrum = linalg.sym_eig(G)
    w = spectrum.eigenvalues[::-1][:k]
    V = spectrum.eigenvectors[:, ::-1][:, :k]
    if (side == "feature") == small_is_feature:
        return V
    # Convert across the two Gram matrices: v = X.T u / sigma (or X v / sigma).
    mapper = X.T if side == "feature" else X
    dim = mapper.shape[0]
    tol = max(w[0], 0.0) * max(n, d) * np.finfo(float).eps
    cols = []
    for j in range(k):
        if w[j] > tol:
            cols.append(mapper @ V[:, j] / np.sqrt(w[j]))
    W = np.empty((dim, k))
    if cols:
        W[:, : len(cols)] = np.column_stack(cols)
    if len(cols) < k:
        # Null directions: complete with QR against the converted columns.
        basis = np.column_stack(cols + [np.eye(dim)]) if cols else np.eye(dim)
        Q_full = np.linalg.qr(basis)[0]
        W[:, len(cols) :] = Q_full[:, len(cols) : k]
    return linalg.deterministic_signs(W)


def fit_pca(X, k: int) -> ReductionModel:
    """Classic PCA on a column-mean-centered X; W.T @ W = I_k."""
    X = ensure_centered(X)
    n, d = X.shape
    _check_k(k, n, d)
    W = _gram_eigvecs(X, k, side="feature")
    return ReductionModel(W=W, k=k)


def fit_vpca(X, k: int) -> ReductionModel:
    """Variant PCA: Q from the sample-side Gram matrix, W = X.T @ Q."""
    X = ensure_centered(X)
    n, d = X.shape
    _check_k(k, n, d)
    Q = _gram_eigvecs(X, k, side="sample")
    return ReductionModel(W=X.T @ Q, k=k, Q=Q)


def fit_baseline(d: int, k: int) -> ReductionModel:
    """Identity projection: the first k of d features pass through."""
    if not 1 <= k <= d:
        raise ValueError(f"k must be in [1, {d}], got {k}")
    return ReductionModel(W=np.eye(d, k), k=k)


def transform(model: ReductionModel, X_new) -> Array:
    """Project rows of X_new (centered with the training mean) by model.W."""
    X_new = np.asarray(X_new, dtype=float)
    if X_new.ndim != 2 or X_new.shape[1] != model.W.shape[0]:
        raise ValueError(
            f"X_new must have {model.W.shape[0]} columns, got shape {X_new.shape}"
        )
    return X_new @ model.W
