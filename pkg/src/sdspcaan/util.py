"""Small shared helpers: input validation and label encoding."""

import numpy as np

Array = np.ndarray


def as_matrix(A, name="matrix") -> Array:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {A.shape}")
    return A


def ensure_finite(A, name="matrix") -> Array:
    A = np.asarray(A, dtype=float)
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} contains non-finite entries")
    return A


def ensure_centered(X, atol=1e-8) -> Array:
    """Require column means of X to be zero within atol."""
    X = as_matrix(X, "X")
    ensure_finite(X, "X")
    worst = float(np.max(np.abs(X.mean(axis=0)))) if X.size else 0.0
    if worst > atol:
        raise ValueError(
            f"X must be column-mean-centered (max |column mean| = {worst:.3e})"
        )
    return X


def ensure_one_hot(Y) -> Array:
    """Require Y to be a one-hot matrix with every class represented."""
    Y = as_matrix(Y, "Y")
    if not np.all((Y == 0.0) | (Y == 1.0)):
        raise ValueError("Y must contain only 0/1 entries")
    if not np.all(Y.sum(axis=1) == 1.0):
        raise ValueError("every row of Y must have exactly one 1")
    counts = Y.sum(axis=0)
    if np.any(counts == 0):
        empty = np.flatnonzero(counts == 0).tolist()
        raise ValueError(f"classes {empty} have no samples")
    return Y


def one_hot(labels, c=None) -> Array:
    """Encode integer labels 0..c-1 as an n-by-c one-hot matrix."""
    labels = np.asarray(labels)
    if labels.ndim != 1:
        raise ValueError("labels must be 1-D")
    if labels.size and labels.min() < 0:
        raise ValueError("labels must be nonnegative")
    if c is None:
        c = int(labels.max()) + 1 if labels.size else 0
    if labels.size and labels.max() >= c:
        raise ValueError(f"label {labels.max()} out of range for {c} classes")
    Y = np.zeros((labels.size, c))
    Y[np.arange(labels.size), labels] = 1.0
    return Y


def labels_of(Y) -> Array:
    """Integer class ids from a one-hot matrix."""
    return np.argmax(np.asarray(Y), axis=1)
