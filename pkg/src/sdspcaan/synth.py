"""Synthetic data and brute-force oracles.

These live in the library (not only in the test tree) so that
`sdspcaan fit --verify` can cross-check a fitted graph on small
instances: the closed-form simplex rows against an iterative QP solver,
and eigenvalue-counted components against union-find.
"""

from dataclasses import dataclass

import numpy as np

from .util import Array, as_matrix, one_hot


class OracleError(RuntimeError):
    """An oracle failed to converge; a test-infrastructure failure."""


@dataclass(frozen=True)
class BlobSpec:
    """Gaussian class clusters for desk-scale benchmarks.

    Class means are mutually `separation` apart (in units of the
    within-class standard deviation) inside the informative subspace;
    the remaining d_noise features are pure noise with standard
    deviation noise_scale.  shuffle_features applies a seeded column
    permutation so the informative features are not the leading ones.
    """

    n_per_class: int
    c: int
    d_informative: int
    d_noise: int
    separation: float
    seed: int
    noise_scale: float = 1.0
    shuffle_features: bool = False


def make_blobs(spec: BlobSpec) -> tuple[Array, Array]:
    """Draw (X, Y) per the spec; deterministic for a fixed seed."""
    if spec.c < 1 or spec.n_per_class < 1:
        raise ValueError("need at least one class and one sample per class")
    if spec.separation < 0:
        raise ValueError("separation must be nonnegative")
    if spec.d_informative < max(1, spec.c - 1):
        raise ValueError(
            f"d_informative must be >= {max(1, spec.c - 1)} to hold "
            f"{spec.c} equidistant class means"
        )
    rng = np.random.default_rng(spec.seed)
    n = spec.n_per_class * spec.c
    labels = np.repeat(np.arange(spec.c), spec.n_per_class)

    # Regular simplex of c means, pairwise distance = separation, centered.
    verts = np.eye(spec.c) - 1.0 / spec.c
    coords = np.linalg.svd(verts, full_matrices=False)[0][:, : spec.c - 1]
    if spec.c > 1:
        coords = coords * (spec.separation / np.sqrt(2.0))
        basis = np.linalg.qr(
            rng.standard_normal((spec.d_informative, spec.c - 1))
        )[0]
        means = coords @ basis.T
    else:
        means = np.zeros((1, spec.d_informative))

    X_inf = means[labels] + rng.standard_normal((n, spec.d_informative))
    X_noise = spec.noise_scale * rng.standard_normal((n, spec.d_noise))
    X = np.hstack([X_inf, X_noise])
    if spec.shuffle_features:
        X = X[:, rng.permutation(X.shape[1])]
    return X, one_hot(labels, spec.c)


def _project_simplex(v: Array) -> Array:
    """Euclidean projection onto the probability simplex (sort-based)."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    rho = np.flatnonzero(u * np.arange(1, v.size + 1) > css - 1.0)[-1]
    theta = (css[rho] - 1.0) / (rho + 1.0)
    return np.maximum(v - theta, 0.0)


def qp_simplex_oracle(d, gamma: float, max_iter: int = 20000) -> Array:
    """Iteratively solve  min gamma*||s||^2 + d.T s  over the simplex.

    Projected gradient with diminishing steps, run until the duality gap
    drops below 1e-10.  Independent of the closed-form row update it is
    used to check.
    """
    d = np.asarray(d, dtype=float)
    if d.ndim != 1 or d.size < 1:
        raise ValueError("d must be a nonempty vector")
    if not np.all(np.isfinite(d)):
        raise ValueError("d must be finite")
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    s = np.full(d.size, 1.0 / d.size)
    step0 = 1.0 / (2.0 * gamma)
    for t in range(1, max_iter + 1):
        step = step0 / (1.0 + t / 50.0)
        s = _project_simplex(s - step * (2.0 * gamma * s + d))
        primal = gamma * (s @ s) + d @ s
        # Weighted mean of the KKT stationarity values as the dual estimate.
        eta = 2.0 * gamma * (s @ s) + d @ s
        dual = eta - ((np.maximum(eta - d, 0.0) ** 2).sum()) / (4.0 * gamma)
        if primal - dual <= 1e-10:
            return s
    raise OracleError(
        f"projected gradient did not reach a 1e-10 duality gap in {max_iter} steps"
    )


def count_components(S, edge_tol: float = 0.0) -> int:
    """Number of connected components of the graph with edges S_ij > edge_tol."""
    S = as_matrix(S, "S")
    if S.shape[0] != S.shape[1]:
        raise ValueError(f"S must be square, got shape {S.shape}")
    n = S.shape[0]
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    rows, cols = np.nonzero(S > edge_tol)
    for i, j in zip(rows.tolist(), cols.tolist()):
        if i == j:
            continue
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    return len({find(i) for i in range(n)})
