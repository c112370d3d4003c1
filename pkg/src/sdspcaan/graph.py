"""Adaptive-neighbor similarity learning.

Each row of the similarity matrix solves a small quadratic program over
the probability simplex,

    min_s  gamma * ||s||^2 + d.T @ s    s.t.  s.T @ 1 = 1, s >= 0,

whose closed form keeps mass on the m nearest candidates only.  The
per-row gamma is chosen so that exactly m entries stay positive, and a
doubling/halving weight drives the Laplacian of the learned graph toward
c zero eigenvalues, i.e. exactly c connected components.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .util import Array, as_matrix

LAMBDA_MIN = 1e-8
LAMBDA_MAX = 1e8


@dataclass(frozen=True)
class SimilarityGraph:
    """Row-stochastic nonnegative similarity matrix with its neighbor count.

    Rows sum to 1, entries are >= 0, the diagonal is 0, and in the generic
    (no-tie) case each row has exactly m positive entries.
    """

    S: Array
    m: int


@dataclass
class NeighborDistances:
    """Combined squared distances for one sample: d_j = d_j^x + lam * d_j^f.

    The self entry, when present, is the +inf sentinel so a sample never
    becomes its own neighbor.
    """

    d: Array
    lam: float


class RankStep(enum.Enum):
    DOUBLED = "doubled"
    HALVED = "halved"
    CONVERGED = "converged"


@dataclass
class RankControlState:
    """Bookkeeping for the rank-control weight on the graph Laplacian.

    lam is doubled while the c smallest eigenvalues of L sum above tol
    (fewer than c components) and halved while the c+1 smallest sum below
    tol (more than c components); it is clamped to [1e-8, 1e8].
    """

    lam: float
    tol: float
    c: int
    last_eig_sums: tuple[float, float] | None = None


def _simplex_rows(D: Array, m: int, eps: float) -> Array:
    """Closed-form simplex rows for a matrix of candidate distances.

    Rows of D may carry +inf sentinels for excluded candidates.  Shared by
    simplex_row and update_similarity so the two agree bitwise.
    """
    n_rows, n = D.shape
    order = np.argsort(D, axis=1, kind="stable")
    ds = np.take_along_axis(D, order, axis=1)
    if not np.all(np.isfinite(ds[:, : m + 1])):
        raise ValueError(f"need at least {m + 1} finite distances per row")
    top_sum = ds[:, :m].sum(axis=1)
    d_next = ds[:, m]
    denom = m * d_next - top_sum + eps
    with np.errstate(invalid="ignore"):
        S = np.maximum((d_next[:, None] - D) / denom[:, None], 0.0)
    S[~np.isfinite(S)] = 0.0
    totals = S.sum(axis=1)
    live = totals > 0.0
    S[live] /= totals[live, None]
    # All candidate distances equal: the formula returns the zero row, so
    # fall back to uniform mass on the m nearest (stable order).
    for i in np.flatnonzero(~live):
        S[i, order[i, :m]] = 1.0 / m
    return S


def simplex_row(d_i, m: int, eps: float) -> Array:
    """Optimal similarity row for one sample's candidate distances.

    d_i holds the combined distances to all n candidates (the self entry,
    if included, must be the +inf sentinel).  Requires 1 <= m <= n - 2 so
    the (m+1)-th distance exists; entries must be nonnegative.
    """
    if isinstance(d_i, NeighborDistances):
        d_i = d_i.d
    d = np.asarray(d_i, dtype=float)
    if d.ndim != 1:
        raise ValueError(f"d_i must be a vector, got shape {d.shape}")
    n = d.size
    if not 1 <= m <= n - 2:
        raise ValueError(f"m must be in [1, {n - 2}], got {m}")
    if np.any(np.isnan(d)) or np.any(d < 0):
        raise ValueError("distances must be nonnegative (+inf sentinel allowed)")
    return _simplex_rows(d[None, :], m, eps)[0]


def optimal_gamma(d_i_sorted, m: int) -> float:
    """Largest regularizer that keeps exactly m positive entries in the row.

    gamma = (m/2) * d_{m+1} - (1/2) * sum of the m smallest distances,
    evaluated on ascending-sorted distances.
    """
    d = np.asarray(d_i_sorted, dtype=float)
    if d.ndim != 1 or d.size < m + 1:
        raise ValueError(f"need at least {m + 1} sorted distances, got {d.size}")
    finite = d[np.isfinite(d)]
    assert np.all(np.diff(finite) >= 0), "distances must be sorted ascending"
    return float(0.5 * m * d[m] - 0.5 * d[:m].sum())


def update_similarity(D_x, D_f, lam: float, m: int, eps: float) -> SimilarityGraph:
    """Rebuild every similarity row from combined distances D_x + lam * D_f.

    Both inputs must be symmetric, nonnegative, with zero diagonals; the
    diagonal is excluded via the +inf sentinel and S_ii = 0 in the result.
    """
    D_x = as_matrix(D_x, "D_x")
    D_f = as_matrix(D_f, "D_f")
    if D_x.shape != D_f.shape or D_x.shape[0] != D_x.shape[1]:
        raise ValueError(
            f"distance matrices must be square and equal-shaped, "
            f"got {D_x.shape} and {D_f.shape}"
        )
    n = D_x.shape[0]
    if not 1 <= m <= n - 2:
        raise ValueError(f"m must be in [1, {n - 2}], got {m}")
    for name, D in (("D_x", D_x), ("D_f", D_f)):
        scale = max(float(np.abs(D).max(initial=0.0)), 1.0)
        if np.abs(D - D.T).max(initial=0.0) > 1e-8 * scale:
            raise ValueError(f"{name} must be symmetric")
        if np.abs(np.diagonal(D)).max(initial=0.0) > 1e-8 * scale:
            raise ValueError(f"{name} must have a zero diagonal")
        if D.min(initial=0.0) < 0:
            raise ValueError(f"{name} must be nonnegative")
    d = D_x + lam * D_f
    np.fill_diagonal(d, np.inf)
    return SimilarityGraph(S=_simplex_rows(d, m, eps), m=m)


def symmetrize(S) -> Array:
    """(S + S.T) / 2; accepts a SimilarityGraph or a raw matrix."""
    if isinstance(S, SimilarityGraph):
        S = S.S
    S = as_matrix(S, "S")
    return (S + S.T) / 2.0


def rank_adjust(state: RankControlState, eig_ascending) -> RankStep:
    """One doubling/halving step of the rank-control weight.

    eig_ascending must hold at least c+1 ascending eigenvalues of the
    graph Laplacian.  Mutates state.lam (clamped) and state.last_eig_sums.
    """
    e = np.asarray(eig_ascending, dtype=float)
    if e.size < state.c + 1:
        raise ValueError(f"need at least {state.c + 1} eigenvalues, got {e.size}")
    sum_c = float(e[: state.c].sum())
    sum_c1 = float(e[: state.c + 1].sum())
    state.last_eig_sums = (sum_c, sum_c1)
    if sum_c > state.tol:
        state.lam = min(2.0 * state.lam, LAMBDA_MAX)
        return RankStep.DOUBLED
    if sum_c1 < state.tol:
        state.lam = max(state.lam / 2.0, LAMBDA_MIN)
        return RankStep.HALVED
    return RankStep.CONVERGED


def pairwise_sq_dists(Z) -> Array:
    """Exact-symmetric matrix of squared Euclidean distances between rows of Z."""
    Z = as_matrix(Z, "Z")
    sq = (Z**2).sum(axis=1)
    D = sq[:, None] + sq[None, :] - 2.0 * (Z @ Z.T)
    np.maximum(D, 0.0, out=D)
    D = (D + D.T) / 2.0
    np.fill_diagonal(D, 0.0)
    return D


def initial_similarity(X, m: int, eps: float) -> SimilarityGraph:
    """Similarity graph from raw squared sample distances (no label term)."""
    D_x = pairwise_sq_dists(X)
    return update_similarity(D_x, np.zeros_like(D_x), 0.0, m, eps)
