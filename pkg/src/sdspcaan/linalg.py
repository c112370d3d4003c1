"""Dense linear-algebra primitives shared by all reducers.

Symmetric eigendecompositions here come with a deterministic sign
convention (largest-magnitude entry of each eigenvector is positive,
first occurrence wins on ties) so that repeated fits and the L1,1
convergence test on eigenvector iterates are stable.
"""

from dataclasses import dataclass

import numpy as np

from .util import Array, as_matrix, ensure_finite

ASYMMETRY_RTOL = 1e-8


@dataclass(frozen=True)
class SymmetricSpectrum:
    """Full eigendecomposition of a symmetric matrix.

    eigenvalues are ascending; eigenvectors[:, j] pairs with
    eigenvalues[j] and the columns are orthonormal.
    """

    eigenvalues: Array
    eigenvectors: Array


@dataclass(frozen=True)
class SvdFactors:
    """Full SVD X = U @ diag(sigma) @ R.T (rectangular diagonal).

    U is n-by-n orthogonal, R is d-by-d orthogonal, sigma holds the
    min(n, d) singular values in descending order.
    """

    U: Array
    sigma: Array
    R: Array


def deterministic_signs(V: Array) -> Array:
    """Flip columns of V so each column's largest-magnitude entry is positive.

    Ties broken by lowest row index (np.argmax picks the first maximum).
    """
    V = np.asarray(V, dtype=float)
    if V.size == 0:
        return V
    idx = np.argmax(np.abs(V), axis=0)
    signs = np.sign(V[idx, np.arange(V.shape[1])])
    signs[signs == 0] = 1.0
    return V * signs


def sym_eig(A) -> SymmetricSpectrum:
    """Eigendecompose a (numerically) symmetric matrix.

    The input is replaced by (A + A.T)/2 before factorization; asymmetry
    beyond 1e-8 * ||A||_F is rejected as a contract violation.
    """
    A = as_matrix(A, "A")
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"A must be square, got shape {A.shape}")
    ensure_finite(A, "A")
    norm_a = np.linalg.norm(A)
    asym = np.linalg.norm(A - A.T)
    if asym > ASYMMETRY_RTOL * max(norm_a, np.finfo(float).tiny):
        raise ValueError(
            f"A is not symmetric: ||A - A.T||_F = {asym:.3e} vs ||A||_F = {norm_a:.3e}"
        )
    M = (A + A.T) / 2.0
    w, V = np.linalg.eigh(M)
    return SymmetricSpectrum(eigenvalues=w, eigenvectors=deterministic_signs(V))


def trailing_eigvecs(A, k: int) -> Array:
    """Orthonormal eigenvectors of the k smallest eigenvalues, ascending."""
    spectrum = sym_eig(A)
    n = spectrum.eigenvalues.size
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    return spectrum.eigenvectors[:, :k]


def leading_eigvecs(A, k: int) -> Array:
    """Orthonormal eigenvectors of the k largest eigenvalues, descending."""
    spectrum = sym_eig(A)
    n = spectrum.eigenvalues.size
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    return spectrum.eigenvectors[:, ::-1][:, :k]


def svd(X) -> SvdFactors:
    """Full singular value decomposition with deterministic column signs."""
    X = as_matrix(X, "X")
    ensure_finite(X, "X")
    U, s, Vt = np.linalg.svd(X, full_matrices=True)
    R = Vt.T
    n, d = X.shape
    r = min(n, d)
    # Sign convention follows the R columns; paired U columns flip with them
    # so U @ Sigma @ R.T is preserved.  Unpaired basis-completion columns
    # multiply zero singular values and are normalized independently.
    idx = np.argmax(np.abs(R[:, :r]), axis=0)
    signs = np.sign(R[idx, np.arange(r)])
    signs[signs == 0] = 1.0
    R[:, :r] *= signs
    U[:, :r] *= signs
    if d > r:
        R[:, r:] = deterministic_signs(R[:, r:])
    if n > r:
        U[:, r:] = deterministic_signs(U[:, r:])
    return SvdFactors(U=U, sigma=s, R=R)


def l21_norm(Q) -> float:
    """Sum of the Euclidean norms of the rows of Q."""
    Q = as_matrix(Q, "Q")
    return float(np.sqrt((Q**2).sum(axis=1)).sum())


def reweight_diag(Q, eps: float) -> Array:
    """Diagonal reweighting matrix for row-sparsity surrogates.

    D_ii = 1 / (2 * sqrt(sum_j Q_ij^2 + eps)); eps > 0 keeps every entry
    finite when a row of Q vanishes.
    """
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    Q = as_matrix(Q, "Q")
    return np.diag(1.0 / (2.0 * np.sqrt((Q**2).sum(axis=1) + eps)))


def laplacian(S) -> Array:
    """Graph Laplacian L = diag(S @ 1) - S of a symmetric nonnegative S."""
    S = as_matrix(S, "S")
    if S.shape[0] != S.shape[1]:
        raise ValueError(f"S must be square, got shape {S.shape}")
    ensure_finite(S, "S")
    if S.size and S.min() < 0:
        raise ValueError(f"S must be nonnegative, min entry = {S.min():.3e}")
    norm_s = np.linalg.norm(S)
    asym = np.linalg.norm(S - S.T)
    if asym > ASYMMETRY_RTOL * max(norm_s, np.finfo(float).tiny):
        raise ValueError(
            "S must be symmetric; pass (S + S.T)/2 for a directed graph"
        )
    S = (S + S.T) / 2.0
    return np.diag(S.sum(axis=1)) - S


def principal_angles(U, V) -> Array:
    """Canonical angles (radians, ascending) between the column spans of U and V.

    Columns of each input are orthonormalized first, so any bases of the two
    subspaces may be passed.
    """
    U = np.linalg.qr(as_matrix(U, "U"))[0]
    V = np.linalg.qr(as_matrix(V, "V"))[0]
    sv = np.linalg.svd(U.T @ V, compute_uv=False)
    return np.arccos(np.clip(sv, -1.0, 1.0))
