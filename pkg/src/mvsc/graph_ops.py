"""Graph-side primitives: affinities, Laplacians, and similarity fusion.

Dense matrices throughout; sample counts stay in the low thousands, so
sparse storage buys nothing here.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial.distance import cdist


def laplacian(graph: np.ndarray) -> np.ndarray:
    """Unnormalized graph Laplacian D - (G + G^T)/2 of a (possibly asymmetric) graph.

    D is the degree matrix of the symmetrized graph, so the output is
    symmetric with zero row sums and is positive semidefinite whenever the
    symmetrized weights are nonnegative.
    """
    G = np.asarray(graph, dtype=float)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise ValueError(f"graph must be square, got shape {G.shape}")
    sym = 0.5 * (G + G.T)
    L = np.diag(sym.sum(axis=1)) - sym
    return L


def pairwise_sq_distances(X: np.ndarray) -> np.ndarray:
    """Squared Euclidean distances between the columns of X (d x n)."""
    X = np.asarray(X, dtype=float)
    return cdist(X.T, X.T, metric="sqeuclidean")


def weighted_sq_distances(X: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Featurewise-weighted squared distances between columns of X.

    Entry (i, j) is sum_k w_k^2 (x_ki - x_kj)^2, i.e. the squared distance
    after scaling feature k by w_k.
    """
    X = np.asarray(X, dtype=float)
    w = np.asarray(w, dtype=float).ravel()
    if w.size != X.shape[0]:
        raise ValueError(f"weight length {w.size} does not match feature count {X.shape[0]}")
    if np.any(w < 0):
        raise ValueError("feature weights must be nonnegative")
    D = pairwise_sq_distances(w[:, None] * X)
    np.fill_diagonal(D, 0.0)
    return D


def fuse_similarity(Zs: list[np.ndarray]) -> np.ndarray:
    """Average the symmetrized absolute values of per-view coefficient matrices.

    Returns (1/n_v) sum_v (|Z_v| + |Z_v^T|)/2 with the diagonal forced to
    zero; self-similarity carries no information for spectral clustering.
    """
    if not Zs:
        raise ValueError("need at least one matrix to fuse")
    shape = np.asarray(Zs[0]).shape
    S = np.zeros(shape)
    for Z in Zs:
        Z = np.asarray(Z, dtype=float)
        if Z.shape != shape:
            raise ValueError(f"shape mismatch: {Z.shape} vs {shape}")
        A = np.abs(Z)
        S += 0.5 * (A + A.T)
    S /= len(Zs)
    np.fill_diagonal(S, 0.0)
    return S


def knn_affinity(X: np.ndarray, k: int) -> np.ndarray:
    """Row-stochastic k-nearest-neighbor affinity over the columns of X.

    Row i puts weight 1/k on the k nearest other samples by Euclidean
    distance and 0 elsewhere; distance ties break toward the lower sample
    index. Uniform weights keep every row summing to exactly 1.
    """
    X = np.asarray(X, dtype=float)
    n = X.shape[1]
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, {n - 1}], got {k}")
    D = pairwise_sq_distances(X)
    np.fill_diagonal(D, np.inf)
    # stable sort so equal distances resolve to the lower index
    order = np.argsort(D, axis=1, kind="stable")[:, :k]
    A = np.zeros((n, n))
    rows = np.repeat(np.arange(n), k)
    A[rows, order.ravel()] = 1.0 / k
    return A


def gaussian_affinity(X: np.ndarray, sigma: float) -> np.ndarray:
    """Heat-kernel affinity exp(-||x_i - x_j||^2 / (2 sigma^2)) with zero diagonal."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    D = pairwise_sq_distances(np.asarray(X, dtype=float))
    A = np.exp(-D / (2.0 * sigma * sigma))
    np.fill_diagonal(A, 0.0)
    return A
