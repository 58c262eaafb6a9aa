"""Canonical factorizations of nonsingular real skew-symmetric matrices.

Any such Theta admits an orthogonal block-diagonalization
Theta = O blkdiag([[0, d_i], [-d_i, 0]]) O^T with d_1 >= ... >= d_n > 0, and a
Cholesky-like square-root factorization Theta = Sigma J Sigma^T against the
canonical symplectic form J.  The blocks are recovered through the Hermitian
eigenproblem of i*Theta, whose +d eigenvectors carry each invariant plane.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, SingularMatrixError, StructureError
from .structured import StructureTolerance, j_matrix, skew_symmetry_residual

__all__ = ["SkewFactorization", "murnaghan", "cholesky_like", "relate_ccr"]

# deltas whose ratio to the largest falls below this mark the input singular
DELTA_CUTOFF = 1e-12


@dataclass
class SkewFactorization:
    """Result of :func:`cholesky_like`: Theta = Sigma J Sigma^T = O canon O^T."""

    Sigma: np.ndarray
    O: np.ndarray
    deltas: np.ndarray

    def canonical(self) -> np.ndarray:
        return _canonical_blocks(self.deltas)

    def reconstruction_residual(self, theta) -> float:
        theta = np.asarray(theta, dtype=float)
        rebuilt = self.Sigma @ j_matrix(theta.shape[0]) @ self.Sigma.T
        denom = max(np.linalg.norm(theta), np.finfo(float).tiny)
        return float(np.linalg.norm(rebuilt - theta) / denom)


def _canonical_blocks(deltas) -> np.ndarray:
    deltas = np.asarray(deltas, dtype=float)
    out = np.zeros((2 * deltas.size, 2 * deltas.size))
    for i, d in enumerate(deltas):
        out[2 * i, 2 * i + 1] = d
        out[2 * i + 1, 2 * i] = -d
    return out


def _interleave_permutation(n: int) -> np.ndarray:
    """Permutation P with P J_{2n} P^T = blkdiag of n copies of [[0,1],[-1,0]]."""
    p = np.zeros((2 * n, 2 * n))
    for i in range(n):
        p[2 * i, i] = 1.0
        p[2 * i + 1, n + i] = 1.0
    return p


def _canonical_pair(w: np.ndarray) -> np.ndarray:
    """Orthonormal real column pair for one +delta eigenvector of i*Theta.

    The plane spanned by (Re w, Im w) is rotation-invariant under the phase of
    w; the phase is fixed so the largest-norm row of the pair becomes
    (positive, 0), which makes the output independent of LAPACK's phase choice.
    """
    block = np.column_stack([np.sqrt(2.0) * w.imag, np.sqrt(2.0) * w.real])
    r = int(np.argmax(np.linalg.norm(block, axis=1)))
    a, b = block[r, 0], block[r, 1]
    h = np.hypot(a, b)
    rot = np.array([[a / h, -b / h], [b / h, a / h]])
    return block @ rot


def murnaghan(theta, tol=None) -> tuple[np.ndarray, np.ndarray]:
    """Orthogonal canonical form of a nonsingular skew-symmetric matrix.

    Returns (O, deltas) with Theta = O blkdiag([[0, d_i], [-d_i, 0]]) O^T,
    deltas sorted descending.  Raises StructureError for non-skew input,
    DimensionError for odd dimension, SingularMatrixError when the smallest
    delta vanishes relative to the largest.
    """
    theta = np.asarray(theta, dtype=float)
    if theta.ndim != 2 or theta.shape[0] != theta.shape[1] or theta.shape[0] % 2:
        raise DimensionError(
            f"murnaghan needs an even-dimensional square matrix, got {theta.shape}"
        )
    tol = StructureTolerance.coerce(tol)
    resid = skew_symmetry_residual(theta)
    if not tol.accepts(resid, np.linalg.norm(theta)):
        raise StructureError(
            f"matrix is not skew-symmetric (residual {resid:.3e})",
            {"skew_symmetry": resid},
        )
    theta = 0.5 * (theta - theta.T)
    dim = theta.shape[0]
    n = dim // 2
    evals, evecs = np.linalg.eigh(1j * theta)
    # eigenvalues come in +/- pairs; take the positive half, largest first
    order = np.argsort(evals)[::-1][:n]
    deltas = evals[order].astype(float)
    if deltas.size and (deltas[-1] <= DELTA_CUTOFF * deltas[0] or deltas[0] <= 0.0):
        raise SingularMatrixError(
            f"skew matrix is singular to working precision (deltas {deltas})"
        )
    columns = [_canonical_pair(evecs[:, i]) for i in order]
    o = np.hstack(columns) if columns else np.zeros((dim, 0))
    return o, deltas


def cholesky_like(theta, tol=None) -> SkewFactorization:
    """Square-root factorization Theta = Sigma J Sigma^T via the canonical form.

    Sigma = O diag(sqrt d_1, sqrt d_1, ..., sqrt d_n, sqrt d_n) P where P
    permutes the block form of J into interleaved 2x2 blocks.  Sigma is unique
    only up to a symplectic right factor; this construction is deterministic
    for identical input.
    """
    o, deltas = murnaghan(theta, tol)
    n = deltas.size
    scale = np.repeat(np.sqrt(deltas), 2)
    sigma = o @ np.diag(scale) @ _interleave_permutation(n)
    return SkewFactorization(Sigma=sigma, O=o, deltas=deltas)


def relate_ccr(theta_1, theta_2, tol=None) -> np.ndarray:
    """State transformation S with theta_1 = S theta_2 S^T.

    Built from the two square-root factors: S = Sigma_1 Sigma_2^{-1}.
    """
    theta_1 = np.asarray(theta_1, dtype=float)
    theta_2 = np.asarray(theta_2, dtype=float)
    if theta_1.shape != theta_2.shape:
        raise DimensionError(
            f"commutation matrices must share a shape, got {theta_1.shape} "
            f"and {theta_2.shape}"
        )
    s1 = cholesky_like(theta_1, tol).Sigma
    s2 = cholesky_like(theta_2, tol).Sigma
    return np.linalg.solve(s2.T, s1.T).T
