"""Structured constant matrices and residual-based matrix-group predicates.

Conventions: a dimension-2k quadrature vector is ordered as k positions
followed by k momenta, so the symplectic form is the block matrix
[[0, I], [-I, 0]].  The doubled-up complex form stacks k annihilation
entries on top of their k creation partners.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError

__all__ = [
    "StructureTolerance",
    "DEFAULT_TOLERANCE",
    "j_matrix",
    "bold_j_matrix",
    "t_matrix",
    "doubled_up",
    "nabla",
    "extract_bold_blocks",
    "orthogonality_residual",
    "unitarity_residual",
    "symplectic_residual",
    "skew_symmetry_residual",
    "symmetry_residual",
    "hermitian_residual",
    "doubled_up_residual",
    "is_orthogonal",
    "is_unitary",
    "is_symplectic",
    "is_orthosymplectic",
    "is_skew_symmetric",
    "is_symmetric",
    "is_hermitian",
    "is_doubled_up",
]


@dataclass(frozen=True)
class StructureTolerance:
    """Residual acceptance rule: residual <= absolute + relative * scale.

    ``scale`` is the Frobenius norm of the matrix under test.
    """

    absolute: float = 1e-10
    relative: float = 1e-8

    def bound(self, scale: float) -> float:
        return self.absolute + self.relative * float(scale)

    def accepts(self, residual: float, scale: float) -> bool:
        return residual <= self.bound(scale)

    @staticmethod
    def coerce(tol) -> "StructureTolerance":
        """Accept a StructureTolerance, a bare float (absolute), or None (default)."""
        if tol is None:
            return DEFAULT_TOLERANCE
        if isinstance(tol, StructureTolerance):
            return tol
        return StructureTolerance(absolute=float(tol), relative=0.0)


DEFAULT_TOLERANCE = StructureTolerance()

_fro = np.linalg.norm


def _require_even(r: int, name: str) -> int:
    r = int(r)
    if r < 2 or r % 2:
        raise DimensionError(f"{name} requires a positive even dimension, got {r}")
    return r


def _require_square(mat: np.ndarray, name: str) -> np.ndarray:
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {mat.shape}")
    return mat


def j_matrix(r: int) -> np.ndarray:
    """Canonical symplectic form of even dimension r: [[0, I], [-I, 0]]."""
    r = _require_even(r, "j_matrix")
    return np.kron(np.array([[0.0, 1.0], [-1.0, 0.0]]), np.eye(r // 2))


def bold_j_matrix(r: int) -> np.ndarray:
    """Signature matrix diag(I, -I) of even dimension r."""
    r = _require_even(r, "bold_j_matrix")
    return np.kron(np.diag([1.0, -1.0]), np.eye(r // 2))


def t_matrix(k: int) -> np.ndarray:
    """Quadrature-to-ladder change of basis of even dimension k.

    Satisfies T T* = 2 I and (1/2) T diag(I, -I) T* = i [[0, I], [-I, 0]].
    """
    k = _require_even(k, "t_matrix")
    return np.kron(np.array([[1.0, 1.0], [-1.0j, 1.0j]]), np.eye(k // 2))


def doubled_up(x1, x2) -> np.ndarray:
    """Stack (x1, x2) into the doubled-up block form [[x1, x2], [conj x2, conj x1]]."""
    x1 = np.atleast_2d(np.asarray(x1, dtype=complex))
    x2 = np.atleast_2d(np.asarray(x2, dtype=complex))
    if x1.shape != x2.shape:
        raise DimensionError(
            f"doubled_up blocks must share a shape, got {x1.shape} and {x2.shape}"
        )
    return np.block([[x1, x2], [x2.conj(), x1.conj()]])


def nabla(x1, x2) -> np.ndarray:
    """Real quadrature form of a doubled-up pair.

    Returns [[Re(x1+x2), -Im(x1-x2)], [Im(x1+x2), Re(x1-x2)]], which equals
    (1/2) T (doubled_up(x1, x2)) T* with the appropriately sized T factors.
    """
    x1 = np.atleast_2d(np.asarray(x1, dtype=complex))
    x2 = np.atleast_2d(np.asarray(x2, dtype=complex))
    if x1.shape != x2.shape:
        raise DimensionError(
            f"nabla blocks must share a shape, got {x1.shape} and {x2.shape}"
        )
    plus = x1 + x2
    minus = x1 - x2
    return np.block([[plus.real, -minus.imag], [plus.imag, minus.real]])


def extract_bold_blocks(x) -> tuple[np.ndarray, np.ndarray]:
    """Invert :func:`nabla`: recover the complex pair from a real 2j x 2k matrix."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[0] % 2 or x.shape[1] % 2:
        raise DimensionError(
            f"extract_bold_blocks needs an even-by-even matrix, got shape {x.shape}"
        )
    j, k = x.shape[0] // 2, x.shape[1] // 2
    x11, x12 = x[:j, :k], x[:j, k:]
    x21, x22 = x[j:, :k], x[j:, k:]
    first = 0.5 * (x11 + x22) + 0.5j * (x21 - x12)
    second = 0.5 * (x11 - x22) + 0.5j * (x21 + x12)
    return first, second


def orthogonality_residual(mat) -> float:
    mat = _require_square(np.asarray(mat, dtype=float), "orthogonality_residual")
    return float(_fro(mat.T @ mat - np.eye(mat.shape[0])))


def unitarity_residual(mat) -> float:
    mat = _require_square(np.asarray(mat, dtype=complex), "unitarity_residual")
    return float(_fro(mat.conj().T @ mat - np.eye(mat.shape[0])))


def symplectic_residual(mat) -> float:
    mat = _require_square(np.asarray(mat, dtype=float), "symplectic_residual")
    j = j_matrix(mat.shape[0])
    return float(_fro(mat.T @ j @ mat - j))


def skew_symmetry_residual(mat) -> float:
    mat = _require_square(np.asarray(mat), "skew_symmetry_residual")
    return float(_fro(mat + mat.T))


def symmetry_residual(mat) -> float:
    mat = _require_square(np.asarray(mat), "symmetry_residual")
    return float(_fro(mat - mat.T))


def hermitian_residual(mat) -> float:
    mat = _require_square(np.asarray(mat, dtype=complex), "hermitian_residual")
    return float(_fro(mat - mat.conj().T))


def doubled_up_residual(mat) -> float:
    """Distance from the doubled-up block pattern (lower blocks conjugate the upper)."""
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] % 2 or mat.shape[1] % 2:
        raise DimensionError(
            f"doubled_up_residual needs an even-by-even matrix, got shape {mat.shape}"
        )
    j, k = mat.shape[0] // 2, mat.shape[1] // 2
    return float(_fro(mat - doubled_up(mat[:j, :k], mat[:j, k:])))


def is_orthogonal(mat, tol=None) -> bool:
    tol = StructureTolerance.coerce(tol)
    return tol.accepts(orthogonality_residual(mat), _fro(np.asarray(mat, dtype=float)))


def is_unitary(mat, tol=None) -> bool:
    tol = StructureTolerance.coerce(tol)
    return tol.accepts(unitarity_residual(mat), _fro(np.asarray(mat, dtype=complex)))


def is_symplectic(mat, tol=None) -> bool:
    tol = StructureTolerance.coerce(tol)
    return tol.accepts(symplectic_residual(mat), _fro(np.asarray(mat, dtype=float)))


def is_orthosymplectic(mat, tol=None) -> bool:
    return is_orthogonal(mat, tol) and is_symplectic(mat, tol)


def is_skew_symmetric(mat, tol=None) -> bool:
    tol = StructureTolerance.coerce(tol)
    return tol.accepts(skew_symmetry_residual(mat), _fro(np.asarray(mat)))


def is_symmetric(mat, tol=None) -> bool:
    tol = StructureTolerance.coerce(tol)
    return tol.accepts(symmetry_residual(mat), _fro(np.asarray(mat)))


def is_hermitian(mat, tol=None) -> bool:
    tol = StructureTolerance.coerce(tol)
    return tol.accepts(hermitian_residual(mat), _fro(np.asarray(mat, dtype=complex)))


def is_doubled_up(mat, tol=None) -> bool:
    tol = StructureTolerance.coerce(tol)
    return tol.accepts(doubled_up_residual(mat), _fro(np.asarray(mat, dtype=complex)))
