"""Dense complex matrix kernel.

Matrices are plain 2-D numpy arrays (row-major).  Decompositions delegate to
LAPACK through numpy; this module adds the shape checks, the single rank
tolerance used across the package and the error types callers rely on.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DomainError, InvalidParameterError, NumericError, ShapeError, SingularityError

EPS = np.finfo(np.float64).eps


class SvdResult(NamedTuple):
    U: np.ndarray
    singular_values: np.ndarray
    V: np.ndarray


def as_matrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got shape {A.shape}")
    return A


def _square(A) -> np.ndarray:
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {A.shape}")
    return A


def matmul(A, B) -> np.ndarray:
    A, B = as_matrix(A), as_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise ShapeError(f"cannot multiply {A.shape} by {B.shape}")
    return A @ B


def adjoint(A) -> np.ndarray:
    return as_matrix(A).conj().T


def trace(A) -> complex:
    return complex(np.trace(_square(A)))


def frobenius_inner(A, B) -> complex:
    """tr(A B*), linear in A and conjugate-linear in B."""
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        raise ShapeError(f"shape mismatch {A.shape} vs {B.shape}")
    return complex(np.vdot(B, A))


def frobenius_norm(A) -> float:
    return float(np.linalg.norm(as_matrix(A)))


def rank_tol(shape, s_max: float) -> float:
    """Cutoff max(rows, cols) * eps * s_max used for rank, pinv and frames."""
    return max(shape) * EPS * float(s_max)


def svd(A) -> SvdResult:
    A = as_matrix(A)
    try:
        U, s, Vh = np.linalg.svd(A, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"SVD did not converge: {exc}") from exc
    return SvdResult(U, s, Vh.conj().T)


def matrix_rank(A) -> int:
    A = as_matrix(A)
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    return int(np.sum(s > rank_tol(A.shape, s[0])))


def schatten_norm(A, p=2.0) -> float:
    if not (p == np.inf or p >= 1):
        raise InvalidParameterError(f"Schatten index p must be >= 1 or inf, got {p}")
    s = np.linalg.svd(as_matrix(A), compute_uv=False)
    if s.size == 0:
        return 0.0
    if p == np.inf:
        return float(s[0])
    return float(np.sum(s**p) ** (1.0 / p))


def hermitian_eig(A, tol: float = 1e-12):
    """Eigenvalues (ascending) and unitary eigenvectors of a Hermitian matrix.

    The input is symmetrized after a check that its anti-Hermitian part is
    below ``tol * ||A||_Fro``.
    """
    A = _square(A)
    scale = np.linalg.norm(A)
    skew = np.linalg.norm(A - A.conj().T) / 2
    if skew > tol * max(scale, 1.0):
        raise DomainError(f"matrix is not Hermitian (anti-Hermitian part {skew:.3e})")
    H = (A + A.conj().T) / 2
    try:
        w, Q = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"Hermitian eigensolver did not converge: {exc}") from exc
    return w, Q


def inverse(A) -> np.ndarray:
    A = _square(A)
    s = np.linalg.svd(A, compute_uv=False)
    if s.size and s[-1] <= rank_tol(A.shape, s[0]):
        raise SingularityError(f"matrix is singular (smallest singular value {s[-1]:.3e})", s[-1])
    return np.linalg.inv(A)


def hermitian_power(A, alpha: float) -> np.ndarray:
    """A**alpha for a Hermitian positive definite A via its eigendecomposition."""
    A = _square(A)
    w, Q = hermitian_eig(A)
    if w[0] <= rank_tol(A.shape, max(abs(w[-1]), abs(w[0]))):
        raise SingularityError(
            f"matrix is not positive definite (smallest eigenvalue {w[0]:.3e})", float(w[0])
        )
    return (Q * w**alpha) @ Q.conj().T


def inv_sqrt(A) -> np.ndarray:
    return hermitian_power(A, -0.5)


def pinv(A) -> np.ndarray:
    """Moore-Penrose inverse with the package-wide rank cutoff."""
    A = as_matrix(A)
    if A.size == 0:
        return np.zeros(A.shape[::-1], dtype=np.complex128)
    U, s, V = svd(A)
    cut = rank_tol(A.shape, s[0])
    r = int(np.sum(s > cut))
    return (V[:, :r] / s[:r]) @ U[:, :r].conj().T


def null_space(A) -> np.ndarray:
    """Orthonormal basis (as columns) of ker A."""
    A = as_matrix(A)
    U, s, V = svd(A)
    r = int(np.sum(s > rank_tol(A.shape, s[0]))) if s.size else 0
    return V[:, r:]
