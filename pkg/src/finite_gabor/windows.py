"""Canonical dual and tight windows, the set of all dual windows, Löwdin orthogonalization."""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import NotAFrameError, PreconditionError, RankDeficiencyError
from .gabor import (
    GaborSystem,
    frame_bounds,
    frame_operator,
    frame_type_operator,
    shifted_windows,
    synthesis_matrix,
)
from .group import Lattice, adjoint_subgroup
from .tfa import Signal, _check_group

__all__ = [
    "DualMethod",
    "DualWindowResult",
    "OptimalityReport",
    "canonical_dual",
    "canonical_tight",
    "dual_window_space",
    "sample_duals",
    "gram_system_dual",
    "dual_optimality_report",
    "moore_penrose_check",
    "lowdin_matrix",
    "lowdin_orthonormalize",
    "tight_connecting_isometry",
]


class DualMethod(str, enum.Enum):
    CANONICAL = "canonical"
    PARAMETRIZED = "parametrized"


@dataclass(frozen=True)
class DualWindowResult:
    window: Signal
    residual: float
    method: DualMethod


@dataclass(frozen=True)
class OptimalityReport:
    minimal_norm: bool
    minimal_norm_coefficients: bool
    closest_to_atom: bool
    most_likely: bool

    @property
    def all_passed(self) -> bool:
        return self.minimal_norm and self.minimal_norm_coefficients and self.closest_to_atom and self.most_likely


def _windows(g) -> tuple[Signal, ...]:
    return (g,) if isinstance(g, Signal) else tuple(g)


def _frame_operator_checked(g, lattice: Lattice) -> np.ndarray:
    system = GaborSystem(_windows(g), lattice)
    diag = frame_bounds(system)
    if not diag.is_frame:
        raise NotAFrameError(
            f"Gabor system is not a frame (lower bound {diag.lower_bound:.3e}, upper {diag.upper_bound:.3e})",
            diag,
        )
    return frame_operator(system)


def dual_residual(g: Signal, h: Signal, lattice: Lattice) -> float:
    """||S_{g,h,L} - I||_Fro."""
    S = frame_type_operator(g, h, lattice)
    return float(np.linalg.norm(S - np.eye(S.shape[0])))


def canonical_dual(g: Signal, lattice: Lattice) -> DualWindowResult:
    S = _frame_operator_checked(g, lattice)
    h = Signal(g.group, linalg.inverse(S) @ g.values)
    return DualWindowResult(h, dual_residual(g, h, lattice), DualMethod.CANONICAL)


def canonical_tight(g: Signal, lattice: Lattice) -> Signal:
    S = _frame_operator_checked(g, lattice)
    return Signal(g.group, linalg.inv_sqrt(S) @ g.values)


def dual_window_space(g: Signal, lattice: Lattice) -> list[Signal]:
    """Orthonormal basis of the orthogonal complement of span{pi(mu) g : mu in L°}.

    Every dual window of G(g, L) is the canonical dual plus a combination of
    these vectors, and every such combination is a dual window.
    """
    _frame_operator_checked(g, lattice)
    D_adj = shifted_windows(g, adjoint_subgroup(lattice))
    basis = linalg.null_space(D_adj.conj().T)
    return [Signal(g.group, basis[:, i]) for i in range(basis.shape[1])]


def sample_duals(g: Signal, lattice: Lattice, count: int, seed: int = 0) -> list[Signal]:
    """Random dual windows from the affine dual set.

    Complement coefficients are independent standard complex Gaussians scaled
    by the norm of the canonical dual.
    """
    rng = np.random.default_rng(seed)
    canon = canonical_dual(g, lattice).window
    basis = dual_window_space(g, lattice)
    if not basis:
        return [canon] * count
    B = np.column_stack([b.values for b in basis])
    scale = canon.norm()
    out = []
    for _ in range(count):
        c = (rng.standard_normal(B.shape[1]) + 1j * rng.standard_normal(B.shape[1])) / np.sqrt(2)
        out.append(Signal(g.group, canon.values + scale * (B @ c)))
    return out


def gram_system_dual(g: Signal, lattice: Lattice) -> Signal:
    """Canonical dual from the Gram system of G(g, L°).

    Solves Gram c = (|G|/|L|) delta_0 on the adjoint lattice and returns
    sum_mu c_mu pi(mu) g.  Independent of the frame-operator inverse.
    """
    _check_group(g.group, lattice.group)
    D_adj = shifted_windows(g, adjoint_subgroup(lattice))
    gram = D_adj.conj().T @ D_adj
    rhs = np.zeros(gram.shape[0], dtype=np.complex128)
    rhs[0] = g.group.order / lattice.size
    c = linalg.inverse(gram) @ rhs
    return Signal(g.group, D_adj @ c)


def dual_optimality_report(
    g: Signal, lattice: Lattice, trials: int, seed: int = 0, probe: Signal | None = None
) -> OptimalityReport:
    """Compare the canonical dual with ``trials`` random dual windows.

    The coefficient criterion uses a fixed random probe signal.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    canon = canonical_dual(g, lattice).window
    duals = sample_duals(g, lattice, trials, seed=seed)
    if probe is None:
        probe = Signal.random(g.group, np.random.default_rng(seed + 1))
    slack = 1e-12

    def coeff_norm(h):
        return float(np.linalg.norm(shifted_windows(h, lattice).conj().T @ probe.values))

    gn = g.values / np.linalg.norm(g.values)

    def dist_normalized(h):
        return float(np.linalg.norm(gn - h.values / np.linalg.norm(h.values)))

    c_norm, c_coef = canon.norm(), coeff_norm(canon)
    c_dist, c_like = (g - canon).norm(), dist_normalized(canon)
    flags = [True, True, True, True]
    for h in duals:
        flags[0] &= c_norm <= h.norm() * (1 + slack) + slack
        flags[1] &= c_coef <= coeff_norm(h) * (1 + slack) + slack
        flags[2] &= c_dist <= (g - h).norm() * (1 + slack) + slack
        flags[3] &= c_like <= dist_normalized(h) * (1 + slack) + slack
    return OptimalityReport(*(bool(f) for f in flags))


def moore_penrose_check(g, lattice: Lattice) -> float:
    """||C_dual - pinv(D)||_Fro for one window or a list of windows.

    C_dual is the stacked analysis map of the canonical dual windows
    S^-1 g_j and D the stacked synthesis matrix of the original windows.
    """
    windows = _windows(g)
    S = _frame_operator_checked(windows, lattice)
    S_inv = linalg.inverse(S)
    duals = [Signal(w.group, S_inv @ w.values) for w in windows]
    C_dual = synthesis_matrix(GaborSystem(duals, lattice)).conj().T
    D = synthesis_matrix(GaborSystem(windows, lattice))
    return float(np.linalg.norm(C_dual - linalg.pinv(D)))


def lowdin_matrix(C) -> np.ndarray:
    """Closest matrix with orthonormal columns to C in Frobenius norm: U V*."""
    C = linalg.as_matrix(C)
    rank = linalg.matrix_rank(C)
    if rank < C.shape[1]:
        raise RankDeficiencyError(
            f"vectors are linearly dependent: numerical rank {rank} < {C.shape[1]}", rank
        )
    U, s, V = linalg.svd(C)
    n = C.shape[1]
    return U[:, :n] @ V.conj().T


def lowdin_orthonormalize(vectors: Sequence[Signal]) -> list[Signal]:
    if not vectors:
        return []
    group = _check_group(*(v.group for v in vectors))
    L = lowdin_matrix(np.column_stack([v.values for v in vectors]))
    return [Signal(group, L[:, i]) for i in range(L.shape[1])]


def tight_connecting_isometry(h1: Signal, h2: Signal, lattice: Lattice, tol: float = 1e-8) -> np.ndarray:
    """Partial isometry W with W C_{h1} = C_{h2} for two tight windows with equal bound."""
    d1 = frame_bounds(GaborSystem((h1,), lattice))
    d2 = frame_bounds(GaborSystem((h2,), lattice))
    for name, d in (("h1", d1), ("h2", d2)):
        if not d.is_frame or d.upper_bound - d.lower_bound > tol * d.upper_bound:
            raise PreconditionError(
                f"{name} is not a tight window: bounds {d.lower_bound:.6g}, {d.upper_bound:.6g}"
            )
    if abs(d1.upper_bound - d2.upper_bound) > tol * d1.upper_bound:
        raise PreconditionError(
            f"tight frame constants differ: {d1.upper_bound:.6g} vs {d2.upper_bound:.6g}"
        )
    C1 = shifted_windows(h1, lattice).conj().T
    C2 = shifted_windows(h2, lattice).conj().T
    return C2 @ linalg.pinv(C1)
