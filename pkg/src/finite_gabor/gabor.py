"""Gabor systems over subgroups of the time-frequency plane.

Coefficient vectors are ordered windows-outer, lattice-inner, with lattice
points in increasing plane index.  Duality constants under plain-sum inner
products:

==============================  ===========================================
Janssen coefficient at mu       (|L| / |G|) <g, pi(mu) h>,   mu in L°
Wexler-Raz condition            <g, pi(mu) h> = (|G| / |L|) delta_mu
FIGA / Poisson right-hand side  (|L| / |G|) sum over L°
Ron-Shen bound ratio            Riesz bound on L° / frame bound on L = |G| / |L|
==============================  ===========================================

Each constant is fixed by the two extreme lattices {0} and G x Ĝ.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import GroupMismatchError
from .group import Lattice, TFPoint, adjoint_subgroup
from .spreading import lattice_twisted_convolution
from .tfa import Signal, _check_group, stft, tf_shift_stack

__all__ = [
    "GaborSystem",
    "FrameDiagnostics",
    "RonShenReport",
    "shifted_windows",
    "synthesis_matrix",
    "analyze",
    "synthesize",
    "frame_operator",
    "frame_type_operator",
    "gram_matrix",
    "frame_bounds",
    "janssen_coefficients",
    "janssen_operator",
    "wexler_raz_residual",
    "wexler_raz_is_dual",
    "figa_sides",
    "lattice_twisted_convolution",
    "ron_shen_report",
]


@dataclass(frozen=True, eq=False)
class GaborSystem:
    windows: tuple[Signal, ...]
    lattice: Lattice

    def __post_init__(self):
        windows = (self.windows,) if isinstance(self.windows, Signal) else tuple(self.windows)
        if not windows:
            raise ValueError("a Gabor system needs at least one window")
        for w in windows:
            if w.group != self.lattice.group:
                raise GroupMismatchError(f"window on {w.group!r} but lattice on {self.lattice.group!r}")
        object.__setattr__(self, "windows", windows)

    @property
    def group(self):
        return self.lattice.group

    @property
    def size(self) -> int:
        return len(self.windows) * self.lattice.size


@dataclass(frozen=True)
class FrameDiagnostics:
    lower_bound: float
    upper_bound: float
    is_frame: bool
    condition_number: float

    def as_dict(self) -> dict:
        return {
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "is_frame": self.is_frame,
            "condition_number": self.condition_number if np.isfinite(self.condition_number) else None,
        }


@dataclass(frozen=True)
class RonShenReport:
    frame_A: float
    frame_B: float
    riesz_A: float
    riesz_B: float
    is_frame: bool
    adjoint_is_riesz: bool
    ratio: float


def shifted_windows(g: Signal, lattice: Lattice) -> np.ndarray:
    """(|G|, |L|) matrix whose i-th column is pi(lambda_i) g."""
    G = _check_group(g.group, lattice.group)
    t, w = np.divmod(lattice.indices, G.order)
    rows = G.difference_table[:, t]  # rows[j, i] = j - k_i
    return G.character_table[rows, w[None, :]] * g.values[rows]


def synthesis_matrix(system: GaborSystem) -> np.ndarray:
    return np.hstack([shifted_windows(g, system.lattice) for g in system.windows])


def analyze(f: Signal, system: GaborSystem) -> np.ndarray:
    """Coefficients <f, pi(lambda) g_j> in synthesis-column order."""
    _check_group(f.group, system.group)
    return synthesis_matrix(system).conj().T @ f.values


def synthesize(c, system: GaborSystem) -> Signal:
    return Signal(system.group, synthesis_matrix(system) @ np.asarray(c, dtype=np.complex128))


def frame_operator(system: GaborSystem) -> np.ndarray:
    D = synthesis_matrix(system)
    return D @ D.conj().T


def frame_type_operator(g: Signal, h: Signal, lattice: Lattice) -> np.ndarray:
    """f -> sum_lambda <f, pi(lambda) h> pi(lambda) g."""
    _check_group(g.group, h.group, lattice.group)
    return shifted_windows(g, lattice) @ shifted_windows(h, lattice).conj().T


def gram_matrix(system: GaborSystem) -> np.ndarray:
    D = synthesis_matrix(system)
    return D.conj().T @ D


def _diagnostics_from_spectrum(w: np.ndarray, shape) -> FrameDiagnostics:
    B = max(float(w[-1]), 0.0)
    A = float(w[0])
    is_frame = A > linalg.rank_tol(shape, B)
    if not is_frame:
        A = 0.0
    cond = B / A if A > 0 else float("inf")
    return FrameDiagnostics(A, B, bool(is_frame), cond)


def frame_bounds(system: GaborSystem) -> FrameDiagnostics:
    S = frame_operator(system)
    w, _ = linalg.hermitian_eig(S)
    return _diagnostics_from_spectrum(w, S.shape)


def janssen_coefficients(g: Signal, h: Signal, lattice: Lattice) -> dict[TFPoint, complex]:
    """Spreading coefficients of the frame-type operator, supported on the adjoint lattice."""
    G = _check_group(g.group, h.group, lattice.group)
    adj = adjoint_subgroup(lattice)
    V = stft(g, h).values  # <g, pi(mu) h>
    c = lattice.size / G.order
    return {p: complex(c * V[i]) for p, i in zip(adj.elements, adj.indices)}


def janssen_coefficients_multi(system: GaborSystem) -> dict[TFPoint, complex]:
    """Janssen coefficients of a multi-window frame operator (sum over windows)."""
    total: dict[TFPoint, complex] = {}
    for g in system.windows:
        for p, v in janssen_coefficients(g, g, system.lattice).items():
            total[p] = total.get(p, 0j) + v
    return total


def janssen_operator(coefficients: dict[TFPoint, complex], group) -> np.ndarray:
    """sum_mu c(mu) pi(mu) from a coefficient map."""
    idx = np.array([group.point_index(p) for p in coefficients], dtype=np.int64)
    vals = np.array(list(coefficients.values()), dtype=np.complex128)
    if idx.size == 0:
        return np.zeros((group.order, group.order), dtype=np.complex128)
    return np.tensordot(vals, tf_shift_stack(group)[idx], axes=1)


def wexler_raz_residual(g: Signal, h: Signal, lattice: Lattice) -> float:
    """max over mu in L° of |<g, pi(mu) h> - (|G|/|L|) delta_mu|."""
    G = _check_group(g.group, h.group, lattice.group)
    adj = adjoint_subgroup(lattice)
    V = stft(g, h).values[adj.indices].copy()
    V[0] -= G.order / lattice.size  # adjoint indices are sorted, so the origin comes first
    return float(np.max(np.abs(V)))


def wexler_raz_is_dual(g: Signal, h: Signal, lattice: Lattice, tol: float = 1e-9) -> bool:
    return wexler_raz_residual(g, h, lattice) <= tol


def figa_sides(f1: Signal, f2: Signal, g1: Signal, g2: Signal, lattice: Lattice) -> tuple[complex, complex]:
    """sum_L V_g1 f1 conj(V_g2 f2)  and  (|L|/|G|) sum_L° V_g1 g2 conj(V_f1 f2)."""
    G = _check_group(f1.group, f2.group, g1.group, g2.group, lattice.group)
    adj = adjoint_subgroup(lattice)
    left = stft(f1, g1).values * np.conj(stft(f2, g2).values)
    right = stft(g2, g1).values * np.conj(stft(f2, f1).values)
    return (
        complex(np.sum(left[lattice.indices])),
        complex(lattice.size / G.order * np.sum(right[adj.indices])),
    )


def ron_shen_report(g: Signal, lattice: Lattice) -> RonShenReport:
    """Frame bounds of G(g, L) next to the Riesz bounds of G(g, L°)."""
    _check_group(g.group, lattice.group)
    frame = frame_bounds(GaborSystem((g,), lattice))
    adj = adjoint_subgroup(lattice)
    Gram = gram_matrix(GaborSystem((g,), adj))
    w, _ = linalg.hermitian_eig(Gram)
    riesz = _diagnostics_from_spectrum(w, Gram.shape)
    ratio = riesz.lower_bound / frame.lower_bound if frame.lower_bound > 0 else float("nan")
    return RonShenReport(
        frame_A=frame.lower_bound,
        frame_B=frame.upper_bound,
        riesz_A=riesz.lower_bound,
        riesz_B=riesz.upper_bound,
        is_frame=frame.is_frame,
        adjoint_is_riesz=riesz.is_frame,
        ratio=ratio,
    )
