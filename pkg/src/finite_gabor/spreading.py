"""Spreading representation, twisted convolution and symplectic Fourier analysis.

Every operator ``A`` on signals over G expands as ``A = sum_p eta_A(p) pi(p)``
with ``eta_A(p) = |G|^-1 <A, pi(p)>_Fro``.  The twisted convolution and the
twisted involution are the operations on coefficient arrays that mirror
operator composition and adjoints under this expansion.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping

import numpy as np

from . import linalg
from .errors import ShapeError
from .group import GroupSpec, Lattice, TFPoint, adjoint_subgroup
from .tfa import PlaneFunction, Signal, _check_group, tf_shift_matrix, tf_shift_stack

__all__ = [
    "PlaneFunction",
    "SpreadingFunction",
    "spreading_of",
    "operator_of",
    "kernel_to_spreading",
    "spreading_to_kernel",
    "twisted_convolution",
    "twisted_involution",
    "lattice_twisted_convolution",
    "best_tf_approximation",
    "conjugate_by_shift",
    "rank_one",
    "symplectic_fourier",
    "symplectic_translate",
    "symplectic_modulate",
    "poisson_sides",
]

# Spreading coefficients and arbitrary plane functions share one layout.
SpreadingFunction = PlaneFunction


def _operator(A, group: GroupSpec) -> np.ndarray:
    A = linalg.as_matrix(A)
    if A.shape != (group.order, group.order):
        raise ShapeError(f"operator has shape {A.shape}, expected {(group.order, group.order)}")
    return A


def spreading_of(A, group: GroupSpec) -> PlaneFunction:
    """Coefficients of ``A`` in the basis of time-frequency shifts."""
    A = _operator(A, group)
    stack = tf_shift_stack(group)
    eta = np.einsum("pij,ij->p", stack.conj(), A) / group.order
    return PlaneFunction(group, eta)


def operator_of(eta: PlaneFunction) -> np.ndarray:
    """sum_p eta(p) pi(p)."""
    return np.tensordot(eta.values, tf_shift_stack(eta.group), axes=1)


def kernel_to_spreading(K, group: GroupSpec) -> PlaneFunction:
    """Spreading function from the kernel (matrix entries) of an operator.

    eta(k, r) = |G|^-1 sum_i K[i + k, i] conj(character(i, r)).
    """
    K = _operator(K, group)
    n = group.order
    D = group.difference_table
    rows = D[:, group.negation_table].T  # rows[k, i] = index of i + k
    diagonals = K[rows, np.arange(n)[None, :]]
    return PlaneFunction(group, diagonals @ np.conj(group.character_table) / n)


def spreading_to_kernel(eta: PlaneFunction) -> np.ndarray:
    """Inverse of :func:`kernel_to_spreading`: K[j, i] = sum_r eta(j - i, r) character(i, r)."""
    G = eta.group
    E = eta.grid() @ G.character_table
    n = G.order
    return E[G.difference_table, np.arange(n)[None, :]]


def twisted_convolution(a: PlaneFunction, b: PlaneFunction) -> PlaneFunction:
    """Coefficient product matching operator composition.

    (a # b)(m) = sum_p a(p) b(m - p) character((m - p).time, p.freq), so that
    ``operator_of(a # b) == operator_of(a) @ operator_of(b)``.
    """
    G = _check_group(a.group, b.group)
    n = G.order
    X = G.character_table
    Xc = np.conj(X)
    D = G.difference_table
    A, B = a.grid(), b.grid()
    B_hat = B @ Xc
    out = np.zeros((n, n), dtype=np.complex128)
    for k in range(n):
        # for each time row u = m - k: convolve r -> a(k, r) character(u, r) with b(u, .)
        alpha_hat = (A[k][None, :] * X) @ Xc
        c_k = (alpha_hat * B_hat) @ X / n
        out += c_k[D[:, k]]
    return PlaneFunction(G, out)


def twisted_involution(a: PlaneFunction) -> PlaneFunction:
    """a*(p) = character(p.time, p.freq) conj(a(-p)); mirrors the operator adjoint."""
    G = a.group
    neg = G.negation_table
    grid = a.grid()[np.ix_(neg, neg)]
    return PlaneFunction(G, G.character_table * np.conj(grid))


def lattice_twisted_convolution(
    a: Mapping[TFPoint, complex], b: Mapping[TFPoint, complex], lattice: Lattice
) -> dict[TFPoint, complex]:
    """Twisted convolution of two coefficient maps supported on ``lattice``.

    Same phase convention as :func:`twisted_convolution`; the lattice being a
    subgroup, the product of two maps on it stays on it.
    """
    G = lattice.group
    pts = lattice.elements
    missing = [p for p in pts if p not in a or p not in b]
    if missing or len(a) != len(pts) or len(b) != len(pts):
        raise ShapeError("coefficient maps must be defined exactly on the lattice points")
    av = np.array([a[p] for p in pts], dtype=np.complex128)
    bv = np.array([b[p] for p in pts], dtype=np.complex128)
    n = G.order
    idx = lattice.indices
    t_idx, f_idx = np.divmod(idx, n)
    D = G.difference_table
    pos = np.full(n * n, -1, dtype=np.int64)
    pos[idx] = np.arange(len(idx))
    # diff[l, m] = position of lambda_l - mu_m inside the lattice
    dt = D[t_idx[:, None], t_idx[None, :]]
    df = D[f_idx[:, None], f_idx[None, :]]
    diff = pos[dt * n + df]
    phase = G.character_table[t_idx[None, :], df]  # character(mu.time, (lambda - mu).freq)
    out = np.sum(av[diff] * bv[None, :] * phase, axis=1)
    return {p: complex(v) for p, v in zip(pts, out)}


def best_tf_approximation(A, points: Iterable, group: GroupSpec) -> np.ndarray:
    """Frobenius-best approximation of A from span{pi(p) : p in points}."""
    A = _operator(A, group)
    eta = spreading_of(A, group)
    idx = sorted({group.point_index(p) for p in points})
    out = np.zeros_like(A)
    if idx:
        stack = tf_shift_stack(group)
        out = np.tensordot(eta.values[idx], stack[idx], axes=1)
    return out


def conjugate_by_shift(A, p, group: GroupSpec) -> np.ndarray:
    A = _operator(A, group)
    U = tf_shift_matrix(p, group)
    return U @ A @ U.conj().T


def rank_one(g: Signal, h: Signal) -> np.ndarray:
    """Matrix of f -> <f, h> g."""
    _check_group(g.group, h.group)
    return np.outer(g.values, np.conj(h.values))


def symplectic_fourier(F: PlaneFunction) -> PlaneFunction:
    """F_s(p) = |G|^-1 sum_q symplectic_character(p, q) F(q); an involution."""
    G = F.group
    X = G.character_table
    return PlaneFunction(G, np.conj(X) @ F.grid().T @ X / G.order)


def symplectic_translate(F: PlaneFunction, p) -> PlaneFunction:
    """(T^s_p F)(q) = F(q - p)."""
    G = F.group
    p = G.point(p)
    D = G.difference_table
    t, w = G.index_of(p.time), G.index_of(p.freq)
    return PlaneFunction(G, F.grid()[np.ix_(D[:, t], D[:, w])])


def symplectic_modulate(F: PlaneFunction, p) -> PlaneFunction:
    """(M^s_p F)(q) = symplectic_character(q, p) F(q)."""
    G = F.group
    p = G.point(p)
    X = G.character_table
    t, w = G.index_of(p.time), G.index_of(p.freq)
    phase = np.outer(np.conj(X[:, w]), X[t, :])
    return PlaneFunction(G, phase * F.grid())


def poisson_sides(F: PlaneFunction, lattice: Lattice) -> tuple[complex, complex]:
    """Both sides of the symplectic Poisson summation formula.

    sum_{lambda in L} F(lambda) = (|L| / |G|) sum_{mu in L°} F_s(mu)
    """
    G = _check_group(F.group, lattice.group)
    adj = adjoint_subgroup(lattice)
    left = complex(np.sum(F.values[lattice.indices]))
    Fs = symplectic_fourier(F)
    right = complex(lattice.size / G.order * np.sum(Fs.values[adj.indices]))
    return left, right
