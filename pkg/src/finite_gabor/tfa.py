"""Signals on G, time-frequency shifts and the short-time Fourier transform.

Conventions (all inner products are plain sums, no normalization):

* ``(T_k f)(j) = f(j - k)`` and ``(M_r f)(j) = character(j, r) f(j)``;
* ``pi(k, r) = T_k M_r``, so ``(pi(k, r) f)(j) = character(j - k, r) f(j - k)``.

With this ordering ``pi(p) pi(q) = character(q.time, p.freq) pi(p + q)`` and
``pi(p)* = character(p.time, p.freq) pi(-p)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import GroupMismatchError, ShapeError
from .group import GroupSpec

__all__ = [
    "Signal",
    "PlaneFunction",
    "inner",
    "translate",
    "modulate",
    "tf_shift",
    "tf_shift_matrix",
    "tf_shift_stack",
    "stft",
    "stft_adjoint",
]


def _check_group(*groups: GroupSpec) -> GroupSpec:
    first = groups[0]
    for g in groups[1:]:
        if g != first:
            raise GroupMismatchError(f"group mismatch: {first!r} vs {g!r}")
    return first


@dataclass(frozen=True, eq=False)
class Signal:
    """A complex vector indexed by the elements of ``group``."""

    group: GroupSpec
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128).reshape(-1)
        if v.shape != (self.group.order,):
            raise ShapeError(f"signal has {v.size} values, group order is {self.group.order}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def delta(cls, group: GroupSpec, x=None) -> "Signal":
        v = np.zeros(group.order, dtype=np.complex128)
        v[0 if x is None else group.index_of(x)] = 1.0
        return cls(group, v)

    @classmethod
    def random(cls, group: GroupSpec, rng: np.random.Generator, normalize=False) -> "Signal":
        v = rng.standard_normal(group.order) + 1j * rng.standard_normal(group.order)
        if normalize:
            v /= np.linalg.norm(v)
        return cls(group, v)

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def normalized(self) -> "Signal":
        return Signal(self.group, self.values / self.norm())

    def __len__(self):
        return self.group.order

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def _other(self, other):
        if isinstance(other, Signal):
            _check_group(self.group, other.group)
            return other.values
        return NotImplemented

    def __add__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else Signal(self.group, self.values + v)

    def __sub__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else Signal(self.group, self.values - v)

    def __mul__(self, c):
        if np.isscalar(c):
            return Signal(self.group, self.values * c)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, c):
        return Signal(self.group, self.values / c)

    def __neg__(self):
        return Signal(self.group, -self.values)

    def allclose(self, other: "Signal", atol=1e-12) -> bool:
        return self.group == other.group and bool(np.allclose(self.values, other.values, rtol=0, atol=atol))


@dataclass(frozen=True, eq=False)
class PlaneFunction:
    """A complex function on G x Ĝ stored in plane linear-index order."""

    group: GroupSpec
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128).reshape(-1)
        if v.shape != (self.group.order**2,):
            raise ShapeError(f"plane function has {v.size} values, expected {self.group.order ** 2}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def delta(cls, group: GroupSpec, p=None) -> "PlaneFunction":
        v = np.zeros(group.order**2, dtype=np.complex128)
        v[0 if p is None else group.point_index(p)] = 1.0
        return cls(group, v)

    @classmethod
    def random(cls, group: GroupSpec, rng: np.random.Generator) -> "PlaneFunction":
        n = group.order**2
        return cls(group, rng.standard_normal(n) + 1j * rng.standard_normal(n))

    def __getitem__(self, p) -> complex:
        return complex(self.values[self.group.point_index(p)])

    def grid(self) -> np.ndarray:
        """Values as a (|G|, |G|) array indexed by [time index, freq index]."""
        return self.values.reshape(self.group.order, self.group.order)

    def __add__(self, other):
        _check_group(self.group, other.group)
        return PlaneFunction(self.group, self.values + other.values)

    def __sub__(self, other):
        _check_group(self.group, other.group)
        return PlaneFunction(self.group, self.values - other.values)

    def __mul__(self, c):
        if np.isscalar(c):
            return PlaneFunction(self.group, self.values * c)
        return NotImplemented

    __rmul__ = __mul__


def inner(f: Signal, g: Signal) -> complex:
    """<f, g> = sum f(x) conj(g(x))."""
    _check_group(f.group, g.group)
    return complex(np.vdot(g.values, f.values))


def translate(f: Signal, k) -> Signal:
    G = f.group
    t = G.index_of(k)
    return Signal(G, f.values[G.difference_table[:, t]])


def modulate(f: Signal, r) -> Signal:
    G = f.group
    w = G.index_of(r)
    return Signal(G, G.character_table[:, w] * f.values)


def tf_shift(p, f: Signal) -> Signal:
    """pi(p) f = T_{p.time} M_{p.freq} f."""
    p = f.group.point(p)
    return translate(modulate(f, p.freq), p.time)


@lru_cache(maxsize=8)
def tf_shift_stack(group: GroupSpec) -> np.ndarray:
    """All |G|^2 shift matrices, shape (|G|^2, |G|, |G|), in plane index order."""
    n = group.order
    D = group.difference_table
    X = group.character_table
    stack = np.zeros((n, n, n, n), dtype=np.complex128)
    rows = np.arange(n)
    for t in range(n):
        cols = D[:, t]
        # U[j, j - k] = character(j - k, r) for every frequency index r at once
        stack[t, :, rows, cols] = X[cols, :]
    stack = stack.reshape(n * n, n, n)
    stack.setflags(write=False)
    return stack


def tf_shift_matrix(p, group: GroupSpec) -> np.ndarray:
    n = group.order
    t, w = divmod(group.point_index(p), n)
    U = np.zeros((n, n), dtype=np.complex128)
    cols = group.difference_table[:, t]
    U[np.arange(n), cols] = group.character_table[cols, w]
    return U


def stft(f: Signal, g: Signal) -> PlaneFunction:
    """V_g f(p) = <f, pi(p) g> for every plane point p."""
    G = _check_group(f.group, g.group)
    D = G.difference_table
    neg = G.negation_table
    # Y[k, m] = f(m + k) conj(g(m));  V[k, r] = sum_m Y[k, m] conj(character(m, r))
    shifted = f.values[D[:, neg].T]
    Y = shifted * np.conj(g.values)[None, :]
    V = Y @ np.conj(G.character_table)
    return PlaneFunction(G, V)


def stft_adjoint(F: PlaneFunction, g: Signal) -> Signal:
    """sum_p F(p) pi(p) g, the adjoint of ``stft(., g)``."""
    G = _check_group(F.group, g.group)
    n = G.order
    B = F.grid() @ G.character_table  # B[k, m] = sum_r F(k, r) character(m, r)
    D = G.difference_table  # D[j, k] = j - k
    out = np.sum(g.values[D] * B[np.arange(n)[None, :], D], axis=1)
    return Signal(G, out)
