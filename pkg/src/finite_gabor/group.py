"""Finite abelian groups as products of cyclic groups and the time-frequency plane.

A group ``G = Z_{n_1} x ... x Z_{n_k}`` is described by its ordered list of
cyclic orders.  Elements are tuples of canonical residues; the dual group is
identified with ``G`` coordinatewise.  Linear indices are mixed-radix with the
last coordinate running fastest, and a plane point ``(time, freq)`` has index
``index_of(time) * |G| + index_of(freq)``.  Every matrix and array layout in
the package follows from these two conventions.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .errors import GroupMismatchError, InvalidGroupError, InvalidLatticeError

__all__ = [
    "GroupSpec",
    "TFPoint",
    "Lattice",
    "make_group",
    "enumerate_subgroup",
    "separable_lattice",
    "adjoint_subgroup",
    "is_isotropic",
    "heisenberg_multiply",
    "minimal_generators",
    "random_generators",
]


class TFPoint(NamedTuple):
    """A point of the time-frequency plane G x Ĝ."""

    time: tuple[int, ...]
    freq: tuple[int, ...]


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class GroupSpec:
    orders: tuple[int, ...]

    def __post_init__(self):
        try:
            orders = tuple(int(n) for n in self.orders)
        except (TypeError, ValueError) as exc:
            raise InvalidGroupError(f"orders must be integers, got {self.orders!r}") from exc
        if not orders:
            raise InvalidGroupError("a group needs at least one cyclic factor")
        if any(n < 1 for n in orders):
            raise InvalidGroupError(f"every cyclic order must be >= 1, got {list(orders)}")
        object.__setattr__(self, "orders", orders)

    def __repr__(self):
        return f"GroupSpec({list(self.orders)})"

    @property
    def rank(self) -> int:
        return len(self.orders)

    @cached_property
    def order(self) -> int:
        return math.prod(self.orders)

    @cached_property
    def _lcm(self) -> int:
        return math.lcm(*self.orders)

    # -- elements -----------------------------------------------------------

    def element(self, x) -> tuple[int, ...]:
        """Canonical representative of ``x`` (an int is accepted for k = 1)."""
        if isinstance(x, (int, np.integer)):
            x = (int(x),)
        x = tuple(int(c) for c in x)
        if len(x) != self.rank:
            raise GroupMismatchError(
                f"element {x} has {len(x)} coordinates, group {list(self.orders)} needs {self.rank}"
            )
        return tuple(c % n for c, n in zip(x, self.orders))

    def point(self, time, freq=None) -> TFPoint:
        """Canonical plane point; accepts ``point((k, r))`` or ``point(k, r)``."""
        if freq is None:
            if isinstance(time, TFPoint) or (
                len(time) == 2 and not isinstance(time[0], (int, np.integer))
            ):
                time, freq = time
            else:
                flat = [int(c) for c in time]
                if len(flat) == 2 * self.rank:
                    time, freq = flat[: self.rank], flat[self.rank :]
                elif len(flat) == 2 and self.rank == 1:
                    time, freq = flat[:1], flat[1:]
                else:
                    raise GroupMismatchError(
                        f"plane point {time!r} does not match group {list(self.orders)}"
                    )
        return TFPoint(self.element(time), self.element(freq))

    def index_of(self, x) -> int:
        return int(np.ravel_multi_index(self.element(x), self.orders))

    def element_at(self, i: int) -> tuple[int, ...]:
        if not 0 <= i < self.order:
            raise IndexError(f"index {i} out of range for |G| = {self.order}")
        return tuple(int(c) for c in np.unravel_index(i, self.orders))

    def point_index(self, p) -> int:
        p = self.point(p)
        return self.index_of(p.time) * self.order + self.index_of(p.freq)

    def point_at(self, i: int) -> TFPoint:
        if not 0 <= i < self.order**2:
            raise IndexError(f"index {i} out of range for |G|^2 = {self.order ** 2}")
        t, f = divmod(i, self.order)
        return TFPoint(self.element_at(t), self.element_at(f))

    def add(self, x, y):
        x, y = self.element(x), self.element(y)
        return tuple((a + b) % n for a, b, n in zip(x, y, self.orders))

    def neg(self, x):
        return tuple((-a) % n for a, n in zip(self.element(x), self.orders))

    def add_points(self, p, q) -> TFPoint:
        p, q = self.point(p), self.point(q)
        return TFPoint(self.add(p.time, q.time), self.add(p.freq, q.freq))

    def neg_point(self, p) -> TFPoint:
        p = self.point(p)
        return TFPoint(self.neg(p.time), self.neg(p.freq))

    def points(self) -> list[TFPoint]:
        return [self.point_at(i) for i in range(self.order**2)]

    # -- characters ---------------------------------------------------------

    def character(self, x, w) -> complex:
        """Value of the character indexed by ``w`` at ``x``."""
        x, w = self.element(x), self.element(w)
        frac = sum(((a * b) % n) / n for a, b, n in zip(x, w, self.orders))
        return complex(np.exp(2j * np.pi * (frac % 1.0)))

    def symplectic_character(self, p, q) -> complex:
        """exp(2 pi i Omega(p, q)) with Omega((k,r),(l,s)) = l.r - k.s."""
        p, q = self.point(p), self.point(q)
        return self.character(q.time, p.freq) * self.character(p.time, q.freq).conjugate()

    def omega_numerator(self, p, q) -> int:
        """Exact symplectic form scaled to an integer modulo lcm(orders).

        ``symplectic_character(p, q) == exp(2 pi i m / L)`` with ``m`` the
        returned value and ``L = lcm(orders)``; used for exact annihilator tests.
        """
        p, q = self.point(p), self.point(q)
        L = self._lcm
        m = 0
        for j, n in enumerate(self.orders):
            m += (L // n) * (q.time[j] * p.freq[j] - p.time[j] * q.freq[j])
        return m % L

    # -- cached tables ------------------------------------------------------

    @cached_property
    def coords(self) -> np.ndarray:
        """(|G|, k) integer array of element coordinates in linear-index order."""
        c = np.array(list(np.ndindex(*self.orders)), dtype=np.int64).reshape(self.order, self.rank)
        return _readonly(c)

    @cached_property
    def character_table(self) -> np.ndarray:
        """X[x, w] = character(x, w); symmetric unitary-up-to-scale matrix."""
        c = self.coords
        n = np.asarray(self.orders, dtype=np.int64)
        num = np.zeros((self.order, self.order), dtype=np.float64)
        for j in range(self.rank):
            num += np.mod(np.outer(c[:, j], c[:, j]), n[j]) / n[j]
        return _readonly(np.exp(2j * np.pi * np.mod(num, 1.0)))

    @cached_property
    def difference_table(self) -> np.ndarray:
        """D[x, y] = linear index of x - y."""
        c = self.coords
        diff = np.mod(c[:, None, :] - c[None, :, :], np.asarray(self.orders))
        idx = np.ravel_multi_index(tuple(diff[..., j] for j in range(self.rank)), self.orders)
        return _readonly(np.asarray(idx, dtype=np.int64))

    @cached_property
    def negation_table(self) -> np.ndarray:
        return _readonly(self.difference_table[0].copy())

    @cached_property
    def plane_coords(self) -> np.ndarray:
        """(|G|^2, 2k) coordinates (time then freq) in plane linear-index order."""
        c = self.coords
        t = np.repeat(c, self.order, axis=0)
        f = np.tile(c, (self.order, 1))
        return _readonly(np.hstack([t, f]))

    def plane_omega(self, p) -> np.ndarray:
        """Exact integer Omega(p, q) * L mod L for every plane point q."""
        p = self.point(p)
        L = self._lcm
        pc = self.plane_coords
        k = self.rank
        m = np.zeros(self.order**2, dtype=np.int64)
        for j, n in enumerate(self.orders):
            m += (L // n) * (pc[:, j] * p.freq[j] - p.time[j] * pc[:, k + j])
        return np.mod(m, L)

    def _plane_index_array(self, coords: np.ndarray) -> np.ndarray:
        moduli = np.asarray(self.orders + self.orders)
        coords = np.mod(coords, moduli)
        return np.ravel_multi_index(tuple(coords[..., j] for j in range(2 * self.rank)), self.orders + self.orders)


def make_group(orders: Sequence[int]) -> GroupSpec:
    return GroupSpec(tuple(orders))


@dataclass(frozen=True)
class Lattice:
    """A subgroup of G x Ĝ together with the generators it was built from."""

    group: GroupSpec
    generators: tuple[TFPoint, ...]
    elements: tuple[TFPoint, ...] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def indices(self) -> np.ndarray:
        """Sorted plane linear indices of the elements."""
        return _readonly(np.array([self.group.point_index(p) for p in self.elements], dtype=np.int64))

    @cached_property
    def _index_set(self) -> frozenset:
        return frozenset(int(i) for i in self.indices)

    def __contains__(self, p) -> bool:
        return self.group.point_index(p) in self._index_set

    def same_elements(self, other: "Lattice") -> bool:
        return self.group == other.group and self._index_set == other._index_set


def _closure_indices(group: GroupSpec, generators: Sequence[TFPoint]) -> np.ndarray:
    reached = np.zeros(group.order**2, dtype=bool)
    reached[0] = True
    frontier = np.array([0], dtype=np.int64)
    pc = group.plane_coords
    gens = [np.array(g.time + g.freq, dtype=np.int64) for g in generators]
    while frontier.size:
        new = []
        for g in gens:
            nxt = group._plane_index_array(pc[frontier] + g)
            nxt = nxt[~reached[nxt]]
            reached[nxt] = True
            new.append(nxt)
        frontier = np.unique(np.concatenate(new)) if new else np.empty(0, dtype=np.int64)
    return np.flatnonzero(reached)


def _lattice_from_indices(group: GroupSpec, generators, indices) -> Lattice:
    elements = tuple(group.point_at(int(i)) for i in indices)
    return Lattice(group, tuple(generators), elements)


def enumerate_subgroup(group: GroupSpec, generators: Iterable) -> Lattice:
    """Smallest subgroup of G x Ĝ containing ``generators``."""
    gens = tuple(group.point(g) for g in generators)
    return _lattice_from_indices(group, gens, _closure_indices(group, gens))


def separable_lattice(group: GroupSpec, a: int, b: int) -> Lattice:
    """The product lattice aZ_N x bZ_N of a cyclic group Z_N."""
    if group.rank != 1:
        raise InvalidLatticeError(f"separable lattices need a single cyclic factor, got {list(group.orders)}")
    N = group.orders[0]
    if a < 1 or b < 1 or N % a or N % b:
        raise InvalidLatticeError(f"steps a={a}, b={b} must both divide N={N}")
    return enumerate_subgroup(group, [((a,), (0,)), ((0,), (b,))])


def minimal_generators(group: GroupSpec, indices: np.ndarray) -> tuple[TFPoint, ...]:
    """Greedy small generating set for the subgroup with the given element indices."""
    gens: list[TFPoint] = []
    span = np.zeros(group.order**2, dtype=bool)
    span[0] = True
    for i in indices:
        if span[i]:
            continue
        gens.append(group.point_at(int(i)))
        span[:] = False
        span[_closure_indices(group, gens)] = True
    return tuple(gens)


def adjoint_subgroup(lattice: Lattice) -> Lattice:
    """All plane points whose symplectic character is trivial on the lattice.

    Testing the generators is enough: for fixed mu the map
    lambda -> symplectic_character(lambda, mu) is a character of the lattice.
    """
    group = lattice.group
    mask = np.ones(group.order**2, dtype=bool)
    for g in lattice.generators:
        mask &= group.plane_omega(g) == 0
    indices = np.flatnonzero(mask)
    return _lattice_from_indices(group, minimal_generators(group, indices), indices)


def is_isotropic(lattice: Lattice) -> bool:
    adj = adjoint_subgroup(lattice)
    return lattice._index_set <= adj._index_set


def heisenberg_multiply(group: GroupSpec, h1, h2):
    """Product in the finite Heisenberg group; elements are ``(tau, k, r)``."""
    tau1, k1, r1 = h1
    tau2, k2, r2 = h2
    phase = tau1 * tau2 * group.character(k2, r1)
    return complex(phase), group.add(k1, k2), group.add(r1, r2)


def heisenberg_inverse(group: GroupSpec, h):
    tau, k, r = h
    return complex(np.conj(tau) * group.character(k, r)), group.neg(k), group.neg(r)


def random_generators(group: GroupSpec, rng: np.random.Generator, count: int) -> list[TFPoint]:
    idx = rng.integers(0, group.order**2, size=count)
    return [group.point_at(int(i)) for i in idx]
