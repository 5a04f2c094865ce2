import numpy as np
import pytest

import oracles
from conftest import crandn
from finite_gabor import GroupSpec, PlaneFunction, Signal, inner, stft
from finite_gabor.errors import ShapeError
from finite_gabor.group import enumerate_subgroup, separable_lattice
from finite_gabor.spreading import (
    best_tf_approximation,
    conjugate_by_shift,
    kernel_to_spreading,
    lattice_twisted_convolution,
    operator_of,
    poisson_sides,
    rank_one,
    spreading_of,
    spreading_to_kernel,
    symplectic_fourier,
    symplectic_modulate,
    symplectic_translate,
    twisted_convolution,
    twisted_involution,
)
from finite_gabor.tfa import tf_shift, tf_shift_matrix


def _random_point(G, rng):
    return G.point_at(int(rng.integers(G.order**2)))


def test_spreading_basis_elements(group):
    G = group
    assert np.allclose(spreading_of(np.eye(G.order), G).values, PlaneFunction.delta(G).values)
    for p in G.points()[:: max(1, G.order // 2)]:
        eta = spreading_of(tf_shift_matrix(p, G), G)
        assert np.allclose(eta.values, PlaneFunction.delta(G, p).values, atol=1e-14)


def test_spreading_matches_linear_solve(group, rng):
    A = crandn(rng, group.order, group.order)
    assert np.allclose(spreading_of(A, group).values, oracles.spreading_by_solve(A, group.orders), atol=1e-12)


def test_roundtrip_and_parseval(group, rng):
    G = group
    for _ in range(10):
        A = crandn(rng, G.order, G.order)
        eta = spreading_of(A, G)
        assert np.linalg.norm(operator_of(eta) - A) <= 1e-12 * np.linalg.norm(A)
        assert np.linalg.norm(A) ** 2 == pytest.approx(G.order * np.sum(np.abs(eta.values) ** 2), rel=1e-10)
    assert np.allclose(operator_of(PlaneFunction.delta(G)), np.eye(G.order))
    assert np.allclose(operator_of(3.5 * PlaneFunction.delta(G)), 3.5 * np.eye(G.order))


def test_shape_mismatch():
    with pytest.raises(ShapeError):
        spreading_of(np.eye(3), GroupSpec((4,)))


def test_kernel_forms(group, rng):
    G = group
    assert np.allclose(kernel_to_spreading(np.eye(G.order), G).values, PlaneFunction.delta(G).values)
    for _ in range(10):
        K = crandn(rng, G.order, G.order)
        eta = kernel_to_spreading(K, G)
        assert np.allclose(eta.values, spreading_of(K, G).values, atol=1e-11)
        assert np.allclose(spreading_to_kernel(eta), K, atol=1e-11)


def test_twisted_convolution_units_and_deltas(group, rng):
    G = group
    a = PlaneFunction.random(G, rng)
    one = PlaneFunction.delta(G)
    assert np.allclose(twisted_convolution(one, a).values, a.values)
    assert np.allclose(twisted_convolution(a, one).values, a.values)
    for _ in range(5):
        p, q = _random_point(G, rng), _random_point(G, rng)
        got = twisted_convolution(PlaneFunction.delta(G, p), PlaneFunction.delta(G, q))
        want = G.character(q.time, p.freq) * PlaneFunction.delta(G, G.add_points(p, q)).values
        assert np.allclose(got.values, want, atol=1e-13)
        assert np.allclose(tf_shift_matrix(p, G) @ tf_shift_matrix(q, G), operator_of(got), atol=1e-13)


def test_twisted_convolution_direct_sum(rng):
    G = GroupSpec((2, 3))
    orders = G.orders
    pts = oracles.plane(orders)
    pos = {p: i for i, p in enumerate(pts)}
    a, b = PlaneFunction.random(G, rng), PlaneFunction.random(G, rng)
    want = np.zeros(len(pts), dtype=complex)
    for m in pts:
        for p in pts:
            d = (oracles.sub(m[0], p[0], orders), oracles.sub(m[1], p[1], orders))
            want[pos[m]] += a.values[pos[p]] * b.values[pos[d]] * oracles.chi(d[0], p[1], orders)
    assert np.allclose(twisted_convolution(a, b).values, want)


def test_homomorphism(group, rng):
    G = group
    for _ in range(10):
        A, B = crandn(rng, G.order, G.order), crandn(rng, G.order, G.order)
        eA, eB = spreading_of(A, G), spreading_of(B, G)
        assert np.allclose(spreading_of(A @ B, G).values, twisted_convolution(eA, eB).values, atol=1e-10)
        assert np.allclose(spreading_of(A.conj().T, G).values, twisted_involution(eA).values, atol=1e-12)


def test_involution(group, rng):
    G = group
    one = PlaneFunction.delta(G)
    assert np.allclose(twisted_involution(one).values, one.values)
    a = PlaneFunction.random(G, rng)
    assert np.allclose(twisted_involution(twisted_involution(a)).values, a.values)
    assert np.allclose(operator_of(twisted_involution(a)), operator_of(a).conj().T, atol=1e-12)


def test_lattice_twisted_convolution_singletons(rng):
    G = GroupSpec((8,))
    lat = separable_lattice(G, 2, 2)
    for _ in range(5):
        p, q = (lat.elements[int(i)] for i in rng.integers(lat.size, size=2))
        a = {x: complex(x == p) for x in lat}
        b = {x: complex(x == q) for x in lat}
        out = lattice_twisted_convolution(a, b, lat)
        want = G.character(q.time, p.freq)
        s = G.add_points(p, q)
        assert out[s] == pytest.approx(want)
        assert sum(abs(v) for x, v in out.items() if x != s) == pytest.approx(0)


def test_lattice_twisted_convolution_matches_global(rng):
    G = GroupSpec((2, 4))
    lat = enumerate_subgroup(G, [((1, 0), (0, 2)), ((0, 2), (1, 0))])
    a = {p: complex(v) for p, v in zip(lat, crandn(rng, lat.size))}
    b = {p: complex(v) for p, v in zip(lat, crandn(rng, lat.size))}

    def embed(c):
        v = np.zeros(G.order**2, dtype=complex)
        for p, x in c.items():
            v[G.point_index(p)] = x
        return PlaneFunction(G, v)

    glob = twisted_convolution(embed(a), embed(b))
    assert np.allclose(embed(lattice_twisted_convolution(a, b, lat)).values, glob.values)
    with pytest.raises(ShapeError):
        lattice_twisted_convolution({}, b, lat)


def test_best_tf_approximation(group, rng):
    G = group
    A = crandn(rng, G.order, G.order)
    assert np.allclose(best_tf_approximation(A, G.points(), G), A)
    assert np.allclose(best_tf_approximation(A, [], G), 0)
    origin = G.point_at(0)
    assert np.allclose(best_tf_approximation(A, [origin], G), np.trace(A) / G.order * np.eye(G.order))
    pts = [_random_point(G, rng) for _ in range(3)]
    approx = best_tf_approximation(A, pts, G)
    for p in pts:
        assert abs(np.vdot(tf_shift_matrix(p, G), A - approx)) < 1e-10


def test_rank_one(group, rng):
    G = group
    d = rank_one(Signal.delta(G), Signal.delta(G))
    assert d[0, 0] == 1 and np.count_nonzero(d) == 1
    g1, h1, g2, h2 = (Signal.random(G, rng) for _ in range(4))
    assert np.allclose(rank_one(g1, h1) @ rank_one(g2, h2), inner(g2, h1) * rank_one(g1, h2))
    eta = spreading_of(rank_one(g1, h1), G)
    assert np.allclose(eta.values, stft(g1, h1).values / G.order)


def test_conjugate_by_shift(group, rng):
    G = group
    A = crandn(rng, G.order, G.order)
    assert np.allclose(conjugate_by_shift(A, G.point_at(0), G), A)
    g, h = Signal.random(G, rng), Signal.random(G, rng)
    for _ in range(5):
        p = _random_point(G, rng)
        got = conjugate_by_shift(rank_one(g, h), p, G)
        assert np.allclose(got, rank_one(tf_shift(p, g), tf_shift(p, h)))
        eta = spreading_of(conjugate_by_shift(A, p, G), G)
        want = symplectic_modulate(spreading_of(A, G), G.neg_point(p))
        assert np.allclose(eta.values, want.values, atol=1e-11)


def test_symplectic_fourier_oracles(group, rng):
    G = group
    ones = PlaneFunction(G, np.ones(G.order**2))
    assert np.allclose(symplectic_fourier(ones).values, G.order * PlaneFunction.delta(G).values)
    F = PlaneFunction.random(G, rng)
    Fs = symplectic_fourier(F)
    assert np.allclose(symplectic_fourier(Fs).values, F.values, atol=1e-12)
    assert np.allclose(Fs.values, oracles.symplectic_fourier(F.values, G.orders), atol=1e-12)


def test_symplectic_fourier_is_rotated_dft(group, rng):
    G = group
    n = G.order
    F = PlaneFunction.random(G, rng)
    H = np.fft.fftn(F.values.reshape(G.orders + G.orders)).reshape(n, n) / n
    neg = [G.index_of(G.neg(G.element_at(i))) for i in range(n)]
    want = np.array([[H[neg[r], k] for r in range(n)] for k in range(n)])
    assert np.allclose(symplectic_fourier(F).grid(), want, atol=1e-12)


def test_symplectic_shifts(group, rng):
    G = group
    F = PlaneFunction.random(G, rng)
    origin = G.point_at(0)
    assert np.allclose(symplectic_translate(F, origin).values, F.values)
    assert np.allclose(symplectic_modulate(F, origin).values, F.values)
    for _ in range(5):
        p, q = _random_point(G, rng), _random_point(G, rng)
        lhs = symplectic_fourier(symplectic_translate(F, p))
        rhs = symplectic_modulate(symplectic_fourier(F), p)
        assert np.allclose(lhs.values, rhs.values, atol=1e-12)
        tm = symplectic_translate(symplectic_modulate(F, q), p)
        mt = symplectic_modulate(symplectic_translate(F, p), q)
        assert np.allclose(tm.values, G.symplectic_character(q, p) * mt.values, atol=1e-12)


def test_poisson(rng):
    G = GroupSpec((8,))
    F = PlaneFunction.random(G, rng)
    full = enumerate_subgroup(G, [(1, 0), (0, 1)])
    left, right = poisson_sides(F, full)
    assert left == pytest.approx(np.sum(F.values)) and right == pytest.approx(left)
    left, right = poisson_sides(F, enumerate_subgroup(G, []))
    assert left == F.values[0] and right == pytest.approx(left)
    left, right = poisson_sides(F, separable_lattice(G, 2, 2))
    want = sum(F[(k, r)] for k in range(0, 8, 2) for r in range(0, 8, 2))
    assert left == pytest.approx(want)
    assert abs(left - right) <= 1e-11 * abs(left)
