"""Seeded identity suite over a group and a standard battery of lattices.

Each check returns the largest relative residual it observed; boolean
properties report 0.0 when they hold and ``inf`` when they do not.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .gabor import (
    GaborSystem,
    figa_sides,
    frame_bounds,
    frame_type_operator,
    janssen_coefficients,
    janssen_operator,
    ron_shen_report,
    wexler_raz_residual,
)
from .group import (
    GroupSpec,
    Lattice,
    adjoint_subgroup,
    enumerate_subgroup,
    random_generators,
    separable_lattice,
)
from .spreading import (
    operator_of,
    poisson_sides,
    spreading_of,
    symplectic_fourier,
    twisted_convolution,
    twisted_involution,
)
from .tfa import PlaneFunction, Signal, inner, stft, stft_adjoint, tf_shift, tf_shift_matrix
from .windows import (
    canonical_dual,
    canonical_tight,
    dual_optimality_report,
    lowdin_matrix,
    moore_penrose_check,
)

__all__ = ["IdentityResult", "lattice_battery", "frame_lattices", "run_suite", "CHECKS", "rel"]


@dataclass(frozen=True)
class IdentityResult:
    name: str
    residual: float

    def passed(self, tol: float) -> bool:
        return bool(self.residual <= tol)


def rel(x, y) -> float:
    """Relative distance between two scalars or arrays."""
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    scale = max(float(np.linalg.norm(x)), float(np.linalg.norm(y)))
    diff = float(np.linalg.norm(x - y))
    return diff / scale if scale > 0 else diff


def _random_matrix(n, rng):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def _random_point(G: GroupSpec, rng):
    return G.point_at(int(rng.integers(G.order**2)))


def lattice_battery(group: GroupSpec, rng: np.random.Generator, random_sets: int = 5) -> list[tuple[str, Lattice]]:
    """Trivial, full, separable (cyclic groups) and random-generator lattices."""
    out = [
        ("trivial", enumerate_subgroup(group, [])),
        ("full", enumerate_subgroup(group, _full_gens(group))),
    ]
    if group.rank == 1:
        N = group.orders[0]
        divisors = [d for d in range(1, N + 1) if N % d == 0]
        for a in divisors:
            for b in divisors:
                if a in (1, N) and b in (1, N):
                    continue
                out.append((f"separable({a},{b})", separable_lattice(group, a, b)))
    for i in range(random_sets):
        count = int(rng.integers(1, 4))
        out.append((f"random{i}", enumerate_subgroup(group, random_generators(group, rng, count))))
    return out


def _full_gens(group: GroupSpec):
    gens = []
    k = group.rank
    for j in range(k):
        e = [0] * k
        e[j] = 1
        gens.append(group.point(e, [0] * k))
        gens.append(group.point([0] * k, e))
    return gens


def frame_lattices(group: GroupSpec, battery, g: Signal) -> list[tuple[str, Lattice]]:
    return [(name, lat) for name, lat in battery if frame_bounds(GaborSystem((g,), lat)).is_frame]


# -- individual checks --------------------------------------------------------


def check_commutation(G, rng, battery):
    worst = 0.0
    for _ in range(50):
        p, q = _random_point(G, rng), _random_point(G, rng)
        P, Q = tf_shift_matrix(p, G), tf_shift_matrix(q, G)
        worst = max(worst, rel(P @ Q, G.symplectic_character(p, q) * (Q @ P)))
    return worst


def check_composition(G, rng, battery):
    worst = 0.0
    for _ in range(50):
        p, q = _random_point(G, rng), _random_point(G, rng)
        P, Q = tf_shift_matrix(p, G), tf_shift_matrix(q, G)
        worst = max(worst, rel(P @ Q, G.character(q.time, p.freq) * tf_shift_matrix(G.add_points(p, q), G)))
        worst = max(worst, rel(P.conj().T, G.character(p.time, p.freq) * tf_shift_matrix(G.neg_point(p), G)))
    return worst


def check_moyal(G, rng, battery):
    worst = 0.0
    for _ in range(20):
        f1, f2, g1, g2 = (Signal.random(G, rng) for _ in range(4))
        lhs = np.vdot(stft(f2, g2).values, stft(f1, g1).values)
        rhs = G.order * inner(f1, f2) * np.conj(inner(g1, g2))
        worst = max(worst, rel(lhs, rhs))
    return worst


def check_full_plane_frame(G, rng, battery):
    worst = 0.0
    for _ in range(5):
        f, g = Signal.random(G, rng), Signal.random(G, rng)
        out = stft_adjoint(stft(f, g), g)
        worst = max(worst, rel(out.values, G.order * g.norm() ** 2 * f.values))
    return worst


def check_spreading(G, rng, battery):
    worst = 0.0
    for _ in range(20):
        A = _random_matrix(G.order, rng)
        eta = spreading_of(A, G)
        worst = max(worst, rel(operator_of(eta), A))
        worst = max(worst, rel(np.linalg.norm(A) ** 2, G.order * np.sum(np.abs(eta.values) ** 2)))
    return worst


def check_twisted_algebra(G, rng, battery):
    worst = 0.0
    for _ in range(20):
        A, B = _random_matrix(G.order, rng), _random_matrix(G.order, rng)
        eA, eB = spreading_of(A, G), spreading_of(B, G)
        worst = max(worst, rel(spreading_of(A @ B, G).values, twisted_convolution(eA, eB).values))
        worst = max(worst, rel(spreading_of(A.conj().T, G).values, twisted_involution(eA).values))
    return worst


def check_symplectic_ft(G, rng, battery):
    worst = 0.0
    n = G.order
    neg = G.negation_table
    for _ in range(20):
        F = PlaneFunction.random(G, rng)
        Fs = symplectic_fourier(F)
        worst = max(worst, rel(symplectic_fourier(Fs).values, F.values))
        # plain DFT over G x G followed by the quarter rotation (k, r) -> (-r, k)
        H = np.fft.fftn(F.values.reshape(G.orders + G.orders)).reshape(n, n) / n
        worst = max(worst, rel(Fs.grid(), H[neg, :].T))
    return worst


def check_poisson(G, rng, battery):
    worst = 0.0
    for _, lat in battery:
        for _ in range(20):
            left, right = poisson_sides(PlaneFunction.random(G, rng), lat)
            worst = max(worst, rel(left, right))
    return worst


def check_sussman(G, rng, battery):
    worst = 0.0
    for _ in range(10):
        f1, f2, g1, g2 = (Signal.random(G, rng) for _ in range(4))
        P = PlaneFunction(G, stft(f1, g1).values * np.conj(stft(f2, g2).values))
        Q = stft(g2, g1).values * np.conj(stft(f2, f1).values)
        worst = max(worst, rel(symplectic_fourier(P).values, Q))
    return worst


def check_figa(G, rng, battery):
    worst = 0.0
    for _, lat in battery:
        for _ in range(20):
            f1, f2, g1, g2 = (Signal.random(G, rng) for _ in range(4))
            worst = max(worst, rel(*figa_sides(f1, f2, g1, g2, lat)))
    return worst


def check_janssen(G, rng, battery):
    worst = 0.0
    for _, lat in battery:
        g, h = Signal.random(G, rng), Signal.random(G, rng)
        dense = frame_type_operator(g, h, lat)
        worst = max(worst, rel(janssen_operator(janssen_coefficients(g, h, lat), G), dense))
    return worst


def check_wexler_raz(G, rng, battery):
    worst = 0.0
    g = Signal.random(G, rng)
    for _, lat in frame_lattices(G, battery, g):
        dual = canonical_dual(g, lat).window
        worst = max(worst, wexler_raz_residual(g, dual, lat) / (G.order / lat.size))
        adj = adjoint_subgroup(lat)
        if adj.size > 1:
            bad = dual + 0.3 * tf_shift(adj.elements[1], g)
            if wexler_raz_residual(g, bad, lat) <= 1e-6:
                worst = float("inf")
    return worst


def check_ron_shen(G, rng, battery):
    worst = 0.0
    g = Signal.random(G, rng)
    for _, lat in battery:
        rep = ron_shen_report(g, lat)
        if rep.is_frame != rep.adjoint_is_riesz:
            return float("inf")
        if rep.is_frame:
            worst = max(worst, rel(rep.ratio, G.order / lat.size))
    return worst


def check_adjoint_involution(G, rng, battery):
    for _ in range(10):
        lat = enumerate_subgroup(G, random_generators(G, rng, int(rng.integers(1, 4))))
        adj = adjoint_subgroup(lat)
        if lat.size * adj.size != G.order**2 or not adjoint_subgroup(adj).same_elements(lat):
            return float("inf")
    return 0.0


def check_optimality(G, rng, battery):
    g = Signal.random(G, rng)
    for _, lat in frame_lattices(G, battery, g):
        if not dual_optimality_report(g, lat, 20, seed=int(rng.integers(2**31))).all_passed:
            return float("inf")
    return 0.0


def check_canonical_tight(G, rng, battery):
    worst = 0.0
    g = Signal.random(G, rng)
    for _, lat in frame_lattices(G, battery, g):
        d = frame_bounds(GaborSystem((canonical_tight(g, lat),), lat))
        worst = max(worst, abs(d.lower_bound - 1), abs(d.upper_bound - 1))
    return worst


def check_moore_penrose(G, rng, battery):
    worst = 0.0
    g = Signal.random(G, rng)
    for _, lat in frame_lattices(G, battery, g):
        worst = max(worst, moore_penrose_check(g, lat))
    return worst


def check_lowdin(G, rng, battery):
    worst = 0.0
    n = G.order
    for _ in range(5):
        m = max(1, n // 2)
        C = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
        L = lowdin_matrix(C)
        worst = max(worst, rel(L.conj().T @ L, np.eye(m)))
        perm = rng.permutation(m)
        worst = max(worst, rel(lowdin_matrix(C[:, perm]), L[:, perm]))
        best = np.linalg.norm(C - L)
        for _ in range(20):
            Q, _ = np.linalg.qr(rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m)))
            if np.linalg.norm(C - Q) < best:
                return float("inf")
    return worst


CHECKS: dict[str, Callable] = {
    "commutation": check_commutation,
    "composition": check_composition,
    "moyal": check_moyal,
    "full_plane_frame": check_full_plane_frame,
    "spreading_parseval": check_spreading,
    "twisted_algebra": check_twisted_algebra,
    "symplectic_ft": check_symplectic_ft,
    "poisson": check_poisson,
    "sussman": check_sussman,
    "figa": check_figa,
    "janssen": check_janssen,
    "wexler_raz": check_wexler_raz,
    "ron_shen": check_ron_shen,
    "adjoint_involution": check_adjoint_involution,
    "optimality": check_optimality,
    "canonical_tight": check_canonical_tight,
    "moore_penrose": check_moore_penrose,
    "lowdin": check_lowdin,
}


def run_suite(group: GroupSpec, seed: int = 0) -> list[IdentityResult]:
    battery = lattice_battery(group, np.random.default_rng([seed, 0]))
    results = []
    for i, (name, check) in enumerate(CHECKS.items(), start=1):
        rng = np.random.default_rng([seed, i])
        results.append(IdentityResult(name, float(check(group, rng, battery))))
    return results
