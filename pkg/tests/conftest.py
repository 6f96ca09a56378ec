"""Shared fixtures: concrete groups and independent oracles.

Oracles here deliberately avoid the package's code paths: characters come
from explicit rotation matrices, orbital sums from pointwise complex
products, distances from upper-half-space minimization, dedup counts from
pairwise comparison.
"""

from __future__ import annotations

import cmath
import math
import random

import numpy as np
import pytest

from selberg.geometry import GroupSpec
from selberg.lie import (
    EllipticAngles,
    WeightVector,
    half_sum_positive_roots,
    weyl_group,
)

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# concrete groups


def cyclic_h3_spec(length: float = 2.0, theta: float = 0.0, chi=None) -> GroupSpec:
    """<diag(e^{(l+i theta)/2}, e^{-(l+i theta)/2})> acting on H^3."""
    half = (length + 1j * theta) / 2.0
    g = np.diag([cmath.exp(half), cmath.exp(-half)])
    return GroupSpec(model="H3-complex-2x2", generators=[g], chi=chi)


def elliptic_order3_matrix() -> np.ndarray:
    return np.diag([cmath.exp(1j * math.pi / 3), cmath.exp(-1j * math.pi / 3)])


def triangle_237_spec() -> GroupSpec:
    """Orientation-preserving (2,3,7) triangle group in SL(2,R).

    x is a half-turn at i; y is a third-turn at distance d along the
    imaginary axis, with cosh d = cos(pi/7)/sin(pi/3) making xy of order 7.
    """
    x = np.array([[0.0, 1.0], [-1.0, 0.0]])
    beta = math.pi / 3.0
    d = math.acosh(math.cos(math.pi / 7.0) / math.sin(beta))
    e = math.exp(d / 2.0)
    t = np.diag([e, 1.0 / e])
    r = np.array([[math.cos(beta), math.sin(beta)], [-math.sin(beta), math.cos(beta)]])
    y = t @ r @ np.linalg.inv(t)
    return GroupSpec(model="H2-real-2x2", generators=[x, y])


def schottky_spec(lam: float = 3.0, chi=None, **kwargs) -> GroupSpec:
    """Free purely hyperbolic two-generator group: a diagonal boost and its
    conjugate by a quarter-turn."""
    a = np.diag([lam, 1.0 / lam])
    c, s = math.cos(math.pi / 4), math.sin(math.pi / 4)
    r = np.array([[c, -s], [s, c]])
    b = r @ a @ np.linalg.inv(r)
    return GroupSpec(model="H2-real-2x2", generators=[a, b], chi=chi, **kwargs)


# ---------------------------------------------------------------------------
# random case generators


def random_dominant(rng: random.Random, n: int, max_entry: int = 6, spin: bool = False) -> WeightVector:
    base = sorted((rng.randrange(0, max_entry) for _ in range(n)), reverse=True)
    doubled = [2 * b + (1 if spin else 0) for b in base]
    if n >= 2 and rng.random() < 0.5:
        doubled[-1] = -doubled[-1]
    return WeightVector(tuple(doubled))


def random_angles(
    rng: random.Random, n: int, zero_slots: int = 0, degenerate: bool = False
) -> EllipticAngles:
    vals = [rng.uniform(0.15, TWO_PI - 0.15) for _ in range(n)]
    if degenerate and n >= 2 and rng.random() < 0.5:
        vals[1] = vals[0]  # equal-angle degeneracy
    slots = rng.sample(range(n), min(zero_slots, n))
    for i in slots:
        vals[i] = 0.0
    return EllipticAngles(tuple(vals))


# ---------------------------------------------------------------------------
# oracles


def brute_orbital_value(sigma: WeightVector, angles, n: int, nu: float) -> complex:
    """Pointwise Weyl-sum evaluation: numeric inner products, no expansion."""
    delta = half_sum_positive_roots(n)
    shifted = sigma + delta
    vec = (0.0,) + tuple(angles)
    roots = []
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            for sgn in (-1, 1):
                root = [0] * (n + 1)
                root[i] = 1
                root[j] = sgn
                pairing = sum(c * v for c, v in zip(root, vec))
                if abs(pairing - TWO_PI * round(pairing / TWO_PI)) < 1e-9:
                    roots.append(tuple(root))
    total = 0j
    for s in weyl_group(n):
        k = [d / 2.0 for d in s.apply(shifted).doubled]
        w = [-1j * nu] + [-x for x in k]
        prod = 1 + 0j
        for root in roots:
            prod *= sum(c * wc for c, wc in zip(root, w))
        char = cmath.exp(-1j * sum(x * a for x, a in zip(k, tuple(angles))))
        total += s.det() * prod * char
    return total


def block_rotation_trace(angles) -> float:
    """Trace of the explicit 2n x 2n block-rotation matrix."""
    m = np.zeros((2 * len(tuple(angles)), 2 * len(tuple(angles))))
    for j, a in enumerate(angles):
        c, s = math.cos(a), math.sin(a)
        m[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = [[c, s], [-s, c]]
    return float(np.trace(m))


def halfspace_apply(g: np.ndarray, z: complex, t: float) -> tuple[complex, float]:
    """Action of SL(2,C) on upper half space (z, t), t > 0."""
    a, b, c, d = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
    den = abs(c * z + d) ** 2 + abs(c) ** 2 * t * t
    z2 = ((a * z + b) * (c * z + d).conjugate() + a * c.conjugate() * t * t) / den
    return z2, t / den


def halfspace_distance(p: tuple[complex, float], q: tuple[complex, float]) -> float:
    zp, tp = p
    zq, tq = q
    return math.acosh(1.0 + (abs(zp - zq) ** 2 + (tp - tq) ** 2) / (2.0 * tp * tq))


def displacement_infimum(g: np.ndarray) -> float:
    """Numeric minimization of d(x, g x) over upper half space."""
    from scipy.optimize import minimize

    def cost(params):
        x, y, logt = params
        z, t = complex(x, y), math.exp(logt)
        return halfspace_distance((z, t), halfspace_apply(g, z, t))

    best = math.inf
    for start in ((0.0, 0.0, 0.0), (0.3, -0.2, 0.5), (-0.5, 0.6, -0.7), (1.0, 1.0, 1.0)):
        res = minimize(cost, start, method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000})
        best = min(best, float(res.fun))
    return best


def pairwise_dedupe_count(matrices) -> int:
    """Hash-free projective dedup by quadratic pairwise comparison."""
    reps = []
    for m in matrices:
        if not any(
            np.max(np.abs(m - r)) < 1e-6 or np.max(np.abs(m + r)) < 1e-6
            for r in reps
        ):
            reps.append(m)
    return len(reps)


def reduced_words(alphabet_size: int, max_len: int):
    """All reduced words over generators 1..k and inverses, up to max_len."""
    out = [()]
    frontier = [()]
    letters = [i for g in range(1, alphabet_size + 1) for i in (g, -g)]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for letter in letters:
                if w and w[-1] == -letter:
                    continue
                nxt.append(w + (letter,))
        out.extend(nxt)
        frontier = nxt
    return out


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260809)
