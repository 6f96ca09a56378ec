"""Randomized property checks runnable from the CLI.

Each check draws cases from a seeded generator and verifies a structural
claim against a small independent computation (explicit matrices, direct
sums, pointwise products), printing one line per check.  This is a smoke
suite; the full oracle-backed suite lives in the package tests.
"""

from __future__ import annotations

import cmath
import math
import random

import numpy as np

from .heat import calibrate_plancherel
from .lie import EllipticAngles, WeightVector, weyl_character, weyl_group
from .orbital import orbital_polynomial, weyl_A_invariance_gap
from .zeta import partial_fraction_coeffs


def _random_dominant(rng: random.Random, n: int) -> WeightVector:
    base = sorted((rng.randrange(0, 7) for _ in range(n)), reverse=True)
    if n >= 2 and rng.random() < 0.5:
        base[-1] = -base[-1]  # still dominant: only |last| is constrained
    return WeightVector(tuple(2 * b for b in base))


def _random_angles(rng: random.Random, n: int, zero_slots: int = 0) -> EllipticAngles:
    vals = [rng.uniform(0.15, 2.0 * math.pi - 0.15) for _ in range(n)]
    for i in range(min(zero_slots, n)):
        vals[i] = 0.0
    return EllipticAngles(tuple(vals))


def _check_weyl_counts(rng, emit) -> bool:
    ok = True
    for n in (1, 2, 3, 4):
        got = len(weyl_group(n))
        want = 2 ** (n - 1) * math.factorial(n)
        ok &= got == want
    emit(f"{'ok' if ok else 'FAIL'} weyl-group-order")
    return ok


def _check_character_matrix_trace(rng, emit) -> bool:
    ok = True
    for _ in range(25):
        n = rng.choice((2, 3))
        angles = _random_angles(rng, n)
        std = WeightVector.from_coords([1] + [0] * (n - 1))
        blocks = np.zeros((2 * n, 2 * n))
        for j, a in enumerate(angles):
            c, s = math.cos(a), math.sin(a)
            blocks[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = [[c, s], [-s, c]]
        try:
            value = weyl_character(std, angles)
        except Exception:
            continue
        ok &= abs(value - np.trace(blocks)) < 1e-9
    emit(f"{'ok' if ok else 'FAIL'} character-vs-rotation-trace")
    return ok


def _check_evenness(rng, emit) -> bool:
    ok = True
    for _ in range(40):
        n = rng.choice((1, 2, 3))
        zero_slots = rng.choice((0, 0, 1, n))
        sigma = _random_dominant(rng, n)
        angles = _random_angles(rng, n, zero_slots)
        try:
            poly = orbital_polynomial(sigma, angles, n)
        except Exception:
            ok = False
            continue
        ok &= poly.even_residual < 1e-10
    emit(f"{'ok' if ok else 'FAIL'} orbital-evenness")
    return ok


def _check_flip_invariance(rng, emit) -> bool:
    ok = True
    for _ in range(40):
        n = rng.choice((2, 3))
        sigma = _random_dominant(rng, n)
        angles = _random_angles(rng, n, zero_slots=1)
        gap = weyl_A_invariance_gap(sigma, angles, n)
        scale = max(
            orbital_polynomial(sigma, angles, n).max_abs_coeff(), 1.0
        )
        ok &= gap < 1e-10 * scale
    emit(f"{'ok' if ok else 'FAIL'} flip-invariance")
    return ok


def _check_partial_fractions(rng, emit) -> bool:
    ok = True
    for _ in range(20):
        count = rng.randrange(1, 6)
        pts = []
        while len(pts) < count:
            cand = complex(rng.uniform(0.5, 4.0), rng.uniform(-1.0, 1.0))
            if all(abs(cand * cand - p * p) > 0.05 for p in pts):
                pts.append(cand)
        reg = partial_fraction_coeffs(pts)
        for _ in range(5):
            z = complex(rng.uniform(0.0, 3.0), rng.uniform(-2.0, 2.0))
            if any(abs(p * p + z) < 0.05 for p in pts):
                continue
            lhs, rhs = reg.lhs(z), reg.rhs(z)
            ok &= abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))
    emit(f"{'ok' if ok else 'FAIL'} partial-fractions")
    return ok


def _check_calibration(rng, emit) -> bool:
    ok = abs(calibrate_plancherel(1) - 1.0 / (4.0 * math.pi**2)) < 1e-14
    emit(f"{'ok' if ok else 'FAIL'} plancherel-calibration")
    return ok


CHECKS = (
    _check_weyl_counts,
    _check_character_matrix_trace,
    _check_evenness,
    _check_flip_invariance,
    _check_partial_fractions,
    _check_calibration,
)


def run_selftest(seed: int = 0, emit=print) -> int:
    """Run all checks; returns the number of failures."""
    rng = random.Random(seed)
    failures = 0
    for check in CHECKS:
        if not check(rng, emit):
            failures += 1
    return failures
