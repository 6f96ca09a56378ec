import math

import numpy as np
import pytest

from selberg.errors import (
    IllConditionedFitError,
    UnsupportedRankError,
    ValidationError,
)
from selberg.heat import (
    calibrate_plancherel,
    exact_spectrum,
    fit_expansion,
    heat_trace,
    make_model,
    weyl_counting_check,
)

TWO_PI = 2.0 * math.pi


def pillowcase_orbit_spectrum(cutoff, sides=(TWO_PI, TWO_PI)):
    """Independent oracle: explicit sign-orbit counting of lattice points."""
    ax = (TWO_PI / sides[0]) ** 2
    ay = (TWO_PI / sides[1]) ** 2
    seen = set()
    counts = {}
    bound = int(math.isqrt(int(cutoff / min(ax, ay))) + 2)
    for p in range(-bound, bound + 1):
        for q in range(-bound, bound + 1):
            lam = ax * p * p + ay * q * q
            if lam > cutoff or (p, q) in seen:
                continue
            seen.add((p, q))
            seen.add((-p, -q))
            counts[lam] = counts.get(lam, 0) + 1
    return sorted(counts.items())


def test_exact_spectrum_circle_reflection():
    assert exact_spectrum(make_model("circle-reflection"), 10.0) == [
        (0.0, 1),
        (1.0, 1),
        (4.0, 1),
        (9.0, 1),
    ]


def test_exact_spectrum_circle():
    assert exact_spectrum(make_model("circle"), 5.0) == [(0.0, 1), (1.0, 2), (4.0, 2)]


def test_exact_spectrum_pillowcase_orbit_counting():
    got = exact_spectrum(make_model("pillowcase"), 3.0)
    oracle = pillowcase_orbit_spectrum(3.0)
    assert got == oracle
    # frozen from the oracle: (1,1)/(-1,-1) and (1,-1)/(-1,1) are two orbits
    assert got == [(0.0, 1), (1.0, 2), (2.0, 2)]


def test_exact_spectrum_pillowcase_bigger_window():
    got = exact_spectrum(make_model("pillowcase"), 30.0)
    assert got == pillowcase_orbit_spectrum(30.0)


def test_exact_spectrum_guards():
    with pytest.raises(ValidationError):
        exact_spectrum(make_model("circle"), 0.0)
    with pytest.raises(ValidationError):
        make_model("moebius")


def test_heat_trace_circle_reflection_value():
    # frozen from direct summation of exp(-n^2)
    oracle = math.fsum(math.exp(-n * n) for n in range(0, 40))
    assert oracle == pytest.approx(1.3863186024133263, rel=1e-15)
    assert heat_trace(make_model("circle-reflection"), 1.0) == pytest.approx(
        oracle, rel=1e-14
    )


def test_heat_trace_large_time_limit():
    for name in ("circle", "circle-reflection", "pillowcase"):
        assert heat_trace(make_model(name), 60.0) == pytest.approx(1.0, abs=1e-15)


def test_heat_trace_matches_spectrum_sum():
    for name in ("circle", "circle-reflection", "pillowcase"):
        model = make_model(name)
        t = 0.3
        direct = math.fsum(
            m * math.exp(-t * lam) for lam, m in exact_spectrum(model, 300.0)
        )
        assert heat_trace(model, t) == pytest.approx(direct, rel=1e-13)


def test_heat_trace_theta_identity():
    # full circle trace = 2 * (reflection trace) - 1, exactly mode by mode
    for t in (0.05, 0.2, 1.0):
        circle = heat_trace(make_model("circle"), t)
        refl = heat_trace(make_model("circle-reflection"), t)
        assert circle == pytest.approx(2.0 * refl - 1.0, rel=1e-14)


def test_heat_trace_poisson_asymptotics():
    # theta-transform: sum e^{-t n^2} = sqrt(pi/t) (1 + tiny) at small t
    t = 0.01
    assert heat_trace(make_model("circle"), t) == pytest.approx(
        math.sqrt(math.pi / t), rel=1e-12
    )


def test_heat_trace_completely_monotone():
    grid = np.geomspace(0.01, 2.0, 25)
    for name in ("circle", "circle-reflection", "pillowcase"):
        model = make_model(name)
        values = np.array([heat_trace(model, t) for t in grid])
        diffs = np.diff(values)
        assert np.all(diffs < 0)  # decreasing in t
        assert np.all(np.diff(diffs) > 0)  # convex


def test_fit_expansion_circle_reflection():
    model = make_model("circle-reflection")
    fit = fit_expansion(model, np.geomspace(0.001, 0.01, 10))
    assert fit.exponents == (-0.5, 0.0, 0.5)
    assert fit.expected_leading == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-15)
    assert fit.leading_coefficient == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-3)
    assert fit.constant_term == pytest.approx(0.5, abs=1e-6)
    # the two mirror points contribute through isotropy order 2
    assert model.strata == ((0, 2), (0, 2))


def test_fit_expansion_exact_halves_identity():
    # reflection trace = 1/2 + (1/2) full theta: the constant is exactly the
    # halved fixed-mode, rederived here from the identity
    t = 0.004
    refl = heat_trace(make_model("circle-reflection"), t)
    full = heat_trace(make_model("circle"), t)
    assert refl == pytest.approx(0.5 + 0.5 * full, rel=1e-14)


def test_fit_expansion_circle_control_constant_vanishes():
    fit = fit_expansion(make_model("circle"), np.geomspace(0.001, 0.01, 10))
    assert fit.leading_coefficient == pytest.approx(math.sqrt(math.pi), rel=1e-3)
    assert abs(fit.constant_term) < 1e-8
    assert abs(fit.coefficient(0.5)) < 1e-6


def test_fit_expansion_pillowcase():
    fit = fit_expansion(make_model("pillowcase"), np.geomspace(0.002, 0.02, 12))
    # leading: (4 pi)^{-1} * vol = pi/2; constant: four corner points
    assert fit.expected_leading == pytest.approx(math.pi / 2.0, rel=1e-15)
    assert fit.leading_coefficient == pytest.approx(math.pi / 2.0, rel=1e-3)
    assert fit.constant_term == pytest.approx(0.5, abs=1e-5)
    assert fit.residual < 1e-8


def test_fit_expansion_window_guard():
    with pytest.raises(ValidationError):
        fit_expansion(make_model("circle"), [0.01, 0.2])
    with pytest.raises(ValidationError):
        fit_expansion(make_model("circle"), [0.01, 0.02])  # too few points


def test_weyl_counting_circle_reflection():
    report = weyl_counting_check(make_model("circle-reflection"), 40000.0)
    assert report.eigenvalue_count >= 200
    assert report.predicted == pytest.approx(1.0, rel=1e-12)
    assert report.relative_error < 0.02


def test_weyl_counting_circle():
    report = weyl_counting_check(make_model("circle"), 40000.0)
    assert report.predicted == pytest.approx(2.0, rel=1e-12)
    assert report.relative_error < 0.02


def test_weyl_counting_pillowcase():
    report = weyl_counting_check(make_model("pillowcase"), 700.0)
    assert report.eigenvalue_count >= 200
    assert report.predicted == pytest.approx(math.pi / 2.0, rel=1e-12)
    assert report.relative_error < 0.05


def test_weyl_counting_needs_enough_eigenvalues():
    with pytest.raises(ValidationError):
        weyl_counting_check(make_model("circle"), 100.0)


def test_calibration_constant():
    c = calibrate_plancherel(1)
    assert c == pytest.approx(1.0 / (4.0 * math.pi**2), rel=1e-12)
    with pytest.raises(UnsupportedRankError):
        calibrate_plancherel(2)


def test_calibration_quadrature_oracle():
    from scipy.integrate import quad

    c = calibrate_plancherel(1)
    for t in (0.1, 1.0, 10.0):
        integral, _ = quad(
            lambda nu: c * nu * nu * math.exp(-t * nu * nu),
            -np.inf,
            np.inf,
            epsabs=1e-14,
        )
        assert integral == pytest.approx((4 * math.pi * t) ** -1.5, rel=1e-10)
