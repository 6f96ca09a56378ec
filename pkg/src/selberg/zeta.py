"""Truncated Selberg zeta functions and geometric-side heat terms.

The zeta function over a cutoff length spectrum is

    log Z(s) = - sum_hyperbolic  tr chi * v * tr sigma(m) * e^{-(s+n) l}
                                 / (power * e^{n l} * D),

where e^{n l} D is the absolute adjoint determinant |det(Id - Ad|_n)| of
the class.  The symmetric combination multiplies the zeta functions of a
weight and its last-coordinate flip; the antisymmetric one divides them.
Heat-side terms integrate the Plancherel and orbital polynomials against a
Gaussian (identity and elliptic contributions) and evaluate the hyperbolic
line's Fourier integral in closed form.

Character convention: the zeta sum uses tr sigma(m) unconjugated, the heat
term uses the conjugate, matching each formula's own display; the
``conjugate_sigma_trace`` switch flips both for sensitivity analysis.

Sums accumulate with compensated (exact) summation in a canonical record
order, so results do not depend on how work is partitioned.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .errors import (
    AmbiguousClassError,
    NumericalGuardError,
    UnsupportedRankError,
    ValidationError,
)
from .geometry import ConjClassRecord, LengthSpectrum
from .lie import EllipticAngles, WeightVector, w0_flip, weyl_character
from .orbital import orbital_polynomial, plancherel_polynomial


@dataclass
class ZetaTermContext:
    """Everything one zeta/heat evaluation needs besides the point s or t.

    ``vol`` is the orbifold volume (hyperbolic volume units, user supplied).
    ``elliptic_vols`` optionally assigns each elliptic class its centralizer
    covolume; classes without an entry default to 1 with a warning.
    """

    n: int
    sigma: WeightVector
    chi_dim: int
    spectrum: LengthSpectrum
    elliptic: list[ConjClassRecord] = field(default_factory=list)
    vol: float = 1.0
    elliptic_vols: list[float] | None = None
    conjugate_sigma_trace: bool = False
    allow_ambiguous: bool = False
    include_elliptic_vol_in_xi: bool = True

    def __post_init__(self):
        if self.vol <= 0:
            raise ValidationError("orbifold volume must be positive")
        if self.spectrum.cutoff <= 0:
            raise ValidationError("spectrum cutoff must be positive")
        if self.sigma.rank != self.n:
            raise ValidationError("sigma rank must equal n")
        if self.elliptic_vols is not None and len(self.elliptic_vols) != len(
            self.elliptic
        ):
            raise ValidationError("need one volume per elliptic class")

    def with_sigma(self, sigma: WeightVector) -> "ZetaTermContext":
        return replace(self, sigma=sigma)

    def elliptic_volume(self, index: int) -> float:
        if self.elliptic_vols is None:
            warnings.warn(
                "no centralizer volumes supplied for elliptic classes; "
                "defaulting to 1",
                stacklevel=3,
            )
            return 1.0
        return self.elliptic_vols[index]


def _csum(values) -> complex:
    """Compensated complex sum in the iteration order given."""
    vals = list(values)
    return complex(
        math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals)
    )


def _sorted_hyperbolic(ctx: ZetaTermContext) -> list[ConjClassRecord]:
    recs = ctx.spectrum.hyperbolic()
    if any(r.ambiguous for r in recs) and not ctx.allow_ambiguous:
        raise AmbiguousClassError(
            "spectrum contains flagged-ambiguity classes; rerun with "
            "allow_ambiguous to include them"
        )
    return sorted(recs, key=lambda r: (r.length, r.angles, r.word))


def _sigma_trace(ctx: ZetaTermContext, record: ConjClassRecord, flipped: bool) -> complex:
    sigma = w0_flip(ctx.sigma) if flipped else ctx.sigma
    angles = EllipticAngles(tuple(record.angles))
    value = weyl_character(sigma, angles)
    if ctx.conjugate_sigma_trace:
        value = value.conjugate()
    return value


def epsilon_sigma(sigma: WeightVector) -> int:
    """2 when the weight moves under the last-coordinate flip, else 1."""
    return 2 if w0_flip(sigma) != sigma else 1


def convergence_abscissa_estimate(ctx: ZetaTermContext):
    """Empirical abscissa of absolute convergence.

    Fits exponential growth rates to the cumulative class counts (a
    topological-entropy estimate) and to |tr chi| along the spectrum, and
    returns their sum; with fewer than five classes it falls back to the
    conservative default 2n + k_fit.
    """
    recs = sorted(ctx.spectrum.hyperbolic(), key=lambda r: r.length)
    lengths = np.array([r.length for r in recs])
    k_fit, big_k = 0.0, 1.0
    if len(recs) >= 2:
        mags = np.array([max(abs(r.tr_chi), 1e-300) for r in recs])
        slope, intercept = np.polyfit(lengths, np.log(mags), 1)
        k_fit = max(float(slope), 0.0)
        big_k = float(np.exp(intercept))
    if len(recs) < 5:
        warnings.warn(
            "spectrum too small to fit a growth rate; using the conservative "
            "default abscissa",
            stacklevel=2,
        )
        return AbscissaEstimate(
            c=2 * ctx.n + k_fit, chi_bound=big_k, chi_rate=k_fit,
            entropy=float("nan"), conservative=True,
        )
    counts = np.arange(1, len(recs) + 1, dtype=float)
    entropy = max(float(np.polyfit(lengths, np.log(counts), 1)[0]), 0.0)
    return AbscissaEstimate(
        c=entropy + k_fit, chi_bound=big_k, chi_rate=k_fit,
        entropy=entropy, conservative=False,
    )


@dataclass(frozen=True)
class AbscissaEstimate:
    c: float
    chi_bound: float
    chi_rate: float
    entropy: float
    conservative: bool


def log_zeta_truncated(s: complex, ctx: ZetaTermContext) -> complex:
    """log Z over the cutoff spectrum.

    An empty spectrum gives 0 (so Z = 1) with a warning.  Evaluation left of
    the estimated abscissa of convergence also warns but still computes.
    """
    recs = _sorted_hyperbolic(ctx)
    if not recs:
        warnings.warn("empty hyperbolic spectrum; Z = 1", stacklevel=2)
        return 0j
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        est = convergence_abscissa_estimate(ctx)
    if complex(s).real <= est.c:
        warnings.warn(
            f"Re(s) = {complex(s).real:g} is at or below the estimated "
            f"abscissa {est.c:g}; the truncated sum may be far from converged",
            stacklevel=2,
        )
    n = ctx.n
    terms = []
    for r in recs:
        adj_det = math.exp(n * r.length) * r.D
        trace = _sigma_trace(ctx, r, flipped=False)
        terms.append(
            r.tr_chi
            * float(r.v)
            * trace
            * cmath.exp(-(s + n) * r.length)
            / (r.power * adj_det)
        )
    return -_csum(terms)


def symmetric_zeta(s: complex, ctx: ZetaTermContext) -> complex:
    """Z(s, sigma) Z(s, w0 sigma), collapsing to Z when the flip fixes sigma."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        z = cmath.exp(log_zeta_truncated(s, ctx))
        if epsilon_sigma(ctx.sigma) == 1:
            return z
        zf = cmath.exp(log_zeta_truncated(s, ctx.with_sigma(w0_flip(ctx.sigma))))
    return z * zf


def antisymmetric_zeta(s: complex, ctx: ZetaTermContext) -> complex:
    """Z(s, sigma) / Z(s, w0 sigma); defined only when the flip moves sigma."""
    if epsilon_sigma(ctx.sigma) == 1:
        raise ValidationError(
            "antisymmetric zeta needs a weight moved by the flip "
            "(last coordinate nonzero)"
        )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        z = cmath.exp(log_zeta_truncated(s, ctx))
        zf = cmath.exp(log_zeta_truncated(s, ctx.with_sigma(w0_flip(ctx.sigma))))
    if zf == 0 or not (cmath.isfinite(z) and cmath.isfinite(zf)):
        raise NumericalGuardError(
            "zeta value at the flipped weight vanished or overflowed; "
            "the antisymmetric ratio is undefined here"
        )
    return z / zf


@dataclass(frozen=True)
class HeatTerms:
    identity: complex
    elliptic: complex
    hyperbolic: complex


def geometric_heat_terms(t: float, ctx: ZetaTermContext) -> HeatTerms:
    """Identity, elliptic and hyperbolic heat-side contributions at time t.

    The identity term integrates the rank-1 Plancherel polynomial against a
    Gaussian; the elliptic term does the same with each class's orbital
    polynomial; the hyperbolic term evaluates the Fourier integral

        int_R e^{-t lambda^2} e^{-i l lambda} d lambda
            = sqrt(pi/t) e^{-l^2 / 4t}

    in closed form, with the conjugated character pair attached.
    """
    if t <= 0:
        raise ValidationError("heat time must be positive")
    if ctx.n != 1:
        raise UnsupportedRankError(
            "the identity heat term needs the rank-1 Plancherel polynomial"
        )
    eps = epsilon_sigma(ctx.sigma)
    p_plancherel = plancherel_polynomial(ctx.sigma, ctx.n)
    ident = eps * ctx.chi_dim * ctx.vol * p_plancherel.gaussian_transform(t)

    ell_terms = []
    for j, rec in enumerate(ctx.elliptic):
        poly = orbital_polynomial(
            ctx.sigma, EllipticAngles(tuple(rec.angles)), ctx.n
        )
        ell_terms.append(
            rec.tr_chi * ctx.elliptic_volume(j) * poly.gaussian_transform(t)
        )
    elliptic = eps * _csum(ell_terms)

    hyp_terms = []
    for r in sorted(ctx.spectrum.hyperbolic(), key=lambda r: (r.length, r.angles, r.word)):
        # conjugate of the zeta-side convention, whichever way the flag points
        trace = _sigma_trace(ctx, r, flipped=False).conjugate()
        if eps == 2:
            trace += _sigma_trace(ctx, r, flipped=True).conjugate()
        gauss = math.sqrt(math.pi / t) * math.exp(-r.length**2 / (4.0 * t))
        hyp_terms.append(
            r.tr_chi
            * float(r.v)
            * r.primitive_length
            / (2.0 * math.pi * r.D)
            * trace
            * gauss
        )
    return HeatTerms(ident, elliptic, _csum(hyp_terms))


def xi_correction(s: complex, ctx: ZetaTermContext) -> complex:
    """Symmetric zeta times the exponential of polynomial antiderivatives
    that absorbs the identity and elliptic contributions."""
    p_plancherel = plancherel_polynomial(ctx.sigma, ctx.n)
    eps = epsilon_sigma(ctx.sigma)
    exponent = (
        -2.0
        * math.pi
        * eps
        * ctx.chi_dim
        * ctx.vol
        * p_plancherel.antiderivative(s)
    )
    ell = []
    for j, rec in enumerate(ctx.elliptic):
        poly = orbital_polynomial(ctx.sigma, EllipticAngles(tuple(rec.angles)), ctx.n)
        volume = ctx.elliptic_volume(j) if ctx.include_elliptic_vol_in_xi else 1.0
        ell.append(rec.tr_chi * volume * poly.antiderivative(s))
    exponent -= 2.0 * eps * _csum(ell)
    return cmath.exp(exponent) * symmetric_zeta(s, ctx)


@dataclass(frozen=True)
class RegularizationSet:
    """Shift points s_i with pairwise distinct squares and the partial
    fraction coefficients c_i = prod_{j != i} 1/(s_j^2 - s_i^2)."""

    s_points: tuple
    c_coeffs: tuple

    def lhs(self, z) -> complex:
        return sum(c / (s * s + z) for s, c in zip(self.s_points, self.c_coeffs))

    def rhs(self, z) -> complex:
        out = 1.0 + 0j
        for s in self.s_points:
            out /= s * s + z
        return out


def partial_fraction_coeffs(s_points) -> RegularizationSet:
    """Coefficients resolving prod 1/(s_i^2 + z) into simple fractions.

    Exact over rationals when every point is rational; complex otherwise.
    """
    pts = list(s_points)
    if not pts:
        raise ValidationError("need at least one shift point")
    exact = all(isinstance(p, (int, Fraction)) for p in pts)
    if exact:
        squares = [Fraction(p) ** 2 for p in pts]
    else:
        pts = [complex(p) for p in pts]
        squares = [p * p for p in pts]
    scale = max(abs(complex(q)) for q in squares) or 1.0
    for i in range(len(squares)):
        for j in range(i + 1, len(squares)):
            if exact:
                distinct = squares[i] != squares[j]
            else:
                distinct = abs(squares[i] - squares[j]) > 1e-14 * scale
            if not distinct:
                raise ValidationError(
                    f"shift points {pts[i]} and {pts[j]} have equal squares"
                )
    coeffs = []
    for i in range(len(squares)):
        c = Fraction(1) if exact else 1.0 + 0j
        for j in range(len(squares)):
            if j != i:
                c /= squares[j] - squares[i]
        coeffs.append(c)
    return RegularizationSet(tuple(pts), tuple(coeffs))
