"""Exact root-system, Weyl-group, weight and character arithmetic for so(2n).

Coordinates are the standard basis functionals e_2, ..., e_{n+1} on the
compact Cartan subalgebra of so(2n) sitting inside so(1,2n+1); the extra
noncompact functional e_1 never enters here (the orbital layer handles it
symbolically).  The Weyl group is type D_n: permutations of the coordinates
combined with an even number of sign changes.

Weights are stored as doubled integers so half-integral (spin-type) weights
stay exact; all Weyl-group arithmetic is exact integer arithmetic, and
floating point appears only when a character is evaluated at rotation
angles.  Characters use the unimodular convention

    xi_Omega(angles) = exp(i * sum_j k_j * phi_j),

so that SO(2) blocks give the standard circle characters.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from .errors import NonRegularElementError, ValidationError

TWO_PI = 2.0 * math.pi

#: Denominators smaller than this trip the non-regular-element guard.
REGULARITY_TOL = 1e-12

MAX_WEYL_RANK = 6


@dataclass(frozen=True)
class WeightVector:
    """Highest weight (k_2, ..., k_{n+1}) with entries in (1/2)Z.

    ``doubled`` holds 2*k_j as plain integers; all entries must share one
    parity (all even: integral SO(2n) weight, all odd: half-integral
    spin-type weight, accepted but flagged).
    """

    doubled: tuple[int, ...]

    def __post_init__(self):
        if not self.doubled:
            raise ValidationError("weight needs at least one coordinate")
        if not all(isinstance(d, int) for d in self.doubled):
            raise ValidationError("doubled coordinates must be integers")
        parities = {d % 2 for d in self.doubled}
        if len(parities) > 1:
            raise ValidationError(
                "coordinates must be all integral or all half-integral: "
                f"{self}"
            )

    @property
    def rank(self) -> int:
        return len(self.doubled)

    @property
    def is_spin_type(self) -> bool:
        return self.doubled[0] % 2 == 1

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(d, 2) for d in self.doubled)

    def is_zero(self) -> bool:
        return all(d == 0 for d in self.doubled)

    def is_dominant(self) -> bool:
        """k_2 >= ... >= k_n >= |k_{n+1}| (vacuous for rank 1)."""
        d = self.doubled
        n = len(d)
        if n == 1:
            return True
        return all(d[i] >= d[i + 1] for i in range(n - 2)) and d[n - 2] >= abs(d[n - 1])

    def __add__(self, other: "WeightVector") -> "WeightVector":
        if self.rank != other.rank:
            raise ValidationError("rank mismatch in weight addition")
        return WeightVector(tuple(a + b for a, b in zip(self.doubled, other.doubled)))

    def __neg__(self) -> "WeightVector":
        return WeightVector(tuple(-d for d in self.doubled))

    def __str__(self) -> str:
        return ",".join(format_half_integer(Fraction(d, 2)) for d in self.doubled)

    @classmethod
    def from_coords(cls, values) -> "WeightVector":
        doubled = []
        for v in values:
            f = Fraction(v) * 2
            if f.denominator != 1:
                raise ValidationError(f"coordinate {v} is not a half-integer")
            doubled.append(int(f))
        return cls(tuple(doubled))

    @classmethod
    def parse(cls, text: str) -> "WeightVector":
        """Parse a comma-separated half-integer string like ``3/2,1/2,-1/2``."""
        parts = [p.strip() for p in text.split(",")]
        if not parts or any(not p for p in parts):
            raise ValidationError(f"malformed weight string: {text!r}")
        try:
            return cls.from_coords(Fraction(p) for p in parts)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"malformed weight string: {text!r}") from exc


def format_half_integer(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class SignedPermutation:
    """Element of W(D_n): a permutation plus an even sign-change mask.

    ``perm[i]`` is the target slot of source coordinate i (0-based), and
    ``signs[j]`` is the sign attached to target slot j, so the action on a
    coordinate vector w is (s.w)[j] = signs[j] * w[perm^{-1}(j)].
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)) or len(self.signs) != n:
            raise ValidationError("malformed signed permutation")
        if any(s not in (-1, 1) for s in self.signs):
            raise ValidationError("signs must be +-1")
        if self.signs.count(-1) % 2 != 0:
            raise ValidationError("type D requires an even number of sign changes")

    @property
    def rank(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)), (1,) * n)

    def det(self) -> int:
        # With an even flip count, det = sign(perm) * prod(signs) = sign(perm).
        return _perm_sign(self.perm)

    def inverse(self) -> "SignedPermutation":
        n = self.rank
        inv = [0] * n
        for i, t in enumerate(self.perm):
            inv[t] = i
        signs = tuple(self.signs[self.perm[j]] for j in range(n))
        return SignedPermutation(tuple(inv), signs)

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        """Composition self o other (apply ``other`` first)."""
        if self.rank != other.rank:
            raise ValidationError("rank mismatch in composition")
        n = self.rank
        perm = tuple(self.perm[other.perm[i]] for i in range(n))
        inv_self = [0] * n
        for i, t in enumerate(self.perm):
            inv_self[t] = i
        signs = tuple(self.signs[j] * other.signs[inv_self[j]] for j in range(n))
        return SignedPermutation(perm, signs)

    def apply(self, w: WeightVector) -> WeightVector:
        if self.rank != w.rank:
            raise ValidationError("rank mismatch between permutation and weight")
        n = self.rank
        inv = [0] * n
        for i, t in enumerate(self.perm):
            inv[t] = i
        return WeightVector(
            tuple(self.signs[j] * w.doubled[inv[j]] for j in range(n))
        )

    def apply_angles(self, angles: "EllipticAngles") -> "EllipticAngles":
        """Act on a rotation-angle tuple (sign flip = angle negation mod 2pi)."""
        if self.rank != len(angles.angles):
            raise ValidationError("rank mismatch between permutation and angles")
        n = self.rank
        inv = [0] * n
        for i, t in enumerate(self.perm):
            inv[t] = i
        moved = []
        for j in range(n):
            a = angles.angles[inv[j]]
            moved.append(a if self.signs[j] == 1 else (-a) % TWO_PI)
        return EllipticAngles(tuple(moved))


def _perm_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, clen = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class EllipticAngles:
    """Rotation angles of an elliptic normal form, ordered e_2..e_{n+1}.

    Entries live in [0, 2pi); an exact 0 marks a trivial rotation block.
    """

    angles: tuple[float, ...]

    def __post_init__(self):
        norm = []
        for a in self.angles:
            a = float(a) % TWO_PI
            # snap values that are 0 or 2pi up to rounding, so exact zero
            # keeps its meaning of "trivial block"
            if abs(a) < 1e-12 or abs(a - TWO_PI) < 1e-12:
                a = 0.0
            norm.append(a)
        object.__setattr__(self, "angles", tuple(norm))

    def __iter__(self):
        return iter(self.angles)

    def __len__(self):
        return len(self.angles)

    @property
    def rank(self) -> int:
        return len(self.angles)

    def __str__(self) -> str:
        return ",".join(f"{a:.17g}" for a in self.angles)

    @classmethod
    def parse(cls, text: str) -> "EllipticAngles":
        return cls(tuple(parse_angle(p) for p in text.split(",")))


_PI_RE = re.compile(r"^([+-]?\d*)pi(?:/(\d+))?$")


def parse_angle(token: str) -> float:
    """Parse one angle: a decimal, or a rational multiple of pi like ``2pi/3``."""
    token = token.strip().replace(" ", "")
    m = _PI_RE.match(token)
    if m:
        coef_s, den_s = m.groups()
        if coef_s in ("", "+"):
            coef = 1
        elif coef_s == "-":
            coef = -1
        else:
            coef = int(coef_s)
        den = int(den_s) if den_s else 1
        if den == 0:
            raise ValidationError(f"zero denominator in angle {token!r}")
        return math.pi * coef / den
    try:
        return float(token)
    except ValueError as exc:
        raise ValidationError(f"cannot parse angle {token!r}") from exc


def half_sum_positive_roots(n: int) -> WeightVector:
    """Half-sum of the positive roots of so(2n): coordinate j holds n+1-j.

    In the e_2..e_{n+1} coordinates this is (n-1, n-2, ..., 1, 0).
    """
    if n < 1:
        raise ValidationError("rank must be at least 1")
    return WeightVector(tuple(2 * (n - 1 - i) for i in range(n)))


@lru_cache(maxsize=None)
def weyl_group(n: int) -> tuple[SignedPermutation, ...]:
    """All 2^{n-1} n! elements of W(D_n), in a fixed deterministic order."""
    if not 1 <= n <= MAX_WEYL_RANK:
        raise ValidationError(f"rank must be between 1 and {MAX_WEYL_RANK}, got {n}")
    out = []
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            if signs.count(-1) % 2 == 0:
                out.append(SignedPermutation(perm, signs))
    return tuple(out)


def w0_flip(w: WeightVector) -> WeightVector:
    """Restricted-Weyl-group action on weights: negate the last coordinate."""
    return WeightVector(w.doubled[:-1] + (-w.doubled[-1],))


def torus_character(weight: WeightVector, angles: EllipticAngles) -> complex:
    """xi_Omega at a rotation: exp(i * sum_j k_j phi_j).

    Only the compact coordinates enter; any e_1 component of an ambient
    weight is irrelevant here and handled by the caller.
    """
    if weight.rank != len(angles):
        raise ValidationError("rank mismatch between weight and angles")
    phase = math.fsum(
        d * a for d, a in zip(weight.doubled, angles.angles)
    ) / 2.0
    return cmath.exp(1j * phase)


def weyl_character(weight: WeightVector, angles: EllipticAngles) -> complex:
    """Trace of the irreducible SO(2n)-representation with highest weight
    ``weight`` at the rotation with the given angles, by the Weyl character
    formula (alternating sums over W(D_n)).

    Requires a regular rotation; a vanishing denominator raises
    :class:`NonRegularElementError`.
    """
    n = weight.rank
    if len(angles) != n:
        raise ValidationError("rank mismatch between weight and angles")
    delta = half_sum_positive_roots(n)
    shifted = weight + delta
    num = 0j
    den = 0j
    for s in weyl_group(n):
        d = s.det()
        num += d * torus_character(s.apply(shifted), angles)
        den += d * torus_character(s.apply(delta), angles)
    if abs(den) < REGULARITY_TOL:
        raise NonRegularElementError(
            f"non-regular element: character denominator {abs(den):.3e} below "
            f"{REGULARITY_TOL:g}; perturb the angles or use a limit"
        )
    return num / den
