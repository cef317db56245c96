"""Shared numerical conventions: branch cuts, arithmetic characters, tail bounds.

Conventions fixed here and relied on everywhere else:

* complex powers use the principal logarithm with argument in (-pi, pi];
  the negative real axis takes the +pi determination,
* all series evaluators return a :class:`SeriesResult` carrying the value
  together with a certified bound on the discarded tail (or a flag saying
  the bound is heuristic / the radius cap was hit),
* working precision is a process-global switch: IEEE binary64 by default,
  software extended precision (mpmath) on request.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

__all__ = [
    "DomainError",
    "ParityMismatch",
    "TruncationSpec",
    "SeriesResult",
    "set_precision",
    "get_precision",
    "principal_power",
    "kronecker_symbol",
    "epsilon_d",
    "DirichletCharacter",
    "gaussian_tail_bound",
    "shifted_tail_bound",
    "csum",
]


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class ParityMismatch(DomainError):
    """A character-twisted series was requested with the wrong parity."""


# --------------------------------------------------------------------------
# working precision
# --------------------------------------------------------------------------

_PRECISION = "double"
_EXTENDED_DPS = 40


def set_precision(mode: str) -> None:
    """Select the global working precision: ``"double"`` or ``"extended"``."""
    global _PRECISION
    if mode not in ("double", "extended"):
        raise DomainError(f"unknown precision mode {mode!r}")
    _PRECISION = mode
    if mode == "extended":
        mpmath.mp.dps = _EXTENDED_DPS


def get_precision() -> str:
    return _PRECISION


def _to_complex(z) -> complex:
    return complex(z)


# --------------------------------------------------------------------------
# truncation bookkeeping
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncationSpec:
    """Requested absolute tail bound plus a hard cap on the summation radius."""

    target_tail: float = 1e-13
    max_radius: int = 60

    def __post_init__(self):
        if not self.target_tail > 0:
            raise DomainError("target_tail must be positive")
        if self.max_radius < 1:
            raise DomainError("max_radius must be >= 1")


@dataclass(frozen=True)
class SeriesResult:
    """Value of a truncated series plus certification data.

    ``certified`` is False when the radius cap was hit before the requested
    tail bound, or when only a heuristic bound exists (flag says which).
    """

    value: complex
    radius_used: int
    tail_bound: float
    terms_summed: int
    certified: bool = True
    flags: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        v = complex(self.value)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise DomainError("non-finite series value")
        if self.tail_bound < 0:
            raise DomainError("tail bound must be >= 0")

    def as_dict(self) -> dict:
        return {
            "value": {"re": float(complex(self.value).real),
                      "im": float(complex(self.value).imag)},
            "radius_used": self.radius_used,
            "tail_bound": float(self.tail_bound),
            "terms_summed": self.terms_summed,
            "certified": self.certified,
            "flags": list(self.flags),
        }


# --------------------------------------------------------------------------
# branch conventions
# --------------------------------------------------------------------------


def principal_power(base, exponent) -> complex:
    """``base**exponent`` through the principal logarithm, arg in (-pi, pi].

    ``exponent`` may be any real number; half-integers (weights) are the
    intended use.  A negative real base takes the upper determination,
    e.g. ``principal_power(-1, 1/2) == 1j``.
    """
    if isinstance(exponent, Fraction):
        exponent = float(exponent)
    if get_precision() == "extended":
        b = mpmath.mpc(base)
        if b == 0:
            raise DomainError("principal_power: zero base")
        if b.imag == 0 and b.real < 0:
            # force arg = +pi on the cut
            return mpmath.exp(exponent * (mpmath.log(-b) + mpmath.pi * 1j))
        return mpmath.exp(exponent * mpmath.log(b))
    b = complex(base)
    if b == 0:
        raise DomainError("principal_power: zero base")
    if b.imag == 0.0:
        b = complex(b.real, 0.0)  # normalise -0.0 so the cut maps up
    return cmath.exp(exponent * cmath.log(b))


def kronecker_symbol(a: int, b: int) -> int:
    """Extended Kronecker symbol (a|b), defined for all integers.

    Multiplicative in both arguments; agrees with the Legendre symbol for
    odd prime b; (a|2) follows the a mod 8 rule; (a|-1) is the sign of a.
    """
    a = int(a)
    b = int(b)
    if b == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if b < 0:
        b = -b
        if a < 0:
            result = -result
    # factor out twos from b
    tz = 0
    while b % 2 == 0:
        b //= 2
        tz += 1
    if tz:
        if a % 2 == 0:
            return 0
        if tz % 2 == 1 and a % 8 in (3, 5):
            result = -result
    a %= b
    # now b is odd and positive: quadratic reciprocity loop
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if b % 8 in (3, 5):
                result = -result
        a, b = b, a
        if a % 4 == 3 and b % 4 == 3:
            result = -result
        a %= b
    return result if b == 1 else 0


def epsilon_d(d: int) -> complex:
    """1 for d = 1 mod 4, i for d = -1 mod 4; defined for odd d only."""
    if d % 2 == 0:
        raise DomainError("epsilon_d requires an odd integer")
    return 1 if d % 4 == 1 else 1j


class DirichletCharacter:
    """A character mod N given by its value table on 0..N-1.

    The table is validated: psi(n) = 0 exactly when gcd(n, N) > 1, and
    psi is totally multiplicative on residues.
    """

    def __init__(self, modulus: int, values):
        if modulus < 1:
            raise DomainError("modulus must be >= 1")
        values = [complex(v) for v in values]
        if len(values) != modulus:
            raise DomainError("value table must have length N")
        self.modulus = modulus
        self.values = tuple(values)
        self._validate()

    def _validate(self):
        n = self.modulus
        for a in range(n):
            unit = math.gcd(a, n) == 1 or n == 1
            if unit and abs(self.values[a % n]) < 1e-12:
                raise DomainError("character vanishes on a unit")
            if not unit and abs(self.values[a % n]) > 1e-12:
                raise DomainError("character nonzero off the unit group")
        for a in range(n):
            for b in range(n):
                lhs = self.values[(a * b) % n]
                if abs(lhs - self.values[a] * self.values[b]) > 1e-9:
                    raise DomainError("character table is not multiplicative")

    @classmethod
    def trivial(cls, modulus: int = 1) -> "DirichletCharacter":
        vals = [1 if (math.gcd(a, modulus) == 1 or modulus == 1) else 0
                for a in range(modulus)]
        return cls(modulus, vals)

    def __call__(self, n: int) -> complex:
        return self.values[n % self.modulus]

    def is_even(self) -> bool:
        return abs(self(-1) - 1) < 1e-12

    def is_odd(self) -> bool:
        return abs(self(-1) + 1) < 1e-12

    def parity(self) -> str:
        if self.is_even():
            return "even"
        if self.is_odd():
            return "odd"
        raise DomainError("character has no definite parity")


# --------------------------------------------------------------------------
# certified Gaussian tail bounds
# --------------------------------------------------------------------------
#
# For a positive quadratic form Q with smallest eigenvalue >= v the lattice
# tail over the box complement {x in Z^n : |x|_oo > R} satisfies
#
#   sum e^{-pi Q[x+c]}  <=  n * t1(v, R, C) * s1(v)^(n-1),
#
# where C >= |c|_oo, t1 bounds a single shifted 1-d tail by a geometric
# series and s1 bounds a full shifted 1-d theta sum.  The estimate splits
# off the coordinate that exceeds R (union bound) and bounds the others by
# full sums; each 1-d comparison is elementary.


def _t1(v: float, r: float) -> float:
    # sum_{m > r, m integer spacing 1} e^{-pi v m^2}, doubled for both signs
    if r <= 0:
        return _s1(v)
    lead = math.exp(-math.pi * v * (r + 1) ** 2) if math.pi * v * (r + 1) ** 2 < 745 else 0.0
    ratio = math.exp(-math.pi * v * (2 * r + 3))
    return 2.0 * lead / (1.0 - ratio)


def _s1(v: float) -> float:
    # sum over all of Z of e^{-pi v (m+c)^2}, worst case over the shift c
    lead = math.exp(-math.pi * v / 4)
    ratio = math.exp(-2 * math.pi * v)
    return 1.0 + 2.0 * lead / (1.0 - ratio)


def shifted_tail_bound(v_min: float, n: int, radius: int, shift_sup: float = 0.0) -> float:
    """Upper bound on sum of e^{-pi v_min |x+c|^2} over |x|_oo > radius.

    Valid for any real shift c with |c|_oo <= shift_sup.  Monotone
    decreasing in radius once radius > shift_sup.
    """
    if v_min <= 0:
        raise DomainError("v_min must be positive")
    if n < 1:
        raise DomainError("dimension must be >= 1")
    r_eff = radius - shift_sup
    if r_eff <= 0:
        return math.inf
    return n * _t1(v_min, r_eff) * _s1(v_min) ** (n - 1)


def gaussian_tail_bound(v_min: float, n: int, radius: int) -> float:
    """Certified bound on the centred Gaussian lattice tail beyond a box.

    Bounds ``sum_{x in Z^n, |x|_oo > radius} exp(-pi v_min |x|^2)``.
    """
    if radius < 1:
        raise DomainError("radius must be >= 1")
    return shifted_tail_bound(v_min, n, radius, 0.0)


# --------------------------------------------------------------------------
# compensated summation
# --------------------------------------------------------------------------


def csum(terms) -> complex:
    """Exactly rounded complex sum (math.fsum on both components).

    The result does not depend on the association order of the inputs, so
    shell-parallel evaluation with any partition reduces to the same bits.
    """
    terms = list(terms)
    if get_precision() == "extended":
        return mpmath.fsum(terms)
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
