"""Theta series of indefinite forms: majorant sums, matrix-argument
extensions, piecewise lowest-weight kernels, and the two-variable kernel
behind the half-integral/integral weight correspondence.

Convergence for an indefinite S comes from a majorant P: with
tau = u + i v the exponent matrix R = u S + i v P has positive-definite
imaginary part v P, so the lattice sum converges and the generic certified
tail machinery applies.  The default normalisation is exp(2 pi i R[x]);
the pi*i variant (where the sum literally specialises the Riemann theta
at u S + i v P) is selectable per call.

The two-variable kernel is summed over an open cone, where no cheap
certified tail exists; its results are flagged heuristic and carry both
cutoffs (sup-norm box and form bound) plus the count of terms skipped on
the singular set of the z-denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .numerics import DomainError, SeriesResult, TruncationSpec, csum
from .quadforms import Majorant, QuadraticSpace, SymForm, is_majorant
from .theta_classical import SiegelPoint, _gaussian_lattice_sum, _ordered_sum
from .weylrep.poly import Polynomial
from .weylrep.weyl import laplacian

__all__ = [
    "SiegelThetaInput",
    "RSData",
    "ShimuraInput",
    "ShimuraResult",
    "siegel_theta",
    "richter_theta",
    "rs_phi_eval",
    "rs_weil_borel_action",
    "shimura_kernel",
]


@dataclass(frozen=True)
class SiegelThetaInput:
    """Input of a majorant theta sum: space, point of H, optional shift.

    The shift a must be rational with a * det(S) integral componentwise.
    """

    space: QuadraticSpace
    tau: complex
    shift: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if complex(self.tau).imag <= 0:
            raise DomainError("Im tau must be positive")
        if self.shift is not None:
            shift = tuple(Fraction(a) for a in self.shift)
            if len(shift) != self.space.n:
                raise DomainError("shift has wrong length")
            det = float(np.linalg.det(self.space.form.entries))
            for a in shift:
                scaled = float(a) * det
                if abs(scaled - round(scaled)) > 1e-9:
                    raise DomainError("shift times det(S) must be integral")
            object.__setattr__(self, "shift", shift)


def siegel_theta(inp: SiegelThetaInput, trunc: TruncationSpec = TruncationSpec(),
                 convention: str = "2pii") -> SeriesResult:
    """sum over Z^n of e(R[x + a]) with R = u S + i v P.

    ``convention`` selects e(t) = exp(2 pi i t) (default) or exp(pi i t)
    ("pii"); in the latter normalisation the result coincides with the
    Riemann theta evaluated at u S + i v P.
    """
    if convention not in ("2pii", "pii"):
        raise DomainError("convention must be '2pii' or 'pii'")
    tau = complex(inp.tau)
    s = inp.space.form.entries
    p = inp.space.majorant.entries
    r_matrix = tau.real * s + 1j * tau.imag * p
    factor = 2.0 if convention == "2pii" else 1.0
    shift = None if inp.shift is None else [float(a) for a in inp.shift]
    return _gaussian_lattice_sum(factor * r_matrix, None, trunc, shift=shift)


def richter_theta(s_matrix, p_matrix, zeta, tau, z_matrix,
                  trunc: TruncationSpec = TruncationSpec()) -> SeriesResult:
    """Matrix-argument majorant theta

        sum over N in M_{m,n}(Z) of
        exp(pi*i Tr(S[N] u + i P[N] v + 2 N^t S zeta Z)),

    for S integral with even diagonal, P a majorant of S, zeta an integer
    m x j matrix and Z complex j x n.  When S zeta != P zeta the sum still
    converges but the classical transformation law does not apply; the
    result is flagged ``zeta-not-fixed`` instead of rejected.
    """
    s = np.atleast_2d(np.asarray(s_matrix, dtype=float))
    m = s.shape[0]
    s_int = np.rint(s)
    if not np.allclose(s, s_int, atol=1e-12):
        raise DomainError("S must be integral")
    if any(int(s_int[i, i]) % 2 for i in range(m)):
        raise DomainError("S must have even diagonal")
    form = SymForm(s)  # also checks symmetry and invertibility
    p = p_matrix.entries if isinstance(p_matrix, Majorant) else np.asarray(p_matrix, float)
    if not is_majorant(form, p):
        raise DomainError("P is not a majorant of S")
    point = tau if isinstance(tau, SiegelPoint) else SiegelPoint(tau)
    u, v = point.tau_hat.real, point.tau_hat.imag
    n = point.n
    zeta = np.atleast_2d(np.asarray(zeta, dtype=float))
    if zeta.shape[0] != m:
        raise DomainError("zeta must have m rows")
    j = zeta.shape[1]
    z = np.asarray(z_matrix, dtype=complex).reshape(j, n)

    a_matrix = np.kron(s, u) + 1j * np.kron(p, v)
    b = (s @ zeta @ z).reshape(-1)
    flags = ()
    if not np.allclose(s @ zeta, p @ zeta, atol=1e-9):
        flags = ("zeta-not-fixed",)
    res = _gaussian_lattice_sum(a_matrix, b, trunc)
    return SeriesResult(res.value, res.radius_used, res.tail_bound,
                        res.terms_summed, res.certified, res.flags + flags)


# --------------------------------------------------------------------------
# piecewise lowest-weight kernels
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RSData:
    """Signature (p, q), two harmonic degrees (k, m) and the matching
    harmonic polynomials (P1 in the first p variables, P2 in the last q).
    """

    p: int
    q: int
    k: int
    m: int
    poly1: Polynomial
    poly2: Polynomial

    def __post_init__(self):
        n = self.p + self.q
        if self.k < 0 or self.m < 0:
            raise DomainError("degrees must be nonnegative")
        for poly, deg, definite in ((self.poly1, self.k, True), (self.poly2, self.m, False)):
            if poly.nvars != n:
                raise DomainError("polynomials must live in p+q variables")
            if not poly.is_homogeneous(deg):
                raise DomainError("polynomial degree does not match")
        block1 = list(range(self.p))
        block2 = list(range(self.p, n))
        if not laplacian(n, block1).act_poly(self.poly1).is_zero():
            raise DomainError("P1 must be harmonic for the positive block")
        if not laplacian(n, block2).act_poly(self.poly2).is_zero():
            raise DomainError("P2 must be harmonic for the negative block")
        if any(self.poly1.max_degree_in(v) > 0 for v in block2):
            raise DomainError("P1 may only use the first p variables")
        if any(self.poly2.max_degree_in(v) > 0 for v in block1):
            raise DomainError("P2 may only use the last q variables")

    @property
    def weight(self) -> Fraction:
        """d = k - m + (p - q)/2."""
        return Fraction(self.k - self.m) + Fraction(self.p - self.q, 2)


def rs_phi_eval(data: RSData, tau: complex, x) -> complex:
    """Evaluate P1 P2 S1^(-(k+(p-2)/2)) S^(d-1) exp(pi i tau S(x)),
    extended by zero to S(x) <= 0.
    """
    tau = complex(tau)
    if tau.imag <= 0:
        raise DomainError("Im tau must be positive")
    x = np.asarray(x, dtype=float)
    p, q = data.p, data.q
    s1 = float(np.sum(x[:p] ** 2))
    s2 = float(np.sum(x[p:] ** 2))
    s = s1 - s2
    if s <= 0:
        return 0.0 + 0.0j
    e1 = -(data.k + Fraction(p - 2, 2))
    if s1 == 0.0:
        if e1 >= 0:
            return 0.0 + 0.0j if e1 > 0 else _rs_value(data, tau, x, 1.0, s)
        raise DomainError("pole: S1 vanishes with negative exponent")
    return _rs_value(data, tau, x, s1, s)


def _rs_value(data: RSData, tau, x, s1, s) -> complex:
    e1 = float(-(data.k + Fraction(data.p - 2, 2)))
    es = float(data.weight - 1)
    point = tuple(complex(t) for t in x)
    val = data.poly1.eval(point) * data.poly2.eval(point)
    return (complex(val) * s1 ** e1 * s ** es
            * np.exp(1j * math.pi * tau * s))


def rs_weil_borel_action(data: RSData, g, tau: complex) -> tuple[complex, complex]:
    """Action of an upper-triangular g = n(b) t(a) on the kernel.

    Returns (scalar, new_tau) with scalar = a^d and new_tau = a^2 tau + b;
    applying the oscillator-representation formulas for the shear and
    dilation generators to this kernel reproduces scalar * kernel(new_tau)
    pointwise.  Elements with lower-left entry != 0 need the Fourier
    transform of the kernel and are rejected.
    """
    g = np.asarray(g, dtype=float)
    if g.shape != (2, 2) or abs(g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0] - 1) > 1e-12:
        raise DomainError("g must lie in SL2")
    if abs(g[1, 0]) > 1e-14:
        raise DomainError("only the upper-triangular subgroup is supported")
    a = g[0, 0]
    if a <= 0:
        raise DomainError("dilation parameter must be positive")
    b = g[0, 1] * a
    scalar = a ** float(data.weight)
    return complex(scalar), a * a * complex(tau) + b


# --------------------------------------------------------------------------
# two-variable kernel on the cone of positive binary forms
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ShimuraInput:
    """Weight parameter k > 1, level N, value table u on Z/N with
    u(a j) = psi(a) u(j) for some character psi, and the two half-plane
    variables z (integral-weight side) and tau (half-integral side).
    """

    k: int
    level: int
    u: tuple[complex, ...]
    z: complex
    tau: complex

    def __init__(self, k, level, u, z, tau):
        if k <= 1:
            raise DomainError("k must exceed 1")
        if level < 1:
            raise DomainError("level must be positive")
        u = tuple(complex(t) for t in u)
        if len(u) != level:
            raise DomainError("u table must have length N")
        if complex(z).imag <= 0 or complex(tau).imag <= 0:
            raise DomainError("z and tau must lie in the upper half plane")
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "level", int(level))
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "z", complex(z))
        object.__setattr__(self, "tau", complex(tau))
        object.__setattr__(self, "psi", _equivariance_character(u, level))

    psi: tuple[complex, ...] = ()


def _equivariance_character(u, level) -> tuple[complex, ...]:
    """Derive psi from u(a j) = psi(a) u(j) and verify it on all pairs."""
    units = [a for a in range(level) if math.gcd(a, level) == 1]
    psi = {}
    for a in units:
        candidates = [u[(a * j) % level] / u[j] for j in range(level) if abs(u[j]) > 1e-12]
        if not candidates:
            psi[a] = 1.0 + 0.0j
            continue
        val = candidates[0]
        psi[a] = val
        for j in range(level):
            if abs(u[(a * j) % level] - val * u[j]) > 1e-9:
                raise DomainError("u is not equivariant under any character")
    return tuple(psi.get(a, 0j) for a in range(level))


@dataclass(frozen=True)
class ShimuraResult(SeriesResult):
    """Series result plus the cone cutoff data of the two-variable kernel."""

    sup_cut: int = 0
    form_cut: float = 0.0
    skipped: int = 0


def _sprime(y: np.ndarray) -> np.ndarray:
    return 2.0 * y[:, 2] ** 2 - 2.0 * y[:, 0] * y[:, 1]


def shimura_kernel(inp: ShimuraInput, trunc: TruncationSpec = TruncationSpec(),
                   sup_cut: int | None = None, form_cut: float | None = None,
                   exclude=()) -> ShimuraResult:
    """Two-variable kernel

        Omega_u(z, tau) = sum over y in Z^3 with S'(y) > 0 of
            u(y1) * S'(y, Q(z))^(-k) * S'(y)^(k - 1/2) * e^(pi i tau S'(y)),

    where S'(y) = 2 y3^2 - 2 y1 y2, S'(y, y') is the associated bilinear
    form and Q(z) = (z^2, 1, z).  The sum runs over an open cone, so the
    truncation (|y|_oo <= sup_cut, S'(y) <= form_cut) carries only a
    heuristic tail estimate (outermost-shell mass) and the result is never
    marked certified.  Lattice points with S'(y, Q(z)) = 0 inside the cone
    are skipped and counted.  ``exclude`` removes explicitly given points,
    which keeps finite-difference stencils on a fixed summation set.
    """
    r_cut = int(sup_cut) if sup_cut is not None else min(trunc.max_radius, 12)
    v = inp.tau.imag
    if form_cut is None:
        # smallest even T with e^{-pi v T} * (2R+1)^3 below target
        t_cut = 2.0
        while math.exp(-math.pi * v * t_cut) * (2 * r_cut + 1) ** 3 > trunc.target_tail \
                and t_cut < 4 * r_cut * r_cut:
            t_cut += 2.0
    else:
        t_cut = float(form_cut)

    ax = np.arange(-r_cut, r_cut + 1)
    grid = np.meshgrid(ax, ax, ax, indexing="ij")
    y = np.stack([g.ravel() for g in grid], axis=1)
    sp = _sprime(y)
    mask = (sp > 0) & (sp <= t_cut)
    if exclude:
        banned = set(tuple(int(c) for c in pt) for pt in exclude)
        keep = np.array([tuple(row) not in banned for row in y[mask]])
        idx = np.flatnonzero(mask)
        mask = np.zeros_like(mask)
        mask[idx[keep]] = True
    y = y[mask]
    sp = sp[mask]

    z = inp.z
    szq = 2.0 * z * y[:, 2] - y[:, 0] - (z * z) * y[:, 1]
    scale = (1.0 + abs(z) ** 2) * np.maximum(1.0, np.abs(y).max(initial=1))
    singular = np.abs(szq) < 1e-12 * scale
    skipped = int(np.count_nonzero(singular))
    good = ~singular
    y, sp, szq = y[good], sp[good], szq[good]

    uvals = np.array([inp.u[int(t) % inp.level] for t in y[:, 0]], dtype=complex)
    terms = uvals * szq ** (-inp.k) * sp ** (inp.k - 0.5) * np.exp(1j * math.pi * inp.tau * sp)
    value = _ordered_sum(y, sp, terms) if len(terms) else 0.0 + 0.0j

    shell = np.abs(y).max(axis=1) == r_cut if len(terms) else np.array([], dtype=bool)
    tail_est = float(np.sum(np.abs(terms[shell]))) if len(terms) else 0.0
    return ShimuraResult(value, r_cut, tail_est, int(len(terms)), False,
                         ("heuristic-tail",), r_cut, t_cut, skipped)
