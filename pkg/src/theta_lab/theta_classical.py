"""Theta series on the Siegel half space: Riemann, Jacobi, characteristics.

Normalisation: every series here uses the pi*i convention

    theta(tau) = sum exp(pi*i * x^t tau x),    tau in H_n,

and variants with a linear term exp(pi*i * 2 b^t x).  Series that are
classically written with exp(2*pi*i ...) (character twists, Hecke and
Siegel sums) double the argument at the call site instead; each such
evaluator documents the doubling.  Keeping one internal convention avoids
silent factor-of-two mistakes.

Truncation: a sum is cut to the box |x|_oo <= R with R chosen so that the
certified Gaussian tail bound (see :mod:`theta_lab.numerics`) falls below
the requested target.  Terms are accumulated in increasing order of the
positive form Im(tau)[x] with exactly rounded summation, so results are
reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import (
    DomainError,
    DirichletCharacter,
    SeriesResult,
    TruncationSpec,
    csum,
    get_precision,
    shifted_tail_bound,
)

__all__ = [
    "SiegelPoint",
    "JacobiArgument",
    "Characteristic",
    "riemann_theta",
    "jacobi_theta",
    "theta_with_char",
    "theta_quadform",
    "tensor_embed",
    "fourier_jacobi_coeff",
    "twisted_theta",
]

_BOX_CAP = 6_000_000


@dataclass(frozen=True)
class SiegelPoint:
    """A complex symmetric matrix with positive-definite imaginary part."""

    tau_hat: np.ndarray

    def __init__(self, tau_hat):
        m = np.atleast_2d(np.asarray(tau_hat, dtype=complex))
        if m.shape[0] != m.shape[1]:
            raise DomainError("tau must be square")
        scale = max(1.0, float(np.abs(m).max()))
        if not np.allclose(m, m.T, atol=1e-12 * scale):
            raise DomainError("tau must be symmetric")
        m = 0.5 * (m + m.T)
        if np.linalg.eigvalsh(m.imag)[0] <= 0:
            raise DomainError("Im tau must be positive definite")
        object.__setattr__(self, "tau_hat", m)
        self.tau_hat.setflags(write=False)

    @property
    def n(self) -> int:
        return self.tau_hat.shape[0]


@dataclass(frozen=True)
class JacobiArgument:
    tau: SiegelPoint
    z: np.ndarray

    def __init__(self, tau, z):
        tau = tau if isinstance(tau, SiegelPoint) else SiegelPoint(tau)
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        if z.shape != (tau.n,):
            raise DomainError("z must be a vector of length n")
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "z", z)
        self.z.setflags(write=False)


@dataclass(frozen=True)
class Characteristic:
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError("characteristic must be finite")


# --------------------------------------------------------------------------
# shared box summation with certified tails
# --------------------------------------------------------------------------


def _pick_radius(v_min, n, shift_sup, prefactor, trunc):
    for radius in range(max(1, int(math.ceil(shift_sup)) + 1), trunc.max_radius + 1):
        bound = prefactor * shifted_tail_bound(v_min, n, radius, shift_sup)
        if bound <= trunc.target_tail:
            return radius, bound, True
    radius = trunc.max_radius
    bound = prefactor * shifted_tail_bound(v_min, n, radius, shift_sup)
    return radius, (bound if math.isfinite(bound) else math.inf), False


def _box_points(n: int, radius: int) -> np.ndarray:
    if (2 * radius + 1) ** n > _BOX_CAP:
        raise DomainError("summation box too large; increase target_tail")
    axes = [np.arange(-radius, radius + 1)] * n
    grid = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grid], axis=1)


def _ordered_sum(points, q_values, terms) -> complex:
    keys = tuple(points[:, j] for j in range(points.shape[1] - 1, -1, -1)) + (q_values,)
    order = np.lexsort(keys)
    return csum(terms[order].tolist())


def _gaussian_lattice_sum(a_matrix, b_vector, trunc, shift=None) -> SeriesResult:
    """sum over x in Z^n of exp(pi*i*((x+s)^t A (x+s) + 2 b^t (x+s)))."""
    a = np.atleast_2d(np.asarray(a_matrix, dtype=complex))
    n = a.shape[0]
    b = np.zeros(n, dtype=complex) if b_vector is None else np.asarray(b_vector, dtype=complex)
    s = np.zeros(n) if shift is None else np.asarray(s_float(shift), dtype=float)

    v = a.imag
    eig = np.linalg.eigvalsh(v)
    if eig[0] <= 0:
        raise DomainError("imaginary part must be positive definite")
    v_min = float(eig[0]) * (1 - 1e-12)

    # modulus of a term is exp(-pi (x+s+c)^t V (x+s+c)) * prefactor
    y = b.imag
    c = np.linalg.solve(v, y)
    prefactor = math.exp(math.pi * float(y @ c))
    shift_sup = float(np.max(np.abs(c + s))) if n else 0.0

    radius, tail, certified = _pick_radius(v_min, n, shift_sup, prefactor, trunc)
    pts = _box_points(n, radius)
    xs = pts + s
    q_vals = np.einsum("ij,jk,ik->i", xs, v, xs)

    if get_precision() == "extended":
        value = _mp_sum(xs, a, b)
    else:
        expo = 1j * math.pi * (np.einsum("ij,jk,ik->i", xs, a, xs) + 2.0 * (xs @ b))
        terms = np.exp(expo)
        value = _ordered_sum(pts, q_vals, terms)
    flags = () if certified else ("radius-capped",)
    return SeriesResult(value, radius, float(tail), len(pts), certified, flags)


def s_float(shift) -> np.ndarray:
    return np.atleast_1d(np.asarray(shift, dtype=float))


def _mp_sum(xs, a, b):
    import mpmath

    terms = []
    for row in xs:
        quad = sum(a[i][j] * row[i] * row[j] for i in range(len(row)) for j in range(len(row)))
        lin = 2 * sum(b[i] * row[i] for i in range(len(row)))
        terms.append(mpmath.exp(1j * mpmath.pi * (mpmath.mpc(quad) + mpmath.mpc(lin))))
    return mpmath.fsum(terms)


# --------------------------------------------------------------------------
# evaluators
# --------------------------------------------------------------------------


def riemann_theta(tau_hat, trunc: TruncationSpec = TruncationSpec()) -> SeriesResult:
    """theta(tau) = sum over Z^n of exp(pi*i x^t tau x)."""
    point = tau_hat if isinstance(tau_hat, SiegelPoint) else SiegelPoint(tau_hat)
    return _gaussian_lattice_sum(point.tau_hat, None, trunc)


def jacobi_theta(tau, z=None, trunc: TruncationSpec = TruncationSpec()) -> SeriesResult:
    """theta(tau, z) = sum exp(pi*i(x^t tau x + 2 z^t x))."""
    if isinstance(tau, JacobiArgument):
        arg = tau
        if z is not None and not isinstance(z, TruncationSpec):
            raise DomainError("z already supplied through JacobiArgument")
        if isinstance(z, TruncationSpec):
            trunc = z
    else:
        arg = JacobiArgument(tau, z)
    return _gaussian_lattice_sum(arg.tau.tau_hat, arg.z, trunc)


def _weighted_tail_1d(v, radius, c_abs, a_abs):
    """Bound sum_{|m|>R} 2 pi |m+a| exp(-pi v (m+c)^2), |c| <= c_abs."""
    r_eff = radius - c_abs
    if r_eff <= 0:
        return math.inf
    ratio = ((r_eff + 1) / r_eff) * math.exp(-math.pi * v * (2 * r_eff + 1))
    if ratio >= 1:
        return math.inf
    lead = (radius + 1 + a_abs) * math.exp(-math.pi * v * (r_eff + 1) ** 2)
    return 2 * math.pi * 2 * lead / (1 - ratio)


def theta_with_char(ch: Characteristic, tau: complex, z: complex, deriv: bool,
                    trunc: TruncationSpec = TruncationSpec()) -> SeriesResult:
    """Scalar theta with characteristic (a, b):

    sum exp(pi*i((n+a)^2 tau + 2(n+a)(z+b))), or its d/dz when ``deriv``
    (which inserts the factor 2*pi*i*(n+a)).
    """
    tau = complex(tau)
    z = complex(z)
    if tau.imag <= 0:
        raise DomainError("Im tau must be positive")
    v = tau.imag
    center = ch.a + z.imag / v
    prefactor = math.exp(math.pi * z.imag ** 2 / v)

    certified = False
    radius = trunc.max_radius
    tail = math.inf
    for r in range(max(1, int(abs(center)) + 1), trunc.max_radius + 1):
        if deriv:
            t = prefactor * _weighted_tail_1d(v, r, abs(center), abs(ch.a))
        else:
            t = prefactor * shifted_tail_bound(v, 1, r, abs(center))
        if t <= trunc.target_tail:
            radius, tail, certified = r, t, True
            break
        radius, tail = r, t

    ns = np.arange(-radius, radius + 1, dtype=float)
    m = ns + ch.a
    expo = 1j * math.pi * (m * m * tau + 2.0 * m * (z + ch.b))
    if get_precision() == "extended":
        import mpmath

        terms = [mpmath.exp(1j * mpmath.pi * ((n + ch.a) ** 2 * mpmath.mpc(tau)
                                              + 2 * (n + ch.a) * mpmath.mpc(z + ch.b)))
                 for n in range(-radius, radius + 1)]
        if deriv:
            terms = [2j * mpmath.pi * (n + ch.a) * t
                     for n, t in zip(range(-radius, radius + 1), terms)]
        value = csum(terms)
    else:
        terms = np.exp(expo)
        if deriv:
            terms = 2j * math.pi * m * terms
        pts = ns.astype(int).reshape(-1, 1)
        value = _ordered_sum(pts, v * m * m, terms)
    flags = () if certified else ("radius-capped",)
    return SeriesResult(value, radius, float(tail), len(ns), certified, flags)


def tensor_embed(t_matrix, s_matrix, z_matrix) -> tuple[SiegelPoint, np.ndarray]:
    """(T, S, Z) -> (T (x) S, column stacking of Z).

    The n*h point has blocks T*S_ij, and stacking the columns of Z turns
    the trace pairing into the ordinary scalar product.
    """
    t = np.atleast_2d(np.asarray(t_matrix, dtype=complex))
    s = np.atleast_2d(np.asarray(s_matrix, dtype=float))
    if np.linalg.eigvalsh(0.5 * (s + s.T))[0] <= 0:
        raise DomainError("S must be positive definite")
    n, h = t.shape[0], s.shape[0]
    z = np.asarray(z_matrix, dtype=complex).reshape(n, h)
    tau = np.kron(s, t)  # block (i, j) equals S_ij * T
    zvec = z.T.reshape(-1)  # columns of Z stacked
    return SiegelPoint(tau), zvec


def theta_quadform(s_matrix, t_point, z_matrix,
                   trunc: TruncationSpec = TruncationSpec()) -> SeriesResult:
    """theta^S(T, Z) = sum over integer n x h matrices N of
    exp(pi*i Tr(N^t T N S + 2 N^t Z)).

    Summed directly over matrices (row-major flattening), so it provides a
    numerical route independent of :func:`tensor_embed`, which stacks
    columns; agreement of the two is a nontrivial consistency check.
    """
    t = t_point.tau_hat if isinstance(t_point, SiegelPoint) else t_point
    t = SiegelPoint(t).tau_hat
    s = np.atleast_2d(np.asarray(s_matrix, dtype=float))
    if np.linalg.eigvalsh(0.5 * (s + s.T))[0] <= 0:
        raise DomainError("S must be positive definite")
    n, h = t.shape[0], s.shape[0]
    z = np.asarray(z_matrix, dtype=complex).reshape(n, h)
    return _gaussian_lattice_sum(np.kron(t, s), z.reshape(-1), trunc)


def fourier_jacobi_coeff(l: int, tau, z, trunc: TruncationSpec = TruncationSpec()) -> SeriesResult:
    """Index-l coefficient sum exp(pi*i(x^t tau x + 2 l z^t x)).

    This is the index-raising operator applied to the Jacobi theta: the
    z variable is multiplied by l (l = 0 collapses to the Riemann theta).
    """
    point = tau if isinstance(tau, SiegelPoint) else SiegelPoint(tau)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    return jacobi_theta(point, int(l) * z, trunc)


def twisted_theta(psi: DirichletCharacter, t: int, parity: str, tau: complex,
                  trunc: TruncationSpec = TruncationSpec()) -> SeriesResult:
    """Character twists sum psi(n) [n] exp(2 pi i tau t n^2).

    The exponential uses the doubled argument (exp(2 pi i ...) =
    exp(pi i (2 tau t) n^2)); ``parity`` selects the plain ("even") or
    n-weighted ("odd") series.  If the parity of psi does not match, the
    series vanishes identically; the exact zero is returned with a
    ``parity-mismatch`` flag rather than silently.
    """
    if parity not in ("even", "odd"):
        raise DomainError("parity must be 'even' or 'odd'")
    tau = complex(tau)
    if tau.imag <= 0:
        raise DomainError("Im tau must be positive")
    if t < 1:
        raise DomainError("t must be a positive integer")
    mismatch = psi.parity() != parity
    v = 2.0 * t * tau.imag

    certified = False
    radius, tail = trunc.max_radius, math.inf
    for r in range(1, trunc.max_radius + 1):
        bound = _weighted_tail_1d(v, r, 0.0, 0.0) if parity == "odd" \
            else shifted_tail_bound(v, 1, r, 0.0)
        if bound <= trunc.target_tail:
            radius, tail, certified = r, bound, True
            break
        radius, tail = r, bound

    ns = np.arange(-radius, radius + 1)
    chi = np.array([psi(int(n)) for n in ns], dtype=complex)
    expo = 2j * math.pi * tau * t * (ns.astype(float) ** 2)
    terms = chi * np.exp(expo)
    if parity == "odd":
        terms = terms * ns.astype(float)
    value = _ordered_sum(ns.reshape(-1, 1), (v / 2.0) * ns.astype(float) ** 2, terms)
    flags = ("parity-mismatch",) if mismatch else ()
    if mismatch:
        value = 0.0 + 0.0j
    if not certified:
        flags = flags + ("radius-capped",)
    return SeriesResult(value, radius, float(tail), len(ns), certified, flags)
