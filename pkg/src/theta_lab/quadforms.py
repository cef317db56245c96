"""Symmetric bilinear forms, majorants, and lattice point enumeration.

A nondegenerate symmetric S of signature (p, q) is brought to the normal
form diag(1_p, -1_q) by a frame C (computed from a symmetric
eigendecomposition, which stays stable for ill-conditioned input).  The
associated majorant is P = (C C^t)^{-1}; it is positive definite and
satisfies P S^{-1} P = S, and the orthogonal group of S acts on majorants
by P -> A^t P A.

Lattice enumeration is a depth-first bound-propagation scheme on a
U D U^t factorisation of the positive form, emitting points in
lexicographic order so that lattice sums are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import DomainError

__all__ = [
    "SymForm",
    "Majorant",
    "QuadraticSpace",
    "signature_frame",
    "majorant_from_frame",
    "is_majorant",
    "transport_majorant",
    "enumerate_lattice",
]


def _check_space(space: "QuadraticSpace") -> None:
    s = space.form.entries
    n = s.shape[0]
    if space.p + space.q != n:
        raise DomainError("signature does not match the dimension")
    target = np.diag([1.0] * space.p + [-1.0] * space.q)
    scale = max(1.0, float(np.abs(s).max()))
    if not np.allclose(space.frame.T @ s @ space.frame, target, atol=1e-8 * scale):
        raise DomainError("frame does not normalise the form")
    if not is_majorant(space.form, space.majorant.entries):
        raise DomainError("stored matrix is not a majorant of the form")

MATRIX_TOL = 1e-9
FRAME_TOL = 1e-10


def _as_matrix(entries) -> np.ndarray:
    m = np.asarray(entries, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError("expected a square matrix")
    return m


@dataclass(frozen=True)
class SymForm:
    """A real symmetric nondegenerate matrix."""

    entries: np.ndarray

    def __init__(self, entries):
        m = _as_matrix(entries)
        scale = max(1.0, float(np.abs(m).max()))
        if not np.allclose(m, m.T, atol=MATRIX_TOL * scale):
            raise DomainError("matrix is not symmetric")
        m = 0.5 * (m + m.T)
        if abs(np.linalg.det(m)) <= 1e-12 * scale ** m.shape[0]:
            raise DomainError("matrix is numerically degenerate")
        object.__setattr__(self, "entries", m)
        self.entries.setflags(write=False)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __call__(self, x) -> float:
        """Evaluate the quadratic form x^t S x."""
        x = np.asarray(x, dtype=float)
        return float(x @ self.entries @ x)


@dataclass(frozen=True)
class Majorant:
    """A symmetric positive-definite matrix (validity is checked by caller)."""

    entries: np.ndarray

    def __init__(self, entries):
        m = _as_matrix(entries)
        m = 0.5 * (m + m.T)
        if np.linalg.eigvalsh(m)[0] <= 0:
            raise DomainError("majorant must be positive definite")
        object.__setattr__(self, "entries", m)
        self.entries.setflags(write=False)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def signature_frame(form: SymForm) -> tuple[int, int, np.ndarray]:
    """Signature (p, q) and a frame C with C^t S C = diag(1_p, -1_q).

    Columns for the positive eigenvalues come first (descending
    eigenvalue), then the negative ones (descending absolute value);
    eigenvector signs are fixed so the result is deterministic.
    """
    s = form.entries
    scale = max(1.0, float(np.abs(s).max()))
    w, v = np.linalg.eigh(s)
    if np.min(np.abs(w)) <= 1e-10 * scale:
        raise DomainError("form is too close to singular for a stable frame")
    pos = [i for i in range(len(w)) if w[i] > 0]
    neg = [i for i in range(len(w)) if w[i] < 0]
    pos.sort(key=lambda i: -w[i])
    neg.sort(key=lambda i: w[i])
    cols = []
    for i in pos + neg:
        col = v[:, i] / np.sqrt(abs(w[i]))
        j = int(np.argmax(np.abs(col)))
        if col[j] < 0:
            col = -col
        cols.append(col)
    c = np.column_stack(cols)
    p, q = len(pos), len(neg)
    target = np.diag([1.0] * p + [-1.0] * q)
    if not np.allclose(c.T @ s @ c, target, atol=FRAME_TOL * scale):
        raise DomainError("frame verification failed (ill-conditioned form)")
    return p, q, c


def majorant_from_frame(c: np.ndarray) -> Majorant:
    """P = (C C^t)^{-1} for an invertible frame C."""
    c = _as_matrix(c)
    if abs(np.linalg.det(c)) < 1e-12:
        raise DomainError("frame is singular")
    return Majorant(np.linalg.inv(c @ c.T))


def is_majorant(form: SymForm, p_matrix) -> bool:
    """True iff P S^{-1} P = S entrywise and P is symmetric positive definite."""
    p = np.asarray(p_matrix, dtype=float)
    if p.shape != form.entries.shape:
        return False
    if not np.allclose(p, p.T, atol=MATRIX_TOL):
        return False
    if np.linalg.eigvalsh(0.5 * (p + p.T))[0] <= 0:
        return False
    s = form.entries
    scale = max(1.0, float(np.abs(s).max()), float(np.abs(p).max()))
    return bool(np.allclose(p @ np.linalg.inv(s) @ p, s, atol=MATRIX_TOL * scale))


def transport_majorant(form: SymForm, p: Majorant, a: np.ndarray) -> Majorant:
    """P -> P[A] = A^t P A for A in the orthogonal group of S."""
    a = _as_matrix(a)
    s = form.entries
    scale = max(1.0, float(np.abs(s).max())) * max(1.0, float(np.abs(a).max())) ** 2
    if not np.allclose(a.T @ s @ a, s, atol=MATRIX_TOL * scale):
        raise DomainError("matrix does not preserve the form")
    result = Majorant(a.T @ p.entries @ a)
    if not is_majorant(form, result.entries):
        raise DomainError("transported matrix fails the majorant conditions")
    return result


def _udu(p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Factor a positive-definite P as U diag(d) U^t with U unit upper triangular."""
    n = p.shape[0]
    rev = slice(None, None, -1)
    pr = p[rev, :][:, rev]
    # plain LDL^t on the reversed matrix
    lower = np.eye(n)
    d = np.zeros(n)
    for j in range(n):
        d[j] = pr[j, j] - np.sum(lower[j, :j] ** 2 * d[:j])
        if d[j] <= 0:
            raise DomainError("matrix is not positive definite")
        for i in range(j + 1, n):
            lower[i, j] = (pr[i, j] - np.sum(lower[i, :j] * lower[j, :j] * d[:j])) / d[j]
    u = lower[rev, :][:, rev]
    return u, d[rev]


def enumerate_lattice(p_matrix, bound: float) -> list[tuple[int, ...]]:
    """All x in Z^n with x^t P x <= bound, in lexicographic order.

    P must be positive definite.  Points on the boundary are decided with
    a relative slack of 1e-9 to absorb roundoff in the form evaluation.
    """
    if bound < 0:
        raise DomainError("bound must be >= 0")
    p = _as_matrix(p_matrix)
    n = p.shape[0]
    u, d = _udu(p)
    slack = 1e-9 * max(1.0, bound)
    limit = bound + slack
    out: list[tuple[int, ...]] = []
    x = np.zeros(n, dtype=int)

    # With y = U^t x the form is sum_i d_i y_i^2 and y_i depends only on
    # x_1..x_i, so fixing coordinates left to right propagates the bound.
    def walk(i: int, used: float):
        if i == n:
            out.append(tuple(int(t) for t in x))
            return
        offset = float(u[:i, i] @ x[:i]) if i else 0.0
        room = limit - used
        if room < 0:
            return
        half = (room / d[i]) ** 0.5
        lo = int(np.ceil(-half - offset - 1e-12))
        hi = int(np.floor(half - offset + 1e-12))
        for t in range(lo, hi + 1):
            x[i] = t
            y = t + offset
            walk(i + 1, used + d[i] * y * y)
        x[i] = 0

    walk(0, 0.0)
    return out


@dataclass(frozen=True)
class QuadraticSpace:
    """A form S with its signature, normalising frame, and majorant."""

    form: SymForm
    p: int
    q: int
    frame: np.ndarray
    majorant: Majorant

    def __post_init__(self):
        _check_space(self)

    @classmethod
    def from_form(cls, form) -> "QuadraticSpace":
        form = form if isinstance(form, SymForm) else SymForm(form)
        p, q, c = signature_frame(form)
        return cls(form, p, q, c, majorant_from_frame(c))

    @property
    def n(self) -> int:
        return self.form.n

    def with_majorant(self, p_matrix) -> "QuadraticSpace":
        m = p_matrix if isinstance(p_matrix, Majorant) else Majorant(p_matrix)
        if not is_majorant(self.form, m.entries):
            raise DomainError("matrix is not a majorant of the form")
        return QuadraticSpace(self.form, self.p, self.q, self.frame, m)
