"""Exact scalars for the symbolic layer: Q(i) times integer powers of pi.

Operator coefficients in the derived oscillator representation mix pi and
1/pi (multiplication operators carry pi, double derivatives carry 1/pi),
so the scalar ring is Laurent polynomials in pi over the Gaussian
rationals.  Every identity check in the symbolic modules reduces to "is
this scalar exactly zero", which stays decidable in this ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = ["QQi", "PiScalar", "rref"]


@dataclass(frozen=True)
class QQi:
    """A Gaussian rational re + im*i with exact Fraction parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value) -> "QQi":
        if isinstance(value, QQi):
            return value
        if isinstance(value, (int, Fraction)):
            return QQi(Fraction(value))
        if isinstance(value, complex):
            # floats are dyadic rationals; the conversion below is exact
            return QQi(Fraction(value.real), Fraction(value.imag))
        raise TypeError(f"cannot build QQi from {value!r}")

    _SCALARS = (int, Fraction, complex)

    def __add__(self, other):
        if not isinstance(other, (QQi,) + QQi._SCALARS):
            return NotImplemented
        other = QQi.of(other)
        return QQi(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-QQi.of(other))

    def __rsub__(self, other):
        return QQi.of(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, (QQi,) + QQi._SCALARS):
            return NotImplemented
        other = QQi.of(other)
        return QQi(self.re * other.re - self.im * other.im,
                   self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = QQi.of(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero in QQi")
        return QQi((self.re * other.re + self.im * other.im) / n,
                   (self.im * other.re - self.re * other.im) / n)

    def conjugate(self) -> "QQi":
        return QQi(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}*i)"


I = QQi(Fraction(0), Fraction(1))


class PiScalar:
    """A finite sum of c_k * pi^k with c_k in Q(i) and k in Z."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        for k, c in (coeffs or {}).items():
            c = QQi.of(c)
            if not c.is_zero():
                clean[int(k)] = c
        self.coeffs = clean

    # -- constructors ------------------------------------------------------
    @staticmethod
    def of(value, pi_power: int = 0) -> "PiScalar":
        if isinstance(value, PiScalar):
            if pi_power:
                return value * PiScalar({pi_power: 1})
            return value
        return PiScalar({pi_power: QQi.of(value)})

    @staticmethod
    def zero() -> "PiScalar":
        return PiScalar({})

    @staticmethod
    def one() -> "PiScalar":
        return PiScalar({0: 1})

    @staticmethod
    def i() -> "PiScalar":
        return PiScalar({0: I})

    @staticmethod
    def pi(k: int = 1) -> "PiScalar":
        return PiScalar({k: 1})

    # -- ring operations ---------------------------------------------------
    _SCALARS = (int, Fraction, complex, QQi)

    def __add__(self, other):
        if not isinstance(other, (PiScalar,) + PiScalar._SCALARS):
            return NotImplemented
        other = PiScalar.of(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, QQi()) + c
        return PiScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return PiScalar({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-PiScalar.of(other))

    def __rsub__(self, other):
        return PiScalar.of(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, (PiScalar,) + PiScalar._SCALARS):
            return NotImplemented
        other = PiScalar.of(other)
        out: dict[int, QQi] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                out[k] = out.get(k, QQi()) + c1 * c2
        return PiScalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = PiScalar.of(other)
        if len(other.coeffs) != 1:
            raise ZeroDivisionError("can only divide by a single pi-power term")
        (k, c), = other.coeffs.items()
        return PiScalar({kk - k: cc / c for kk, cc in self.coeffs.items()})

    def conjugate(self) -> "PiScalar":
        return PiScalar({k: c.conjugate() for k, c in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, (PiScalar, QQi, int, Fraction, complex)):
            return NotImplemented
        return (self - PiScalar.of(other)).is_zero()

    def __hash__(self):
        return hash(tuple(sorted((k, c.re, c.im) for k, c in self.coeffs.items())))

    def as_qqi(self) -> QQi:
        """The pi^0 coefficient; raises if other powers are present."""
        if not self.coeffs:
            return QQi()
        if set(self.coeffs) != {0}:
            raise ValueError("scalar carries nonzero pi powers")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        import math

        return sum((c.to_complex() * math.pi ** k for k, c in self.coeffs.items()),
                   0j)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            if k == 0:
                parts.append(f"{c!r}")
            elif k == 1:
                parts.append(f"{c!r}*pi")
            else:
                parts.append(f"{c!r}*pi^{k}")
        return " + ".join(parts)


def rref(matrix: list[list[QQi]]) -> tuple[list[list[QQi]], list[int]]:
    """Reduced row echelon form over Q(i); returns (rows, pivot columns)."""
    rows = [list(r) for r in matrix]
    nrow = len(rows)
    ncol = len(rows[0]) if nrow else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncol):
        pivot = next((i for i in range(r, nrow) if not rows[i][col].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][col]
        rows[r] = [c / inv for c in rows[r]]
        for i in range(nrow):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == nrow:
            break
    return rows, pivots
