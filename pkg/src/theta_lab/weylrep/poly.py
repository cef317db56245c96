"""Exact multivariate polynomials with PiScalar coefficients."""

from __future__ import annotations

from fractions import Fraction

from .exact import PiScalar, QQi

__all__ = ["Polynomial"]


class Polynomial:
    """Map from exponent multi-indices to exact scalars; no zero entries."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = int(nvars)
        clean: dict[tuple[int, ...], PiScalar] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != self.nvars or any(e < 0 for e in mono):
                raise ValueError("bad exponent multi-index")
            coeff = PiScalar.of(coeff)
            if not coeff.is_zero():
                clean[mono] = clean.get(mono, PiScalar.zero()) + coeff
        self.terms = {m: c for m, c in clean.items() if not c.is_zero()}

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero(nvars: int) -> "Polynomial":
        return Polynomial(nvars, {})

    @staticmethod
    def constant(nvars: int, value) -> "Polynomial":
        return Polynomial(nvars, {(0,) * nvars: PiScalar.of(value)})

    @staticmethod
    def variable(nvars: int, j: int) -> "Polynomial":
        mono = tuple(1 if i == j else 0 for i in range(nvars))
        return Polynomial(nvars, {mono: PiScalar.one()})

    @staticmethod
    def monomial(nvars: int, exponents, coeff=1) -> "Polynomial":
        return Polynomial(nvars, {tuple(exponents): PiScalar.of(coeff)})

    @staticmethod
    def quadric(nvars: int, signs) -> "Polynomial":
        """sum_j signs[j] * x_j^2 (signs may be 0 to omit a variable)."""
        terms = {}
        for j, s in enumerate(signs):
            if s:
                mono = tuple(2 if i == j else 0 for i in range(nvars))
                terms[mono] = PiScalar.of(s)
        return Polynomial(nvars, terms)

    # -- ring structure ----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction, PiScalar, QQi, complex)):
            other = Polynomial.constant(self.nvars, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, PiScalar.zero()) + c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, PiScalar, QQi, complex)):
            other = Polynomial.constant(self.nvars, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PiScalar, QQi, complex)):
            c = PiScalar.of(other)
            return Polynomial(self.nvars, {m: cc * c for m, cc in self.terms.items()})
        out: dict[tuple[int, ...], PiScalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, PiScalar.zero()) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(self.nvars, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms))))

    # -- structure ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self, deg: int | None = None) -> bool:
        degs = {sum(m) for m in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return deg is None or degs == {deg}

    def max_degree_in(self, var: int) -> int:
        return max((m[var] for m in self.terms), default=0)

    def diff(self, var: int) -> "Polynomial":
        out = {}
        for m, c in self.terms.items():
            if m[var]:
                m2 = tuple(e - 1 if i == var else e for i, e in enumerate(m))
                out[m2] = out.get(m2, PiScalar.zero()) + c * m[var]
        return Polynomial(self.nvars, out)

    def conjugate(self) -> "Polynomial":
        return Polynomial(self.nvars, {m: c.conjugate() for m, c in self.terms.items()})

    def eval(self, point) -> complex:
        total = 0j
        for m, c in self.terms.items():
            val = c.to_complex()
            for x, e in zip(point, m):
                if e:
                    val *= complex(x) ** e
            total += val
        return total

    def divexact(self, divisor: "Polynomial") -> "Polynomial | None":
        """Return self / divisor when the division is exact, else None."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return Polynomial.zero(self.nvars)
        lead = max(divisor.terms)  # lex-leading monomial
        lead_c = divisor.terms[lead]
        rem = dict(self.terms)
        quot: dict[tuple[int, ...], PiScalar] = {}
        while rem:
            m = max(rem)
            c = rem[m]
            if any(a < b for a, b in zip(m, lead)):
                return None
            qm = tuple(a - b for a, b in zip(m, lead))
            qc = c / lead_c if isinstance(c, PiScalar) else PiScalar.of(c) / lead_c
            quot[qm] = quot.get(qm, PiScalar.zero()) + qc
            for dm, dc in divisor.terms.items():
                t = tuple(a + b for a, b in zip(qm, dm))
                nc = rem.get(t, PiScalar.zero()) - qc * dc
                if nc.is_zero():
                    rem.pop(t, None)
                else:
                    rem[t] = nc
        return Polynomial(self.nvars, quot)

    def __repr__(self):
        if not self.terms:
            return "0"
        names = [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for m in sorted(self.terms, reverse=True):
            factors = [f"{names[i]}^{e}" if e > 1 else names[i]
                       for i, e in enumerate(m) if e]
            body = "*".join(factors) if factors else "1"
            parts.append(f"({self.terms[m]!r})*{body}")
        return " + ".join(parts)
