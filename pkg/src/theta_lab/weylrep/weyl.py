"""The Weyl algebra: normal-ordered polynomial coefficient operators.

An operator is a finite sum of terms x^alpha d^beta with exact scalars.
The canonical form keeps every multiplication operator to the left of
every derivative; products are normal-ordered through

    d^beta x^gamma = sum_k  C(beta, k) C(gamma, k) k!  x^(gamma-k) d^(beta-k),

applied one variable at a time, so composition is exact and associative.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .exact import PiScalar, QQi
from .poly import Polynomial

__all__ = [
    "WeylOperator",
    "position",
    "derivative",
    "multiplication",
    "euler_operator",
    "laplacian",
    "weyl_compose",
    "weyl_commutator",
]


class WeylOperator:
    """Finite map (monomial multi-index, derivative multi-index) -> scalar."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = int(nvars)
        clean: dict[tuple[tuple[int, ...], tuple[int, ...]], PiScalar] = {}
        for (xexp, dexp), coeff in (terms or {}).items():
            key = (tuple(int(e) for e in xexp), tuple(int(e) for e in dexp))
            if len(key[0]) != self.nvars or len(key[1]) != self.nvars:
                raise ValueError("index length mismatch")
            coeff = PiScalar.of(coeff)
            if not coeff.is_zero():
                clean[key] = clean.get(key, PiScalar.zero()) + coeff
        self.terms = {k: c for k, c in clean.items() if not c.is_zero()}

    @staticmethod
    def zero(nvars: int) -> "WeylOperator":
        return WeylOperator(nvars, {})

    @staticmethod
    def identity(nvars: int, coeff=1) -> "WeylOperator":
        z = (0,) * nvars
        return WeylOperator(nvars, {(z, z): PiScalar.of(coeff)})

    def __add__(self, other):
        if isinstance(other, (int, Fraction, PiScalar, QQi, complex)):
            other = WeylOperator.identity(self.nvars, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, PiScalar.zero()) + c
        return WeylOperator(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylOperator(self.nvars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, PiScalar, QQi, complex)):
            other = WeylOperator.identity(self.nvars, other)
        return self + (-other)

    def __mul__(self, other):
        """Normal-ordered composition (apply ``other`` first)."""
        if isinstance(other, (int, Fraction, PiScalar, QQi, complex)):
            c = PiScalar.of(other)
            return WeylOperator(self.nvars, {k: cc * c for k, cc in self.terms.items()})
        return weyl_compose(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, PiScalar, QQi, complex)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, WeylOperator):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms))))

    def is_zero(self) -> bool:
        return not self.terms

    def act_poly(self, poly: Polynomial) -> Polynomial:
        """Apply to a polynomial (derivatives first, then multiply)."""
        if poly.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        result = Polynomial.zero(self.nvars)
        for (xexp, dexp), coeff in self.terms.items():
            part = poly
            for var, reps in enumerate(dexp):
                for _ in range(reps):
                    part = part.diff(var)
                    if part.is_zero():
                        break
            if part.is_zero():
                continue
            result = result + Polynomial.monomial(self.nvars, xexp, coeff) * part
        return result

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (xe, de) in sorted(self.terms):
            c = self.terms[(xe, de)]
            xs = "".join(f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}"
                         for i, e in enumerate(xe) if e)
            ds = "".join(f"D{i + 1}^{e}" if e > 1 else f"D{i + 1}"
                         for i, e in enumerate(de) if e)
            parts.append(f"({c!r})" + (xs or "") + (ds or ""))
        return " + ".join(parts)


def position(nvars: int, j: int) -> WeylOperator:
    xe = tuple(1 if i == j else 0 for i in range(nvars))
    return WeylOperator(nvars, {(xe, (0,) * nvars): PiScalar.one()})


def derivative(nvars: int, j: int) -> WeylOperator:
    de = tuple(1 if i == j else 0 for i in range(nvars))
    return WeylOperator(nvars, {((0,) * nvars, de): PiScalar.one()})


def multiplication(poly: Polynomial) -> WeylOperator:
    z = (0,) * poly.nvars
    return WeylOperator(poly.nvars, {(m, z): c for m, c in poly.terms.items()})


def euler_operator(nvars: int) -> WeylOperator:
    """E = sum x_j d_j."""
    op = WeylOperator.zero(nvars)
    for j in range(nvars):
        op = op + position(nvars, j) * derivative(nvars, j)
    return op


def laplacian(nvars: int, plus_vars, minus_vars=()) -> WeylOperator:
    """sum over plus_vars of d_j^2 minus sum over minus_vars of d_j^2."""
    terms = {}
    for j in plus_vars:
        de = tuple(2 if i == j else 0 for i in range(nvars))
        terms[((0,) * nvars, de)] = PiScalar.of(1)
    for j in minus_vars:
        de = tuple(2 if i == j else 0 for i in range(nvars))
        terms[((0,) * nvars, de)] = terms.get(((0,) * nvars, de), PiScalar.zero()) - 1
    return WeylOperator(nvars, terms)


def _order_one_var(beta: int, gamma: int):
    """Coefficients of d^beta x^gamma = sum_k c_k x^(gamma-k) d^(beta-k)."""
    for k in range(min(beta, gamma) + 1):
        yield k, comb(beta, k) * comb(gamma, k) * factorial(k)


def weyl_compose(a: WeylOperator, b: WeylOperator) -> WeylOperator:
    """Normal-ordered product a b (b acts first)."""
    if a.nvars != b.nvars:
        raise ValueError("variable count mismatch")
    n = a.nvars
    out: dict[tuple[tuple[int, ...], tuple[int, ...]], PiScalar] = {}
    for (xa, da), ca in a.terms.items():
        for (xb, db), cb in b.terms.items():
            # reorder da (derivatives) past xb (multiplications), variable-wise
            parts = [(tuple(), tuple(), 1)]
            for j in range(n):
                new = []
                for mono, deriv, mult in parts:
                    for k, c in _order_one_var(da[j], xb[j]):
                        new.append((mono + (xb[j] - k,), deriv + (da[j] - k,), mult * c))
                parts = new
            base = ca * cb
            for mono, deriv, mult in parts:
                xe = tuple(xa[i] + mono[i] for i in range(n))
                de = tuple(deriv[i] + db[i] for i in range(n))
                out[(xe, de)] = out.get((xe, de), PiScalar.zero()) + base * mult
    return WeylOperator(n, out)


def weyl_commutator(a: WeylOperator, b: WeylOperator) -> WeylOperator:
    return weyl_compose(a, b) - weyl_compose(b, a)
