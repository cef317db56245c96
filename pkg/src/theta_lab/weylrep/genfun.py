"""Closed function class for lowest-weight computations.

A GenFunction is

    P(x) * S1^a * S2^b * S^c * exp(x^t E x),

with P an exact polynomial, rational exponents (a, b, c) on the
block quadrics S1 = x_1^2 + ... + x_p^2, S2 = x_{p+1}^2 + ... + x_n^2 and
S = S1 - S2, and an exact symmetric exponent matrix E.  The class is
closed under every operator of the Weyl algebra: differentiation lowers
(a, b, c) by integers and multiplies by polynomials, and the normal form
(P shares no factor of S1, S2, S) makes equality decidable, which is what
turns "is a lowest weight vector" into an exact computation.

For a definite block (q = 0) the quadrics S1 and S coincide; the S1 slot
is then folded into the S exponent so the normal form stays unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import PiScalar
from .poly import Polynomial
from .weyl import WeylOperator

__all__ = ["GenFunction", "act_on_genfunction", "check_lowest_weight", "LowestWeightReport"]


def _exp_matrix(nvars, entries) -> tuple[tuple[PiScalar, ...], ...]:
    rows = []
    for i in range(nvars):
        row = []
        for j in range(nvars):
            row.append(PiScalar.of(entries[i][j]))
        rows.append(tuple(row))
    for i in range(nvars):
        for j in range(nvars):
            if not (rows[i][j] - rows[j][i]).is_zero():
                raise ValueError("exponent matrix must be symmetric")
    return tuple(rows)


class GenFunction:
    __slots__ = ("nvars", "p", "q", "poly", "a", "b", "c", "expo")

    def __init__(self, p: int, q: int, poly: Polynomial, a=0, b=0, c=0, expo=None):
        self.p, self.q = int(p), int(q)
        self.nvars = self.p + self.q
        if poly.nvars != self.nvars:
            raise ValueError("polynomial lives in the wrong variable count")
        a, b, c = Fraction(a), Fraction(b), Fraction(c)
        if self.q == 0:
            c, a = a + c, Fraction(0)  # S == S1: fold into one slot
            if b != 0:
                raise ValueError("no negative block: S2 power must vanish")
        if self.p == 0:
            raise ValueError("at least one positive variable is required")
        if expo is None:
            expo = [[0] * self.nvars for _ in range(self.nvars)]
        self.expo = _exp_matrix(self.nvars, expo)
        self.poly, self.a, self.b, self.c = poly, a, b, c
        self._reduce()

    # quadrics ---------------------------------------------------------------
    def _s1(self) -> Polynomial:
        return Polynomial.quadric(self.nvars, [1] * self.p + [0] * self.q)

    def _s2(self) -> Polynomial:
        return Polynomial.quadric(self.nvars, [0] * self.p + [1] * self.q)

    def _s(self) -> Polynomial:
        return Polynomial.quadric(self.nvars, [1] * self.p + [-1] * self.q)

    def _reduce(self):
        if self.poly.is_zero():
            self.a = self.b = self.c = Fraction(0)
            return
        if self.q == 0:
            pairs = [("c", self._s())]
        else:
            pairs = [("a", self._s1()), ("b", self._s2()), ("c", self._s())]
        changed = True
        while changed:
            changed = False
            for slot, quadric in pairs:
                quotient = self.poly.divexact(quadric)
                if quotient is not None:
                    self.poly = quotient
                    setattr(self, slot, getattr(self, slot) + 1)
                    changed = True
        return

    # ring-ish operations ------------------------------------------------------
    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def same_exponential(self, other: "GenFunction") -> bool:
        if self.nvars != other.nvars:
            return False
        return all((self.expo[i][j] - other.expo[i][j]).is_zero()
                   for i in range(self.nvars) for j in range(self.nvars))

    def scale(self, scalar) -> "GenFunction":
        return GenFunction(self.p, self.q, self.poly * PiScalar.of(scalar),
                           self.a, self.b, self.c, self.expo)

    def __sub__(self, other: "GenFunction") -> "GenFunction":
        if not self.same_exponential(other) or (self.p, self.q) != (other.p, other.q):
            raise ValueError("cannot combine: different exponential factors")
        if self.is_zero():
            return other.scale(-1)
        if other.is_zero():
            return self
        da, db, dc = other.a - self.a, other.b - self.b, other.c - self.c
        if any(d.denominator != 1 for d in (da, db, dc)):
            raise ValueError("cannot combine: exponents differ non-integrally")
        a, b, c = min(self.a, other.a), min(self.b, other.b), min(self.c, other.c)
        p1 = self._raise_poly(self.poly, self.a - a, self.b - b, self.c - c)
        p2 = self._raise_poly(other.poly, other.a - a, other.b - b, other.c - c)
        return GenFunction(self.p, self.q, p1 - p2, a, b, c, self.expo)

    def __eq__(self, other):
        if not isinstance(other, GenFunction):
            return NotImplemented
        try:
            return (self - other).is_zero()
        except ValueError:
            return False

    def __hash__(self):
        raise TypeError("GenFunction is not hashable")

    def _raise_poly(self, poly: Polynomial, da: Fraction, db: Fraction, dc: Fraction):
        out = poly
        for power, quadric in ((da, self._s1()), (db, self._s2()), (dc, self._s())):
            for _ in range(int(power)):
                out = out * quadric
        return out

    def eval(self, point) -> complex:
        """Numeric value at a real point (powers need S1, S2, S > 0)."""
        import cmath

        s1 = sum(complex(point[i]) ** 2 for i in range(self.p))
        s2 = sum(complex(point[i]) ** 2 for i in range(self.p, self.nvars))
        s = s1 - s2
        val = self.poly.eval(point)
        for base, power in ((s1, self.a), (s2, self.b), (s, self.c)):
            if power != 0:
                val *= complex(base) ** float(power)
        quad = 0j
        for i in range(self.nvars):
            for j in range(self.nvars):
                e = self.expo[i][j].to_complex()
                if e:
                    quad += e * complex(point[i]) * complex(point[j])
        return val * cmath.exp(quad)

    def __repr__(self):
        return (f"GenFunction({self.poly!r} * S1^{self.a} * S2^{self.b} * "
                f"S^{self.c} * exp(Q))")


def _diff_components(f: GenFunction, var: int, comps: dict) -> dict:
    """d/dx_var of sum over comps of P * S1^(a+da) S2^(b+db) S^(c+dc) exp."""
    n = f.nvars
    out: dict[tuple[int, int, int], Polynomial] = {}

    def add(key, poly):
        if poly.is_zero():
            return
        out[key] = out.get(key, Polynomial.zero(n)) + poly

    x_var = Polynomial.variable(n, var)
    in_plus = var < f.p
    for (da, db, dc), poly in comps.items():
        add((da, db, dc), poly.diff(var))
        a = f.a + da
        b = f.b + db
        c = f.c + dc
        if in_plus:
            if a != 0:
                add((da - 1, db, dc), poly * x_var * PiScalar.of(2 * a))
            if c != 0:
                add((da, db, dc - 1), poly * x_var * PiScalar.of(2 * c))
        else:
            if b != 0:
                add((da, db - 1, dc), poly * x_var * PiScalar.of(2 * b))
            if c != 0:
                add((da, db, dc - 1), poly * x_var * PiScalar.of(-2 * c))
        # exponential factor: 2 (E x)_var
        grad = Polynomial.zero(n)
        for j in range(n):
            e = f.expo[var][j]
            if not e.is_zero():
                grad = grad + Polynomial.variable(n, j) * (e * PiScalar.of(2))
        if not grad.is_zero():
            add((da, db, dc), poly * grad)
    return out


def act_on_genfunction(op: WeylOperator, f: GenFunction) -> GenFunction:
    """Exact normal-form image of f under a Weyl operator."""
    if op.nvars != f.nvars:
        raise ValueError("variable count mismatch")
    n = f.nvars
    total: dict[tuple[int, int, int], Polynomial] = {}
    for (xexp, dexp), coeff in op.terms.items():
        comps = {(0, 0, 0): Polynomial.constant(n, 1)}
        for var in range(n):
            for _ in range(dexp[var]):
                comps = _diff_components(f, var, comps)
        mono = Polynomial.monomial(n, xexp, coeff)
        for key, poly in comps.items():
            if poly.is_zero():
                continue
            total[key] = total.get(key, Polynomial.zero(n)) + mono * poly
    total = {k: p for k, p in total.items() if not p.is_zero()}
    if not total:
        return GenFunction(f.p, f.q, Polynomial.zero(n), 0, 0, 0, f.expo)
    # The seed polynomial is 1, not f.poly: components must be multiplied
    # by it before collapsing (derivatives already used the product rule
    # through _diff_components, which differentiates the component polys
    # and the power/exponential factors but not f.poly itself).
    da0 = min(k[0] for k in total)
    db0 = min(k[1] for k in total)
    dc0 = min(k[2] for k in total)
    base = GenFunction(f.p, f.q, Polynomial.constant(n, 1), 0, 0, 0, f.expo)
    acc = Polynomial.zero(n)
    for (da, db, dc), poly in total.items():
        acc = acc + base._raise_poly(poly, da - da0, db - db0, dc - dc0)
    return GenFunction(f.p, f.q, acc, f.a + da0, f.b + db0, f.c + dc0, f.expo)


@dataclass(frozen=True)
class LowestWeightReport:
    identity: str
    status: str
    witness: str = ""

    def as_dict(self):
        return {"identity": self.identity, "status": self.status, "witness": self.witness}


def check_lowest_weight(ops, f: GenFunction) -> list[LowestWeightReport]:
    """Check a list of (name, operator, action) requirements exactly.

    ``action`` is either ("eigen", value) or ("annihilate",).
    """
    reports = []
    for name, op, action in ops:
        image = act_on_genfunction(op, f)
        if action[0] == "annihilate":
            residual = image
        elif action[0] == "eigen":
            residual = image - f.scale(PiScalar.of(action[1]))
        else:
            raise ValueError(f"unknown action {action!r}")
        if residual.is_zero():
            reports.append(LowestWeightReport(name, "pass"))
        else:
            witness = next(iter(sorted(residual.poly.terms)), None)
            reports.append(LowestWeightReport(
                name, "fail",
                f"first residual term {witness} -> {residual.poly.terms.get(witness)!r}"))
    return reports
