"""Exact Laurent polynomial arithmetic over the rationals.

Internal helper for the statistical-model constructors: toric Hessians,
adjoints, and moment-map substitutions are assembled symbolically here and
only converted to positive Cox pairs at the end. Unlike PositivePolynomial,
coefficients of any sign are allowed.
"""

from __future__ import annotations

from fractions import Fraction


class LaurentPoly:
    """Sparse Laurent polynomial: exponent tuple -> Fraction coefficient."""

    __slots__ = ("num_vars", "coeffs")

    def __init__(self, num_vars, coeffs=None):
        self.num_vars = num_vars
        self.coeffs = {}
        if coeffs:
            for exp, c in (coeffs.items() if isinstance(coeffs, dict) else coeffs):
                c = Fraction(c)
                if c == 0:
                    continue
                exp = tuple(int(e) for e in exp)
                new = self.coeffs.get(exp, Fraction(0)) + c
                if new == 0:
                    self.coeffs.pop(exp, None)
                else:
                    self.coeffs[exp] = new

    @staticmethod
    def constant(num_vars, value):
        return LaurentPoly(num_vars, {(0,) * num_vars: Fraction(value)})

    @staticmethod
    def monomial(num_vars, exp, coeff=1):
        return LaurentPoly(num_vars, {tuple(exp): Fraction(coeff)})

    def is_zero(self):
        return not self.coeffs

    def terms(self):
        return sorted(self.coeffs.items())

    def __add__(self, other):
        out = dict(self.coeffs)
        for exp, c in other.coeffs.items():
            new = out.get(exp, Fraction(0)) + c
            if new == 0:
                out.pop(exp, None)
            else:
                out[exp] = new
        result = LaurentPoly(self.num_vars)
        result.coeffs = out
        return result

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor):
        factor = Fraction(factor)
        result = LaurentPoly(self.num_vars)
        if factor != 0:
            result.coeffs = {e: c * factor for e, c in self.coeffs.items()}
        return result

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                new = out.get(exp, Fraction(0)) + c1 * c2
                if new == 0:
                    out.pop(exp, None)
                else:
                    out[exp] = new
        result = LaurentPoly(self.num_vars)
        result.coeffs = out
        return result

    def power(self, k):
        result = LaurentPoly.constant(self.num_vars, 1)
        for _ in range(int(k)):
            result = result * self
        return result

    def theta(self, i):
        """Euler operator t_i d/dt_i."""
        result = LaurentPoly(self.num_vars)
        result.coeffs = {e: c * e[i] for e, c in self.coeffs.items() if e[i] != 0}
        return result

    def evaluate(self, t):
        total = Fraction(0)
        for exp, c in self.coeffs.items():
            term = c
            for ti, e in zip(t, exp):
                term *= Fraction(ti) ** e
            total += term
        return total

    def min_exponents(self):
        return tuple(min(e[i] for e in self.coeffs) for i in range(self.num_vars))

    def shift(self, offset):
        result = LaurentPoly(self.num_vars)
        result.coeffs = {tuple(a + b for a, b in zip(e, offset)): c
                         for e, c in self.coeffs.items()}
        return result

    def all_positive(self):
        return all(c > 0 for c in self.coeffs.values())

    def divide_exact(self, divisor):
        """Exact quotient self / divisor, or None if not divisible.

        Laurent units are factored out first; the remaining polynomial
        division uses lex order against the single divisor, which reduces an
        exact multiple to zero.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly(self.num_vars)
        s_min = self.min_exponents()
        d_min = divisor.min_exponents()
        num = self.shift(tuple(-m for m in s_min))
        den = divisor.shift(tuple(-m for m in d_min))
        lead = max(den.coeffs)
        lead_c = den.coeffs[lead]
        quotient = {}
        rem = dict(num.coeffs)
        while rem:
            exp = max(rem)
            diff = tuple(a - b for a, b in zip(exp, lead))
            if any(d < 0 for d in diff):
                return None
            factor = rem[exp] / lead_c
            quotient[diff] = factor
            for de, dc in den.coeffs.items():
                target = tuple(a + b for a, b in zip(diff, de))
                new = rem.get(target, Fraction(0)) - factor * dc
                if new == 0:
                    rem.pop(target, None)
                else:
                    rem[target] = new
        unit = tuple(a - b for a, b in zip(s_min, d_min))
        result = LaurentPoly(self.num_vars)
        result.coeffs = {tuple(a + b for a, b in zip(e, unit)): c
                         for e, c in quotient.items()}
        return result

    def __repr__(self):
        parts = [f"{c}*t^{e}" for e, c in self.terms()[:5]]
        extra = "" if len(self.coeffs) <= 5 else f" ... ({len(self.coeffs)} terms)"
        return "LaurentPoly(" + " + ".join(parts) + extra + ")"


def det_laurent(matrix):
    """Exact determinant of a matrix of Laurent polynomials (cofactors)."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    total = None
    for j in range(n):
        minor = [[matrix[i][jj] for jj in range(n) if jj != j] for i in range(1, n)]
        term = matrix[0][j] * det_laurent(minor)
        if j % 2:
            term = term.scale(-1)
        total = term if total is None else total + term
    return total
