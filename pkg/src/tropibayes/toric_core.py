"""Toric variety data and homogeneous polynomial bookkeeping.

A complete simplicial fan is stored as the matrix V of primitive ray
generators (columns) plus the maximal cones. The class-group grading is the
Hermite-reduced integer kernel of V, so two monomials have equal degree
exactly when their exponent difference is a rational combination of the rows
of V^T. Dehomogenization maps a Cox exponent l to V.l, which identifies the
positive part of the variety with the positive orthant torus.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd

import numpy as np

from .linalg import (
    det_int,
    dot,
    integer_kernel_basis,
    mat_mul,
    mat_vec,
    minor_expansion_det,
    rank_fraction,
    transpose,
    vec_gcd,
)


class ToricError(ValueError):
    pass


def _coerce_coeff(c) -> Fraction:
    if isinstance(c, Fraction):
        value = c
    elif isinstance(c, float):
        value = Fraction(c).limit_denominator(10 ** 12)
    else:
        value = Fraction(str(c)) if isinstance(c, str) else Fraction(c)
    return value


class PositivePolynomial:
    """Multivariate polynomial with positive rational coefficients.

    Terms are stored as (coefficient, integer exponent tuple), merged and
    sorted by exponent. Negative (Laurent) exponents are tolerated by the
    container; operations that require genuine polynomials check themselves.
    """

    __slots__ = ("num_vars", "terms", "_np")

    def __init__(self, num_vars, terms):
        merged = {}
        for coeff, exp in terms:
            exp = tuple(int(e) for e in exp)
            if len(exp) != num_vars:
                raise ToricError("exponent length mismatch")
            merged[exp] = merged.get(exp, Fraction(0)) + _coerce_coeff(coeff)
        cleaned = []
        for exp in sorted(merged):
            coeff = merged[exp]
            if coeff == 0:
                continue
            if coeff < 0:
                raise ToricError("coefficients must be positive")
            cleaned.append((coeff, exp))
        if not cleaned:
            raise ToricError("zero polynomial is not allowed")
        self.num_vars = num_vars
        self.terms = tuple(cleaned)
        self._np = None

    def __repr__(self):
        inner = " + ".join(f"{c}*x^{e}" for c, e in self.terms[:4])
        extra = "" if len(self.terms) <= 4 else f" + ... ({len(self.terms)} terms)"
        return f"PositivePolynomial({inner}{extra})"

    def __eq__(self, other):
        return (isinstance(other, PositivePolynomial)
                and self.num_vars == other.num_vars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.num_vars, self.terms))

    # -- structure ----------------------------------------------------------

    @property
    def support(self):
        return tuple(exp for _, exp in self.terms)

    def coefficients(self):
        return tuple(c for c, _ in self.terms)

    def min_coefficient(self) -> Fraction:
        return min(self.coefficients())

    def sum_coefficients(self) -> Fraction:
        return sum(self.coefficients())

    def is_laurent(self):
        return any(e < 0 for _, exp in self.terms for e in exp)

    def scale(self, factor):
        factor = _coerce_coeff(factor)
        return PositivePolynomial(self.num_vars,
                                  [(c * factor, e) for c, e in self.terms])

    def multiply(self, other):
        if self.num_vars != other.num_vars:
            raise ToricError("variable count mismatch")
        prod = {}
        for c1, e1 in self.terms:
            for c2, e2 in other.terms:
                exp = tuple(a + b for a, b in zip(e1, e2))
                prod[exp] = prod.get(exp, Fraction(0)) + c1 * c2
        return PositivePolynomial(self.num_vars, [(c, e) for e, c in prod.items()])

    def power(self, k):
        if k < 0:
            raise ToricError("negative power")
        result = PositivePolynomial(self.num_vars, [(1, (0,) * self.num_vars)])
        for _ in range(k):
            result = result.multiply(self)
        return result

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, x):
        """Exact evaluation at a rational point (positive where needed)."""
        total = Fraction(0)
        for c, exp in self.terms:
            term = c
            for xi, e in zip(x, exp):
                term *= Fraction(xi) ** e
            total += term
        return total

    def _arrays(self):
        if self._np is None:
            exps = np.array([e for _, e in self.terms], dtype=np.float64)
            logc = np.log(np.array([float(c) for c, _ in self.terms]))
            self._np = (exps, logc)
        return self._np

    def log_evaluate(self, log_x):
        """log f(x) from log coordinates, stable for batches (rows of log_x)."""
        exps, logc = self._arrays()
        log_x = np.asarray(log_x, dtype=np.float64)
        single = log_x.ndim == 1
        scores = np.atleast_2d(log_x) @ exps.T + logc
        peak = scores.max(axis=1)
        out = peak + np.log(np.exp(scores - peak[:, None]).sum(axis=1))
        return float(out[0]) if single else out

    def log_tropical(self, log_x):
        """log f^tr(x) = max over the support of <log x, l>."""
        exps, _ = self._arrays()
        log_x = np.asarray(log_x, dtype=np.float64)
        single = log_x.ndim == 1
        scores = np.atleast_2d(log_x) @ exps.T
        out = scores.max(axis=1)
        return float(out[0]) if single else out

    def serialize_terms(self):
        return [[str(c), list(e)] for c, e in self.terms]

    @staticmethod
    def parse_terms(num_vars, data):
        return PositivePolynomial(num_vars, [(c, tuple(e)) for c, e in data])


def tropicalize_eval(f: PositivePolynomial, x):
    """Tropical approximation f^tr(x) = max over support of x^l, exact input."""
    if any(Fraction(xi) <= 0 for xi in x):
        raise ToricError("tropical evaluation requires strictly positive input")
    best = None
    for _, exp in f.terms:
        value = Fraction(1)
        for xi, e in zip(x, exp):
            value *= Fraction(xi) ** e
        best = value if best is None else max(best, value)
    return best


# ---------------------------------------------------------------------------
# Toric data
# ---------------------------------------------------------------------------


def grading_matrix(V):
    """Hermite-reduced basis of the integer kernel of V, one row per generator.

    Satisfies W . V^T = 0 with primitive rows; canonical for fixed V. Any
    valid choice gives the same degree-equality relation.
    """
    V = tuple(tuple(int(x) for x in row) for row in V)
    n = len(V)
    k = len(V[0])
    if rank_fraction(V) != n:
        raise ToricError("ray matrix must have full row rank")
    if k <= n:
        raise ToricError("a complete fan needs more rays than the dimension")
    W = integer_kernel_basis(V)
    if len(W) != k - n:
        raise ToricError("unexpected kernel rank")
    return W


def degree_of_monomial(exponent, W):
    """Class-group degree W . m of a monomial exponent under a grading W."""
    if any(len(row) != len(exponent) for row in W):
        raise ToricError("exponent length mismatch")
    return tuple(dot(row, exponent) for row in W)


class ToricData:
    """Rays (columns of V), maximal cones, and the induced grading."""

    __slots__ = ("V", "maximal_cones", "W", "n", "k", "_gram", "_gram_det")

    def __init__(self, V, maximal_cones):
        self.V = tuple(tuple(int(x) for x in row) for row in V)
        self.n = len(self.V)
        self.k = len(self.V[0])
        self.maximal_cones = tuple(tuple(sorted(int(i) for i in c))
                                   for c in maximal_cones)
        for col in range(self.k):
            ray = tuple(self.V[r][col] for r in range(self.n))
            if vec_gcd(ray) != 1:
                raise ToricError(f"ray {col} is not primitive")
        for cone in self.maximal_cones:
            if len(cone) != self.n:
                raise ToricError("maximal cones must be simplicial")
            sub = tuple(tuple(self.V[r][c] for c in cone) for r in range(self.n))
            if det_int(sub) == 0:
                raise ToricError("degenerate maximal cone")
        self.W = grading_matrix(self.V)
        self._gram = mat_mul(self.V, transpose(self.V))
        self._gram_det = det_int(self._gram)

    @property
    def gram_determinant(self):
        return self._gram_det

    def ray(self, i):
        return tuple(self.V[r][i] for r in range(self.n))

    def degree(self, exponent):
        """Class-group degree W . m of a monomial exponent."""
        if len(exponent) != self.k:
            raise ToricError("exponent length mismatch")
        return tuple(dot(row, exponent) for row in self.W)

    def same_degree(self, e1, e2):
        return self.degree(e1) == self.degree(e2)

    def to_json(self):
        rays = [list(self.ray(i)) for i in range(self.k)]
        return {"rays": rays, "max_cones": [list(c) for c in self.maximal_cones]}

    @staticmethod
    def from_json(data):
        rays = data["rays"]
        V = tuple(tuple(r[j] for r in rays) for j in range(len(rays[0])))
        return ToricData(V, [tuple(c) for c in data["max_cones"]])


def check_same_degree(f: PositivePolynomial, g: PositivePolynomial,
                      toric: ToricData) -> bool:
    """True iff all exponents of f and g share one class-group degree."""
    if f.num_vars != toric.k or g.num_vars != toric.k:
        raise ToricError("variable count does not match the ray count")
    ref = toric.degree(f.terms[0][1])
    return all(toric.degree(e) == ref for _, e in f.terms + g.terms)


def is_homogeneous(f: PositivePolynomial, toric: ToricData) -> bool:
    ref = toric.degree(f.terms[0][1])
    return all(toric.degree(e) == ref for _, e in f.terms)


def dehomogenize(f: PositivePolynomial, toric: ToricData) -> PositivePolynomial:
    """Laurent polynomial in torus coordinates via x_rho -> prod_j t_j^{V_j,rho}.

    A Cox exponent l maps to V.l; terms with the same image merge.
    """
    return dehomogenize_with_map(f, toric)[0]


def dehomogenize_with_map(f, toric):
    terms = []
    preimage = {}
    for c, exp in f.terms:
        image = tuple(mat_vec(toric.V, exp))
        terms.append((c, image))
        preimage.setdefault(image, exp)
    return PositivePolynomial(toric.n, terms), preimage


def homogenize_pair(numerator_terms, denominator_terms, toric: ToricData):
    """Lift a Laurent-rational function on the torus to a degree-0 Cox pair.

    Terms are (coeff, exponent in Z^n) with t_j = prod_rho x_rho^{V_j,rho};
    a torus exponent a maps to V^T.a, then both sides are shifted by the
    minimal common monomial making every Cox exponent nonnegative.
    """
    Vt = transpose(toric.V)
    num = [(c, tuple(mat_vec(Vt, a))) for c, a in numerator_terms]
    den = [(c, tuple(mat_vec(Vt, a))) for c, a in denominator_terms]
    shift = tuple(max(0, *(-e[i] for _, e in num + den)) for i in range(toric.k))
    lift = lambda terms: PositivePolynomial(
        toric.k, [(c, tuple(e[i] + shift[i] for i in range(toric.k))) for c, e in terms])
    return lift(num), lift(den)


def cauchy_binet_check(V, W) -> bool:
    """det(V.W) equals the sum over minors; used as an exactness oracle."""
    product = mat_mul(V, W)
    return det_int(product) == minor_expansion_det(V, W)


# ---------------------------------------------------------------------------
# Built-in varieties
# ---------------------------------------------------------------------------


def projective_space(n) -> ToricData:
    """P^n with coordinates x_0..x_n; x_i -> e_{i+1} for i<n, x_n -> -sum e_j."""
    cols = []
    for i in range(n):
        cols.append(tuple(1 if j == i else 0 for j in range(n)))
    cols.append(tuple(-1 for _ in range(n)))
    V = tuple(tuple(col[r] for col in cols) for r in range(n))
    cones = [tuple(sorted(set(range(n + 1)) - {i})) for i in range(n + 1)]
    return ToricData(V, cones)


def p1_power(r) -> ToricData:
    """(P^1)^r with coordinate pairs (z0_j, z1_j) -> (+e_j, -e_j)."""
    cols = []
    for j in range(r):
        plus = tuple(1 if i == j else 0 for i in range(r))
        cols.append(plus)
        cols.append(tuple(-x for x in plus))
    V = tuple(tuple(col[i] for col in cols) for i in range(r))
    cones = []
    for signs in range(2 ** r):
        cone = []
        for j in range(r):
            cone.append(2 * j + ((signs >> j) & 1))
        cones.append(tuple(cone))
    return ToricData(V, cones)


def pentagon_surface() -> ToricData:
    """The smooth toric surface whose fan has the five rays
    (1,0),(1,-1),(-1,-1),(-1,1),(0,1) with cyclically adjacent maximal cones."""
    V = ((1, 1, -1, -1, 0),
         (0, -1, -1, 1, 1))
    cones = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]
    return ToricData(V, cones)
