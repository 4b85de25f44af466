"""Independent brute-force oracles used to pin expected values.

Each routine deliberately avoids the library's own code paths: hull vertices
come from linear programming, polytope integrals from direct expansion and
iterated 1-D antiderivatives, and the coin-model marginal likelihood from
exact monomial integration over the unit cube.
"""

from fractions import Fraction
from math import comb

import numpy as np
from scipy.optimize import linprog


def lp_vertex_filter(points):
    """Vertices of conv(points): p is a vertex iff p not in conv(others)."""
    vertices = []
    pts = [tuple(p) for p in points]
    arr = np.asarray(pts, dtype=float)
    for i, p in enumerate(pts):
        others = np.delete(arr, i, axis=0)
        n = len(others)
        # feasibility: lambda >= 0, sum lambda = 1, others^T lambda = p
        A_eq = np.vstack([others.T, np.ones(n)])
        b_eq = np.append(np.asarray(p, dtype=float), 1.0)
        res = linprog(np.zeros(n), A_eq=A_eq, b_eq=b_eq,
                      bounds=[(0, None)] * n, method="highs")
        if not res.success:
            vertices.append(p)
    return sorted(vertices)


def _poly_mul(a, b, nvars):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, Fraction(0)) + ca * cb
    return {e: c for e, c in out.items() if c != 0}


def _poly_pow(a, k, nvars):
    out = {(0,) * nvars: Fraction(1)}
    for _ in range(k):
        out = _poly_mul(out, a, nvars)
    return out


def coin_marginal_likelihood_exact(m, u):
    """Exact integral over [0,1]^3 of prod_l p_l^{u_l} for the coin model."""
    one = {(0, 0, 0): Fraction(1)}
    x = {(1, 0, 0): Fraction(1)}
    s = {(0, 1, 0): Fraction(1)}
    t = {(0, 0, 1): Fraction(1)}
    omx = {(0, 0, 0): Fraction(1), (1, 0, 0): Fraction(-1)}
    oms = {(0, 0, 0): Fraction(1), (0, 1, 0): Fraction(-1)}
    omt = {(0, 0, 0): Fraction(1), (0, 0, 1): Fraction(-1)}

    def p_l(l):
        left = _poly_mul(omx, _poly_mul(_poly_pow(oms, l, 3),
                                        _poly_pow(s, m - l, 3), 3), 3)
        right = _poly_mul(x, _poly_mul(_poly_pow(omt, l, 3),
                                       _poly_pow(t, m - l, 3), 3), 3)
        merged = dict(left)
        for e, c in right.items():
            merged[e] = merged.get(e, Fraction(0)) + c
        return {e: comb(m, l) * c for e, c in merged.items() if c != 0}

    integrand = one
    for l, ul in enumerate(u):
        integrand = _poly_mul(integrand, _poly_pow(p_l(l), ul, 3), 3)
    return sum(c * Fraction(1, (e[0] + 1) * (e[1] + 1) * (e[2] + 1))
               for e, c in integrand.items())


PENTAGON_FORMS = (
    {(0, 0): 1, (1, 0): 1},               # 1 + y1
    {(0, 0): 1, (1, 0): 1, (0, 1): -1},   # 1 + y1 - y2
    {(0, 0): 1, (1, 0): -1, (0, 1): -1},  # 1 - y1 - y2
    {(0, 0): 1, (1, 0): -1, (0, 1): 1},   # 1 - y1 + y2
    {(0, 0): 1, (0, 1): 1},               # 1 + y2
)


def pentagon_facet_power_integral_exact(exponents):
    """Exact integral over the centered pentagon of prod_i l_i^{e_i}."""
    big = {(0, 0): Fraction(1)}
    for form, e in zip(PENTAGON_FORMS, exponents):
        frac = {k: Fraction(v) for k, v in form.items()}
        big = _poly_mul(big, _poly_pow(frac, e, 2), 2)

    def binom_pow(c0, c1, n):
        return {j: Fraction(comb(n, j)) * c0 ** (n - j) * c1 ** j
                for j in range(n + 1)}

    total = Fraction(0)
    for (a, b), coef in big.items():
        bp = b + 1
        # left strip: y1 in [-1, 0], y2 from -1 to 1 + y1
        acc = Fraction(0)
        for j, cj in binom_pow(Fraction(1), Fraction(1), bp).items():
            acc += cj * Fraction(-((-1) ** (a + j + 1)), a + j + 1)
        acc -= Fraction((-1) ** bp) * Fraction(-((-1) ** (a + 1)), a + 1)
        # right strip: y1 in [0, 1], y2 from y1 - 1 to 1 - y1
        for j, cj in binom_pow(Fraction(1), Fraction(-1), bp).items():
            acc += cj * Fraction(1, a + j + 1)
        for j, cj in binom_pow(Fraction(-1), Fraction(1), bp).items():
            acc -= cj * Fraction(1, a + j + 1)
        total += coef * acc / bp
    return total
