"""Tropical approximation, convergence test, and exact sector integrals.

The integrand is a degree-0 ratio of homogeneous positive polynomials (or of
lazily factored products of them). All sector arithmetic happens in the
n-dimensional torus picture: a Cox exponent l is replaced by V.l, the sector
fan is the simplicially refined normal fan (max convention) of the Newton
polytope of the dehomogenized product, and each sector integral is the exact
rational

    |det(V V^T) det(Zhat)| / prod_l (zhat_l . deltahat)

which coincides with det(V W_sigma) / prod_l (w_l . delta_sigma) for the
lifted generators w_l = V^T zhat_l.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .linalg import det_int, dot, mat_vec, primitive_vector, solve_rectangular, transpose
from .rational_geometry import (
    LatticePolytope,
    PolyhedralFan,
    RationalCone,
    convex_hull,
    minkowski_sum,
    normal_fan,
    relative_interior_contains,
    simplicial_refine,
)
from .toric_core import (
    PositivePolynomial,
    ToricData,
    ToricError,
    dehomogenize_with_map,
    is_homogeneous,
    tropicalize_eval,
)


class ConvergenceError(ValueError):
    pass


class AmbiguousVertexError(ValueError):
    """A sector cone met a Newton polytope face with several optimal vertices,
    signalling a fan that does not refine the pair's normal fan."""


# ---------------------------------------------------------------------------
# Factored products
# ---------------------------------------------------------------------------


class FactoredPolynomial:
    """Product of positive polynomials with integer multiplicities, never
    expanded. Newton polytopes, tropical maxima, and log evaluations are all
    computed factor-wise, which keeps data-dependent likelihood powers cheap.
    """

    __slots__ = ("num_vars", "factors")

    def __init__(self, factors):
        cleaned = []
        for poly, mult in factors:
            mult = int(mult)
            if mult < 0:
                raise ToricError("negative multiplicity")
            if mult > 0:
                cleaned.append((poly, mult))
        if not cleaned:
            raise ToricError("empty product")
        self.num_vars = cleaned[0][0].num_vars
        if any(p.num_vars != self.num_vars for p, _ in cleaned):
            raise ToricError("variable count mismatch")
        self.factors = tuple(cleaned)

    def __repr__(self):
        return "FactoredPolynomial(%s)" % ", ".join(
            f"[{len(p.terms)} terms]^{m}" for p, m in self.factors)

    def log_evaluate(self, log_x):
        total = None
        for poly, mult in self.factors:
            val = mult * np.asarray(poly.log_evaluate(log_x))
            total = val if total is None else total + val
        return total if np.ndim(total) else float(total)

    def log_tropical(self, log_x):
        total = None
        for poly, mult in self.factors:
            val = mult * np.asarray(poly.log_tropical(log_x))
            total = val if total is None else total + val
        return total if np.ndim(total) else float(total)

    def coefficient_bounds(self):
        """(lower, upper) bounds for f(x)/f^tr(x), valid for the product."""
        lower = Fraction(1)
        upper = Fraction(1)
        for poly, mult in self.factors:
            lower *= poly.min_coefficient() ** mult
            upper *= poly.sum_coefficients() ** mult
        return lower, upper

    def expand(self) -> PositivePolynomial:
        result = PositivePolynomial(self.num_vars, [(1, (0,) * self.num_vars)])
        for poly, mult in self.factors:
            result = result.multiply(poly.power(mult))
        return result


def as_factored(obj) -> FactoredPolynomial:
    if isinstance(obj, FactoredPolynomial):
        return obj
    return FactoredPolynomial([(obj, 1)])


def _dehom_factors(factored, toric):
    """Per factor: (dehomogenized poly, preimage map, multiplicity)."""
    out = []
    for poly, mult in factored.factors:
        if not is_homogeneous(poly, toric):
            raise ToricError("factor is not homogeneous")
        dehom, preimage = dehomogenize_with_map(poly, toric)
        out.append((dehom, preimage, mult))
    return out


def dehomogenized_newton(factored, toric) -> LatticePolytope:
    """Newton polytope of the dehomogenized product (Minkowski of factors)."""
    total = None
    for poly, mult in as_factored(factored).factors:
        dehom, _ = dehomogenize_with_map(poly, toric)
        piece = convex_hull(dehom.support).dilate(mult)
        total = piece if total is None else minkowski_sum(total, piece)
    return total


# ---------------------------------------------------------------------------
# Bounds and the Monte Carlo integrand h
# ---------------------------------------------------------------------------


def h_bounds(f, g):
    """Exact bounds M1 <= h <= M2 with h = f g^tr / (g f^tr)."""
    f_lo, f_hi = as_factored(f).coefficient_bounds()
    g_lo, g_hi = as_factored(g).coefficient_bounds()
    return f_lo / g_hi, f_hi / g_lo


def h_ratio(f, g, x):
    """Exact h(x) = f(x) g^tr(x) / (g(x) f^tr(x)) at a positive rational point."""
    if isinstance(f, FactoredPolynomial) or isinstance(g, FactoredPolynomial):
        raise ToricError("exact h requires plain polynomials; use log_h")
    return (f.evaluate(x) * tropicalize_eval(g, x)) / \
        (g.evaluate(x) * tropicalize_eval(f, x))


def log_h(f, g, log_x):
    """log h from log coordinates; stable for factored pairs and batches."""
    F, G = as_factored(f), as_factored(g)
    return (F.log_evaluate(log_x) + G.log_tropical(log_x)
            - G.log_evaluate(log_x) - F.log_tropical(log_x))


# ---------------------------------------------------------------------------
# Sectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Sector:
    """One maximal cone of the sector fan with its exact tropical integral.

    ``cone`` holds the primitive quotient-coordinate generators z_l with
    V.lifted_generators[l] = z_l; ``delta`` is the dehomogenized exponent
    a with V^T.a = nu_g - nu_f. The monomial x^{-(nu_g - nu_f)} is the
    tropical ratio f^tr/g^tr on this sector.
    """

    cone: RationalCone
    delta: tuple
    nu_f: tuple
    nu_g: tuple
    lifted_generators: tuple
    trop_integral: Fraction
    _denominators: tuple      # zhat_l . deltahat, positive integers
    _exponents: object        # k x n float array for the cube parameterization

    def cube_map_log(self, q):
        """Log Cox coordinates of x^sigma(q) for q in (0,1]^n (batched rows)."""
        q = np.asarray(q, dtype=np.float64)
        if np.any(q <= 0):
            raise ValueError("cube coordinates must lie in (0, 1]")
        single = q.ndim == 1
        logq = np.log(np.atleast_2d(q))
        out = logq @ self._exponents.T
        return out[0] if single else out

    def cube_map(self, q):
        return np.exp(self.cube_map_log(q))


def cube_map(sector: Sector, q):
    """Positive Cox vector x^sigma(q); exponents -(w_l)_i / (w_l . delta)."""
    return sector.cube_map(q)


@dataclass(frozen=True)
class SectorTable:
    """Sector decomposition of a convergent degree-0 integrand."""

    toric: ToricData
    f: object
    g: object
    fan: PolyhedralFan
    sectors: tuple
    trop_total: Fraction

    @property
    def num_sectors(self):
        return len(self.sectors)

    def probabilities(self):
        return tuple(s.trop_integral / self.trop_total for s in self.sectors)

    def log_h(self, log_x):
        return log_h(self.f, self.g, log_x)

    def bounds(self):
        return h_bounds(self.f, self.g)

    def report(self):
        """JSON-ready sector summary with exact fraction strings."""
        return [{
            "generators": [list(z) for z in s.cone.generators],
            "delta": [str(d) for d in s.delta],
            "trop_integral": str(s.trop_integral),
        } for s in self.sectors]

    def report_json(self):
        return json.dumps({
            "num_sectors": self.num_sectors,
            "trop_total": str(self.trop_total),
            "sectors": self.report(),
        }, indent=2)


def convergence_check(f, g, toric: ToricData) -> bool:
    """True iff the dehomogenized Newton polytope of g is full-dimensional and
    strictly contains that of f in its relative interior."""
    F, G = as_factored(f), as_factored(g)
    deg_f = _total_degree(F, toric)
    deg_g = _total_degree(G, toric)
    if deg_f != deg_g:
        raise ToricError("numerator and denominator degrees differ")
    newton_g = dehomogenized_newton(G, toric)
    if newton_g.dim != toric.n:
        return False
    newton_f = dehomogenized_newton(F, toric)
    return relative_interior_contains(newton_g, newton_f)


def _total_degree(factored, toric):
    total = tuple(0 for _ in range(toric.k - toric.n))
    for poly, mult in factored.factors:
        if not is_homogeneous(poly, toric):
            raise ToricError("factor is not homogeneous")
        d = toric.degree(poly.terms[0][1])
        total = tuple(t + mult * di for t, di in zip(total, d))
    return total


def _argmax_vertex(direction, dehom, preimage):
    best_score = None
    best_exp = None
    tie = False
    for _, exp in dehom.terms:
        score = dot(direction, exp)
        if best_score is None or score > best_score:
            best_score, best_exp, tie = score, exp, False
        elif score == best_score:
            tie = True
    if tie:
        raise AmbiguousVertexError(
            "vertex selection tied at a cone interior point; the fan does not "
            "refine the integrand's normal fan")
    return best_exp, preimage[best_exp]


def build_sectors(f, g, toric: ToricData, fan: PolyhedralFan = None,
                  refine_order: str = "lex") -> SectorTable:
    """Sector table for the pair (f, g): refined normal fan, per-cone vertex
    data, and exact rational sector integrals summing to the tropical integral.

    A precomputed ``fan`` may be supplied (it must refine the pair's sector
    fan; vertex selection raises if it does not). ``refine_order`` switches
    the placing order of the triangulation, for refinement-invariance checks.
    """
    F, G = as_factored(f), as_factored(g)
    if not convergence_check(F, G, toric):
        raise ConvergenceError(
            "integral diverges: the denominator Newton polytope must be "
            "full-dimensional and contain the numerator's in its interior")

    if fan is None:
        newton = minkowski_sum(dehomogenized_newton(F, toric),
                               dehomogenized_newton(G, toric))
        fan = simplicial_refine(normal_fan(newton), refine_order)

    f_parts = _dehom_factors(F, toric)
    g_parts = _dehom_factors(G, toric)
    gram = tuple(mat_vec(toric.V, col) for col in transpose(toric.V))
    gram_det = toric.gram_determinant
    Vt = transpose(toric.V)

    sectors = []
    for cone_ids in fan.maximal_cones:
        zhat = [fan.rays[i] for i in cone_ids]
        det_z = det_int(zhat)
        if det_z == 0:
            raise ValueError("sector fan must be simplicial")
        if det_z < 0 and len(zhat) >= 2:
            zhat[0], zhat[1] = zhat[1], zhat[0]
            det_z = -det_z
        interior = tuple(sum(col) for col in zip(*zhat))

        nu_f = tuple(0 for _ in range(toric.k))
        nu_g = tuple(0 for _ in range(toric.k))
        delta_hat = tuple(0 for _ in range(toric.n))
        for dehom, preimage, mult in f_parts:
            image, exp = _argmax_vertex(interior, dehom, preimage)
            nu_f = tuple(a + mult * b for a, b in zip(nu_f, exp))
            delta_hat = tuple(a - mult * b for a, b in zip(delta_hat, image))
        for dehom, preimage, mult in g_parts:
            image, exp = _argmax_vertex(interior, dehom, preimage)
            nu_g = tuple(a + mult * b for a, b in zip(nu_g, exp))
            delta_hat = tuple(a + mult * b for a, b in zip(delta_hat, image))

        denominators = tuple(dot(z, delta_hat) for z in zhat)
        if any(d <= 0 for d in denominators):
            raise ConvergenceError("sector integral diverges on a cone")
        integral = Fraction(abs(gram_det * det_z), 1)
        for d in denominators:
            integral /= d

        lifted = tuple(tuple(mat_vec(Vt, z)) for z in zhat)
        z_quotient = tuple(primitive_vector(mat_vec(gram, z)) for z in zhat)
        delta_cox = tuple(a - b for a, b in zip(nu_g, nu_f))
        a_sigma = solve_rectangular(Vt, delta_cox)
        if a_sigma is None:
            raise ToricError("sector monomial is not of degree zero")
        a_sigma = tuple(int(x) if x.denominator == 1 else x for x in a_sigma)

        exponents = np.array(
            [[-float(Fraction(w[i], d)) for w, d in zip(lifted, denominators)]
             for i in range(toric.k)], dtype=np.float64)

        sectors.append(Sector(
            cone=RationalCone(z_quotient),
            delta=a_sigma,
            nu_f=nu_f,
            nu_g=nu_g,
            lifted_generators=lifted,
            trop_integral=integral,
            _denominators=denominators,
            _exponents=exponents,
        ))

    total = sum(s.trop_integral for s in sectors)
    return SectorTable(toric=toric, f=F if len(F.factors) > 1 else F.factors[0][0],
                       g=G if len(G.factors) > 1 else G.factors[0][0],
                       fan=fan, sectors=tuple(sectors), trop_total=total)
