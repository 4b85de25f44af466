"""Statistical models on positive toric varieties.

Models map the positive part of a toric variety to a probability simplex;
every state probability is a degree-0 ratio of positive homogeneous
polynomials in Cox coordinates. Priors on a polytope are pulled back through
the moment map: the toric Hessian determinant of the moment polynomial gives
the density of the uniform distribution, assembled here symbolically and in
exact rational arithmetic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .laurent import LaurentPoly, det_laurent
from .linalg import det_int, dot, solve_fraction
from .sampler import (
    MCResult,
    cubature_integral,
    mc_estimate,
    rejection_sample,
    sample_tropical,
    stddev_bound,
)
from .toric_core import (
    PositivePolynomial,
    ToricData,
    ToricError,
    check_same_degree,
    homogenize_pair,
    is_homogeneous,
)
from .tropical_engine import (
    ConvergenceError,
    FactoredPolynomial,
    SectorTable,
    as_factored,
    build_sectors,
    convergence_check,
    dehomogenized_newton,
    h_bounds,
)
from .rational_geometry import minkowski_sum, normal_fan, simplicial_refine


class ModelError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Simple polytopes in facet representation
# ---------------------------------------------------------------------------


class PolytopeH:
    """Simple polytope {y : <v_i, y> + alpha_i >= 0} with 0 strictly inside.

    The facet normals v_i are the columns of the toric ray matrix, so the
    normal fan of the polytope is the fan of the associated variety. Vertices
    are indexed by the maximal cones.
    """

    def __init__(self, toric: ToricData, alpha):
        self.toric = toric
        self.alpha = tuple(int(a) for a in alpha)
        if len(self.alpha) != toric.k:
            raise ModelError("need one offset per facet")
        if any(a <= 0 for a in self.alpha):
            raise ModelError("the origin must be strictly interior (alpha > 0)")
        self.cones = toric.maximal_cones
        self.vertices = []
        for cone in self.cones:
            rows = [toric.ray(i) for i in cone]
            rhs = [-self.alpha[i] for i in cone]
            q = solve_fraction(rows, rhs)
            self.vertices.append(tuple(q))
        # Simplicity: every vertex meets exactly its n defining facets.
        for cone, q in zip(self.cones, self.vertices):
            for i in range(toric.k):
                s = dot(toric.ray(i), q) + self.alpha[i]
                if i in cone:
                    if s != 0:
                        raise ModelError("vertex misses its facet")
                elif s <= 0:
                    raise ModelError("polytope is not simple")

    @property
    def n(self):
        return self.toric.n

    @property
    def num_facets(self):
        return self.toric.k

    def facet_value(self, i, y):
        return dot(self.toric.ray(i), y) + self.alpha[i]

    def contains(self, y, strict=False):
        for i in range(self.num_facets):
            s = self.facet_value(i, y)
            if s < 0 or (strict and s == 0):
                return False
        return True

    def integer_vertices(self):
        out = []
        for q in self.vertices:
            if any(Fraction(x).denominator != 1 for x in q):
                raise ModelError("polytope vertices are not lattice points")
            out.append(tuple(int(x) for x in q))
        return out


def pentagon_polytope() -> PolytopeH:
    from .toric_core import pentagon_surface
    return PolytopeH(pentagon_surface(), (1, 1, 1, 1, 1))


def hypercube_polytope(n) -> PolytopeH:
    """[-1, 1]^n with the product-of-lines fan."""
    from .toric_core import p1_power
    return PolytopeH(p1_power(n), (1,) * (2 * n))


# ---------------------------------------------------------------------------
# Moment map and the uniform prior
# ---------------------------------------------------------------------------


def moment_polynomial(P: PolytopeH, coeffs=None) -> PositivePolynomial:
    """Positive Laurent polynomial with one term per vertex of P."""
    vertices = P.integer_vertices()
    if coeffs is None:
        coeffs = [1] * len(vertices)
    return PositivePolynomial(P.n, list(zip(coeffs, vertices)))


def moment_map(q: PositivePolynomial, t):
    """Affine moment map: the q-weighted convex combination of the vertices."""
    if any(Fraction(x) <= 0 for x in t):
        raise ModelError("moment map needs a strictly positive argument")
    total = q.evaluate(t)
    n = q.num_vars
    point = [Fraction(0)] * n
    for c, exp in q.terms:
        weight = c
        for ti, e in zip(t, exp):
            weight *= Fraction(ti) ** e
        for j in range(n):
            point[j] += weight * exp[j]
    return tuple(x / total for x in point)


def _to_laurent(poly: PositivePolynomial) -> LaurentPoly:
    return LaurentPoly(poly.num_vars, {e: c for c, e in poly.terms})


def hessian_prior(q: PositivePolynomial, toric: ToricData):
    """Cox pair (f, g) representing the pullback of the uniform measure.

    det of the toric Hessian of log q is computed symbolically as
    det(q * theta_i theta_j q - theta_i q * theta_j q) / q^{2n}; common powers
    of q are cancelled exactly, and the reduced numerator must stay positive.
    """
    n = toric.n
    if q.num_vars != n:
        raise ModelError("moment polynomial must live on the torus")
    ql = _to_laurent(q)
    theta1 = [ql.theta(i) for i in range(n)]
    matrix = [[ql * theta1[i].theta(j) - theta1[i] * theta1[j]
               for j in range(n)] for i in range(n)]
    numerator = det_laurent(matrix)
    if numerator.is_zero():
        raise ModelError("degenerate moment polynomial")
    power = 2 * n
    while power > 0:
        reduced = numerator.divide_exact(ql)
        if reduced is None:
            break
        numerator = reduced
        power -= 1
    if not numerator.all_positive():
        raise ModelError("Hessian numerator has nonpositive coefficients; "
                         "this moment polynomial is not supported")
    denominator = ql.power(power)
    f, g = homogenize_pair(
        [(c, e) for e, c in numerator.terms()],
        [(c, e) for e, c in denominator.terms()], toric)
    if not convergence_check(f, g, toric):
        raise ModelError("lifted prior fails the convergence criterion")
    return f, g


# ---------------------------------------------------------------------------
# The adjoint and barycentric (Wachspress) coordinates
# ---------------------------------------------------------------------------


def _scaled_cone_det(P: PolytopeH, cone):
    det = det_int([P.toric.ray(i) for i in cone])
    scale = Fraction(1)
    for i in cone:
        scale /= P.alpha[i]
    return abs(det) * scale


def _facet_form(P: PolytopeH, i) -> LaurentPoly:
    """1 + <v_i, y>/alpha_i as a polynomial in y."""
    n = P.n
    coeffs = {(0,) * n: Fraction(1)}
    for j in range(n):
        e = tuple(1 if jj == j else 0 for jj in range(n))
        c = Fraction(P.toric.ray(i)[j], P.alpha[i])
        if c:
            coeffs[e] = c
    return LaurentPoly(n, coeffs)


def adjoint(P: PolytopeH) -> LaurentPoly:
    """Adjoint polynomial of a simple polytope; degree at most k - n - 1."""
    total = None
    for cone in P.cones:
        term = LaurentPoly.constant(P.n, _scaled_cone_det(P, cone))
        for i in range(P.num_facets):
            if i not in cone:
                term = term * _facet_form(P, i)
        total = term if total is None else total + term
    return total


# ---------------------------------------------------------------------------
# Model container
# ---------------------------------------------------------------------------


@dataclass
class Dataset:
    """Observed counts per state."""

    u: tuple

    def __post_init__(self):
        self.u = tuple(int(x) for x in self.u)
        if any(x < 0 for x in self.u):
            raise ModelError("counts must be nonnegative")

    @property
    def total(self):
        return sum(self.u)

    def multinomial_coefficient(self):
        out = math.factorial(self.total)
        for x in self.u:
            out //= math.factorial(x)
        return out


class ModelSpec:
    """A statistical model: state coordinates q_i/r_i plus a prior pair."""

    def __init__(self, toric: ToricData, coords, prior, name=None,
                 state_labels=None, validate=True):
        self.toric = toric
        self.coords = tuple((q, r) for q, r in coords)
        self.prior = prior
        self.name = name
        self.state_labels = state_labels
        self._fan = None
        if validate:
            self._validate()

    @property
    def num_states(self):
        return len(self.coords)

    def _validate(self):
        f, g = self.prior
        if not check_same_degree(f, g, self.toric):
            raise ModelError("prior pair is not of degree zero")
        if not convergence_check(f, g, self.toric):
            raise ConvergenceError("prior integral diverges")
        for q, r in self.coords:
            if not check_same_degree(q, r, self.toric):
                raise ModelError("state coordinate is not of degree zero")
        if self.coords:
            rng = np.random.default_rng(20)
            for _ in range(20):
                x = tuple(Fraction(int(v), 16) for v in rng.integers(1, 64, self.toric.k))
                total = sum(q.evaluate(x) / r.evaluate(x) for q, r in self.coords)
                if total != 1:
                    raise ModelError("state probabilities do not sum to one")

    def probabilities(self, x):
        """Exact state probabilities at a positive rational Cox point."""
        return tuple(q.evaluate(x) / r.evaluate(x) for q, r in self.coords)

    def sector_fan(self):
        """Data-independent sector fan, computed once per model."""
        if self._fan is None:
            polys = [self.prior[0], self.prior[1]]
            for q, r in self.coords:
                polys.append(q)
                polys.append(r)
            distinct = []
            for p in polys:
                if all(p != seen for seen in distinct):
                    distinct.append(p)
            newton = dehomogenized_newton(
                FactoredPolynomial([(p, 1) for p in distinct]), self.toric)
            self._fan = simplicial_refine(normal_fan(newton))
        return self._fan

    def prior_table(self) -> SectorTable:
        f, g = self.prior
        return build_sectors(f, g, self.toric, fan=self.sector_fan())

    def to_json(self):
        data = {
            "toric": self.toric.to_json(),
            "coords": [{"num": q.serialize_terms(), "den": r.serialize_terms()}
                       for q, r in self.coords],
            "prior": {"num": self.prior[0].serialize_terms(),
                      "den": self.prior[1].serialize_terms()},
        }
        if self.name:
            data["name"] = self.name
        return data

    @staticmethod
    def from_json(data, validate=True):
        toric = ToricData.from_json(data["toric"])
        k = toric.k
        coords = [(PositivePolynomial.parse_terms(k, c["num"]),
                   PositivePolynomial.parse_terms(k, c["den"]))
                  for c in data.get("coords", [])]
        prior = (PositivePolynomial.parse_terms(k, data["prior"]["num"]),
                 PositivePolynomial.parse_terms(k, data["prior"]["den"]))
        return ModelSpec(toric, coords, prior, name=data.get("name"),
                         validate=validate)


# ---------------------------------------------------------------------------
# Model constructors
# ---------------------------------------------------------------------------


def positive_kernel_scaling(P: PolytopeH):
    """Positive gamma with sum_i (alpha_i + <v_i, y>)/gamma_i = 1 on P.

    Uses the all-ones kernel vector when the rays sum to zero (this matches
    the balanced examples); otherwise falls back to averaging the per-ray
    nonnegative kernel vectors obtained by locating -v_i in the fan.
    """
    toric = P.toric
    k = toric.k
    cols = [toric.ray(i) for i in range(k)]
    if all(sum(c[j] for c in cols) == 0 for j in range(toric.n)):
        w = [Fraction(1)] * k
    else:
        w = [Fraction(0)] * k
        for i in range(k):
            target = tuple(-x for x in cols[i])
            for cone in toric.maximal_cones:
                rows = tuple(zip(*[cols[j] for j in cone]))
                coeffs = solve_fraction(rows, target)
                if all(c >= 0 for c in coeffs):
                    w[i] += 1
                    for j, c in zip(cone, coeffs):
                        w[j] += c
                    break
            else:
                raise ModelError("fan is not complete")
    scale = sum(wi * ai for wi, ai in zip(w, P.alpha))
    if scale <= 0 or any(wi <= 0 for wi in w):
        raise ModelError("no positive kernel vector found")
    return tuple(scale / wi for wi in w)


def _vertex_weighted_form(P: PolytopeH, q: PositivePolynomial, i) -> LaurentPoly:
    """(alpha_i + <v_i, .>) composed with the moment map, times q."""
    coeffs = {}
    for c, exp in q.terms:
        weight = c * (P.alpha[i] + Fraction(dot(P.toric.ray(i), exp)))
        if weight:
            coeffs[exp] = coeffs.get(exp, Fraction(0)) + weight
    return LaurentPoly(P.n, coeffs)


def _homogenize_family(numerators, denominator, toric):
    """Lift several torus numerators over one common denominator with a single
    monomial shift, so all pairs share the denominator polynomial."""
    from .linalg import mat_vec, transpose
    Vt = transpose(toric.V)
    images = []
    for poly in numerators + [denominator]:
        images.append([(c, tuple(mat_vec(Vt, e))) for e, c in poly.terms()])
    k = toric.k
    shift = [0] * k
    for terms in images:
        for _, e in terms:
            for i in range(k):
                shift[i] = max(shift[i], -e[i])
    lifted = [PositivePolynomial(
        k, [(c, tuple(e[i] + shift[i] for i in range(k))) for c, e in terms])
        for terms in images]
    return lifted[:-1], lifted[-1]


def linear_model(P: PolytopeH, moment_coeffs=None, name=None) -> ModelSpec:
    """Facet-probability model p_i = (alpha_i + <v_i, y>)/gamma_i lifted to the
    toric variety through the moment map."""
    gamma = positive_kernel_scaling(P)
    q = moment_polynomial(P, moment_coeffs)
    ql = _to_laurent(q)
    numerators = []
    for i in range(P.num_facets):
        form = _vertex_weighted_form(P, q, i).scale(Fraction(1, 1) / gamma[i])
        numerators.append(form)
    nums, den = _homogenize_family(numerators, ql, P.toric)
    prior = hessian_prior(q, P.toric)
    labels = [f"facet_{i+1}" for i in range(P.num_facets)]
    return ModelSpec(P.toric, list(zip(nums, [den] * len(nums))), prior,
                     name=name or "linear", state_labels=labels)


def wachspress_model(P: PolytopeH, moment_coeffs=None, state_order=None,
                     name=None) -> ModelSpec:
    """Barycentric-coordinate model: one state per vertex of P."""
    q = moment_polynomial(P, moment_coeffs)
    order = list(state_order) if state_order is not None else list(range(len(P.cones)))
    numerators = []
    labels = []
    for ci in order:
        cone = P.cones[ci]
        term = LaurentPoly.constant(P.n, _scaled_cone_det(P, cone))
        for i in range(P.num_facets):
            if i not in cone:
                form = _vertex_weighted_form(P, q, i).scale(Fraction(1, P.alpha[i]))
                term = term * form
        numerators.append(term)
        labels.append("vertex_" + "".join(str(i + 1) for i in sorted(
            set(range(P.num_facets)) - set(cone))))
    denominator = numerators[0]
    for t in numerators[1:]:
        denominator = denominator + t
    nums, den = _homogenize_family(numerators, denominator, P.toric)
    prior = hessian_prior(q, P.toric)
    return ModelSpec(P.toric, list(zip(nums, [den] * len(nums))), prior,
                     name=name or "wachspress", state_labels=labels)


def toric_model(Z: PositivePolynomial, toric: ToricData, prior=None,
                state_exponents=None, name=None) -> ModelSpec:
    """Monomial model: p_i = c_i x^{a_i} / Z for each term of Z.

    States follow the canonical (sorted) term order of Z unless
    ``state_exponents`` fixes an explicit order; data vectors index states in
    this order.
    """
    if not is_homogeneous(Z, toric):
        raise ModelError("the model polynomial must be homogeneous")
    by_exp = {e: c for c, e in Z.terms}
    if state_exponents is None:
        state_exponents = [e for _, e in Z.terms]
    if sorted(state_exponents) != sorted(by_exp):
        raise ModelError("state exponents must enumerate the terms of Z")
    coords = [(PositivePolynomial(toric.k, [(by_exp[e], e)]), Z)
              for e in state_exponents]
    if prior is None:
        raise ModelError("a prior pair is required")
    return ModelSpec(toric, coords, prior, name=name or "toric")


def coin_model(m: int) -> ModelSpec:
    """Hidden-coin mixture: m tosses of one of two biased coins, the chooser
    itself biased; states count the observed heads. Lives on (P^1)^3."""
    from .toric_core import p1_power
    if m < 1:
        raise ModelError("need at least one toss")
    toric = p1_power(3)
    k = 6

    def poly(terms):
        return PositivePolynomial(k, terms)

    x0px1 = poly([(1, (1, 0, 0, 0, 0, 0)), (1, (0, 1, 0, 0, 0, 0))])
    s0ps1 = poly([(1, (0, 0, 1, 0, 0, 0)), (1, (0, 0, 0, 1, 0, 0))])
    t0pt1 = poly([(1, (0, 0, 0, 0, 1, 0)), (1, (0, 0, 0, 0, 0, 1))])
    Q = x0px1.multiply(s0ps1.power(m)).multiply(t0pt1.power(m))
    coords = []
    for heads in range(m + 1):
        binom = math.comb(m, heads)
        left = poly([(binom, (1, 0, heads, m - heads, 0, 0))]).multiply(t0pt1.power(m))
        right = poly([(binom, (0, 1, 0, 0, heads, m - heads))]).multiply(s0ps1.power(m))
        numerator = PositivePolynomial(k, list(left.terms) + list(right.terms))
        coords.append((numerator, Q))
    prior = hessian_prior(unit_cube_moment_polynomial(3), toric)
    return ModelSpec(toric, coords, prior, name=f"coin({m})",
                     state_labels=[f"heads_{i}" for i in range(m + 1)])


def unit_cube_moment_polynomial(n) -> PositivePolynomial:
    """prod_j (1 + t_j): the moment polynomial of the unit cube, whose Hessian
    prior is the uniform distribution on [0, 1]^n."""
    from itertools import product as iproduct
    return PositivePolynomial(n, [(1, b) for b in iproduct((0, 1), repeat=n)])


# ---------------------------------------------------------------------------
# Likelihood, marginal likelihood, Bayes factors
# ---------------------------------------------------------------------------


def likelihood_integrand(model: ModelSpec, u):
    """Factored pair (F, G) = (f prod q_i^{u_i}, g prod r_i^{u_i}).

    Never expanded: Newton polytopes, tropical maxima and evaluations are all
    taken factor-wise, so the cost is independent of the total count.
    """
    u = u.u if isinstance(u, Dataset) else tuple(int(x) for x in u)
    if len(u) != model.num_states:
        raise ModelError("data length does not match the number of states")
    if any(x < 0 for x in u):
        raise ModelError("counts must be nonnegative")
    f, g = model.prior
    num = {}
    den = {}

    def add(bag, poly, mult):
        if mult == 0:
            return
        for seen in bag:
            if seen == poly:
                bag[seen] += mult
                return
        bag[poly] = mult

    add(num, f, 1)
    add(den, g, 1)
    for (q, r), ui in zip(model.coords, u):
        add(num, q, ui)
        add(den, r, ui)
    return (FactoredPolynomial(list(num.items())),
            FactoredPolynomial(list(den.items())))


@dataclass
class MarginalLikelihood:
    log_value: float
    value: float
    method: str
    diagnostics: dict

    def as_dict(self):
        return {"log_value": self.log_value, "value": self.value,
                "method": self.method, **self.diagnostics}


def marginal_likelihood(model: ModelSpec, u, method="mc", N=50_000,
                        nodes=64, seed=0, threads=1) -> MarginalLikelihood:
    """Expectation of the likelihood under the prior measure.

    Both the likelihood integral and the prior normalization are evaluated on
    the model's shared, data-independent sector fan, by Monte Carlo
    (``method="mc"``) or tensor Gauss-Legendre cubature (``method="cubature"``).
    Everything runs in log space; ``value`` is the linear value when it is
    representable.
    """
    u = u if isinstance(u, Dataset) else Dataset(tuple(u))
    F, G = likelihood_integrand(model, u)
    fan = model.sector_fan()
    table_num = build_sectors(F, G, model.toric, fan=fan)
    f, g = model.prior
    table_den = build_sectors(f, g, model.toric, fan=fan)

    diagnostics = {
        "num_sectors": table_num.num_sectors,
        "trop_total_numerator": str(table_num.trop_total),
        "trop_total_prior": str(table_den.trop_total),
        "U": u.total,
    }
    if method == "mc":
        res_num = mc_estimate(table_num, N, seed=seed, threads=threads)
        res_den = mc_estimate(table_den, N, seed=seed + 1, threads=threads)
        log_value = res_num.log_value - res_den.log_value
        diagnostics.update({
            "N": N, "seed": seed,
            "numerator": res_num.as_dict(),
            "prior_normalization": res_den.as_dict(),
        })
    elif method == "cubature":
        res_num = cubature_integral(table_num, nodes, threads=threads)
        res_den = cubature_integral(table_den, nodes, threads=threads)
        log_value = res_num.log_value - res_den.log_value
        diagnostics.update({
            "nodes_per_axis": nodes,
            "numerator": res_num.as_dict(),
            "prior_normalization": res_den.as_dict(),
        })
    else:
        raise ModelError(f"unknown method: {method!r}")
    value = math.exp(log_value) if log_value < 700 else math.inf
    return MarginalLikelihood(log_value=log_value, value=value, method=method,
                              diagnostics=diagnostics)


def bayes_factor(model1: ModelSpec, model2: ModelSpec, u, method="cubature",
                 N=50_000, nodes=64, seed=0, threads=1):
    """K = I_u(model1) / I_u(model2), computed in log space."""
    if model1.num_states != model2.num_states:
        raise ModelError("models must share the state space")
    r1 = marginal_likelihood(model1, u, method=method, N=N, nodes=nodes,
                             seed=seed, threads=threads)
    r2 = marginal_likelihood(model2, u, method=method, N=N, nodes=nodes,
                             seed=seed + 104729, threads=threads)
    log_k = r1.log_value - r2.log_value
    K = math.exp(log_k) if abs(log_k) < 700 else math.inf
    return K, {"log_K": log_k, "model1": r1.as_dict(), "model2": r2.as_dict()}


def posterior_sample(model: ModelSpec, u, N, seed=0, threads=1):
    """Rejection sampling from the posterior density L_u d_{f,g}.

    Zero acceptances are a reported outcome, not an error: for large total
    counts the likelihood peak makes plain rejection sampling stall, which is
    surfaced through the warning field.
    """
    F, G = likelihood_integrand(model, u)
    table = build_sectors(F, G, model.toric, fan=model.sector_fan())
    batch = rejection_sample(table, N, seed=seed, threads=threads)
    M1, M2 = h_bounds(F, G)
    batch.summary_extra = {
        "acceptance_lower_bound": float(M1 / M2),
        "M2": float(M2),
    }
    return batch


# ---------------------------------------------------------------------------
# Built-in models
# ---------------------------------------------------------------------------


PENTAGON_AMPLE_EXPONENTS = ((0, 1, 3, 1, 0), (1, 2, 2, 0, 0), (0, 0, 2, 2, 1),
                            (1, 1, 1, 1, 1), (2, 2, 0, 0, 1), (1, 0, 0, 2, 2))


def pentagon_toric_polynomial(coefficients) -> PositivePolynomial:
    """Six-term ample-degree polynomial on the pentagon surface, one term per
    lattice point of the defining polygon, coefficients in lattice-point order."""
    if len(coefficients) != 6:
        raise ModelError("need six coefficients")
    return PositivePolynomial(5, list(zip(coefficients, PENTAGON_AMPLE_EXPONENTS)))


def pentagon_linear_model() -> ModelSpec:
    return linear_model(pentagon_polytope(), name="pentagon-linear")


def pentagon_wachspress_model() -> ModelSpec:
    # States ordered cyclically by the opposite-facet triple: the state whose
    # numerator is l1*l2*l3 comes first, then l2*l3*l4, and so on.
    P = pentagon_polytope()
    complements = {ci: tuple(sorted(set(range(5)) - set(cone)))
                   for ci, cone in enumerate(P.cones)}
    cycle = [(0, 1, 2), (1, 2, 3), (2, 3, 4), (0, 3, 4), (0, 1, 4)]
    order = [next(ci for ci, comp in complements.items() if comp == c)
             for c in cycle]
    return wachspress_model(P, state_order=order, name="pentagon-wachspress")


def pentagon_toric_model(coefficients) -> ModelSpec:
    from .toric_core import pentagon_surface
    toric = pentagon_surface()
    prior = hessian_prior(moment_polynomial(pentagon_polytope()), toric)
    return toric_model(pentagon_toric_polynomial(coefficients), toric, prior,
                       state_exponents=PENTAGON_AMPLE_EXPONENTS,
                       name="pentagon-toric")


def builtin_model(name: str) -> ModelSpec:
    """Resolve a built-in model name such as ``coin(2)``, ``pentagon-linear``,
    ``pentagon-wachspress`` or ``pentagon-toric(2,3,5,7,11,13)``."""
    text = name.strip()
    match = re.fullmatch(r"coin\((\d+)\)", text)
    if match:
        return coin_model(int(match.group(1)))
    if text == "pentagon-linear":
        return pentagon_linear_model()
    if text == "pentagon-wachspress":
        return pentagon_wachspress_model()
    match = re.fullmatch(r"pentagon-toric\(([^)]*)\)", text)
    if match:
        coeffs = [Fraction(c.strip()) for c in match.group(1).split(",")]
        return pentagon_toric_model(coeffs)
    raise ModelError(f"unknown built-in model: {name!r}")
