"""Command-line front end.

Commands: check, trop, integrate, ml, bf, sample, posterior. Models are
built-in names (coin(m), pentagon-linear, pentagon-wachspress,
pentagon-toric(c0..c5)) or paths to model JSON files. Results are printed as
JSON (or flat CSV with --format csv); sample batches are written as CSV.

Exit codes: 0 success, 2 input error, 3 divergent integral.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .models import (
    Dataset,
    ModelError,
    ModelSpec,
    bayes_factor,
    builtin_model,
    likelihood_integrand,
    marginal_likelihood,
    posterior_sample,
)
from .sampler import cubature_integral, mc_estimate, rejection_sample, sample_tropical
from .toric_core import ToricError, is_homogeneous
from .tropical_engine import (
    ConvergenceError,
    build_sectors,
    convergence_check,
    dehomogenized_newton,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DIVERGENT = 3

DEFAULT_SEED = 0


class CliError(Exception):
    pass


def load_model(spec: str) -> ModelSpec:
    if os.path.exists(spec):
        try:
            with open(spec) as handle:
                data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise CliError(f"could not parse {spec}: line {exc.lineno}, "
                           f"column {exc.colno}: {exc.msg}") from exc
        try:
            return ModelSpec.from_json(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise CliError(f"invalid model file {spec}: {exc}") from exc
    try:
        return builtin_model(spec)
    except ModelError as exc:
        raise CliError(str(exc)) from exc


def parse_counts(text, expected=None):
    try:
        u = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise CliError(f"could not parse counts {text!r}") from exc
    if expected is not None and len(u) != expected:
        raise CliError(f"expected {expected} counts, got {len(u)}")
    return u


def parse_seed(text):
    if text == "random":
        return int(np.random.SeedSequence().entropy % (2 ** 63))
    return int(text)


def emit(payload, fmt):
    if fmt == "csv":
        flat = _flatten(payload)
        for key, value in flat:
            print(f"{key},{value}")
    else:
        print(json.dumps(payload, indent=2, default=str))


def _flatten(payload, prefix=""):
    rows = []
    if isinstance(payload, dict):
        for key, value in payload.items():
            rows.extend(_flatten(value, f"{prefix}{key}." if prefix else f"{key}."))
    elif isinstance(payload, (list, tuple)):
        rows.append((prefix.rstrip("."), json.dumps(payload, default=str)))
    else:
        rows.append((prefix.rstrip("."), payload))
    return rows


def cmd_check(args):
    model = load_model(args.model)
    f, g = model.prior
    toric = model.toric
    homogeneous = True
    degrees = []
    try:
        for poly in (f, g):
            if not is_homogeneous(poly, toric):
                homogeneous = False
            degrees.append(list(toric.degree(poly.terms[0][1])))
        for q, r in model.coords:
            if not is_homogeneous(q, toric) or not is_homogeneous(r, toric):
                homogeneous = False
    except ToricError:
        homogeneous = False
    convergent = False
    newton_dims = []
    if homogeneous:
        newton_f = dehomogenized_newton(f, toric)
        newton_g = dehomogenized_newton(g, toric)
        newton_dims = [newton_f.dim, newton_g.dim]
        convergent = convergence_check(f, g, toric)
    emit({"homogeneous": homogeneous, "convergent": convergent,
          "degrees": degrees, "newton_dims": newton_dims}, args.format)
    return EXIT_OK


def _prior_table(model):
    f, g = model.prior
    return build_sectors(f, g, model.toric, fan=model.sector_fan())


def cmd_trop(args):
    model = load_model(args.model)
    if args.u is not None:
        u = parse_counts(args.u, model.num_states)
        F, G = likelihood_integrand(model, u)
        table = build_sectors(F, G, model.toric, fan=model.sector_fan())
    else:
        table = _prior_table(model)
    payload = {"trop_total": str(table.trop_total),
               "num_sectors": table.num_sectors}
    if args.emit_sector_report:
        payload["sectors"] = table.report()
    emit(payload, args.format)
    return EXIT_OK


def cmd_integrate(args):
    model = load_model(args.model)
    table = _prior_table(model)
    if args.method == "mc":
        res = mc_estimate(table, args.N, seed=args.seed, threads=args.threads)
        payload = res.as_dict()
    else:
        res = cubature_integral(table, args.nodes, threads=args.threads)
        payload = res.as_dict()
    payload["trop_total"] = str(table.trop_total)
    emit(payload, args.format)
    return EXIT_OK


def cmd_ml(args):
    model = load_model(args.model)
    u = parse_counts(args.u, model.num_states)
    res = marginal_likelihood(model, u, method=args.method, N=args.N,
                              nodes=args.nodes, seed=args.seed,
                              threads=args.threads)
    payload = res.as_dict()
    if args.include_multinomial:
        coeff = Dataset(u).multinomial_coefficient()
        payload["log_value"] += math.log(coeff)
        payload["value"] = math.exp(payload["log_value"]) \
            if payload["log_value"] < 700 else math.inf
        payload["multinomial_coefficient"] = str(coeff)
    emit(payload, args.format)
    return EXIT_OK


def cmd_bf(args):
    model1 = load_model(args.model)
    model2 = load_model(args.model2)
    u = parse_counts(args.u, model1.num_states)
    K, diag = bayes_factor(model1, model2, u, method=args.method, N=args.N,
                           nodes=args.nodes, seed=args.seed,
                           threads=args.threads)
    emit({"K": K, **diag}, args.format)
    return EXIT_OK


def _write_batch(batch, args, extra=None):
    if args.out:
        batch.to_csv(args.out)
    payload = batch.summary()
    payload.update(extra or {})
    if args.out:
        payload["csv"] = args.out
    emit(payload, args.format)


def cmd_sample(args):
    model = load_model(args.model)
    table = _prior_table(model)
    if args.tropical:
        batch = sample_tropical(table, args.N, seed=args.seed,
                                threads=args.threads)
    else:
        batch = rejection_sample(table, args.N, seed=args.seed,
                                 threads=args.threads)
    M1, M2 = table.bounds()
    _write_batch(batch, args, {"rate_lower_bound": float(M1 / M2)})
    return EXIT_OK


def cmd_posterior(args):
    model = load_model(args.model)
    u = parse_counts(args.u, model.num_states)
    batch = posterior_sample(model, u, args.N, seed=args.seed,
                             threads=args.threads)
    _write_batch(batch, args, getattr(batch, "summary_extra", None))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tropibayes",
        description="Bayesian integrals on positive toric varieties by "
                    "tropical sector decomposition")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_u=False, sampling=False):
        p.add_argument("--model", required=True,
                       help="built-in name or model JSON path")
        if needs_u:
            p.add_argument("--u", required=True, help="comma-separated counts")
        p.add_argument("--seed", default=str(DEFAULT_SEED),
                       help="integer seed or 'random'")
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        if sampling:
            p.add_argument("--N", type=int, default=100_000)
            p.add_argument("--out", help="write the sample batch CSV here")

    p = sub.add_parser("check", help="homogeneity and convergence report")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("trop", help="exact tropical integral and sector table")
    common(p)
    p.add_argument("--u", help="optional counts: tropicalize the likelihood integrand")
    p.add_argument("--emit-sector-report", action="store_true")
    p.set_defaults(func=cmd_trop)

    p = sub.add_parser("integrate", help="integral of the prior pair")
    common(p)
    p.add_argument("--method", choices=("mc", "cubature"), default="mc")
    p.add_argument("--N", type=int, default=100_000)
    p.add_argument("--nodes", type=int, default=64)
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("ml", help="marginal likelihood of the data")
    common(p, needs_u=True)
    p.add_argument("--method", choices=("mc", "cubature"), default="mc")
    p.add_argument("--N", type=int, default=50_000)
    p.add_argument("--nodes", type=int, default=64)
    p.add_argument("--include-multinomial", action="store_true")
    p.set_defaults(func=cmd_ml)

    p = sub.add_parser("bf", help="Bayes factor between two models")
    common(p, needs_u=True)
    p.add_argument("--model2", required=True)
    p.add_argument("--method", choices=("mc", "cubature"), default="cubature")
    p.add_argument("--N", type=int, default=50_000)
    p.add_argument("--nodes", type=int, default=64)
    p.set_defaults(func=cmd_bf)

    p = sub.add_parser("sample", help="rejection sampling from the prior density")
    common(p, sampling=True)
    p.add_argument("--tropical", action="store_true",
                   help="raw draws from the tropical density instead")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("posterior", help="rejection sampling from the posterior")
    common(p, needs_u=True, sampling=True)
    p.set_defaults(func=cmd_posterior)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.seed = parse_seed(args.seed)
        if args.threads is None:
            args.threads = int(os.environ.get("TROPIBAYES_THREADS", "1"))
        return args.func(args)
    except ConvergenceError as exc:
        print(json.dumps({"error": "divergent", "message": str(exc)}),
              file=sys.stderr)
        return EXIT_DIVERGENT
    except (CliError, ModelError, ToricError, FileNotFoundError) as exc:
        print(json.dumps({"error": "input", "message": str(exc)}),
              file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
