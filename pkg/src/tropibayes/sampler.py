"""Sampling from the tropical density and downstream integration.

Draws follow the two-stage scheme: pick a sector with probability
proportional to its exact tropical integral (alias method, O(1) per draw),
then map a uniform point of the unit cube through the sector's monomial
parameterization. Everything downstream (Monte Carlo estimates, rejection
sampling, cubature) evaluates the integrand h = f g^tr / (g f^tr) in log
space.

Reproducibility contract: work is split into fixed-size chunks; chunk i uses
the RNG stream spawned from (seed, i), and results are merged in chunk order.
Outputs are therefore bit-identical for a fixed seed regardless of the
number of worker threads.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .tropical_engine import SectorTable, h_bounds

CHUNK_SIZE = 16384


class AliasTable:
    """Walker/Vose alias sampler over a finite distribution."""

    def __init__(self, probabilities):
        probs = [float(p) for p in probabilities]
        total = sum(probs)
        if total <= 0 or any(p < 0 for p in probs):
            raise ValueError("probabilities must be nonnegative with positive sum")
        n = len(probs)
        scaled = [p * n / total for p in probs]
        self.prob = np.ones(n)
        self.alias = np.arange(n)
        small = [i for i, p in enumerate(scaled) if p < 1.0]
        large = [i for i, p in enumerate(scaled) if p >= 1.0]
        while small and large:
            lo = small.pop()
            hi = large.pop()
            self.prob[lo] = scaled[lo]
            self.alias[lo] = hi
            scaled[hi] += scaled[lo] - 1.0
            (small if scaled[hi] < 1.0 else large).append(hi)
        self.n = n

    def sample(self, rng, size=None):
        idx = rng.integers(0, self.n, size=size)
        toss = rng.random(size=size) < self.prob[idx]
        return np.where(toss, idx, self.alias[idx])


@dataclass
class SampleBatch:
    """Draws in log Cox coordinates with full replay metadata."""

    log_points: np.ndarray          # N x k
    sector_ids: np.ndarray          # N
    seed: int
    weights: np.ndarray = None      # h values (log), None if not evaluated
    accepted: np.ndarray = None     # bool flags for rejection runs
    acceptance_rate: float = None
    warning: str = None

    def __len__(self):
        return len(self.sector_ids)

    def accepted_points(self):
        if self.accepted is None:
            return self.log_points
        return self.log_points[self.accepted]

    def to_csv(self, path_or_buffer):
        close, handle = False, path_or_buffer
        if isinstance(path_or_buffer, (str, bytes)):
            handle = open(path_or_buffer, "w", newline="")
            close = True
        k = self.log_points.shape[1] if len(self) else 0
        writer = csv.writer(handle)
        writer.writerow(["sector_id"] + [f"log_x_{i+1}" for i in range(k)]
                        + ["h", "accepted"])
        for i in range(len(self)):
            h = math.exp(self.weights[i]) if self.weights is not None else ""
            acc = int(self.accepted[i]) if self.accepted is not None else ""
            writer.writerow([int(self.sector_ids[i]),
                             *(f"{v:.17g}" for v in self.log_points[i]), h, acc])
        if close:
            handle.close()

    def summary(self):
        return {
            "N": len(self),
            "seed": self.seed,
            "acceptance_rate": self.acceptance_rate,
            "warning": self.warning,
        }


@dataclass
class MCResult:
    value: float
    log_value: float
    stderr: float
    bound: float
    N: int
    seed: int

    def as_dict(self):
        return {"I_N": self.value, "log_I_N": self.log_value,
                "stderr": self.stderr, "bound": self.bound,
                "N": self.N, "seed": self.seed}


@dataclass
class CubatureResult:
    value: float
    log_value: float
    nodes: int

    def as_dict(self):
        return {"value": self.value, "log_value": self.log_value,
                "nodes_per_axis": self.nodes}


def _chunk_rng(seed, index):
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _chunk_plan(total):
    sizes = []
    remaining = total
    while remaining > 0:
        take = min(CHUNK_SIZE, remaining)
        sizes.append(take)
        remaining -= take
    return sizes


def _run_chunks(worker, total, threads):
    sizes = _chunk_plan(total)
    tasks = list(enumerate(sizes))
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda t: worker(*t), tasks))
    return [worker(i, n) for i, n in tasks]


def draw_tropical(table: SectorTable, rng):
    """One draw from the tropical density: (sector_id, x in Cox coordinates)."""
    alias = AliasTable([float(p) for p in table.probabilities()])
    sid = int(alias.sample(rng))
    q = 1.0 - rng.random(size=len(table.fan.rays[0]))
    return sid, table.sectors[sid].cube_map(q)


def _draw_chunk(table, alias, seed, chunk_index, size, with_h=True):
    rng = _chunk_rng(seed, chunk_index)
    n = table.toric.n
    sids = alias.sample(rng, size=size)
    q = 1.0 - rng.random(size=(size, n))
    logq = np.log(q)
    k = table.toric.k
    log_points = np.empty((size, k))
    for sid in np.unique(sids):
        mask = sids == sid
        log_points[mask] = logq[mask] @ table.sectors[sid]._exponents.T
    logh = table.log_h(log_points) if with_h else None
    return sids, log_points, logh, rng


def sample_tropical(table: SectorTable, N: int, seed: int = 0,
                    threads: int = 1, with_h: bool = True) -> SampleBatch:
    """N draws from the tropical density as a replayable batch."""
    alias = AliasTable([float(p) for p in table.probabilities()])

    def worker(i, size):
        sids, pts, logh, _ = _draw_chunk(table, alias, seed, i, size, with_h)
        return sids, pts, logh

    parts = _run_chunks(worker, N, threads)
    if not parts:
        k = table.toric.k
        return SampleBatch(np.empty((0, k)), np.empty(0, dtype=int), seed,
                           weights=np.empty(0))
    sids = np.concatenate([p[0] for p in parts])
    pts = np.vstack([p[1] for p in parts])
    logh = np.concatenate([p[2] for p in parts]) if with_h else None
    return SampleBatch(pts, sids, seed, weights=logh)


def mc_estimate(table: SectorTable, N: int, seed: int = 0,
                threads: int = 1) -> MCResult:
    """Monte Carlo estimate of the classical integral from N tropical draws.

    I_N = (Itr / N) sum h(x_i); the reported bound is the a priori standard
    deviation Itr. sqrt((M2^2 - M1^2)/N), the stderr is the empirical one.
    """
    if N < 2:
        raise ValueError("need at least two samples")
    batch = sample_tropical(table, N, seed=seed, threads=threads)
    logh = batch.weights
    peak = float(np.max(logh))
    scaled = np.exp(logh - peak)
    mean = float(np.mean(scaled))
    log_itr = math.log(float(table.trop_total))
    log_value = log_itr + peak + math.log(mean)
    stderr = math.exp(log_itr + peak) * float(np.std(scaled, ddof=1)) / math.sqrt(N)
    value = math.exp(log_value) if log_value < 700 else math.inf
    return MCResult(value=value, log_value=log_value, stderr=stderr,
                    bound=stddev_bound(table, N), N=N, seed=seed)


def stddev_bound(table: SectorTable, N: int) -> float:
    """A priori bound Itr sqrt((M2^2 - M1^2) / N) on the standard deviation."""
    if N < 1:
        raise ValueError("N must be positive")
    M1, M2 = table.bounds()
    return float(table.trop_total) * math.sqrt(float(M2 * M2 - M1 * M1) / N)


def rejection_sample(table: SectorTable, N_attempts: int, seed: int = 0,
                     threads: int = 1) -> SampleBatch:
    """Rejection sampling from the classical density d_{f,g}.

    Tropical draws are accepted when a uniform xi on [0, M2] satisfies
    xi < h(x); the comparison runs as log(M2) + log(u) < log h(x).
    """
    alias = AliasTable([float(p) for p in table.probabilities()])
    _, M2 = table.bounds()
    log_m2 = math.log(float(M2))

    def worker(i, size):
        sids, pts, logh, rng = _draw_chunk(table, alias, seed, i, size)
        with np.errstate(divide="ignore"):
            log_xi = log_m2 + np.log(rng.random(size=size))
        return sids, pts, logh, log_xi < logh

    parts = _run_chunks(worker, N_attempts, threads)
    k = table.toric.k
    if not parts:
        return SampleBatch(np.empty((0, k)), np.empty(0, dtype=int), seed,
                           weights=np.empty(0), accepted=np.empty(0, dtype=bool),
                           acceptance_rate=0.0)
    sids = np.concatenate([p[0] for p in parts])
    pts = np.vstack([p[1] for p in parts])
    logh = np.concatenate([p[2] for p in parts])
    accepted = np.concatenate([p[3] for p in parts])
    rate = float(np.mean(accepted)) if len(accepted) else 0.0
    warning = None
    if N_attempts > 0 and rate < 1e-4:
        warning = ("acceptance rate below 1e-4; the likelihood peak is too "
                   "sharp for plain rejection sampling at this sample size")
    return SampleBatch(pts, sids, seed, weights=logh, accepted=accepted,
                       acceptance_rate=rate, warning=warning)


def cubature_integral(table: SectorTable, per_axis_nodes: int,
                      integrand=None, threads: int = 1) -> CubatureResult:
    """Deterministic tensor-product Gauss-Legendre cubature over the sector
    cubes: sum_sigma Itr_sigma * cubature(h о x^sigma).

    Each cube axis is integrated through the exact substitution
    q_l = exp(-(z_l . delta) lambda_l), which turns the sector cube integral
    into a weighted integral over exponential cone coordinates where the
    integrand is analytic and varies on an O(1) scale. Without this the
    Gauss nodes cannot reach the corner layers that carry the mass once
    data counts get large. The lambda box is truncated where the certified
    envelope M2 exp(-sum a_l lambda_l) drops 46 nats below M1, so the cutoff
    error is far below double precision.

    ``integrand`` may replace log h by any callable mapping a batch of log
    Cox points to log values (used for moment and volume checks).
    """
    if per_axis_nodes < 2:
        raise ValueError("need at least two nodes per axis")
    n = table.toric.n
    base_nodes, base_weights = np.polynomial.legendre.leggauss(per_axis_nodes)
    M1, M2 = table.bounds()
    span = float(np.log(float(M2)) - np.log(float(M1))) + 46.0
    log_fn = integrand if integrand is not None else table.log_h

    def one_sector(sector):
        a = np.array([float(d) for d in sector._denominators])
        lengths = span / a
        axes = []
        logw_axes = []
        for l in range(n):
            lam = 0.5 * lengths[l] * (base_nodes + 1.0)
            w = 0.5 * lengths[l] * base_weights
            axes.append(lam)
            # weight a_l exp(-a_l lambda_l) restores the uniform cube measure
            logw_axes.append(np.log(w) + np.log(a[l]) - a[l] * lam)
        grids = np.meshgrid(*axes, indexing="ij")
        lam = np.stack([g.ravel() for g in grids], axis=1)
        logw = np.zeros(len(lam))
        for l, g in enumerate(np.meshgrid(*logw_axes, indexing="ij")):
            logw += g.ravel()
        W = np.array([[float(v) for v in w] for w in sector.lifted_generators])
        peak = -math.inf
        acc = 0.0
        for start in range(0, len(lam), CHUNK_SIZE):
            logx = lam[start:start + CHUNK_SIZE] @ W
            vals = logw[start:start + CHUNK_SIZE] + np.asarray(log_fn(logx))
            bpeak = float(np.max(vals))
            if bpeak == -math.inf:
                continue
            if bpeak > peak:
                acc = acc * math.exp(peak - bpeak) + float(np.sum(np.exp(vals - bpeak)))
                peak = bpeak
            else:
                acc += float(np.sum(np.exp(vals - bpeak))) * math.exp(bpeak - peak)
        return peak + math.log(acc) if acc > 0 else -math.inf

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            sector_logs = list(pool.map(one_sector, table.sectors))
    else:
        sector_logs = [one_sector(s) for s in table.sectors]

    logs = np.array([math.log(float(s.trop_integral)) + v
                     for s, v in zip(table.sectors, sector_logs)])
    peak = float(np.max(logs))
    log_value = peak + math.log(float(np.sum(np.exp(logs - peak))))
    value = math.exp(log_value) if log_value < 700 else math.inf
    return CubatureResult(value=value, log_value=log_value, nodes=per_axis_nodes)
