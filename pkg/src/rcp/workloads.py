"""Seeded point-set and query generators."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import GeometryError, check_general_position, perturb

KINDS = ("uniform", "clustered", "grid", "mixed")


@dataclass(frozen=True)
class WorkloadConfig:
    kind: str = "uniform"
    n: int = 200
    side: float = 10.0
    clusters: int = 5
    spread: float = 0.3
    seed: int = 0


def uniform(n: int, side: float = 10.0, seed: int = 0) -> np.ndarray:
    return np.random.default_rng(seed).uniform(0.0, side, (n, 2))


def clustered(n: int, side: float = 10.0, clusters: int = 5, spread: float = 0.3, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    centers = rng.uniform(0.0, side, (clusters, 2))
    pick = rng.integers(0, clusters, n)
    return centers[pick] + rng.normal(0.0, spread, (n, 2))


def grid_adversarial(n: int, side: float = 10.0, seed: int = 0) -> np.ndarray:
    """Jittered lattice: many near-equal distances, repaired to general position."""
    k = max(2, math.ceil(math.sqrt(n)))
    xs = np.linspace(0.0, side, k)
    P = np.array([(x, y) for x in xs for y in xs])[:n]
    for attempt in range(8):
        Q = perturb(P, seed=seed + attempt, scale=1e-4)
        try:
            check_general_position(Q, collinear=False)
            return Q
        except GeometryError:
            pass
    raise GeometryError("could not jitter lattice into general position")


def mixed(n: int, side: float = 10.0, seed: int = 0) -> np.ndarray:
    """Half tight clusters, half sparse uniform."""
    a = clustered(n // 2, side, clusters=max(1, n // 40), spread=side / 200, seed=seed)
    b = uniform(n - n // 2, side, seed=seed + 7919)
    return np.vstack([a, b])


def generate(cfg: WorkloadConfig) -> np.ndarray:
    if cfg.kind == "uniform":
        P = uniform(cfg.n, cfg.side, cfg.seed)
    elif cfg.kind == "clustered":
        P = clustered(cfg.n, cfg.side, cfg.clusters, cfg.spread, cfg.seed)
    elif cfg.kind == "grid":
        P = grid_adversarial(cfg.n, cfg.side, cfg.seed)
    elif cfg.kind == "mixed":
        P = mixed(cfg.n, cfg.side, cfg.seed)
    else:
        raise ValueError(f"unknown workload kind {cfg.kind!r}; expected one of {KINDS}")
    check_general_position(P, collinear=False)
    return P


def queries(P: np.ndarray, count: int, margin: float = 1.0, seed: int = 0) -> np.ndarray:
    """Uniform translate parameters over the bounding box of ``P`` grown by ``margin``."""
    rng = np.random.default_rng(seed)
    if len(P) == 0:
        return rng.uniform(-margin, margin, (count, 2))
    lo, hi = P.min(axis=0) - margin, P.max(axis=0) + margin
    return rng.uniform(lo, hi, (count, 2))
