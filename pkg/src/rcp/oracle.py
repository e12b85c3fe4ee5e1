"""Brute-force ground truth: range membership by direct scan, O(k^2) closest pair."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .geometry import EPS, GeometryError, Point, PointPair, Shape


@dataclass(frozen=True)
class RangePredicate:
    """The translate ``shape + q`` as a membership test."""

    shape: Shape
    q: Point = (0.0, 0.0)
    eps: float = EPS

    def __call__(self, x: Point) -> bool:
        return bool(self.shape.contains(x, self.q, self.eps))

    def mask(self, pts) -> np.ndarray:
        pts = np.asarray(pts, dtype=float).reshape(-1, 2)
        return self.shape.contains_array(pts, self.q, self.eps)


def _as_array(S) -> np.ndarray:
    return np.asarray(S, dtype=float).reshape(-1, 2)


def points_in_range(S, r: RangePredicate) -> np.ndarray:
    S = _as_array(S)
    if len(S) == 0:
        return S
    return S[r.mask(S)]


def closest_pair_brute(P) -> Optional[PointPair]:
    P = _as_array(P)
    if len(P) < 2:
        return None
    d = np.hypot(P[:, None, 0] - P[None, :, 0], P[:, None, 1] - P[None, :, 1])
    iu = np.triu_indices(len(P), 1)
    flat = d[iu]
    if np.any(flat == 0):
        raise GeometryError("duplicate points")
    k = int(np.argmin(flat))
    return PointPair.of(P[iu[0][k]], P[iu[1][k]])


def rcp_answer(S, r: RangePredicate) -> Optional[PointPair]:
    return closest_pair_brute(points_in_range(S, r))
