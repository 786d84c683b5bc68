"""I-cluster sets, rough limit sets and I-cores on grids.

Every grid query reduces to the same primitive: for each node η, the segment
masses of an index set ``{n : d(x_n, η) < t}`` (or its complement).  In one
dimension these come from per-segment sorted values and binary search; in
higher dimensions from chunked brute-force distances.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import linprog

from .family import TOL, RoughFamily
from .geometry import (Box, Cover, GeometryError, Grid, GridRegion, Label, convex_hull, covers_many,
                       hull_contains, minimal_enclosing_ball)
from .ideal import Ideal, Verdict, limsup_trace
from .sequence import SequencePrefix

log = logging.getLogger(__name__)

DEFAULT_H = 1 / 200


class AnalysisError(ValueError):
    pass


class PrefixIndex:
    """Segment-mass queries for distance-threshold index sets of one prefix under one ideal."""

    CHUNK = 1_000_000

    def __init__(self, prefix: SequencePrefix, ideal: Ideal, metric=2):
        self.prefix = prefix
        self.ideal = ideal
        self.metric = metric
        n = prefix.horizon
        self.horizon = n
        self.bounds = ideal.boundaries(n)
        w = ideal.weights(n)
        self.seg_total = np.add.reduceat(w, self.bounds[:-1])
        self.k = prefix.dimension
        if self.k == 1:
            self._sorted = []
            x = prefix.points[:, 0]
            for a, b in zip(self.bounds[:-1], self.bounds[1:]):
                order = np.argsort(x[a:b], kind="stable")
                self._sorted.append((x[a:b][order], np.concatenate([[0.0], np.cumsum(w[a:b][order])])))
        else:
            nseg = len(self.bounds) - 1
            seg = np.searchsorted(self.bounds, np.arange(n), side="right") - 1
            self._W = np.zeros((n, nseg))
            self._W[np.arange(n), seg] = w

    def within(self, centers: np.ndarray, radius, strict: bool) -> np.ndarray:
        """Masses of ``{n : d(x_n, η) < r}`` (strict) or ``≤ r`` per node and segment."""
        return self.within_many(centers, [radius], strict)[0]

    def within_many(self, centers: np.ndarray, radii: list, strict: bool) -> list[np.ndarray]:
        """``within`` for several radii, computing each distance once."""
        C = np.atleast_2d(centers)
        rs = [np.broadcast_to(np.asarray(r, dtype=float), (len(C),)) for r in radii]
        outs = [np.zeros((len(C), len(self.seg_total))) for _ in rs]
        if self.k == 1:
            c = C[:, 0]
            lside, rside = ("right", "left") if strict else ("left", "right")
            for r, out in zip(rs, outs):
                for j, (vals, cw) in enumerate(self._sorted):
                    lo = np.searchsorted(vals, c - r, side=lside)
                    hi = np.maximum(np.searchsorted(vals, c + r, side=rside), lo)
                    out[:, j] = cw[hi] - cw[lo]
            return outs
        step = max(1, self.CHUNK // self.horizon)
        for s in range(0, len(C), step):
            d = self._pair_distance(C[s:s + step])
            for r, out in zip(rs, outs):
                rr = r[s:s + step, None]
                if self.metric == 2:
                    rr = np.square(rr)
                mask = d < rr if strict else d <= rr
                out[s:s + step] = mask.astype(float) @ self._W
        return outs

    def _pair_distance(self, C: np.ndarray) -> np.ndarray:
        # accumulated per axis; squared for the Euclidean metric
        P = self.prefix.points
        acc = np.zeros((len(C), self.horizon))
        for j in range(self.k):
            diff = np.abs(C[:, j, None] - P[None, :, j])
            if self.metric == 2:
                acc += diff * diff
            elif self.metric == np.inf:
                np.maximum(acc, diff, out=acc)
            elif self.metric == 1:
                acc += diff
            else:
                acc += diff ** self.metric
        if self.metric not in (1, 2, np.inf):
            acc **= 1.0 / self.metric
        return acc

    def beyond(self, centers, threshold, strict: bool) -> np.ndarray:
        """Masses of ``{n : d(x_n, η) > t}`` (strict) or ``≥ t``."""
        return self.seg_total - self.within(centers, threshold, strict=not strict)

    def beyond_many(self, centers, thresholds: list, strict: bool) -> list[np.ndarray]:
        return [self.seg_total - m for m in self.within_many(centers, thresholds, strict=not strict)]

    def classify(self, masses: np.ndarray) -> np.ndarray:
        return self.ideal.classify(masses, self.horizon)

    def by_distance(self, centers, dist_fn: Callable, threshold: float) -> np.ndarray:
        """Masses of ``{n : dist_fn(η, x_n) > threshold}`` for an arbitrary point-to-set distance."""
        P = self.prefix.points
        n = self.horizon
        seg = np.searchsorted(self.bounds, np.arange(n), side="right") - 1
        w = self.ideal.weights(n)
        out = np.zeros((len(centers), len(self.seg_total)))
        for i, c in enumerate(np.atleast_2d(centers)):
            hit = np.asarray(dist_fn(c, P)) > threshold
            out[i] = np.bincount(seg[hit], weights=w[hit], minlength=len(self.seg_total))
        return out


# ----------------------------------------------------------------------------
# Boxes


def ideal_box(prefix: SequencePrefix, ideal: Ideal) -> tuple[Box, dict]:
    """Componentwise ideal-liminf/limsup box: the bounded core outside a small index set."""
    lo, hi, low_conf = [], [], False
    for j in range(prefix.dimension):
        up = limsup_trace(ideal, prefix.points[:, j])
        dn = limsup_trace(ideal, -prefix.points[:, j])
        hi.append(up.value)
        lo.append(-dn.value)
        low_conf |= up.low_confidence or dn.low_confidence
    box = Box(np.array(lo), np.array(hi))
    raw_lo, raw_hi = prefix.points.min(axis=0), prefix.points.max(axis=0)
    diag = {"ideal_box": box.to_json(), "raw_box": Box(raw_lo, raw_hi).to_json()}
    span = np.maximum(raw_hi - raw_lo, 1.0)
    if np.any(box.lo - raw_lo > 0.5 * span) or np.any(raw_hi - box.hi > 0.5 * span):
        diag["unbounded_prefix"] = ("terms far outside the ideal-bounded core were treated as a small "
                                    "index set; the core is assumed to be the compact set K")
    if low_conf:
        diag["box_low_confidence"] = True
    return box, diag


def analysis_box(prefix: SequencePrefix, ideal: Ideal, h: float, pad: float = 0.0) -> tuple[Box, dict]:
    core, diag = ideal_box(prefix, ideal)
    margin = np.maximum(0.1 * (core.hi - core.lo), h)
    return core.inflate(margin + pad), diag


# ----------------------------------------------------------------------------
# Reports


@dataclass(frozen=True, eq=False)
class ClusterReport:
    region: GridRegion
    eps: tuple
    traces: dict
    ideal: Ideal
    diagnostics: dict = field(default_factory=dict)

    @property
    def points(self) -> np.ndarray:
        return self.region.points(Label.IN)

    def to_json(self) -> dict:
        return {"object": "cluster_set", "eps": list(self.eps), "ideal": self.ideal.to_json(),
                "region": self.region.summary(), "diagnostics": self.diagnostics}


@dataclass(frozen=True, eq=False)
class LimitReport:
    region: GridRegion
    method: str
    family: RoughFamily
    raw: GridRegion
    membership: Callable | None = None
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"object": "limit_set", "method": self.method, "family": self.family.to_json(),
                "region": self.region.summary(), "diagnostics": self.diagnostics}


def _check_eps(eps, h):
    eps = tuple(float(e) for e in eps)
    if not eps:
        raise AnalysisError("empty eps schedule")
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise AnalysisError("eps schedule must be strictly decreasing")
    if eps[-1] < 2 * h - 1e-12:
        raise AnalysisError(f"schedule finer than grid: smallest eps {eps[-1]} < 2h = {2 * h}")
    return eps


def _grid(box: Box | Grid, h: float) -> Grid:
    return box if isinstance(box, Grid) else Grid.from_box(box, h)


def cluster_set(prefix: SequencePrefix, ideal: Ideal, box: Box | Grid | None = None, h: float = DEFAULT_H,
                eps=None, metric=2) -> ClusterReport:
    """Grid estimate of the I-cluster set.

    A node is in when the hit set ``{n : d(x_n, η) < ε}`` is NotSmall for every
    ε of the schedule, out when some ε gives Small, uncertain otherwise.
    """
    eps = _check_eps(eps if eps is not None else (4 * h, 2 * h), h)
    diag = {}
    if box is None:
        box, diag = analysis_box(prefix, ideal, h, pad=eps[0])
    grid = _grid(box, h)
    if grid.dimension != prefix.dimension:
        raise AnalysisError("box dimension does not match the sequence")
    idx = PrefixIndex(prefix, ideal, metric)
    centers = grid.centers()
    all_ns = np.ones(len(centers), dtype=bool)
    any_small = np.zeros(len(centers), dtype=bool)
    traces = {}
    for e, m in zip(eps, idx.within_many(centers, list(eps), strict=True)):
        v = idx.classify(m)
        traces[e] = v
        all_ns &= v == Verdict.NOT_SMALL
        any_small |= v == Verdict.SMALL
    raw = np.where(all_ns, Label.IN, np.where(any_small, Label.OUT, Label.UNCERTAIN))
    region = GridRegion(grid, raw).banded()
    if not np.any(raw == Label.IN):
        diag["empty"] = "no node is a cluster point at every eps"
    inconclusive = int(sum(np.sum(v == Verdict.INCONCLUSIVE) for v in traces.values()))
    if inconclusive:
        diag["inconclusive_verdicts"] = inconclusive
    return ClusterReport(region, eps, traces, ideal, diag)


def _closed_labels(idx: PrefixIndex, centers, r, eps) -> np.ndarray:
    masses = idx.beyond_many(centers, [r + TOL] + [r + e + TOL for e in eps], strict=True)
    inside = idx.classify(masses[0]) == Verdict.SMALL
    out = np.zeros(len(centers), dtype=bool)
    for m in masses[1:]:
        v = idx.classify(m)
        inside &= v == Verdict.SMALL
        out |= v == Verdict.NOT_SMALL
    return np.where(inside, Label.IN, np.where(out, Label.OUT, Label.UNCERTAIN))


def _open_labels(idx: PrefixIndex, centers, r) -> np.ndarray:
    v = idx.classify(idx.beyond(centers, r - TOL, strict=False))
    return np.where(v == Verdict.SMALL, Label.IN, np.where(v == Verdict.NOT_SMALL, Label.OUT, Label.UNCERTAIN))


def _general_labels(idx: PrefixIndex, family: RoughFamily, centers, eps) -> np.ndarray:
    inside = idx.classify(idx.by_distance(centers, family.set_distance, TOL)) == Verdict.SMALL
    out = np.zeros(len(centers), dtype=bool)
    for e in eps:
        v = idx.classify(idx.by_distance(centers, family.set_distance, e + TOL))
        inside &= v == Verdict.SMALL
        out |= v == Verdict.NOT_SMALL
    return np.where(inside, Label.IN, np.where(out, Label.OUT, Label.UNCERTAIN))


def limit_box(prefix: SequencePrefix, ideal: Ideal, family: RoughFamily, h: float) -> tuple[Box, dict]:
    core, diag = ideal_box(prefix, ideal)
    margin = np.maximum(0.1 * (core.hi - core.lo), h)
    pad = family.pad(core.lo, core.hi)
    return core.inflate(margin + pad + 2 * h), diag


def rough_limit_direct(prefix: SequencePrefix, ideal: Ideal, family: RoughFamily, box: Box | Grid | None = None,
                       h: float = DEFAULT_H, eps=None) -> LimitReport:
    """Rough limit set from the definition: η is in when the sequence leaves every
    open superset of ``F_η`` only on a small index set.

    Closed families: in when ``{d > r(η)}`` is Small and stays Small for every
    enlargement ε of the schedule, out when some enlargement ``{d > r(η)+ε}`` is
    NotSmall.  Open balls: the ball is its own smallest open superset, so the
    test is on ``{d ≥ r(η)}`` alone.
    """
    eps = tuple(eps) if eps is not None else (4 * h, 2 * h, h)
    diag = {}
    if box is None:
        box, diag = limit_box(prefix, ideal, family, h)
    grid = _grid(box, h)
    centers = grid.centers()
    family.validate(centers)
    idx = PrefixIndex(prefix, ideal, family.metric)

    def membership(points):
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if family.kind == "open_ball":
            return _open_labels(idx, pts, family.radius(pts))
        if family.kind == "closed_ball":
            return _closed_labels(idx, pts, family.radius(pts), eps)
        return _general_labels(idx, family, pts, eps)

    raw = GridRegion(grid, membership(centers))
    diag["eps"] = list(eps)
    return LimitReport(raw.banded(), "direct", family, raw, membership, diag)


def rough_limit_via_clusters(cluster: ClusterReport, family: RoughFamily, box: Box | Grid | None = None,
                             h: float | None = None) -> LimitReport:
    """``{η : Γ ⊆ F_η}`` over the cluster in-nodes; valid for closed ``F_η`` only."""
    if not family.closed:
        raise AnalysisError("characterization requires closed F_eta")
    gamma = cluster.points
    if len(gamma) == 0:
        raise AnalysisError("cluster region is empty")
    h = cluster.region.h if h is None else h
    grid = _grid(box, h) if box is not None else cluster.region.grid
    centers = grid.centers()
    family.validate(centers)

    def membership(points):
        c = covers_many(gamma, family, points)
        return np.where(c == Cover.YES, Label.IN, np.where(c == Cover.NO, Label.OUT, Label.UNCERTAIN))

    raw = GridRegion(grid, membership(centers))
    return LimitReport(raw.banded(), "via-clusters", family, raw, membership,
                       {"cluster_points": int(len(gamma))})


def core_hull(cluster: ClusterReport):
    gamma = cluster.points
    if len(gamma) == 0:
        raise AnalysisError("core undefined for empty cluster set")
    return convex_hull(gamma, gamma.shape[1])


def core_set(cluster: ClusterReport, box: Box | Grid | None = None) -> GridRegion:
    """Convex hull of the cluster in-nodes rasterised onto the grid (k <= 2)."""
    k = cluster.region.grid.dimension
    if k > 2:
        raise GeometryError("hull regions limited to k <= 2")
    hull = core_hull(cluster)
    grid = _grid(box, cluster.region.h) if box is not None else cluster.region.grid
    inside = hull_contains(hull, grid.centers())
    return GridRegion(grid, np.where(inside, Label.IN, Label.OUT)).banded()


def core_contains(cluster: ClusterReport, points) -> np.ndarray:
    """Membership in the hull of the cluster in-nodes for any dimension (LP feasibility)."""
    gamma = cluster.points
    if len(gamma) == 0:
        raise AnalysisError("core undefined for empty cluster set")
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if gamma.shape[1] <= 2:
        return hull_contains(core_hull(cluster), pts)
    m = len(gamma)
    A_eq = np.vstack([gamma.T, np.ones((1, m))])
    out = np.empty(len(pts), dtype=bool)
    for i, p in enumerate(pts):
        res = linprog(np.zeros(m), A_eq=A_eq, b_eq=np.append(p, 1.0), bounds=(0, None), method="highs")
        out[i] = res.status == 0
    return out


@dataclass(frozen=True)
class Certificate:
    nonempty: bool
    center: tuple
    radius: float
    gap: float

    def to_json(self):
        d = {"result": "Nonempty" if self.nonempty else "Empty", "meb_center": list(self.center),
             "meb_radius": self.radius}
        if not self.nonempty:
            d["gap"] = self.gap
        return d


def nonemptiness_certificate(cluster: ClusterReport | np.ndarray, r: float, tol: float = TOL) -> Certificate:
    """Constant-radius closed balls: the limit set is nonempty iff the Chebyshev radius
    of the cluster set is at most ``r``; the MEB centre is then a witness."""
    gamma = cluster.points if isinstance(cluster, ClusterReport) else np.atleast_2d(cluster)
    if len(gamma) == 0 or gamma.size == 0:
        raise AnalysisError("certificate needs a nonempty cluster set")
    c, rad = minimal_enclosing_ball(gamma)
    ok = rad <= r + tol
    return Certificate(bool(ok), tuple(float(x) for x in c), float(rad), 0.0 if ok else float(rad - r))
