"""Geometric kernels: grids and labelled regions, minimal enclosing balls, convex hulls,
ball-cover tests and one-sided set distances."""
from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree

from .family import TOL, RoughFamily, distances


class GeometryError(ValueError):
    pass


class Label(enum.IntEnum):
    OUT = 0
    IN = 1
    UNCERTAIN = 2

    @property
    def text(self) -> str:
        return ("out", "in", "uncertain")[self]


class Cover(enum.IntEnum):
    NO = 0
    YES = 1
    BOUNDARY = 2


@dataclass(frozen=True, eq=False)
class Box:
    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = np.atleast_1d(np.asarray(self.lo, dtype=float))
        hi = np.atleast_1d(np.asarray(self.hi, dtype=float))
        if lo.shape != hi.shape or np.any(hi < lo):
            raise GeometryError("box needs lo <= hi componentwise")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dimension(self) -> int:
        return self.lo.size

    def inflate(self, pad) -> "Box":
        return Box(self.lo - pad, self.hi + pad)

    def to_json(self):
        return [[float(a), float(b)] for a, b in zip(self.lo, self.hi)]

    @classmethod
    def from_json(cls, obj) -> "Box":
        arr = np.asarray(obj, dtype=float).reshape(-1, 2)
        return cls(arr[:, 0], arr[:, 1])


@dataclass(frozen=True)
class Ball:
    center: tuple
    radius: float
    closed: bool = True

    def __post_init__(self):
        if self.radius < 0:
            raise GeometryError("radius must be nonnegative")

    def contains(self, points, tol: float = TOL) -> np.ndarray:
        d = distances(np.atleast_2d(points), np.asarray(self.center, dtype=float))
        if self.closed:
            return d <= self.radius + tol
        return d < self.radius - tol


# ----------------------------------------------------------------------------
# Grids


def _reciprocal(h: float) -> int | None:
    m = round(1.0 / h)
    return m if m > 0 and abs(1.0 / h - m) < 1e-9 * m else None


@dataclass(frozen=True)
class Grid:
    """Nodes at integer multiples of ``h``: axis ``j`` covers ``(start[j] + i) * h``."""

    start: tuple
    shape: tuple
    h: float

    def __post_init__(self):
        if not self.h > 0:
            raise GeometryError("resolution h must be positive")
        if len(self.start) != len(self.shape) or any(s < 1 for s in self.shape):
            raise GeometryError("grid needs at least one node per axis")

    @classmethod
    def from_box(cls, box: Box, h: float) -> "Grid":
        if not h > 0:
            raise GeometryError("resolution h must be positive")
        first = np.ceil(box.lo / h - 1e-9).astype(np.int64)
        last = np.floor(box.hi / h + 1e-9).astype(np.int64)
        last = np.maximum(last, first)
        return cls(tuple(int(a) for a in first), tuple(int(b - a + 1) for a, b in zip(first, last)), float(h))

    @property
    def dimension(self) -> int:
        return len(self.shape)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    def axis(self, j: int) -> np.ndarray:
        idx = np.arange(self.start[j], self.start[j] + self.shape[j])
        m = _reciprocal(self.h)
        return idx / m if m else idx * self.h

    def centers(self) -> np.ndarray:
        axes = [self.axis(j) for j in range(self.dimension)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    def box(self) -> Box:
        lo = np.array([self.axis(j)[0] for j in range(self.dimension)])
        hi = np.array([self.axis(j)[-1] for j in range(self.dimension)])
        return Box(lo - self.h / 2, hi + self.h / 2)

    def to_json(self):
        return {"start": list(self.start), "shape": list(self.shape), "h": self.h}


@dataclass(frozen=True, eq=False)
class GridRegion:
    """Labelled grid: each node is ``in``, ``out`` or ``uncertain``."""

    grid: Grid
    labels: np.ndarray

    def __post_init__(self):
        lab = np.asarray(self.labels, dtype=np.int8).reshape(self.grid.shape).copy()
        if np.any((lab < 0) | (lab > 2)):
            raise GeometryError("labels must be in/out/uncertain")
        lab.setflags(write=False)
        object.__setattr__(self, "labels", lab)

    @property
    def h(self) -> float:
        return self.grid.h

    def mask(self, label: Label) -> np.ndarray:
        return self.labels == label

    def points(self, label: Label = Label.IN) -> np.ndarray:
        return self.grid.centers()[self.labels.ravel() == label]

    def counts(self) -> dict:
        return {lab.text: int(np.sum(self.labels == lab)) for lab in Label}

    def banded(self) -> "GridRegion":
        """Mark out-nodes adjacent (along an axis) to an in-node as uncertain."""
        inside = self.labels == Label.IN
        near = np.zeros_like(inside)
        for ax in range(inside.ndim):
            near |= np.roll(inside, 1, axis=ax) & _not_wrapped(inside.shape, ax, 1)
            near |= np.roll(inside, -1, axis=ax) & _not_wrapped(inside.shape, ax, -1)
        lab = self.labels.copy()
        lab[near & (lab == Label.OUT)] = Label.UNCERTAIN
        return GridRegion(self.grid, lab)

    def same_grid(self, other: "GridRegion") -> bool:
        return self.grid == other.grid

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        k = self.grid.dimension
        w.writerow([f"x{j}" for j in range(k)] + ["label"])
        for c, lab in zip(self.grid.centers(), self.labels.ravel()):
            w.writerow([repr(float(x)) for x in c] + [Label(int(lab)).text])
        return buf.getvalue()

    def summary(self) -> dict:
        inside = self.labels == Label.IN
        comp, n = ndimage.label(inside)
        boxes = []
        for sl in ndimage.find_objects(comp):
            boxes.append([[float(self.grid.axis(j)[s.start]), float(self.grid.axis(j)[s.stop - 1])]
                          for j, s in enumerate(sl)])
        return {"grid": self.grid.to_json(), "counts": self.counts(), "components": int(n),
                "component_boxes": boxes,
                "measure": float(inside.sum() * self.h ** self.grid.dimension)}

    def to_json(self) -> str:
        return json.dumps(self.summary(), sort_keys=True)


def _not_wrapped(shape, axis, shift):
    # mask discarding values np.roll carried across the array edge
    m = np.ones(shape, dtype=bool)
    sl = [slice(None)] * len(shape)
    sl[axis] = 0 if shift > 0 else -1
    m[tuple(sl)] = False
    return m


# ----------------------------------------------------------------------------
# Minimal enclosing ball


def _circumball(S: list) -> tuple[np.ndarray | None, float]:
    if not S:
        return None, -1.0
    P = np.asarray(S, dtype=float)
    p0 = P[0]
    if len(P) == 1:
        return p0.copy(), 0.0
    A = P[1:] - p0
    b = np.einsum("ij,ij->i", A, A)
    lam = np.linalg.lstsq(2.0 * A @ A.T, b, rcond=None)[0]
    c = p0 + lam @ A
    return c, float(np.max(np.linalg.norm(P - c, axis=1)))


def _mtf(L: list, end: int, support: list, dim: int):
    c, r = _circumball(support)
    if len(support) == dim + 1:
        return c, r
    i = 0
    while i < end:
        p = L[i]
        if c is None or np.linalg.norm(p - c) > r * (1 + 1e-12) + 1e-12:
            c, r = _mtf(L, i, support + [p], dim)
            L.insert(0, L.pop(i))
        i += 1
    return c, r


def minimal_enclosing_ball(points) -> tuple[np.ndarray, float]:
    """Smallest closed Euclidean ball containing ``points`` (move-to-front Welzl).

    Input is deduplicated and sorted lexicographically first, so the result does
    not depend on the input order.  In the plane only hull vertices are kept.
    """
    P = np.atleast_2d(np.asarray(points, dtype=float))
    if P.size == 0 or P.shape[0] == 0:
        raise GeometryError("minimal enclosing ball of an empty set")
    k = P.shape[1]
    if k > 8:
        raise GeometryError("minimal enclosing ball limited to k <= 8")
    P = np.unique(P, axis=0)
    if k == 1:
        lo, hi = P[0, 0], P[-1, 0]
        return np.array([(lo + hi) / 2]), float((hi - lo) / 2)
    if k == 2 and len(P) > 3:
        P = np.asarray(convex_hull(P))
        P = P[np.lexsort(P.T[::-1])]
    L = [p for p in P]
    c, r = _mtf(L, len(L), [], k)
    # final radius measured against every input point
    r = float(np.max(np.linalg.norm(P - c, axis=1)))
    return c, r


# ----------------------------------------------------------------------------
# Convex hull


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points, k: int | None = None):
    """``k = 1``: the interval ``(min, max)``.  ``k = 2``: counterclockwise vertex array
    (monotone chain, collinear points dropped)."""
    P = np.asarray(points, dtype=float)
    if P.ndim == 1:
        P = P[:, None] if k in (None, 1) else P.reshape(-1, k)
    if P.size == 0:
        raise GeometryError("convex hull of an empty set")
    k = P.shape[1] if k is None else k
    if k != P.shape[1]:
        raise GeometryError(f"points have dimension {P.shape[1]}, expected {k}")
    if k == 1:
        return float(P.min()), float(P.max())
    if k > 2:
        raise GeometryError("hull regions limited to k <= 2")
    pts = sorted(set(map(tuple, P.tolist())))
    if len(pts) <= 2:
        return np.array(pts)
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def _segment_distance(pts, a, b):
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0:
        return np.linalg.norm(pts - a, axis=1)
    t = np.clip((pts - a) @ ab / denom, 0.0, 1.0)
    return np.linalg.norm(pts - (a + t[:, None] * ab), axis=1)


def hull_distance(hull: np.ndarray, points) -> np.ndarray:
    """Euclidean distance from each point to a planar hull (0 inside)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    H = np.atleast_2d(hull)
    if len(H) == 1:
        return np.linalg.norm(pts - H[0], axis=1)
    edges = [(H[i], H[(i + 1) % len(H)]) for i in range(len(H))]
    d = np.min([_segment_distance(pts, a, b) for a, b in edges], axis=0)
    if len(H) >= 3:
        inside = np.ones(len(pts), dtype=bool)
        for a, b in edges:
            inside &= (b[0] - a[0]) * (pts[:, 1] - a[1]) - (b[1] - a[1]) * (pts[:, 0] - a[0]) >= 0
        d[inside] = 0.0
    return d


def hull_contains(hull, points, tol: float = TOL) -> np.ndarray:
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if isinstance(hull, tuple):
        x = pts[:, 0]
        return (x >= hull[0] - tol) & (x <= hull[1] + tol)
    return hull_distance(hull, pts) <= tol


# ----------------------------------------------------------------------------
# Cover tests


def max_distance(gamma: np.ndarray, etas: np.ndarray, metric=2) -> np.ndarray:
    """``max_{γ∈Γ} d(η, γ)`` for each η.  The maximum of a convex function over a
    polytope sits at a vertex, so Γ is reduced to its hull first when possible."""
    G = np.atleast_2d(np.asarray(gamma, dtype=float))
    E = np.atleast_2d(np.asarray(etas, dtype=float))
    if G.shape[1] == 1:
        lo, hi = G.min(), G.max()
        return np.maximum(np.abs(E[:, 0] - lo), np.abs(E[:, 0] - hi))
    if G.shape[1] == 2 and len(G) > 3:
        G = np.atleast_2d(convex_hull(G))
    out = np.empty(len(E))
    step = max(1, 2_000_000 // len(G))
    for s in range(0, len(E), step):
        diff = E[s:s + step, None, :] - G[None, :, :]
        out[s:s + step] = np.linalg.norm(diff, ord=metric, axis=2).max(axis=1)
    return out


def covers_many(gamma, family: RoughFamily, etas, tol: float = TOL) -> np.ndarray:
    """Three-valued test of ``Γ ⊆ F_η`` for each row of ``etas``."""
    G = np.atleast_2d(np.asarray(gamma, dtype=float))
    if G.size == 0:
        raise GeometryError("cover test needs a nonempty centre set")
    E = np.atleast_2d(np.asarray(etas, dtype=float))
    out = np.full(len(E), Cover.BOUNDARY, dtype=np.int8)
    if family.is_ball:
        d = max_distance(G, E, family.metric)
        r = family.radius(E)
        if family.closed:
            out[d <= r - tol] = Cover.YES
            out[d > r + tol] = Cover.NO
        else:
            out[d < r - tol] = Cover.YES
            out[d >= r + tol] = Cover.NO
        return out
    for i, e in enumerate(E):
        out[i] = Cover.YES if np.max(family.set_distance(e, G)) <= tol else Cover.NO
    return out


def covers(gamma, family: RoughFamily, eta, tol: float = TOL) -> Cover:
    return Cover(int(covers_many(gamma, family, np.atleast_2d(eta), tol)[0]))


def excess(A: GridRegion, B: GridRegion) -> float:
    """One-sided Hausdorff distance ``sup_{a∈A} d(a, B)`` between the in-cells."""
    if not A.same_grid(B):
        raise GeometryError("excess needs regions on the same grid")
    a = A.points(Label.IN)
    b = B.points(Label.IN)
    if len(a) == 0:
        return 0.0
    if len(b) == 0:
        return math.inf
    d, _ = cKDTree(b).query(a)
    return float(np.max(d))
