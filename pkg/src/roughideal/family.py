"""Rough families ``η ↦ F_η``: balls with constant or variable radius, or general closed sets."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

TOL = 1e-9


class FamilyError(ValueError):
    pass


def distances(points: np.ndarray, center: np.ndarray, metric=2) -> np.ndarray:
    """Distances from each row of ``points`` (m, k) to ``center`` (k,)."""
    diff = np.asarray(points, dtype=float) - np.asarray(center, dtype=float)
    if diff.shape[-1] == 1:
        return np.abs(diff[..., 0])
    return np.linalg.norm(diff, ord=metric, axis=-1)


class RadiusFn:
    concave = False

    def __call__(self, etas: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def upper_bound(self, lo: np.ndarray, hi: np.ndarray) -> float:
        axes = [np.linspace(a, b, 33) for a, b in zip(lo, hi)]
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(lo))
        return float(np.max(self(mesh)))


@dataclass(frozen=True)
class Constant(RadiusFn):
    r: float
    concave = True

    def __post_init__(self):
        if not self.r >= 0:
            raise FamilyError("radius must be nonnegative")

    def __call__(self, etas):
        return np.full(np.atleast_2d(etas).shape[0], float(self.r))

    def upper_bound(self, lo, hi):
        return float(self.r)

    def to_json(self):
        return {"kind": "Constant", "r": self.r}


@dataclass(frozen=True)
class MinAffine(RadiusFn):
    """Pointwise minimum of affine maps ``a_i·η + b_i``; concave by construction."""

    slopes: tuple
    intercepts: tuple
    concave = True

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.slopes, dtype=float))
        b = np.asarray(self.intercepts, dtype=float).ravel()
        if a.shape[0] != b.size or b.size == 0:
            raise FamilyError("need one intercept per affine piece")

    def __call__(self, etas):
        e = np.atleast_2d(np.asarray(etas, dtype=float))
        a = np.atleast_2d(np.asarray(self.slopes, dtype=float))
        if a.shape[1] != e.shape[1]:
            a = a.reshape(-1, e.shape[1])
        return np.min(e @ a.T + np.asarray(self.intercepts, dtype=float), axis=1)

    def to_json(self):
        return {"kind": "MinAffine", "slopes": np.asarray(self.slopes, dtype=float).tolist(),
                "intercepts": list(map(float, self.intercepts))}


@dataclass(frozen=True, eq=False)
class UpperEnvelopeTable(RadiusFn):
    """Tabulated radius on a rectilinear grid, read off as the max of the neighbouring samples.

    A query point takes the largest sample among the table nodes within one
    spacing along every axis, which keeps the interpolant upper semicontinuous.
    """

    axes: tuple
    values: np.ndarray

    def __post_init__(self):
        axes = tuple(np.asarray(a, dtype=float) for a in self.axes)
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != tuple(a.size for a in axes):
            raise FamilyError("table shape does not match its axes")
        for a in axes:
            if a.size < 2 or np.any(np.diff(a) <= 0):
                raise FamilyError("table axes must be strictly increasing with at least two nodes")
        if np.any(vals < 0):
            raise FamilyError("radius table must be nonnegative")
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "values", vals)

    def __call__(self, etas):
        e = np.atleast_2d(np.asarray(etas, dtype=float))
        out = np.empty(e.shape[0])
        for i, p in enumerate(e):
            sel = [self._bracket(a, p[j]) for j, a in enumerate(self.axes)]
            out[i] = self.values[np.ix_(*sel)].max()
        return out

    @staticmethod
    def _bracket(a: np.ndarray, x: float) -> np.ndarray:
        # nodes of the closed interval containing x; a node hit exactly brings both neighbours
        x = min(max(x, a[0]), a[-1])
        k = int(np.searchsorted(a, x, side="right")) - 1
        k = min(max(k, 0), a.size - 1)
        if abs(a[k] - x) <= TOL:
            return np.arange(max(k - 1, 0), min(k + 2, a.size))
        return np.array([k, min(k + 1, a.size - 1)])

    def upper_bound(self, lo, hi):
        return float(self.values.max())

    def to_json(self):
        return {"kind": "UpperEnvelopeTable", "axes": [a.tolist() for a in self.axes],
                "values": self.values.tolist()}


@dataclass(frozen=True, eq=False)
class RoughFamily:
    """``kind`` is ``closed_ball``, ``open_ball`` or ``general_closed``.

    Ball families carry a radius function.  General closed families carry
    ``set_distance(eta, points)``, the distance of each point to ``F_eta``;
    ``F_eta`` is its zero set.
    """

    kind: str
    radius: RadiusFn | None = None
    set_distance: Callable | None = None
    label: str = ""
    metric: float = 2

    KINDS = ("closed_ball", "open_ball", "general_closed")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise FamilyError(f"unknown family kind {self.kind!r}")
        if self.kind != "general_closed" and self.radius is None:
            raise FamilyError("ball families need a radius function")
        if self.kind == "general_closed" and self.set_distance is None:
            raise FamilyError("general closed families need a set-distance function")

    @property
    def closed(self) -> bool:
        return self.kind != "open_ball"

    @property
    def is_ball(self) -> bool:
        return self.kind != "general_closed"

    def validate(self, etas: np.ndarray) -> None:
        """Check ``η ∈ F_η`` on the given points (nonnegative radius, or zero self-distance)."""
        etas = np.atleast_2d(etas)
        if self.is_ball:
            r = self.radius(etas)
            if np.any(r < 0) or not np.all(np.isfinite(r)):
                bad = etas[np.argmin(r)]
                raise FamilyError(f"radius negative at {bad.tolist()}")
        else:
            for e in etas:
                if self.set_distance(e, e[None, :])[0] > TOL:
                    raise FamilyError(f"F_eta does not contain eta at {e.tolist()}")

    def pad(self, lo, hi) -> float:
        if self.is_ball:
            return self.radius.upper_bound(np.asarray(lo), np.asarray(hi))
        return 0.0

    def to_json(self) -> dict:
        d = {"kind": self.kind, "metric": "inf" if self.metric == np.inf else self.metric}
        if self.radius is not None:
            d["radius"] = self.radius.to_json()
        if self.label:
            d["label"] = self.label
        return d


def closed_ball(r: float | RadiusFn, metric=2) -> RoughFamily:
    return RoughFamily("closed_ball", r if isinstance(r, RadiusFn) else Constant(float(r)), metric=metric)


def open_ball(r: float | RadiusFn, metric=2) -> RoughFamily:
    return RoughFamily("open_ball", r if isinstance(r, RadiusFn) else Constant(float(r)), metric=metric)


def radius_from_json(obj) -> RadiusFn:
    if isinstance(obj, (int, float)):
        return Constant(float(obj))
    kind = obj.get("kind", "Constant")
    if kind == "Constant":
        return Constant(float(obj["r"]))
    if kind == "MinAffine":
        return MinAffine(tuple(map(tuple, np.atleast_2d(obj["slopes"]).tolist())), tuple(obj["intercepts"]))
    if kind == "UpperEnvelopeTable":
        return UpperEnvelopeTable(tuple(obj["axes"]), np.asarray(obj["values"], dtype=float))
    raise FamilyError(f"unknown radius kind {kind!r}")


def family_from_json(obj: dict) -> RoughFamily:
    kind = obj.get("kind", "closed_ball")
    metric = obj.get("metric", 2)
    metric = np.inf if metric in ("inf", "Infinity") else float(metric)
    if kind == "general_closed":
        raise FamilyError("general closed families are code-only (they need a set-distance callable)")
    return RoughFamily(kind, radius_from_json(obj.get("radius", 0.0)), metric=metric)
