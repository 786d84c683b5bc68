"""Finite-horizon ideals on the nonnegative integers.

An ideal is represented by a decision procedure on prefixes ``[0, N)``.  Every
procedure works on *segment masses*: the index range is cut into consecutive
segments and a set ``S`` is summarised by the total weight of its members in
each segment.  Verdicts are three-valued because genuine membership in an
ideal is a tail property that no finite prefix decides.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

DEFAULT_WINDOWS = (0.5, 0.75, 0.875, 1.0)
DEFAULT_DELTA = 0.01
DEFAULT_DECAY = 0.9
DEFAULT_BUDGET = 20.0


class IdealError(ValueError):
    pass


class Verdict(enum.IntEnum):
    SMALL = 0
    NOT_SMALL = 1
    INCONCLUSIVE = 2

    @property
    def label(self) -> str:
        return ("Small", "NotSmall", "Inconclusive")[self]


@dataclass(frozen=True, eq=False)
class IndexSet:
    """Subset of ``[0, horizon)`` stored as a boolean membership vector."""

    mask: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mask, dtype=bool).copy()
        if m.ndim != 1 or m.size == 0:
            raise IdealError("index set needs a 1-d mask with positive horizon")
        m.setflags(write=False)
        object.__setattr__(self, "mask", m)

    @classmethod
    def from_indices(cls, indices, horizon: int) -> "IndexSet":
        m = np.zeros(horizon, dtype=bool)
        idx = np.asarray(list(indices), dtype=np.int64)
        if idx.size:
            if idx.min() < 0 or idx.max() >= horizon:
                raise IdealError("index outside horizon")
            m[idx] = True
        return cls(m)

    @classmethod
    def from_predicate(cls, pred: Callable[[np.ndarray], np.ndarray], horizon: int) -> "IndexSet":
        return cls(pred(np.arange(horizon)))

    @classmethod
    def empty(cls, horizon: int) -> "IndexSet":
        return cls(np.zeros(horizon, dtype=bool))

    @classmethod
    def full(cls, horizon: int) -> "IndexSet":
        return cls(np.ones(horizon, dtype=bool))

    @property
    def horizon(self) -> int:
        return self.mask.size

    def __len__(self) -> int:
        return int(self.mask.sum())

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def _check(self, other: "IndexSet"):
        if other.horizon != self.horizon:
            raise IdealError(f"horizon mismatch: {self.horizon} vs {other.horizon}")

    def __or__(self, other: "IndexSet") -> "IndexSet":
        self._check(other)
        return IndexSet(self.mask | other.mask)

    def __and__(self, other: "IndexSet") -> "IndexSet":
        self._check(other)
        return IndexSet(self.mask & other.mask)

    def __invert__(self) -> "IndexSet":
        return IndexSet(~self.mask)

    def __le__(self, other: "IndexSet") -> bool:
        self._check(other)
        return not np.any(self.mask & ~other.mask)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IndexSet):
            return NotImplemented
        return self.horizon == other.horizon and np.array_equal(self.mask, other.mask)

    __hash__ = None


@dataclass(frozen=True)
class IndexRule:
    """Named rule producing an index set at any horizon (used by generators and configs)."""

    kind: str  # evens | odds | squares | nonsquares | mod | finite | all | none
    modulus: int = 2
    residues: tuple = (0,)
    members: tuple = ()

    KINDS = ("evens", "odds", "squares", "nonsquares", "mod", "finite", "all", "none")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise IdealError(f"unknown index rule {self.kind!r}")
        if self.kind == "mod" and self.modulus < 1:
            raise IdealError("modulus must be positive")

    def materialize(self, horizon: int) -> IndexSet:
        n = np.arange(horizon)
        if self.kind == "evens":
            m = n % 2 == 0
        elif self.kind == "odds":
            m = n % 2 == 1
        elif self.kind in ("squares", "nonsquares"):
            root = np.floor(np.sqrt(n)).astype(np.int64)
            m = (root * root == n) | ((root + 1) * (root + 1) == n)
            if self.kind == "nonsquares":
                m = ~m
        elif self.kind == "mod":
            m = np.isin(n % self.modulus, np.asarray(self.residues))
        elif self.kind == "finite":
            return IndexSet.from_indices([i for i in self.members if i < horizon], horizon)
        elif self.kind == "all":
            m = np.ones(horizon, dtype=bool)
        else:
            m = np.zeros(horizon, dtype=bool)
        return IndexSet(m)

    def to_json(self):
        if self.kind == "mod":
            return {"mod": self.modulus, "residues": list(self.residues)}
        if self.kind == "finite":
            return {"finite": list(self.members)}
        return self.kind

    @classmethod
    def from_json(cls, obj) -> "IndexRule":
        if isinstance(obj, str):
            return cls(obj)
        if isinstance(obj, dict) and "mod" in obj:
            return cls("mod", modulus=int(obj["mod"]), residues=tuple(int(r) for r in obj.get("residues", [0])))
        if isinstance(obj, dict) and "finite" in obj:
            return cls("finite", members=tuple(int(i) for i in obj["finite"]))
        raise IdealError(f"cannot read index rule from {obj!r}")


def window_schedule(fractions: Sequence[float], horizon: int) -> np.ndarray:
    """Turn window fractions of the horizon into strictly increasing integer windows ending at N."""
    if len(fractions) == 0:
        raise IdealError("no windows")
    fr = np.asarray(fractions, dtype=float)
    if np.any(fr <= 0) or np.any(fr > 1) or np.any(np.diff(fr) <= 0):
        raise IdealError("window fractions must be strictly increasing in (0, 1]")
    if fr[-1] != 1.0:
        raise IdealError("last window must equal the horizon")
    w = np.maximum(1, np.rint(fr * horizon).astype(np.int64))
    return np.unique(w)


def _tail(windows: np.ndarray) -> slice:
    return slice(len(windows) // 2, len(windows))


def density_estimate(S: IndexSet, windows) -> float:
    """Upper-density surrogate: max of ``|S ∩ [0, w)| / w`` over the tail half of the windows.

    ``windows`` holds integer window lengths (strictly increasing, within the horizon).
    """
    w = np.asarray(windows, dtype=np.int64)
    if w.size == 0:
        raise IdealError("no windows")
    if np.any(np.diff(w) <= 0) or w[0] < 1 or w[-1] > S.horizon:
        raise IdealError("windows must be strictly increasing and lie within the horizon")
    csum = np.concatenate([[0], np.cumsum(S.mask, dtype=np.int64)])
    tail = w[_tail(w)]
    return float(np.max(csum[tail] / tail))


@dataclass(frozen=True)
class SmallnessVerdict:
    verdict: Verdict
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"verdict": self.verdict.label, "evidence": self.evidence}


class Ideal:
    """Base class of the finite-horizon ideal procedures.

    Subclasses define how ``[0, N)`` is segmented, the per-index weight and the
    verdict rule on the resulting segment masses.  ``classify`` is vectorised
    over rows so grid scans can evaluate thousands of index sets at once.
    """

    name = "ideal"

    def boundaries(self, horizon: int) -> np.ndarray:
        raise NotImplementedError

    def weights(self, horizon: int) -> np.ndarray:
        return np.ones(horizon)

    def classify(self, masses: np.ndarray, horizon: int) -> np.ndarray:
        raise NotImplementedError

    def trace(self, masses: np.ndarray, horizon: int) -> dict:
        return {}

    def segment_masses(self, S: IndexSet) -> np.ndarray:
        b = self.boundaries(S.horizon)
        return np.add.reduceat(np.where(S.mask, self.weights(S.horizon), 0.0), b[:-1])

    def to_json(self) -> dict:
        raise NotImplementedError


def _window_bounds(fractions, horizon):
    return np.concatenate([[0], window_schedule(fractions, horizon)])


@dataclass(frozen=True)
class Fin(Ideal):
    """Ideal of finite sets: small iff the last tail segment carries no member."""

    windows: tuple = DEFAULT_WINDOWS
    name = "Fin"

    def boundaries(self, horizon):
        return _window_bounds(self.windows, horizon)

    def classify(self, masses, horizon):
        masses = np.atleast_2d(masses)
        nseg = masses.shape[1]
        tail = masses[:, nseg // 2:]
        out = np.full(masses.shape[0], Verdict.INCONCLUSIVE, dtype=np.int8)
        out[np.all(tail > 0, axis=1)] = Verdict.NOT_SMALL
        out[masses[:, -1] == 0] = Verdict.SMALL
        return out

    def trace(self, masses, horizon):
        b = self.boundaries(horizon)
        return {"segments": [[int(b[i]), int(b[i + 1])] for i in range(len(b) - 1)],
                "members_per_segment": [int(m) for m in masses]}

    def to_json(self):
        return {"kind": "Fin", "windows": list(self.windows)}


@dataclass(frozen=True)
class Density(Ideal):
    """Asymptotic-density-zero sets; small iff the upper-density surrogate is below ``delta``."""

    delta: float = DEFAULT_DELTA
    windows: tuple = DEFAULT_WINDOWS
    name = "Density"

    def __post_init__(self):
        if not 0 < self.delta < 1:
            raise IdealError("delta must lie in (0, 1)")

    def boundaries(self, horizon):
        return _window_bounds(self.windows, horizon)

    def _ratios(self, masses, horizon):
        b = self.boundaries(horizon)
        cum = np.cumsum(np.atleast_2d(masses), axis=1)
        return cum / b[1:]

    def classify(self, masses, horizon):
        r = self._ratios(masses, horizon)
        tail = r[:, r.shape[1] // 2:]
        out = np.full(r.shape[0], Verdict.INCONCLUSIVE, dtype=np.int8)
        out[np.all(tail >= 2 * self.delta, axis=1)] = Verdict.NOT_SMALL
        out[np.max(tail, axis=1) < self.delta] = Verdict.SMALL
        return out

    def trace(self, masses, horizon):
        b = self.boundaries(horizon)
        return {"windows": [int(w) for w in b[1:]],
                "density": [float(x) for x in self._ratios(masses, horizon)[0]]}

    def to_json(self):
        return {"kind": "Density", "delta": self.delta, "windows": list(self.windows)}


@dataclass(frozen=True)
class WeightFunctional(Ideal):
    """Weighted-density analogue of :class:`Density` with caller-supplied index weights."""

    weights_: tuple = ()
    delta: float = DEFAULT_DELTA
    windows: tuple = DEFAULT_WINDOWS
    name = "WeightFunctional"

    def __post_init__(self):
        w = np.asarray(self.weights_, dtype=float)
        if w.ndim != 1 or w.size == 0 or np.any(w < 0) or not np.all(np.isfinite(w)):
            raise IdealError("weights must be a nonempty vector of finite nonnegative reals")
        if not 0 < self.delta < 1:
            raise IdealError("delta must lie in (0, 1)")

    def weights(self, horizon):
        w = np.asarray(self.weights_, dtype=float)
        if w.size < horizon:
            raise IdealError(f"weight vector shorter than horizon {horizon}")
        return w[:horizon]

    def boundaries(self, horizon):
        return _window_bounds(self.windows, horizon)

    def _ratios(self, masses, horizon):
        b = self.boundaries(horizon)
        total = np.cumsum(np.add.reduceat(self.weights(horizon), b[:-1]))
        cum = np.cumsum(np.atleast_2d(masses), axis=1)
        with np.errstate(invalid="ignore", divide="ignore"):
            r = np.where(total > 0, cum / np.where(total > 0, total, 1.0), 0.0)
        return r

    classify = Density.classify
    trace = Density.trace

    def to_json(self):
        return {"kind": "WeightFunctional", "delta": self.delta,
                "windows": list(self.windows), "weights": list(map(float, self.weights_))}


@dataclass(frozen=True)
class Summable(Ideal):
    """Sets with ``sum 1/(n+1)`` finite.

    The prefix is cut at dyadic scales ``N/2^j``.  Small needs the per-scale
    increments to shrink by ``decay`` over the last ``checks`` scales and a total
    below half the budget (so a union of two small sets never reaches the budget);
    NotSmall needs the total to reach the budget.
    """

    budget: float = DEFAULT_BUDGET
    decay: float = DEFAULT_DECAY
    levels: int = 6
    checks: int = 4
    name = "Summable"

    def __post_init__(self):
        if self.budget <= 0:
            raise IdealError("budget must be positive")
        if not 0 < self.decay < 1:
            raise IdealError("decay ratio must lie in (0, 1)")

    def boundaries(self, horizon):
        w = np.unique([max(1, horizon >> j) for j in range(self.levels, -1, -1)])
        return np.concatenate([[0], w])

    def weights(self, horizon):
        return 1.0 / (np.arange(horizon) + 1.0)

    def classify(self, masses, horizon):
        masses = np.atleast_2d(masses)
        total = masses.sum(axis=1)
        inc = masses[:, 1:][:, -self.checks:]
        prev, nxt = inc[:, :-1], inc[:, 1:]
        decaying = np.all((nxt <= self.decay * prev * (1 + 1e-12)) | (nxt == 0), axis=1)
        out = np.full(masses.shape[0], Verdict.INCONCLUSIVE, dtype=np.int8)
        out[decaying & (total < self.budget / 2)] = Verdict.SMALL
        out[total >= self.budget] = Verdict.NOT_SMALL
        return out

    def trace(self, masses, horizon):
        b = self.boundaries(horizon)
        return {"windows": [int(w) for w in b[1:]],
                "partial_sums": [float(s) for s in np.cumsum(masses)],
                "budget": self.budget}

    def to_json(self):
        return {"kind": "Summable", "budget": self.budget, "decay": self.decay}


IdealSpec = Ideal


def is_small(ideal: Ideal, S: IndexSet, horizon: int | None = None) -> SmallnessVerdict:
    """Three-valued finite-horizon surrogate for ``S ∈ I``."""
    if horizon is not None and horizon != S.horizon:
        raise IdealError(f"horizon mismatch: set has {S.horizon}, evaluation uses {horizon}")
    masses = ideal.segment_masses(S)
    v = Verdict(int(ideal.classify(masses, S.horizon)[0]))
    return SmallnessVerdict(v, ideal.trace(masses, S.horizon))


@dataclass(frozen=True)
class LimsupTrace:
    value: float
    low_confidence: bool
    thresholds_scanned: int
    stop_verdict: str | None


def limsup_trace(ideal: Ideal, values) -> LimsupTrace:
    """Scan distinct values in descending order; keep the last threshold whose exceedance set is Small.

    The exceedance set above each threshold grows as the threshold drops, so
    segment masses are accumulated once over the descending sort.
    """
    v = np.asarray(values, dtype=float).ravel()
    if v.size == 0:
        raise IdealError("empty prefix")
    if not np.all(np.isfinite(v)):
        raise IdealError("values must be finite")
    n = v.size
    order = np.argsort(-v, kind="stable")
    sv = v[order]
    b = ideal.boundaries(n)
    seg = np.searchsorted(b, order, side="right") - 1
    w = ideal.weights(n)[order]
    contrib = np.zeros((n, len(b) - 1))
    contrib[np.arange(n), seg] = w
    cum = np.cumsum(contrib, axis=0)
    # group ends: positions where the next value is strictly smaller
    ends = np.flatnonzero(np.concatenate([sv[1:] < sv[:-1], [True]]))
    thresholds = sv[ends]
    masses = np.vstack([np.zeros(len(b) - 1), cum[ends[:-1]]])
    verdicts = ideal.classify(masses, n)
    bad = np.flatnonzero(verdicts != Verdict.SMALL)
    if bad.size == 0:
        return LimsupTrace(float(thresholds[-1]), False, len(thresholds), None)
    j = int(bad[0])
    if j == 0:
        return LimsupTrace(float(v.max()), True, 1, Verdict(int(verdicts[0])).label)
    stop = Verdict(int(verdicts[j]))
    return LimsupTrace(float(thresholds[j - 1]), stop == Verdict.INCONCLUSIVE, j + 1, stop.label)


def ideal_limsup(ideal: Ideal, values) -> float:
    """``inf{a : {n : v_n > a} ∈ I}`` over the distinct prefix values."""
    return limsup_trace(ideal, values).value


def ideal_from_json(obj: dict, horizon: int | None = None) -> Ideal:
    kind = obj.get("kind", "Fin")
    windows = tuple(obj.get("windows", DEFAULT_WINDOWS))
    if kind == "Fin":
        return Fin(windows)
    if kind == "Density":
        return Density(float(obj.get("delta", DEFAULT_DELTA)), windows)
    if kind == "Summable":
        return Summable(float(obj.get("budget", DEFAULT_BUDGET)), float(obj.get("decay", DEFAULT_DECAY)))
    if kind == "WeightFunctional":
        return WeightFunctional(tuple(obj["weights"]), float(obj.get("delta", DEFAULT_DELTA)), windows)
    raise IdealError(f"unknown ideal kind {kind!r}")
