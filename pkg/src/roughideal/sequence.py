"""Deterministic sequence generators and CSV ingestion for prefixes in R^k."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .geometry import Box
from .ideal import IndexRule


class SequenceError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SequencePrefix:
    """First ``N`` terms of a sequence in R^k, stored as an ``(N, k)`` array."""

    points: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        p = np.array(self.points, dtype=float)
        if p.ndim == 1:
            p = p[:, None]
        if p.ndim != 2 or p.shape[0] < 1 or p.shape[1] < 1:
            raise SequenceError("empty sequence")
        if not np.all(np.isfinite(p)):
            raise SequenceError("sequence contains non-finite values")
        p.setflags(write=False)
        object.__setattr__(self, "points", p)

    @property
    def horizon(self) -> int:
        return self.points.shape[0]

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    def scaled(self, k: float) -> "SequencePrefix":
        prov = dict(self.provenance, scale=k)
        return SequencePrefix(self.points * k, prov)


# ----------------------------------------------------------------------------
# Generator specs


@dataclass(frozen=True)
class TwoValue:
    """``base`` on the partition set, ``base + step`` off it (``base``/``step`` may be vectors)."""

    base: float | tuple = 0.0
    step: float | tuple = 1.0
    partition: IndexRule = IndexRule("evens")
    swap: bool = False


@dataclass(frozen=True)
class Alternating:
    pass


@dataclass(frozen=True)
class RationalsEnumeration:
    pass


@dataclass(frozen=True)
class PerturbedAlternating:
    """``(-1)^n`` except ``x_n = n`` on the spike set."""

    spikes: IndexRule = IndexRule("squares")


@dataclass(frozen=True)
class Convergent:
    """``limit + scale/(n+1)``; ``scale = 0`` gives a constant sequence."""

    limit: float | tuple = 0.0
    scale: float | tuple = 1.0


@dataclass(frozen=True)
class Csv:
    path: str


@dataclass(frozen=True)
class RandomBounded:
    """Seeded bounded sequence clustering at ``atoms`` random points of ``box``.

    Each index is assigned an atom uniformly at random; the term is the atom
    plus a uniform perturbation of size ``side/(n+1)``, so the early terms roam
    the box while the tail settles on the atoms.
    """

    seed: int = 0
    box: tuple = ((0.0, 1.0),)
    atoms: int = 3

    def __post_init__(self):
        for lo, hi in self.box:
            if not hi > lo:
                raise SequenceError("RandomBounded box is degenerate")
        if self.atoms < 1:
            raise SequenceError("need at least one atom")


SequenceSpec = TwoValue | Alternating | RationalsEnumeration | PerturbedAlternating | Convergent | Csv | RandomBounded


def rationals(count: int) -> list[tuple[int, int]]:
    """Reduced fractions p/q in [0, 1], denominator-major then numerator ascending."""
    out: list[tuple[int, int]] = []
    q = 1
    while len(out) < count:
        for p in range(0 if q == 1 else 1, q + 1):
            if math.gcd(p, q) == 1:
                out.append((p, q))
                if len(out) == count:
                    break
        q += 1
    return out


def _vec(x) -> np.ndarray:
    return np.atleast_1d(np.asarray(x, dtype=float))


def generate(spec, horizon: int) -> SequencePrefix:
    if horizon < 1:
        raise SequenceError("horizon must be at least 1")
    n = np.arange(horizon)
    prov = {"generator": spec_to_json(spec), "horizon": horizon}
    if isinstance(spec, TwoValue):
        a = spec.partition.materialize(horizon).mask
        if a.all() or not a.any():
            raise SequenceError("TwoValue partition and its complement must both be nonempty")
        if spec.swap:
            a = ~a
        base, step = np.broadcast_arrays(_vec(spec.base), _vec(spec.step))
        pts = np.where(a[:, None], base[None, :], (base + step)[None, :])
    elif isinstance(spec, Alternating):
        pts = np.where(n % 2 == 0, 1.0, -1.0)
    elif isinstance(spec, RationalsEnumeration):
        pts = np.array([p / q for p, q in rationals(horizon)])
    elif isinstance(spec, PerturbedAlternating):
        spikes = spec.spikes.materialize(horizon).mask
        pts = np.where(spikes, n.astype(float), np.where(n % 2 == 0, 1.0, -1.0))
    elif isinstance(spec, Convergent):
        lim, sc = np.broadcast_arrays(_vec(spec.limit), _vec(spec.scale))
        pts = lim[None, :] + sc[None, :] / (n[:, None] + 1.0)
    elif isinstance(spec, Csv):
        pre = load_csv(spec.path)
        if pre.horizon > horizon:
            pre = SequencePrefix(pre.points[:horizon], dict(pre.provenance, horizon=horizon))
        return pre
    elif isinstance(spec, RandomBounded):
        rng = np.random.default_rng(spec.seed)
        box = np.asarray(spec.box, dtype=float)
        lo, side = box[:, 0], box[:, 1] - box[:, 0]
        atoms = lo + side * rng.random((spec.atoms, len(lo)))
        which = rng.integers(0, spec.atoms, size=horizon)
        noise = rng.uniform(-0.5, 0.5, size=(horizon, len(lo))) * side / (n[:, None] + 1.0)
        pts = np.clip(atoms[which] + noise, lo, lo + side)
        prov["atoms"] = atoms.tolist()
    else:
        raise SequenceError(f"unknown sequence spec {spec!r}")
    return SequencePrefix(pts, prov)


def load_csv(path) -> SequencePrefix:
    """Read one point per row, comma-separated decimals, no header."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SequenceError(f"cannot read {path}: {exc}") from exc
    rows = []
    width = None
    for i, row in enumerate(csv.reader(text.splitlines()), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise SequenceError(f"{path}: ragged row {i}: expected {width} columns, got {len(row)}")
        vals = []
        for j, cell in enumerate(row, start=1):
            try:
                x = float(cell)
            except ValueError:
                raise SequenceError(f"{path}: parse error at row {i}, column {j}: {cell.strip()!r}") from None
            if not math.isfinite(x):
                raise SequenceError(f"{path}: non-finite value at row {i}, column {j}")
            vals.append(x)
        rows.append(vals)
    if not rows:
        raise SequenceError("empty sequence")
    return SequencePrefix(np.array(rows), {"path": str(path), "rows": len(rows)})


def write_csv(prefix: SequencePrefix, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        for p in prefix.points:
            w.writerow([repr(float(x)) for x in p])


def bounding_box(prefix: SequencePrefix, margin: float = 0.1, min_margin: float = 1 / 200) -> Box:
    """Componentwise min/max inflated by ``margin`` of each side, at least ``min_margin``."""
    lo = prefix.points.min(axis=0)
    hi = prefix.points.max(axis=0)
    pad = np.maximum(margin * (hi - lo), min_margin)
    return Box(lo - pad, hi + pad)


# ----------------------------------------------------------------------------
# JSON round-trip of specs

def spec_to_json(spec) -> dict:
    def num(x):
        return list(x) if isinstance(x, tuple) else x

    if isinstance(spec, TwoValue):
        return {"kind": "TwoValue", "base": num(spec.base), "step": num(spec.step),
                "partition": spec.partition.to_json(), "swap": spec.swap}
    if isinstance(spec, Alternating):
        return {"kind": "Alternating"}
    if isinstance(spec, RationalsEnumeration):
        return {"kind": "RationalsEnumeration"}
    if isinstance(spec, PerturbedAlternating):
        return {"kind": "PerturbedAlternating", "spikes": spec.spikes.to_json()}
    if isinstance(spec, Convergent):
        return {"kind": "Convergent", "limit": num(spec.limit), "scale": num(spec.scale)}
    if isinstance(spec, Csv):
        return {"kind": "Csv", "path": spec.path}
    if isinstance(spec, RandomBounded):
        return {"kind": "RandomBounded", "seed": spec.seed, "box": [list(b) for b in spec.box],
                "atoms": spec.atoms}
    raise SequenceError(f"unknown sequence spec {spec!r}")


def spec_from_json(obj: dict):
    def num(x):
        return tuple(float(v) for v in x) if isinstance(x, list) else float(x)

    kind = obj.get("kind")
    if kind == "TwoValue":
        return TwoValue(num(obj.get("base", 0.0)), num(obj.get("step", 1.0)),
                        IndexRule.from_json(obj.get("partition", "evens")), bool(obj.get("swap", False)))
    if kind == "Alternating":
        return Alternating()
    if kind == "RationalsEnumeration":
        return RationalsEnumeration()
    if kind == "PerturbedAlternating":
        return PerturbedAlternating(IndexRule.from_json(obj.get("spikes", "squares")))
    if kind == "Convergent":
        return Convergent(num(obj.get("limit", 0.0)), num(obj.get("scale", 1.0)))
    if kind == "Csv":
        return Csv(str(obj["path"]))
    if kind == "RandomBounded":
        return RandomBounded(int(obj.get("seed", 0)), tuple(tuple(map(float, b)) for b in obj.get("box", [[0, 1]])),
                             int(obj.get("atoms", 3)))
    raise SequenceError(f"unknown sequence kind {kind!r}")
