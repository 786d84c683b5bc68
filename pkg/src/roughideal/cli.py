"""Batch front-end: ``roughideal <subcommand> --config run.json [overrides]``.

Config schema (every key optional; defaults shown)::

    {
      "sequence": {"kind": "Alternating"},      # or {"kind": "Csv", "path": ...}
      "horizon": 100000,
      "ideal": {"kind": "Fin"},                 # Density / Summable / WeightFunctional
      "family": {"kind": "closed_ball", "radius": 1.0},
      "box": null,                              # [[lo, hi], ...] or null for auto
      "h": 0.005,
      "eps": null,                              # decreasing schedule or null for default
      "metric": 2,
      "seed": null,                             # overrides the seed of RandomBounded
      "output_dir": "out"
    }

``ROUGHIDEAL_OUTPUT_DIR`` overrides ``output_dir``.  Exit codes: 0 success,
1 configuration or input error, 2 computation error, 3 unexpected
verification failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import analysis as an
from . import verify as vf
from .family import FamilyError, family_from_json
from .geometry import Box, GeometryError, Label, minimal_enclosing_ball
from .ideal import IdealError, Verdict, ideal_from_json
from .plot import emit_plot_data
from .sequence import RandomBounded, SequenceError, generate, load_csv, spec_from_json, write_csv

ENV_OUTPUT = "ROUGHIDEAL_OUTPUT_DIR"
EXIT_OK, EXIT_CONFIG, EXIT_COMPUTE, EXIT_VERIFY = 0, 1, 2, 3

DEFAULTS = {
    "sequence": {"kind": "Alternating"},
    "horizon": 100_000,
    "ideal": {"kind": "Fin"},
    "family": {"kind": "closed_ball", "radius": 1.0},
    "box": None,
    "h": an.DEFAULT_H,
    "eps": None,
    "metric": 2,
    "seed": None,
    "output_dir": "out",
}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    raw: dict = field(default_factory=dict)

    def __post_init__(self):
        cfg = dict(DEFAULTS)
        unknown = set(self.raw) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown config field(s): {', '.join(sorted(unknown))}")
        cfg.update({k: v for k, v in self.raw.items()})
        try:
            cfg["horizon"] = int(cfg["horizon"])
        except (TypeError, ValueError):
            raise ConfigError("horizon: must be an integer") from None
        if cfg["horizon"] < 1:
            raise ConfigError("horizon: must be at least 1")
        try:
            cfg["h"] = float(cfg["h"])
        except (TypeError, ValueError):
            raise ConfigError("h: must be a number") from None
        if not cfg["h"] > 0:
            raise ConfigError("h: must be positive")
        if cfg["eps"] is not None:
            eps = [float(e) for e in cfg["eps"]]
            if not eps or any(b >= a for a, b in zip(eps, eps[1:])) or eps[-1] < 2 * cfg["h"]:
                raise ConfigError("eps: must be strictly decreasing with smallest value >= 2h")
            cfg["eps"] = eps
        if cfg["metric"] not in (1, 2, "inf"):
            raise ConfigError("metric: must be 1, 2 or \"inf\"")
        self.cfg = cfg

    def echo(self) -> dict:
        return json.loads(json.dumps(self.cfg))

    @property
    def h(self) -> float:
        return self.cfg["h"]

    @property
    def metric(self):
        return np.inf if self.cfg["metric"] == "inf" else self.cfg["metric"]

    @property
    def output_dir(self) -> Path:
        return Path(os.environ.get(ENV_OUTPUT) or self.cfg["output_dir"])

    def sequence_spec(self):
        try:
            spec = spec_from_json(self.cfg["sequence"])
        except (SequenceError, KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"sequence: {exc}") from None
        if self.cfg["seed"] is not None:
            if not isinstance(spec, RandomBounded):
                raise ConfigError("seed: only RandomBounded sequences take a seed")
            spec = RandomBounded(int(self.cfg["seed"]), spec.box, spec.atoms)
        return spec

    def prefix(self):
        return generate(self.sequence_spec(), self.cfg["horizon"])

    def ideal(self):
        try:
            return ideal_from_json(self.cfg["ideal"])
        except (IdealError, KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"ideal: {exc}") from None

    def family(self):
        fam = dict(self.cfg["family"])
        fam.setdefault("metric", self.cfg["metric"])
        try:
            return family_from_json(fam)
        except (FamilyError, KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"family: {exc}") from None

    def box(self):
        if self.cfg["box"] is None:
            return None
        try:
            return Box.from_json(self.cfg["box"])
        except (ValueError, GeometryError) as exc:
            raise ConfigError(f"box: {exc}") from None


def load_config(path: str | None, overrides: dict) -> RunConfig:
    raw = {}
    if path:
        try:
            raw = json.loads(Path(path).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
    raw.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig(raw)


# ----------------------------------------------------------------------------
# Artifact writing


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _artifact(cfg: RunConfig, command: str, result: dict, status: str = "ok") -> dict:
    return {"command": command, "status": status, "config": cfg.echo(), "result": result}


def _inconclusive_share(verdicts) -> float:
    arr = np.concatenate([np.ravel(v) for v in verdicts]) if verdicts else np.zeros(0)
    return float(np.mean(arr == Verdict.INCONCLUSIVE)) if arr.size else 0.0


def _status(share: float) -> str:
    return "warning" if share > 0.5 else "ok"


def cmd_generate(cfg: RunConfig, args) -> int:
    out = cfg.output_dir
    out.mkdir(parents=True, exist_ok=True)
    pre = cfg.prefix()
    path = out / "sequence.csv"
    write_csv(pre, path)
    _write_json(out / "generate.json", _artifact(cfg, "generate", {"csv": path.name, "horizon": pre.horizon,
                                                                   "dimension": pre.dimension}))
    print(path)
    return EXIT_OK


def _cluster(cfg: RunConfig, pre, ideal):
    return an.cluster_set(pre, ideal, box=cfg.box(), h=cfg.h, eps=cfg.cfg["eps"], metric=cfg.metric)


def cmd_cluster(cfg: RunConfig, args) -> int:
    pre, ideal = cfg.prefix(), cfg.ideal()
    out = cfg.output_dir
    out.mkdir(parents=True, exist_ok=True)
    rep = _cluster(cfg, pre, ideal)
    status = _status(_inconclusive_share(list(rep.traces.values())))
    res = rep.to_json()
    res["in_nodes"] = _node_list(rep.region)
    _write_json(out / "cluster.json", _artifact(cfg, "cluster", res, status))
    if pre.dimension <= 2:
        emit_plot_data(rep.region, out / "cluster", gamma=rep.points)
    else:
        (out / "cluster.csv").write_text(rep.region.to_csv())
    print(json.dumps({"cluster": rep.region.counts(), "status": status}))
    return EXIT_OK


def cmd_limitset(cfg: RunConfig, args) -> int:
    pre, ideal, fam = cfg.prefix(), cfg.ideal(), cfg.family()
    out = cfg.output_dir
    out.mkdir(parents=True, exist_ok=True)
    methods = ["direct", "via-clusters"] if args.method == "both" else [args.method]
    results = {}
    direct = None
    if "direct" in methods:
        direct = an.rough_limit_direct(pre, ideal, fam, box=cfg.box(), h=cfg.h)
        results["direct"] = direct
    if "via-clusters" in methods:
        cl = _cluster(cfg, pre, ideal)
        try:
            box = direct.region.grid if direct is not None else (cfg.box() or an.limit_box(pre, ideal, fam, cfg.h)[0])
            results["via-clusters"] = an.rough_limit_via_clusters(cl, fam, box=box, h=cfg.h)
        except an.AnalysisError as exc:
            if args.method != "both":
                raise
            results["via-clusters"] = str(exc)
    summary = {}
    for name, rep in results.items():
        stem = "limitset_" + name.replace("-", "_")
        if isinstance(rep, str):
            _write_json(out / f"{stem}.json", _artifact(cfg, "limitset", {"method": name, "skipped": rep},
                                                        "skipped"))
            summary[name] = {"skipped": rep}
            continue
        res = rep.to_json()
        res["in_nodes"] = _node_list(rep.region)
        _write_json(out / f"{stem}.json", _artifact(cfg, "limitset", res))
        if pre.dimension <= 2:
            emit_plot_data(rep.region, out / stem)
        else:
            (out / f"{stem}.csv").write_text(rep.region.to_csv())
        summary[name] = rep.region.counts()
    print(json.dumps(summary, sort_keys=True))
    return EXIT_OK


def _node_list(region, limit: int = 2000):
    pts = region.points(Label.IN)
    if len(pts) > limit:
        return {"count": int(len(pts)), "truncated": True}
    return [float(p[0]) if len(p) == 1 else [float(v) for v in p] for p in pts]


def cmd_core(cfg: RunConfig, args) -> int:
    pre, ideal = cfg.prefix(), cfg.ideal()
    out = cfg.output_dir
    out.mkdir(parents=True, exist_ok=True)
    cl = _cluster(cfg, pre, ideal)
    if len(cl.points) == 0:
        raise an.AnalysisError("cluster region is empty; the core is undefined")
    res = {"cluster": cl.region.counts()}
    fam = cfg.family()
    if fam.is_ball and fam.closed and getattr(fam.radius, "r", None) is not None:
        res["certificate"] = an.nonemptiness_certificate(cl, fam.radius.r).to_json()
    if pre.dimension <= 2:
        core = an.core_set(cl)
        hull = an.core_hull(cl)
        res["hull"] = list(map(float, hull)) if isinstance(hull, tuple) else hull.tolist()
        res["region"] = core.summary()
        emit_plot_data(core, out / "core", gamma=cl.points, polygon=None if isinstance(hull, tuple) else hull)
    else:
        res["note"] = "core region rasterisation limited to k <= 2; use core_contains for membership"
    _write_json(out / "core.json", _artifact(cfg, "core", res))
    print(json.dumps({k: v for k, v in res.items() if k in ("cluster", "certificate")}, sort_keys=True))
    return EXIT_OK


def cmd_meb(cfg: RunConfig, args) -> int:
    if not args.points:
        raise ConfigError("meb: --points CSV is required")
    pts = load_csv(args.points).points
    c, r = minimal_enclosing_ball(pts)
    res = {"points": args.points, "count": int(len(pts)), "center": [float(x) for x in c], "radius": float(r)}
    out = cfg.output_dir
    out.mkdir(parents=True, exist_ok=True)
    _write_json(out / "meb.json", _artifact(cfg, "meb", res))
    print(json.dumps({"center": res["center"], "radius": round(r, 12)}))
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> int:
    try:
        reports = vf.run_suite(args.suite)
    except vf.VerifyError as exc:
        raise ConfigError(str(exc)) from None
    out = cfg.output_dir
    out.mkdir(parents=True, exist_ok=True)
    counts = {}
    for r in reports:
        counts[r.status] = counts.get(r.status, 0) + 1
        print(f"{r.status:>13}  {r.name}  ({r.runtime:.2f}s)")
    failed = [r.name for r in reports if r.unexpected_failure]
    _write_json(out / f"verify_{args.suite}.json",
                _artifact(cfg, "verify", {"suite": args.suite, "counts": counts,
                                          "checks": [r.to_json() for r in reports]},
                          "fail" if failed else "ok"))
    print(json.dumps(counts, sort_keys=True))
    return EXIT_VERIFY if failed else EXIT_OK


COMMANDS = {"generate": cmd_generate, "cluster": cmd_cluster, "limitset": cmd_limitset, "core": cmd_core,
            "meb": cmd_meb, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="roughideal", description="Rough I-limit sets on finite prefixes.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--config", help="JSON run configuration")
        s.add_argument("--horizon", type=int, help="cap on the number of terms N")
        s.add_argument("--h", type=float, help="grid resolution")
        s.add_argument("--seed", type=int, help="seed for RandomBounded sequences")
        s.add_argument("--output-dir", help=f"artifact directory (env {ENV_OUTPUT} wins)")
        s.add_argument("--from-csv", help="read the sequence from this CSV instead of the config spec")
        if name == "limitset":
            s.add_argument("--method", choices=("direct", "via-clusters", "both"), default="both")
        if name == "meb":
            s.add_argument("--points", help="CSV of points, one per row")
        if name == "verify":
            s.add_argument("--suite", default="golden", help="golden, properties or all")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {"horizon": args.horizon, "h": args.h, "seed": args.seed, "output_dir": args.output_dir}
    if args.from_csv:
        overrides["sequence"] = {"kind": "Csv", "path": args.from_csv}
    try:
        cfg = load_config(args.config, overrides)
        return COMMANDS[args.command](cfg, args)
    except (ConfigError, SequenceError, IdealError, FamilyError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (an.AnalysisError, GeometryError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
