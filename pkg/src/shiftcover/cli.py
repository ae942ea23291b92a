"""Command line: generate / analyze / cover / verify / export.

Configs are JSON:
    {"system": {"type": "substitution", "rules": {...}, "seed": "0"},
     "horizons": {"maxLen": 120, "H": 72, "defect": 4, "window": 4},
     "suites": ["isolated_orbits", "fiber_counts", "two_sided_shadow"],
     "suiteOptions": {...}, "out": "reports"}

Exit codes: 0 all requested suites pass, 1 any suite not passing,
2 config/schema error.  Report bodies are deterministic except for the
"timing_seconds" field.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .analysis import bounded_growth_check, complexity, left_special_words, property_star_check
from .cover import (
    LevelIndex,
    QuotientBuilder,
    connecting_map,
    default_chain,
    default_refinements,
    isolated_classes,
)
from .errors import ConfigError, ShiftCoverError
from .export import export_complexity_csv, export_dot
from .generators import (
    MatrixSFT,
    Ray,
    SturmianSpec,
    SubstitutionSystem,
    ToeplitzSpec,
    language_from_generator,
)
from .verify import (
    Workspace,
    naive_oracle_quotient,
    verify_fiber_counts,
    verify_isolated_orbits,
    verify_two_sided_shadow,
)

SUITES = ("isolated_orbits", "fiber_counts", "two_sided_shadow")


def _fraction(value) -> Fraction:
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, (list, tuple)):
        return Fraction(*value)
    return Fraction(value)


def generator_from_config(spec: dict):
    if not isinstance(spec, dict) or "type" not in spec:
        raise ConfigError("system spec needs a 'type' field")
    kind = spec["type"]
    try:
        if kind == "substitution":
            return SubstitutionSystem.from_map(spec["rules"], spec["seed"])
        if kind == "sturmian":
            digits = spec["cfDigits"]
            if spec.get("intercept") is not None:
                return SturmianSpec.mechanical(digits, _fraction(spec["intercept"]))
            return SturmianSpec.characteristic(digits)
        if kind == "toeplitz":
            return ToeplitzSpec(spec["pattern"])
        if kind == "sft":
            return MatrixSFT(tuple(tuple(row) for row in spec["matrix"]))
    except KeyError as exc:
        raise ConfigError(f"system spec missing field {exc}") from exc
    raise ConfigError(f"unknown system type {kind!r}")


def load_config(path) -> dict:
    try:
        cfg = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return validate_config(cfg)


def validate_config(cfg: dict) -> dict:
    if not isinstance(cfg, dict) or "system" not in cfg:
        raise ConfigError("config needs a 'system' section")
    horizons = cfg.setdefault("horizons", {})
    max_len = horizons.setdefault("maxLen", 60)
    if not isinstance(max_len, int) or max_len < 1:
        raise ConfigError(f"maxLen must be a positive integer, got {max_len!r}")
    horizons.setdefault("H", max(max_len // 2, max_len - 48))
    horizons.setdefault("defect", 4)
    horizons.setdefault("window", 4)
    if not 1 <= horizons["H"] <= max_len:
        raise ConfigError("H must lie within [1, maxLen]")
    suites = cfg.setdefault("suites", [])
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise ConfigError(f"unknown suites: {unknown}; known: {list(SUITES)}")
    cfg.setdefault("suiteOptions", {})
    generator_from_config(cfg["system"])  # fail fast on bad system specs
    return cfg


def build_workspace(cfg: dict) -> Workspace:
    gen = generator_from_config(cfg["system"])
    h = cfg["horizons"]
    table = language_from_generator(gen, h["maxLen"])
    return Workspace(
        cfg.get("name", cfg["system"]["type"]),
        gen,
        table,
        horizon=h["H"],
        window=h["window"],
    )


def _as_level_pairs(raw, default):
    if raw is None:
        return default
    return tuple((int(k), int(l)) for k, l in raw)


def run_suites(ws: Workspace, cfg: dict) -> dict:
    options = cfg["suiteOptions"]
    verdicts = {}
    for name in cfg["suites"]:
        opt = options.get(name, {})
        try:
            if name == "isolated_orbits":
                verdicts[name] = verify_isolated_orbits(
                    ws,
                    levels=_as_level_pairs(opt.get("levels"), ((2, 3), (2, 6), (3, 7))),
                    refinement_depth=opt.get("refinementDepth", 4),
                    forward_window=opt.get("forwardWindow"),
                )
            elif name == "fiber_counts":
                off = opt.get("offOrbit")
                off_ray = Ray(generator_from_config(off)) if off else None
                verdicts[name] = verify_fiber_counts(
                    ws,
                    off_orbit=off_ray,
                    k_max=opt.get("kMax", 10),
                    defect=cfg["horizons"]["defect"],
                )
            elif name == "two_sided_shadow":
                verdicts[name] = verify_two_sided_shadow(
                    ws,
                    levels=_as_level_pairs(opt.get("levels"), ((3, 7), (4, 8), (5, 9))),
                    refinement_depth=opt.get("refinementDepth", 2),
                )
        except ShiftCoverError as exc:
            verdicts[name] = {
                "status": "inconclusive",
                "reason": f"{type(exc).__name__}: {exc}",
            }
    return verdicts


def run_config(cfg_or_path) -> tuple[dict, int]:
    """Run the configured suites; returns (report, exit_code)."""
    started = time.monotonic()
    cfg = cfg_or_path if isinstance(cfg_or_path, dict) else load_config(cfg_or_path)
    cfg = validate_config(cfg)
    ws = build_workspace(cfg)
    profile = complexity(ws.table)
    verdicts = run_suites(ws, cfg)
    n_x = None
    for v in verdicts.values():
        if "n_x" in v:
            n_x = v["n_x"]
    d_table = verdicts.get("fiber_counts", {}).get("d")
    report = {
        "config": cfg,
        "system": {
            "alphabet": ws.table.alphabet,
            "certificate": dict(ws.table.certificate),
        },
        "complexity": list(profile.values[: min(30, len(profile.values))]),
        "suites": verdicts,
        "n_x": n_x,
        "d_table": d_table,
        "compact_summand_count": n_x,  # copies of the compact-operator summand
        "timing_seconds": round(time.monotonic() - started, 3),
    }
    passed = all(v.get("status") == "pass" for v in verdicts.values())
    code = 0 if passed else 1
    out_dir = cfg.get("out")
    if out_dir:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(
            json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
        )
    return report, code


def _print(report):
    print(json.dumps(report, indent=2, sort_keys=True, default=str))


def _cfg_from_args(args) -> dict:
    if not args.config:
        raise ConfigError("this subcommand needs --config <path>")
    cfg = load_config(args.config)
    if args.max_len:
        cfg["horizons"]["maxLen"] = args.max_len
        cfg["horizons"]["H"] = min(
            cfg["horizons"]["H"], max(1, args.max_len - 8)
        )
    if args.defect:
        cfg["horizons"]["defect"] = args.defect
    if getattr(args, "suite", None):
        cfg["suites"] = [s for s in args.suite.split(",") if s]
    if args.out:
        cfg["out"] = args.out
    return validate_config(cfg)


def cmd_generate(args) -> int:
    cfg = _cfg_from_args(args)
    ws = build_workspace(cfg)
    _print(
        {
            "alphabet": ws.table.alphabet,
            "maxLen": ws.table.max_len,
            "wordCounts": [len(ws.table.by_length[n]) for n in range(1, min(ws.table.max_len, 20) + 1)],
            "certificate": dict(ws.table.certificate),
        }
    )
    return 0


def cmd_analyze(args) -> int:
    cfg = _cfg_from_args(args)
    ws = build_workspace(cfg)
    profile = complexity(ws.table)
    growth = bounded_growth_check(profile, cfg.get("growthBound", 4), ws.table)
    star = property_star_check(ws.table, 2, min(10, ws.table.max_len - 2))
    _print(
        {
            "complexity": list(profile.values[:30]),
            "firstDifferences": list(profile.first_differences[:29]),
            "leftSpecialCounts": [
                len(left_special_words(ws.table, n))
                for n in range(1, min(24, ws.table.max_len - 1) + 1)
            ],
            "boundedGrowth": growth,
            "star": star,
        }
    )
    return 0


def cmd_cover(args) -> int:
    cfg = _cfg_from_args(args)
    ws = build_workspace(cfg)
    chain = default_chain(6, cfg["horizons"]["defect"])
    levels = [ws.builder.level(li, ws.horizon) for li in chain]
    small = LevelIndex(2, 3)
    oracle_h = min(12, ws.table.max_len - small.l - ws.window)
    agree = set(ws.builder.level(small, oracle_h).by_key) == set(
        naive_oracle_quotient(ws.table, small, oracle_h).by_key
    )
    _print(
        {
            "chain": [[li.k, li.l] for li in chain],
            "classCounts": [len(q.classes) for q in levels],
            "stabilized": [q.stabilized for q in levels],
            "oracleAgreesAt": {"level": [small.k, small.l], "H": oracle_h, "equal": agree},
        }
    )
    return 0


def cmd_verify(args) -> int:
    cfg = _cfg_from_args(args)
    report, code = run_config(cfg)
    _print(report)
    return code


def cmd_export(args) -> int:
    cfg = _cfg_from_args(args)
    ws = build_workspace(cfg)
    out = Path(cfg.get("out") or ".")
    out.mkdir(parents=True, exist_ok=True)
    fmt = args.format or "dot"
    if fmt == "csv":
        path = out / "complexity.csv"
        export_complexity_csv(complexity(ws.table), path)
    elif fmt == "dot":
        fits = lambda li: ws.horizon + li.l <= ws.table.max_len
        chain = [li for li in default_chain(6, cfg["horizons"]["defect"]) if fits(li)]
        if not chain:
            raise ConfigError("horizons too shallow for any cover level")
        levels = [ws.builder.level(li, ws.horizon) for li in chain]
        maps = [
            ("connect", hi, lo, connecting_map(hi, lo))
            for lo, hi in zip(levels, levels[1:])
        ]
        base = levels[0]
        refs = [
            ws.builder.level(li, ws.horizon)
            for li in default_refinements(base.level, 2)
            if fits(li)
        ]
        iso = isolated_classes(base, refs) if refs else set()
        path = out / "cover.dot"
        export_dot(levels, maps, path, isolated=iso)
    elif fmt == "json":
        report, _ = run_config(cfg)
        path = out / "report.json"
        path.write_text(json.dumps(report, indent=2, sort_keys=True, default=str) + "\n")
    else:
        raise ConfigError(f"unknown export format {fmt!r}")
    print(str(path))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shiftcover",
        description="Finite past-equivalence covers of minimal one-sided shifts",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in (
        ("generate", cmd_generate),
        ("analyze", cmd_analyze),
        ("cover", cmd_cover),
        ("verify", cmd_verify),
        ("export", cmd_export),
    ):
        p = sub.add_parser(name)
        p.add_argument("--config", required=False)
        p.add_argument("--max-len", type=int, default=None)
        p.add_argument("--defect", type=int, default=None)
        p.add_argument("--suite", default=None, help="comma-separated suite names")
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("dot", "json", "csv"), default=None)
        p.set_defaults(func=fn)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ShiftCoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
