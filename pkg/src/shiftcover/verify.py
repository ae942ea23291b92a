"""Brute-force oracle and theorem-verification suites.

Each suite returns a verdict dict with "status" in {"pass", "fail",
"refused", "inconclusive"} and enough certificate data to audit the claim.
The oracle recomputes quotient levels by the raw definition so that the
incremental construction in cover.py is never trusted on its own.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .analysis import (
    LeftSpecialScan,
    left_special_rays,
    path_count,
    property_star_star_check,
    tail_classes,
    j_maximal,
)
from .cover import (
    CoverClass,
    LevelIndex,
    QuotientBuilder,
    QuotientLevel,
    connecting_map,
    default_chain,
    default_refinements,
    growing_chain,
    iota_level,
    isolated_classes,
    pi_fiber,
    quotient_level,
    shift_on_level,
)
from .errors import ConstructionError, HorizonExceededError, StabilizationError
from .generators import Ray
from .pastequiv import STABILITY_WINDOW, PastSet, isolation_horizon, past_set
from .words import LanguageTable

ORACLE_MAX_DEPTH = 8
ORACLE_MAX_HORIZON = 14


def naive_oracle_quotient(
    table: LanguageTable, level: LevelIndex, horizon: int
) -> QuotientLevel:
    """Quotient level by the raw definition: independent of cover.py's
    bookkeeping, restricted to small parameters."""
    if level.l > ORACLE_MAX_DEPTH or horizon > ORACLE_MAX_HORIZON:
        raise ConstructionError(
            f"oracle capped at l <= {ORACLE_MAX_DEPTH}, H <= {ORACLE_MAX_HORIZON}"
        )
    k, l = level.k, level.l
    groups: dict[tuple, list[str]] = {}
    for w in sorted(table.by_length[horizon]):
        tail = w[k:]
        members = []
        for symbols in itertools.product(table.alphabet, repeat=l):
            mu = "".join(symbols)
            if table.admits(mu + tail):
                members.append(mu)
        groups.setdefault((w[:k], frozenset(members)), []).append(w)
    classes = tuple(
        CoverClass(level, prefix, PastSet(l, members), min(ws))
        for (prefix, members), ws in sorted(groups.items())
    )
    witnesses = {key: tuple(ws) for key, ws in groups.items()}
    return QuotientLevel(level, classes, horizon, True, table, witnesses)


def backward_rays(table: LanguageTable, ray: Ray, depth: int) -> list[Ray]:
    """One ray per depth-`depth` backward word of the given ray."""
    probe = ray.prefix(table.max_len - depth)
    pasts = past_set(table, probe, depth)
    return [Ray(ray.source, ray.shift_offset, mu + ray.prepend) for mu in sorted(pasts.members)]


@dataclass
class Workspace:
    """One system prepared for the suites: generator, table, level builder."""

    name: str
    generator: object
    table: LanguageTable
    horizon: int  # uniform class-enumeration word length
    window: int = STABILITY_WINDOW
    builder: QuotientBuilder = None
    _scan: LeftSpecialScan = field(default=None, repr=False)
    _partition: object = field(default=None, repr=False)

    def __post_init__(self):
        if self.builder is None:
            self.builder = QuotientBuilder(self.table, self.window)

    def level(self, k: int, l: int) -> QuotientLevel:
        return self.builder.level(LevelIndex(k, l), self.horizon)

    def special_scan(self, scan_horizon: int | None = None) -> LeftSpecialScan:
        if self._scan is None:
            if scan_horizon is None:
                scan_horizon = min(20, self.table.max_len - 2)
            self._scan = left_special_rays(
                self.table, [self.generator], scan_horizon
            )
        return self._scan

    def tail_partition(self):
        if self._partition is None:
            scan = self.special_scan()
            if scan.rays is None:
                raise StabilizationError(scan.diagnostic or "no special rays")
            horizon = min(40, self.table.max_len // 3)
            self._partition = tail_classes(scan.rays, shift_bound=12, match_horizon=horizon)
        return self._partition

    def star_star(self, star_n: int = 2, star_horizon: int = 10) -> dict:
        return property_star_star_check(
            self.table, self.special_scan(), star_n, star_horizon
        )


def _refused(reason: str) -> dict:
    return {"status": "refused", "reason": reason}


def verify_isolated_orbits(
    ws: Workspace,
    levels=((2, 3), (2, 6), (3, 7)),
    refinement_depth: int = 4,
    density_orbit_span: int = 200,
    forward_window: int | None = None,
) -> dict:
    """Isolated classes = shadows of the special two-sided orbits, densely.

    Checks, per sampled level: the forward orbit shadows of each maximal
    special ray are flagged isolated; every flagged class lies on a special
    two-sided orbit (forward shifts or backward extensions); the flagged
    classes group into exactly one orbit shadow per tail class; and every
    class of the level is visited by some forward orbit prefix (density).
    """
    star2 = ws.star_star()
    if not star2["passed"]:
        return _refused("suite needs finitely many aperiodic special rays (**): "
                        + "; ".join(star2["reasons"]))
    partition = ws.tail_partition()
    maximal = [
        j_maximal(group, ws.table, test_depth=8) for group in partition.classes
    ]
    horizons = [
        isolation_horizon(sr.ray, ws.table, n_max=4)[0] for sr in maximal
    ]
    checks = []
    ok = True
    for (k, l) in levels:
        level_index = LevelIndex(k, l)
        level_q = ws.level(k, l)
        refs = [
            ws.builder.level(li, ws.horizon)
            for li in default_refinements(level_index, refinement_depth)
        ]
        iso = isolated_classes(level_q, refs)

        # candidate orbit shadows per tail class: forward shifts while the
        # branch stays visible, and backward extensions of every maximal ray
        shadows: list[set] = []
        for sr in maximal:
            keys = set()
            for n in range(l - k):
                keys.add(iota_level(sr.ray.shift(n), level_index, ws.table).key)
            for m in range(1, max(k, l - k) + 1):
                for back in backward_rays(ws.table, sr.ray, m):
                    keys.add(iota_level(back, level_index, ws.table).key)
            shadows.append(keys)

        win = l - k if forward_window is None else min(forward_window, l - k)
        forward_ok = all(
            level_q.by_key[iota_level(sr.ray.shift(n), level_index, ws.table).key] in iso
            for sr, start in zip(maximal, horizons)
            for n in range(start, win)
        )
        on_orbit = all(any(c.key in keys for keys in shadows) for c in iso)
        per_class = [
            {c for c in iso if c.key in keys} for keys in shadows
        ]
        organized = (
            all(per_class)
            and set().union(*per_class) == iso
            and sum(len(p) for p in per_class) == len(iso)
        )

        reached = set()
        for sr in maximal:
            for n in range(density_orbit_span):
                try:
                    w = sr.ray.shift(n).prefix(ws.horizon)
                except HorizonExceededError:
                    break
                reached.add(level_q.class_of_word(w))
        dense = reached == set(level_q.classes)

        level_ok = forward_ok and on_orbit and organized and dense
        ok = ok and level_ok
        checks.append(
            {
                "level": (k, l),
                "isolated_count": len(iso),
                "forward_shadows_isolated": forward_ok,
                "all_isolated_on_orbit": on_orbit,
                "organized_into_orbits": organized,
                "density_shadow": dense,
            }
        )
    return {
        "status": "pass" if ok else "fail",
        "n_x": partition.n_x,
        "orbit_count": len(maximal),
        "isolation_horizons": horizons,
        "levels": checks,
        "refinement_depth": refinement_depth,
    }


def verify_fiber_counts(
    ws: Workspace,
    off_orbit: Ray | None = None,
    k_max: int = 10,
    defect: int = 4,
    shift_span: int = 5,
) -> dict:
    """Fiber cardinalities over sampled points.

    Expected counts: d+1 over every point of a special orbit (d = backward
    path count), and 1 over an off-orbit point.  The orbit points use the
    fixed-defect default chain; forward shifts use the growing-defect chain,
    which keeps the backward branch visible at any shift.
    """
    if len(ws.table.alphabet) != 2:
        return _refused("fiber count comparison is stated for binary alphabets")
    star2 = ws.star_star()
    if not star2["passed"]:
        return _refused("suite needs (**): " + "; ".join(star2["reasons"]))
    partition = ws.tail_partition()
    maximal = [j_maximal(g, ws.table, test_depth=8) for g in partition.classes]

    chain = default_chain(k_max, defect)
    deep = growing_chain(k_max, defect_cap=2 * defect)
    samples = []
    ok = True

    def record(name, ray, expected, use_chain):
        nonlocal ok
        report = pi_fiber(ray, use_chain, ws.builder, horizon=ws.horizon)
        good = report.stabilized and report.thread_count == expected
        ok = ok and good
        samples.append(
            {
                "point": name,
                "expected": expected,
                "observed": report.thread_count,
                "stabilized": report.stabilized,
                "per_level": report.per_level_counts,
                "stable_from_k": report.stable_from_k,
                "ok": good,
            }
        )
        return report

    d_values = {}
    for idx, sr in enumerate(maximal):
        d, cert = path_count(sr.ray, ws.table, ws.window)
        d_values[f"orbit{idx}"] = {"d": d, "certificate": cert}
        record(f"orbit{idx}:max", sr.ray, d + 1, chain)
        for back in backward_rays(ws.table, sr.ray, 1):
            bd, _ = path_count(back, ws.table, ws.window)
            record(f"orbit{idx}:back[{back.prepend[:1]}]", back, bd + 1, chain)
        for s in range(1, shift_span + 1):
            record(f"orbit{idx}:shift{s}", sr.ray.shift(s), d + 1, deep)
    if off_orbit is not None:
        record("off-orbit", off_orbit, 1, chain)
    return {
        "status": "pass" if ok else "fail",
        "d": d_values,
        "samples": samples,
        "chain_defect": defect,
    }


def _singleton_labels(level_q: QuotientLevel, iso: set) -> dict:
    return {
        c: next(iter(c.past.members))
        for c in level_q.classes
        if len(c.past.members) == 1 and c not in iso
    }


def verify_two_sided_shadow(
    ws: Workspace, levels=((3, 7), (4, 8), (5, 9)), refinement_depth: int = 2
) -> dict:
    """Finite shadow of the conjugacy with the two-sided shift.

    At each level, the non-isolated singleton-past classes are labeled by
    their unique past word; the label must end with the class prefix, the
    labeling must be injective, the label set must match an independent
    word-level search, and the level shift must act on labels as the word
    shift.
    """
    star2 = ws.star_star()
    if not star2["passed"]:
        return _refused("suite needs (**): " + "; ".join(star2["reasons"]))
    checks = []
    ok = True
    for (k, l) in levels:
        level_index = LevelIndex(k, l)
        level_q = ws.level(k, l)
        refs = [
            ws.builder.level(li, ws.horizon)
            for li in default_refinements(level_index, refinement_depth)
        ]
        iso = isolated_classes(level_q, refs)
        labels = _singleton_labels(level_q, iso)

        consistent = all(mu.endswith(c.prefix) for c, mu in labels.items())
        injective = len(set(labels.values())) == len(labels)

        # word-level oracle: length-l words that occur as the unique past of
        # a long word they directly precede
        tail_len = ws.horizon - k
        oracle = set()
        for w in sorted(ws.table.by_length[ws.horizon]):
            p = past_set(ws.table, w[k:], l)
            if len(p.members) == 1:
                (mu,) = p.members
                if mu.endswith(w[:k]):
                    oracle.add(mu)
        iso_singletons = {
            next(iter(c.past.members))
            for c in iso
            if len(c.past.members) == 1
        }
        counts_match = set(labels.values()) == oracle - iso_singletons

        # level shift acts as the word shift on labels
        hi_index = LevelIndex(k + 1, l + 1)
        hi_q = ws.level(k + 1, l + 1)
        mid_q = ws.level(k, l + 1)
        hi_refs = [
            ws.builder.level(li, ws.horizon)
            for li in default_refinements(hi_index, refinement_depth)
        ]
        hi_iso = isolated_classes(hi_q, hi_refs)
        hi_labels = _singleton_labels(hi_q, hi_iso)
        shift_map = shift_on_level(hi_q, mid_q)
        down_map = connecting_map(mid_q, level_q)
        shift_ok = True
        for c, mu in sorted(hi_labels.items(), key=lambda kv: kv[1]):
            image = down_map[shift_map[c]]
            if image in labels and labels[image] != mu[1:]:
                shift_ok = False
        level_ok = consistent and injective and counts_match and shift_ok
        ok = ok and level_ok
        checks.append(
            {
                "level": (k, l),
                "labelled_classes": len(labels),
                "labels_end_with_prefix": consistent,
                "injective": injective,
                "oracle_count_match": counts_match,
                "shift_acts_as_word_shift": shift_ok,
            }
        )
    return {"status": "pass" if ok else "fail", "levels": checks}
