"""Complexity, left-special structure, tail classes and the (*)/(**) checkers."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import HorizonExceededError, StabilizationError
from .generators import Ray, WordSource, looks_periodic
from .pastequiv import STABILITY_WINDOW, past_set, stabilized_past_set
from .words import LanguageTable

BRANCH_CAP = 32  # more simultaneous left-special branches than any (**) desk system


@dataclass(frozen=True)
class ComplexityProfile:
    values: tuple[int, ...]  # p(1) ... p(max_len)

    @property
    def first_differences(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in zip(self.values, self.values[1:]))

    def p(self, n: int) -> int:
        return self.values[n - 1]


def complexity(table: LanguageTable) -> ComplexityProfile:
    return ComplexityProfile(
        tuple(len(table.by_length[n]) for n in range(1, table.max_len + 1))
    )


def left_special_words(table: LanguageTable, n: int) -> set[str]:
    """Admitted length-n words with at least two left extensions."""
    if n + 1 > table.max_len:
        raise HorizonExceededError(f"need length {n + 1} words, horizon {table.max_len}")
    return {w for w in table.by_length[n] if len(table.left_extensions(w)) >= 2}


def bounded_growth_check(profile: ComplexityProfile, bound: int, table=None) -> dict:
    """p(n+1) - p(n) <= bound everywhere; optionally compare against observed
    left-special word counts."""
    diffs = profile.first_differences
    violations = [
        {"n": i + 1, "difference": d} for i, d in enumerate(diffs) if d > bound
    ]
    report = {
        "passed": not violations,
        "bound": bound,
        "max_difference": max(diffs) if diffs else 0,
        "violations": violations,
    }
    if table is not None:
        counts = [
            len(left_special_words(table, n)) for n in range(1, table.max_len)
        ]
        report["max_left_special_count"] = max(counts) if counts else 0
        report["left_special_within_bound"] = all(c <= bound for c in counts)
    return report


@dataclass
class SpecialRay:
    """A finite surrogate for one left special point."""

    ray: Ray
    certified_depth: int
    matched: bool  # ray was matched to a generator shift; else word-chain only
    tail_class_id: int | None = None
    is_maximal: bool | None = None
    d_value: int | None = None
    d_certificate: dict | None = None
    is_adjusted: bool | None = None


@dataclass
class LeftSpecialScan:
    rays: list[SpecialRay] | None
    branch_counts: list[int]
    diagnostic: str | None = None


def _is_ray_left_special(ray: Ray, table: LanguageTable, probe_len=None) -> bool:
    n = probe_len if probe_len is not None else table.max_len - 1
    while n > 0:
        try:
            w = ray.prefix(n)
        except HorizonExceededError:
            n -= 1
            continue
        return len(table.left_extensions(w)) >= 2
    raise HorizonExceededError("ray yields no probe prefix")


def left_special_rays(
    table: LanguageTable, gens, horizon: int, match_shift_bound: int | None = None
) -> LeftSpecialScan:
    """One SpecialRay per maximal left-special branch reaching the horizon.

    gens is a list of candidate generators used to match branch words to
    shifts of their canonical words; unmatched branches come back as
    word-chain rays (WordSource) usable only up to the horizon.
    """
    if horizon + 1 > table.max_len:
        raise HorizonExceededError("horizon leaves no room for extension queries")
    # grow the branch tree as deep as the table allows: transient branches
    # (left-special words with no long left-special extension) die out
    deep = table.max_len - 1
    branches: set[str] = {""}
    counts = []
    for n in range(1, deep + 1):
        special = left_special_words(table, n)
        branches = {w for w in special if w[:-1] in branches}
        counts.append(len(branches))
        if not branches:
            break
        window = min(STABILITY_WINDOW, n - 1)
        strictly_growing = window > 0 and all(
            counts[i] < counts[i + 1] for i in range(n - window - 1, n - 1)
        )
        if counts[-1] > BRANCH_CAP or strictly_growing:
            return LeftSpecialScan(
                rays=None,
                branch_counts=counts,
                diagnostic="Sp_l possibly infinite: left-special branch count growing",
            )

    if match_shift_bound is None:
        match_shift_bound = 4 * horizon
    rays = []
    for w in sorted(branches):
        matched = None
        for gen in gens:
            for s in range(match_shift_bound + 1):
                if gen.prefix(s + deep)[s:] == w:
                    matched = Ray(gen, s)
                    break
            if matched:
                break
        if matched is not None:
            rays.append(SpecialRay(ray=matched, certified_depth=deep, matched=True))
        else:
            chain = Ray(WordSource(w, table.alphabet))
            rays.append(SpecialRay(ray=chain, certified_depth=deep, matched=False))
    return LeftSpecialScan(rays=rays, branch_counts=counts)


@dataclass
class TailClassPartition:
    classes: list[list[SpecialRay]]
    shift_bound: int
    match_horizon: int

    @property
    def n_x(self) -> int:
        return len(self.classes)


def _shifted_prefixes(sr: SpecialRay, shift_bound: int, match_horizon: int) -> set[str]:
    out = set()
    for a in range(shift_bound + 1):
        try:
            out.add(sr.ray.shift(a).prefix(match_horizon))
        except HorizonExceededError:
            break
    return out


def tail_classes(
    rays: list[SpecialRay], shift_bound: int, match_horizon: int
) -> TailClassPartition:
    """Partition by the finite surrogate of right tail equivalence: some pair
    of shifts (up to shift_bound) agrees on a match_horizon prefix."""
    if not rays:
        raise ValueError("need at least one special ray")
    views = [_shifted_prefixes(sr, shift_bound, match_horizon) for sr in rays]
    parent = list(range(len(rays)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(rays)):
        for j in range(i + 1, len(rays)):
            if views[i] & views[j]:
                parent[find(i)] = find(j)
    groups: dict[int, list[SpecialRay]] = {}
    for i, sr in enumerate(rays):
        groups.setdefault(find(i), []).append(sr)
    classes = sorted(groups.values(), key=lambda g: g[0].ray.prefix(8))
    for cid, group in enumerate(classes):
        for sr in group:
            sr.tail_class_id = cid
    return TailClassPartition(classes, shift_bound, match_horizon)


def j_maximal(
    class_rays: list[SpecialRay], table: LanguageTable, test_depth: int
) -> SpecialRay:
    """The class member whose proper forward shifts all fail to be left special."""
    if not class_rays:
        raise ValueError("empty tail class")
    candidates = []
    for sr in class_rays:
        try:
            if all(
                not _is_ray_left_special(sr.ray.shift(m), table)
                for m in range(1, test_depth + 1)
            ):
                candidates.append(sr)
        except HorizonExceededError:
            continue
    if len(candidates) != 1:
        raise StabilizationError(
            f"{len(candidates)} maximal candidates at test depth {test_depth};"
            " raise the depth",
            budget=test_depth,
        )
    candidates[0].is_maximal = True
    for sr in class_rays:
        if sr is not candidates[0]:
            sr.is_maximal = False
    return candidates[0]


def adjusted_set(
    class_rays: list[SpecialRay], table: LanguageTable, back_depth: int
) -> list[SpecialRay]:
    """Members with no left-special backward extension within back_depth steps."""
    out = []
    for sr in class_rays:
        ray = sr.ray
        hit = False
        for j in range(1, back_depth + 1):
            pasts = past_set(table, ray.prefix(table.max_len - j), j)
            for u in sorted(pasts.members):
                back = Ray(ray.source, ray.shift_offset, u + ray.prepend)
                if _is_ray_left_special(back, table):
                    hit = True
                    break
            if hit:
                break
        sr.is_adjusted = not hit
        if not hit:
            out.append(sr)
    return out


def path_count(
    ray: Ray,
    table: LanguageTable,
    window: int = STABILITY_WINDOW,
    max_depth: int | None = None,
) -> tuple[int, dict]:
    """Stabilized #past-set over growing depths: the backward-path count d.

    Non-stabilizing counts (expected whenever Sp_l is infinite) raise a
    StabilizationError carrying the budget.
    """
    if max_depth is None:
        max_depth = table.max_len // 2
    counts = []
    cert = None
    for depth in range(1, max_depth + 1):
        stable, c = stabilized_past_set(ray, depth, table, window)
        counts.append(len(stable))
        cert = c
        if len(counts) >= window and len(set(counts[-window:])) == 1:
            return counts[-1], {
                "depth": depth,
                "window": window,
                "prefix_length": cert["prefix_length"],
                "counts": counts,
            }
    raise StabilizationError(
        f"backward-path count did not stabilize up to depth {max_depth}: {counts}",
        budget=max_depth,
    )


def property_star_check(table: LanguageTable, n: int, search_horizon: int) -> dict:
    """Every length-n word must be the unique past of some admitted word."""
    if n + search_horizon > table.max_len:
        raise HorizonExceededError("n + search horizon exceeds the table")
    unwitnessed = []
    pool = sorted(table.by_length[search_horizon])
    for mu in sorted(table.by_length[n]):
        if not any(past_set(table, w, n).members == {mu} for w in pool):
            unwitnessed.append(mu)
    return {
        "passed": not unwitnessed,
        "word_length": n,
        "search_horizon": search_horizon,
        "unwitnessed": unwitnessed,
    }


def property_star_star_check(
    table: LanguageTable, scan: LeftSpecialScan, star_n: int, star_horizon: int
) -> dict:
    """(*) plus finitely many, non-periodic left-special branches."""
    star = property_star_check(table, star_n, star_horizon)
    reasons = []
    if not star["passed"]:
        reasons.append(f"property (*) fails for {len(star['unwitnessed'])} words")
    if scan.rays is None:
        reasons.append(scan.diagnostic or "left-special ray scan inconclusive")
    else:
        for sr in scan.rays:
            probe = sr.ray.prefix(sr.certified_depth)
            if looks_periodic(probe):
                reasons.append(f"periodic special ray: {probe[:16]}...")
    return {
        "passed": not reasons,
        "reasons": reasons,
        "star": star,
        "branch_counts": scan.branch_counts,
    }
