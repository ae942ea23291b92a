"""Finite levels of the past-equivalence cover.

A level (k, l) groups admitted words by (k-prefix, depth-l past of the tail);
connecting maps, the level shift and the section/projection pair are realized
on witnesses, with representative-independence checked on every witness kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConstructionError, HorizonExceededError, StabilizationError
from .generators import Ray
from .pastequiv import STABILITY_WINDOW, PastSet, past_set, stabilized_past_set
from .words import LanguageTable


@dataclass(frozen=True, order=True)
class LevelIndex:
    k: int
    l: int

    def __post_init__(self):
        if not 1 <= self.k <= self.l:
            raise ConstructionError(f"level ({self.k}, {self.l}) violates 1 <= k <= l")

    @property
    def defect(self) -> int:
        return self.l - self.k


def poset_leq(a: LevelIndex, b: LevelIndex) -> bool:
    """a precedes b: k grows and the defect l - k grows."""
    return a.k <= b.k and a.defect <= b.defect


def extract_chain(levels) -> tuple[list[LevelIndex], int]:
    """Greedy minimum-defect subchain of a finite set, plus (for small sets)
    the exhaustively computed longest-chain length."""
    remaining = sorted(set(levels), key=lambda li: (li.defect, li.k))
    if not remaining:
        raise ValueError("need at least one level")
    chain: list[LevelIndex] = []
    while remaining:
        pick = remaining[0]  # least defect, then least k
        chain.append(pick)
        remaining = [li for li in remaining if li.k > pick.k]
        remaining.sort(key=lambda li: (li.defect, li.k))
    longest = len(chain)
    if len(set(levels)) <= 20:
        order = sorted(set(levels))
        best = {li: 1 for li in order}
        for i, b in enumerate(order):
            for a in order[:i]:
                if a != b and poset_leq(a, b):
                    best[b] = max(best[b], best[a] + 1)
        longest = max(best.values())
    return chain, longest


@dataclass(frozen=True)
class CoverClass:
    level: LevelIndex
    prefix: str
    past: PastSet
    witness: str  # lexicographic-least witness word

    @property
    def key(self):
        return (self.prefix, self.past.members)


@dataclass(frozen=True)
class QuotientLevel:
    level: LevelIndex
    classes: tuple[CoverClass, ...]
    horizon_used: int
    stabilized: bool
    table: LanguageTable = field(repr=False, compare=False)
    witnesses: dict = field(repr=False, compare=False)  # class key -> word tuple

    @property
    def by_key(self) -> dict:
        return {c.key: c for c in self.classes}

    def class_of_word(self, w: str) -> CoverClass:
        k, l = self.level.k, self.level.l
        key = (w[:k], past_set(self.table, w[k:], l).members)
        try:
            return self.by_key[key]
        except KeyError:
            raise StabilizationError(
                f"word {w!r} realizes no class of level {self.level}; "
                "the level horizon is too shallow",
                budget=self.horizon_used,
            )


def _class_keys(table: LanguageTable, level: LevelIndex, horizon: int) -> dict:
    k, l = level.k, level.l
    groups: dict[tuple, list[str]] = {}
    for w in sorted(table.by_length[horizon]):
        key = (w[:k], past_set(table, w[k:], l).members)
        groups.setdefault(key, []).append(w)
    return groups


def quotient_level(
    table: LanguageTable, level: LevelIndex, horizon: int
) -> QuotientLevel:
    """All realized (k-prefix, depth-l tail past) pairs among length-horizon words.

    The stabilized flag records whether the same pair set recurs at
    horizon + STABILITY_WINDOW; only stabilized levels should feed the
    verification suites.
    """
    if horizon < level.k:
        raise HorizonExceededError(f"horizon {horizon} below prefix length {level.k}")
    if horizon + level.l > table.max_len:
        raise HorizonExceededError(
            f"level {level} at horizon {horizon} exceeds table horizon {table.max_len}"
        )
    groups = _class_keys(table, level, horizon)
    deeper = horizon + STABILITY_WINDOW
    stabilized = False
    if deeper + level.l <= table.max_len:
        stabilized = set(groups) == set(_class_keys(table, level, deeper))
    classes = tuple(
        CoverClass(level, prefix, PastSet(level.l, members), min(ws))
        for (prefix, members), ws in sorted(groups.items())
    )
    witnesses = {key: tuple(ws) for key, ws in groups.items()}
    return QuotientLevel(level, classes, horizon, stabilized, table, witnesses)


@dataclass
class QuotientBuilder:
    """Caches levels of one table; default horizon leaves room for the
    stabilization recheck."""

    table: LanguageTable
    window: int = STABILITY_WINDOW

    def __post_init__(self):
        self._cache: dict = {}

    def default_horizon(self, level: LevelIndex) -> int:
        return self.table.max_len - level.l - self.window

    def level(self, level: LevelIndex, horizon: int | None = None) -> QuotientLevel:
        if horizon is None:
            horizon = self.default_horizon(level)
        key = (level, horizon)
        if key not in self._cache:
            self._cache[key] = quotient_level(self.table, level, horizon)
        return self._cache[key]


def _map_by_witness(hi: QuotientLevel, lo: QuotientLevel, project) -> dict:
    """hi class -> lo class via project(witness); checked on every witness."""
    table = hi.table
    k, l = lo.level.k, lo.level.l
    mapping = {}
    for c in hi.classes:
        keys = set()
        for w in hi.witnesses[c.key]:
            t = project(w)
            keys.add((t[:k], past_set(table, t[k:], l).members))
        if len(keys) != 1:
            raise StabilizationError(
                f"map from {hi.level} to {lo.level} not witness-independent "
                f"on class {c.prefix!r}; raise horizons",
                budget=hi.horizon_used,
            )
        (key,) = keys
        target = lo.by_key.get(key)
        if target is None:
            raise StabilizationError(
                f"image of class {c.prefix!r} is not a realized class of {lo.level}",
                budget=lo.horizon_used,
            )
        mapping[c] = target
    return mapping


def connecting_map(hi: QuotientLevel, lo: QuotientLevel) -> dict:
    """The projection hi -> lo along the level order; witness-independent."""
    if not poset_leq(lo.level, hi.level):
        raise ConstructionError(f"{lo.level} does not precede {hi.level}")
    cut = min(hi.horizon_used, lo.horizon_used)
    return _map_by_witness(hi, lo, lambda w: w[:cut])


def shift_on_level(hi: QuotientLevel, lo: QuotientLevel) -> dict:
    """The level shift (k+1, l) -> (k, l): drop the first symbol."""
    if hi.level.l != lo.level.l or hi.level.k != lo.level.k + 1:
        raise ConstructionError(
            f"level shift needs (k+1, l) -> (k, l), got {hi.level} -> {lo.level}"
        )
    cut = min(hi.horizon_used - 1, lo.horizon_used)
    return _map_by_witness(hi, lo, lambda w: w[1 : cut + 1])


def iota_level(
    ray: Ray, level: LevelIndex, table: LanguageTable, window: int = STABILITY_WINDOW
) -> CoverClass:
    """The class of the ray at a level: its k-prefix plus the stabilized past
    of its k-shift."""
    prefix = ray.prefix(level.k)
    stable, _cert = stabilized_past_set(ray.shift(level.k), level.l, table, window)
    witness = ray.prefix(table.max_len - level.l)
    return CoverClass(level, prefix, stable, witness)


def default_chain(k_max: int, defect: int = 4) -> list[LevelIndex]:
    return [LevelIndex(k, k + defect) for k in range(1, k_max + 1)]


def growing_chain(k_max: int, defect_cap: int = 8) -> list[LevelIndex]:
    """Chain whose defect grows with k (up to a cap); deep pasts make the
    backward branch point visible however far back it sits."""
    return [LevelIndex(k, k + min(k, defect_cap)) for k in range(1, k_max + 1)]


@dataclass(frozen=True)
class FiberReport:
    chain: tuple[LevelIndex, ...]
    per_level_counts: tuple[int, ...]
    thread_count: int
    stabilized: bool
    stable_from_k: int | None
    certificate: dict


def pi_fiber(
    ray: Ray,
    chain,
    builder: QuotientBuilder,
    horizon: int | None = None,
    window: int = STABILITY_WINDOW,
) -> FiberReport:
    """Threads over a ray along the chain.

    A class belongs to the ray's thread graph when its prefix matches the ray
    and its past set sits inside the ray's stabilized past — those are exactly
    the classes that limits onto the ray can occupy (the full past, plus one
    singleton per realized backward branch).  Threads are then counted by
    walking every deep class down the connecting maps.
    """
    chain = list(chain)
    if len(chain) < 2 or any(not poset_leq(a, b) for a, b in zip(chain, chain[1:])):
        raise ConstructionError("fiber query needs an ascending chain of length >= 2")
    table = builder.table
    if horizon is None:
        horizon = table.max_len - max(li.l for li in chain) - window
    levels = [builder.level(li, horizon) for li in chain]
    matching = []
    for q in levels:
        k, l = q.level.k, q.level.l
        point_past, _ = stabilized_past_set(ray.shift(k), l, table, window)
        matching.append(
            [
                c
                for c in q.classes
                if c.prefix == ray.prefix(k)
                and c.past.members <= point_past.members
            ]
        )
    counts = [len(m) for m in matching]
    threads = 0
    maps = [connecting_map(hi, lo) for lo, hi in zip(levels, levels[1:])]
    for top in matching[-1]:
        cur, ok = top, True
        for i in range(len(levels) - 2, -1, -1):
            cur = maps[i][cur]
            if cur not in matching[i]:
                ok = False
                break
        threads += ok
    stable_from = None
    for i in range(len(counts)):
        if len(counts) - i >= window and len(set(counts[i:])) == 1:
            stable_from = chain[i].k
            break
    stabilized = stable_from is not None and threads == counts[-1]
    return FiberReport(
        chain=tuple(chain),
        per_level_counts=tuple(counts),
        thread_count=threads,
        stabilized=stabilized,
        stable_from_k=stable_from,
        certificate={
            "window": window,
            "horizon": horizon,
            "levels_stabilized": [q.stabilized for q in levels],
        },
    )


def default_refinements(
    level: LevelIndex, depth: int = 4, jump: int | None = None
) -> list[LevelIndex]:
    """Refinements separating distinct points that share a class.

    Distinct points in one class diverge at some later right-special
    branching; for linearly recurrent systems a prefix jump proportional to l
    reaches past the next branching, so the default jump is l itself.
    """
    if jump is None:
        jump = level.l
    return [
        LevelIndex(level.k + j * jump, level.l + j * jump + j)
        for j in range(1, depth + 1)
    ]


def isolated_classes(
    level_q: QuotientLevel, refinements: list[QuotientLevel]
) -> set[CoverClass]:
    """Classes whose preimage under every supplied refinement map is a single
    class — the finite shadow of being an isolated cover point."""
    if not refinements:
        raise ValueError("need at least one refinement level")
    counts = {c: [] for c in level_q.classes}
    for ref in refinements:
        mapping = connecting_map(ref, level_q)
        pre: dict[CoverClass, int] = {}
        for src, dst in mapping.items():
            pre[dst] = pre.get(dst, 0) + 1
        for c in level_q.classes:
            counts[c].append(pre.get(c, 0))
    return {c for c, pres in counts.items() if all(p == 1 for p in pres)}
