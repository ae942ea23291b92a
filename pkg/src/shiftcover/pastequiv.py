"""Finite-horizon past sets, past-equivalence classes and isolation horizons.

All "for every point" quantifiers from the underlying theory are replaced by
"for every admitted word of the relevant length"; every result that depends
on such a substitution carries a certificate naming the horizons used.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import HorizonExceededError, StabilizationError
from .generators import Ray
from .words import LanguageTable

STABILITY_WINDOW = 4


@dataclass(frozen=True)
class PastSet:
    depth: int
    members: frozenset[str]

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class PastClass:
    depth: int
    representative: str  # lexicographic least member
    members: frozenset[str]
    past: PastSet


def past_set(table: LanguageTable, w: str, depth: int) -> PastSet:
    """{mu of length depth : mu+w admitted}."""
    if depth + len(w) > table.max_len:
        raise HorizonExceededError(
            f"past depth {depth} of a {len(w)}-word exceeds horizon {table.max_len}"
        )
    longer = table.by_length[depth + len(w)]
    members = frozenset(m for m in table.by_length[depth] if m + w in longer)
    return PastSet(depth, members)


def stabilized_past_set(
    ray: Ray, depth: int, table: LanguageTable, window: int = STABILITY_WINDOW
) -> tuple[PastSet, dict]:
    """Past set of a ray: P of growing prefixes until constant over a window.

    The past set of a prefix only shrinks as the prefix grows, so equality
    across `window` consecutive lengths is the stabilization certificate.
    """
    h_max = table.max_len - depth
    run_start, current = 1, None
    for h in range(1, h_max + 1):
        try:
            p = ray.prefix(h)
        except HorizonExceededError:
            h_max = h - 1  # word-chain rays may run out before the table does
            break
        s = past_set(table, p, depth)
        if s != current:
            current, run_start = s, h
    if current is None or h_max - run_start + 1 < window:
        raise StabilizationError(
            f"past set at depth {depth} not stable over {window} prefix lengths",
            budget=h_max,
        )
    return current, {"depth": depth, "prefix_length": run_start, "window": window}


def past_classes(table: LanguageTable, n: int, depth: int) -> list[PastClass]:
    """Partition of the length-n words by their depth-past; sorted by representative."""
    if n + depth > table.max_len:
        raise HorizonExceededError(
            f"partition at (n={n}, l={depth}) exceeds horizon {table.max_len}"
        )
    groups: dict[frozenset, list[str]] = {}
    for w in table.by_length[n]:
        groups.setdefault(past_set(table, w, depth).members, []).append(w)
    classes = [
        PastClass(depth, min(ws), frozenset(ws), PastSet(depth, members))
        for members, ws in groups.items()
    ]
    return sorted(classes, key=lambda c: c.representative)


def is_isolated_in_past_equiv(
    ray: Ray, depth: int, table: LanguageTable, window: int = STABILITY_WINDOW
) -> tuple[bool, dict]:
    """True iff the ray's stabilized past-class (at the certificate length) is a singleton."""
    stable, cert = stabilized_past_set(ray, depth, table, window)
    h = max(cert["prefix_length"], 1)
    h = min(h + window - 1, table.max_len - depth)  # deepest certified length
    w = ray.prefix(h)
    twins = [
        v
        for v in table.by_length[h]
        if past_set(table, v, depth).members == stable.members
    ]
    cert = dict(cert, class_word_length=h, class_size=len(twins))
    return (twins == [w]), cert


def unique_past_horizon(
    ray: Ray, depth: int, table: LanguageTable
) -> tuple[int, dict]:
    """Least N: every admitted word with the ray's (N+1)-prefix has a singleton past.

    Words are scanned at the deepest available length table.max_len - depth.
    Raises StabilizationError when no such N exists within the table.
    """
    scan_len = table.max_len - depth
    if scan_len < 1:
        raise HorizonExceededError("table too shallow for the requested depth")
    pool = table.by_length[scan_len]
    for big_n in range(scan_len):
        p = ray.prefix(big_n + 1)
        if all(
            len(past_set(table, v, depth)) == 1
            for v in pool
            if v.startswith(p)
        ):
            return big_n, {"depth": depth, "scan_word_length": scan_len}
    raise StabilizationError(
        f"no unique-past horizon at depth {depth} within word length {scan_len}",
        budget=scan_len,
    )


def isolation_horizon(
    ray: Ray,
    table: LanguageTable,
    n_max: int,
    depth_span: int = 4,
    window: int = STABILITY_WINDOW,
) -> tuple[int, dict]:
    """Least N such that sigma^n(ray) is isolated in l-past equivalence on the
    tested grid l in (n, n+depth_span], for every n in [N, n_max]."""
    ok = []
    for n in range(n_max + 1):
        shifted = ray.shift(n)
        good = True
        for l in range(n + 1, n + depth_span + 1):
            if l + window >= table.max_len:
                good = False
                break
            flag, _ = is_isolated_in_past_equiv(shifted, l, table, window)
            if not flag:
                good = False
                break
        ok.append(good)
    cert = {"n_max": n_max, "depth_span": depth_span, "per_n": ok}
    for start in range(n_max + 1):
        if all(ok[start:]):
            return start, cert
    raise StabilizationError(
        f"no isolation horizon within n <= {n_max}", budget=n_max
    )
