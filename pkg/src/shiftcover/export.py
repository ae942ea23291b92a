"""DOT and CSV export of quotient levels, maps and complexity tables."""

from __future__ import annotations

from pathlib import Path

from .cover import QuotientLevel


def _node_id(level_q: QuotientLevel, index: int) -> str:
    return f"L{level_q.level.k}_{level_q.level.l}:{index}"


def export_dot(
    levels: list[QuotientLevel],
    maps: list[tuple] = (),
    out_path: str | Path | None = None,
    isolated=frozenset(),
) -> str:
    """Plain-digraph text for quotient levels and the maps between them.

    Nodes are classes labeled ``prefix|pastSize`` (isolated classes drawn
    doubled); each entry of `maps` is (kind, hi_level, lo_level, mapping)
    with kind "connect" or "shift".  Ordering is stable: levels in the order
    given, classes in their level order.
    """
    lines = ["digraph cover {", "  rankdir=TB;"]
    index_of = {}
    for q in levels:
        lines.append(f'  subgraph "cluster_{q.level.k}_{q.level.l}" {{')
        lines.append(f'    label="level ({q.level.k}, {q.level.l})";')
        for i, c in enumerate(q.classes):
            index_of[(id(q), c.key)] = i
            shape = "doublecircle" if c in isolated else "box"
            lines.append(
                f'    "{_node_id(q, i)}" [label="{c.prefix}|{len(c.past.members)}", shape={shape}];'
            )
        lines.append("  }")
    for kind, hi, lo, mapping in maps:
        style = "solid" if kind == "connect" else "dashed"
        for src in hi.classes:
            dst = mapping[src]
            a = _node_id(hi, index_of[(id(hi), src.key)])
            b = _node_id(lo, index_of[(id(lo), dst.key)])
            lines.append(f'  "{a}" -> "{b}" [style={style}, label="{kind}"];')
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if out_path is not None:
        Path(out_path).write_text(text)
    return text


def export_complexity_csv(profile, out_path: str | Path | None = None) -> str:
    """CSV with columns n, p(n), p(n+1)-p(n)."""
    rows = ["n,p,first_difference"]
    diffs = profile.first_differences + (None,)
    for n, (p, d) in enumerate(zip(profile.values, diffs), start=1):
        rows.append(f"{n},{p},{'' if d is None else d}")
    text = "\n".join(rows) + "\n"
    if out_path is not None:
        Path(out_path).write_text(text)
    return text
