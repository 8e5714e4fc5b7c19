"""Independent re-checking of colourings and pipeline reports."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping

from .errors import InvalidColoringError
from .graph import (
    Coloring,
    Graph,
    Layering,
    LayeredTreeDecomposition,
    connected_components,
    monochromatic_components,
)
from .oracles import exact_three_color, exact_two_color, hex_check  # noqa: F401  (oracle entry points)

CLASS_PALETTES = {1: (1, 2), 2: (2, 3), 3: (1, 3)}


@dataclass(frozen=True)
class ClusterReport:
    component_count: dict[int, int]
    histogram: dict[int, int]                  # component size -> number of components
    max_size: dict[int, int]
    largest: dict[int, tuple[int, ...]] = field(repr=False)

    @property
    def clustering(self) -> int:
        return max(self.max_size.values(), default=0)

    @property
    def total_vertices(self) -> int:
        return sum(size * count for size, count in self.histogram.items())


def cluster_stats(g: Graph, coloring: Coloring | Mapping[int, int]) -> ClusterReport:
    color_of = coloring.color_of if isinstance(coloring, Coloring) else coloring
    missing = [v for v in range(g.n) if v not in color_of]
    if missing:
        raise InvalidColoringError(f"{len(missing)} vertices uncoloured, first {missing[0]}")
    counts: Counter = Counter()
    hist: Counter = Counter()
    max_size: dict[int, int] = {}
    largest: dict[int, tuple[int, ...]] = {}
    for comp in monochromatic_components(g, color_of):
        c = color_of[comp[0]]
        counts[c] += 1
        hist[len(comp)] += 1
        if len(comp) > max_size.get(c, 0):
            max_size[c] = len(comp)
            largest[c] = tuple(comp)
    return ClusterReport(dict(sorted(counts.items())), dict(sorted(hist.items())), dict(sorted(max_size.items())), largest)


def _report_dict(report) -> dict:
    return report if isinstance(report, Mapping) else report.to_dict()


def check_pipeline_invariants(g: Graph, ltd: LayeredTreeDecomposition | Layering, report) -> list[str]:
    """Re-derive the layer classes and re-check every property the pipeline promises.

    ``report`` is a :class:`PipelineReport` or its JSON dictionary.  Only
    ``g`` and the layering are trusted; everything read from the report is
    cross-checked where it can be recomputed.  Given a bare layering, the
    layered width is taken from the report instead of being re-measured.
    """
    data = _report_dict(report)
    problems: list[str] = []
    colors = list(data.get("colors", []))
    if len(colors) != g.n:
        return [f"report colours {len(colors)} vertices, graph has {g.n}"]
    bad = [v for v, c in enumerate(colors) if c not in (1, 2, 3)]
    if bad:
        return [f"vertex {bad[0]} has colour {colors[bad[0]]} outside {{1, 2, 3}}"]

    layering = ltd if isinstance(ltd, Layering) else ltd.layering
    if layering.n != g.n:
        return [f"layering covers {layering.n} vertices, graph has {g.n}"]
    layer_of = layering.layer_of
    class_of = [(layer_of[v] - 1) % 3 + 1 for v in range(g.n)]
    for v, c in enumerate(colors):
        if c not in CLASS_PALETTES[class_of[v]]:
            problems.append(f"vertex {v} in U{class_of[v]} has colour {c}, allowed {CLASS_PALETTES[class_of[v]]}")

    m = data.get("measured", {})
    f = {1: m.get("f1", 0), 2: m.get("f2", 0), 3: m.get("f3", 0)}
    delta = g.max_degree
    if m.get("delta") != delta:
        problems.append(f"report delta {m.get('delta')} != measured {delta}")
    if isinstance(ltd, Layering):
        ell = int(m.get("layered_width", 0))
    else:
        ell = ltd.layered_width
        if m.get("layered_width") != ell:
            problems.append(f"report layered width {m.get('layered_width')} != measured {ell}")

    color_of = dict(enumerate(colors))
    for j in (1, 2, 3):
        members = {v: c for v, c in color_of.items() if class_of[v] == j}
        biggest = max((len(x) for x in monochromatic_components(g, members)), default=0)
        if j == 1 and biggest != f[1]:
            problems.append(f"largest c1 component has {biggest} vertices, report says f1={f[1]}")
        elif biggest > f[j]:
            problems.append(f"a c{j} component of G[U{j}] has {biggest} > f{j}={f[j]} vertices")

    per_color: dict[int, int] = {}
    for comp in monochromatic_components(g, color_of):
        color = color_of[comp[0]]
        per_color[color] = max(per_color.get(color, 0), len(comp))
        if color == 2:
            core_class, side_class, forbidden = 2, 1, 3
        else:
            core_class, side_class = 3, (1 if color == 1 else 2)
            forbidden = 2 if color == 1 else 1
        if any(class_of[v] == forbidden for v in comp):
            problems.append(f"colour-{color} component at {comp[0]} meets U{forbidden}")
            continue
        core = [v for v in comp if class_of[v] == core_class]
        side = [v for v in comp if class_of[v] == side_class]
        if not core:
            if len(comp) > f[side_class]:
                problems.append(f"colour-{color} component at {comp[0]} exceeds f{side_class}")
            continue
        core_set = set(core)
        leaving = sum(1 for v in core for u in g.adj[v] if u not in core_set)
        pieces = len(connected_components(g, side)) if side else 0
        if len(core) > f[core_class]:
            problems.append(f"colour-{color} component at {comp[0]} has {len(core)} U{core_class} vertices > f{core_class}")
        if pieces > leaving or leaving > f[core_class] * delta:
            problems.append(f"colour-{color} component at {comp[0]} has {pieces} side pieces, {leaving} leaving edges")
        if len(comp) > (1 + f[side_class] * delta) * f[core_class]:
            problems.append(f"colour-{color} component at {comp[0]} has {len(comp)} vertices > (1 + f D) f")

    clustering = data.get("clustering", {})
    recorded = {int(c): s for c, s in clustering.get("per_color", {}).items() if s}
    if recorded != per_color:
        problems.append(f"per-colour clustering {recorded} != recomputed {per_color}")
    if clustering.get("overall") != max(per_color.values(), default=0):
        problems.append("overall clustering does not match recomputation")

    widths = m.get("widths", {})
    h, k, d, growth = m.get("h", {}), m.get("k", {}), m.get("d", {}), m.get("bag_growth", {})
    for phase in ("phase2", "phase3"):
        w = widths.get(phase, {})
        hk = h.get(phase, 0) * k.get(phase, 0)
        if w.get("after", 0) > w.get("before", 0) + 2 * hk:
            problems.append(f"{phase} augmented width {w.get('after')} > {w.get('before')} + 2hk")
        if growth.get(phase, 0) > 2 * hk:
            problems.append(f"{phase} bag growth exceeds 2hk")
    if h.get("phase2", 0) > ell + 1:
        problems.append("phase2 overlap exceeds w+1")
    if k.get("phase2", 0) > f[1] ** 2 * delta**2 or d.get("phase2", 0) > f[1] * delta**2:
        problems.append("phase2 pair counts exceed f1-based bounds")
    w2 = widths.get("phase2", {}).get("after", 0)
    if h.get("phase3", 0) > 2 * (max(w2, 0) + 1):
        problems.append("phase3 overlap exceeds 2(w2+1)")
    f_big = max(f[1], f[2])
    if k.get("phase3", 0) > f_big**2 * delta**2 or d.get("phase3", 0) > f_big * delta**2:
        problems.append("phase3 pair counts exceed f-based bounds")
    return problems
