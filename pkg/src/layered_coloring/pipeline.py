"""Three-colouring with bounded clustering from a layered tree-decomposition.

Layers are grouped into three classes by index mod 3.  The first class is
2-coloured with {1, 2}.  The second class is 2-coloured with {2, 3} after
adding, for every colour-2 component of the first class, edges between all of
its neighbours in the following layer.  The third class is coloured with
{1, 3} after the same treatment for colour-1 components of the first class
and colour-3 components of the (augmented) second class.  The extra edges
make sure that whatever grows across two layers is still controlled by the
clustering of a single 2-colouring.
"""
from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .bounds import Bounds, compute_bounds, default_f_constant, linear_f_model, measured_bounds
from .cluster2 import two_color_clustered
from .enlarge import LinkageEntry, LinkageFamily, augment
from .errors import DecompositionError, PipelineInvariantError, ValidationError
from .graph import (
    Coloring,
    Graph,
    Layering,
    LayeredTreeDecomposition,
    TreeDecomposition,
    connected_components,
    monochromatic_components,
    restrict_td,
    validate_layering,
    validate_td,
)

CLASS_PALETTES = {1: (1, 2), 2: (2, 3), 3: (1, 3)}

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LayerClasses:
    members: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    layer_indices: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    class_of: tuple[int, ...]

    def U(self, j: int) -> tuple[int, ...]:
        """Vertices of class ``j``; indices wrap so ``U(4) == U(1)``."""
        return self.members[(j - 1) % 3]


@dataclass(frozen=True)
class ComponentLinkage:
    component: tuple[int, ...]
    layer: int
    target_layer: int
    covering: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    subtree: tuple[int, ...]
    neighbours: tuple[int, ...]
    boundary_edges: int

    def entry(self) -> LinkageEntry:
        return LinkageEntry.build(self.covering, self.subtree, self.pairs)


@dataclass
class PhaseStats:
    width_before: int = -1
    width_after: int = -1
    h: int = 0
    k: int = 0
    d: int = 0
    bag_growth: int = 0


@dataclass(frozen=True)
class PipelineConfig:
    f_model: Fraction | int | str | None = None
    threads: int = 1

    def f_constant(self) -> Fraction:
        if self.f_model is None:
            return default_f_constant()
        return Fraction(str(self.f_model))


@dataclass
class PipelineReport:
    coloring: Coloring
    classes: LayerClasses
    delta: int
    layered_width: int
    f1: int
    f2: int
    f3: int
    phase1: PhaseStats
    phase2: PhaseStats
    phase3: PhaseStats
    bounds_model: Bounds
    bounds_measured: Bounds
    f_constant: Fraction
    per_color: dict[int, int]
    overall: int
    g2: Graph | None = field(default=None, repr=False)
    g3: Graph | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        n = len(self.classes.class_of)
        stats = {"phase1": self.phase1, "phase2": self.phase2, "phase3": self.phase3}
        return {
            "colors": self.coloring.as_list(n),
            "palette_by_class": {f"U{j}": list(CLASS_PALETTES[j]) for j in (1, 2, 3)},
            "measured": {
                "f1": self.f1,
                "f2": self.f2,
                "f3": self.f3,
                "delta": self.delta,
                "layered_width": self.layered_width,
                "widths": {p: {"before": s.width_before, "after": s.width_after} for p, s in stats.items()},
                "bag_growth": {p: stats[p].bag_growth for p in ("phase2", "phase3")},
                "h": {p: stats[p].h for p in ("phase2", "phase3")},
                "k": {p: stats[p].k for p in ("phase2", "phase3")},
                "d": {p: stats[p].d for p in ("phase2", "phase3")},
            },
            "bounds": {
                "f_model_constant": str(self.f_constant),
                "model": self.bounds_model.as_dict(),
                "measured": self.bounds_measured.as_dict(),
            },
            "clustering": {
                "per_color": {str(c): self.per_color[c] for c in sorted(self.per_color)},
                "overall": self.overall,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1) + "\n"


def split_layers(layering: Layering, g: Graph | None = None) -> LayerClasses:
    members: list[list[int]] = [[], [], []]
    indices: list[list[int]] = [[], [], []]
    for i in range(1, layering.n_layers + 1):
        j = (i - 1) % 3
        indices[j].append(i)
        members[j].extend(layering.layer(i))
    class_of = tuple((i - 1) % 3 + 1 for i in layering.layer_of)
    if g is not None:
        for u, v in g.edges():
            lu, lv = layering.layer_of[u], layering.layer_of[v]
            if lu != lv and class_of[u] == class_of[v]:
                raise ValidationError(f"edge {u}-{v} joins layers {lu} and {lv} of the same class")
    return LayerClasses(
        tuple(tuple(sorted(m)) for m in members),
        tuple(tuple(x) for x in indices),
        class_of,
    )


def _map(fn: Callable, items: Sequence, threads: int) -> list:
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _layer_piece(g: Graph, td: TreeDecomposition, layer: Sequence[int]):
    sub, ids = g.induced(layer)
    local = {v: i for i, v in enumerate(ids)}
    return sub, ids, local, restrict_td(td, layer).relabel(local)


def _color_layer(g: Graph, td: TreeDecomposition, layer: Sequence[int], palette) -> dict[int, int]:
    sub, ids, _, td_sub = _layer_piece(g, td, layer)
    coloring, _ = two_color_clustered(sub, td_sub, palette)
    return {ids[v]: c for v, c in coloring.color_of.items()}


def _max_component(g: Graph, color_of: dict[int, int]) -> int:
    return max((len(c) for c in monochromatic_components(g, color_of)), default=0)


def phase1(g: Graph, ltd: LayeredTreeDecomposition, classes: LayerClasses, threads: int = 1):
    """Colour ``U1`` with {1, 2} layer by layer; returns ``(c1, f1, width)``."""
    layers = [ltd.layering.layer(i) for i in classes.layer_indices[0]]
    parts = _map(lambda layer: _color_layer(g, ltd.td, layer, CLASS_PALETTES[1]), layers, threads)
    color_of: dict[int, int] = {}
    for part in parts:
        color_of.update(part)
    c1 = Coloring(dict(sorted(color_of.items())), CLASS_PALETTES[1])
    for comp in monochromatic_components(g, c1):
        if len({ltd.layering.layer_of[v] for v in comp}) != 1:
            raise PipelineInvariantError("a c1-component spans two layers", comp)
    layer_sets = [frozenset(layer) for layer in layers]
    width = max((len(bag & layer) - 1 for layer in layer_sets for bag in ltd.td.bags), default=-1)
    return c1, _max_component(g, c1.color_of), width


def _node_index(td: TreeDecomposition) -> dict[int, list[int]]:
    where: dict[int, list[int]] = {}
    for t, bag in enumerate(td.bags):
        for v in bag:
            where.setdefault(v, []).append(t)
    return where


def _build_linkages(
    g: Graph,
    layering: Layering,
    cover_td: TreeDecomposition,
    subtree_td: TreeDecomposition,
    sources: Sequence[tuple[Sequence[int], int]],
) -> list[ComponentLinkage]:
    """One linkage per ``(component, target layer)``; covering nodes use ``cover_td``, subtrees use ``subtree_td``."""
    cover_where = _node_index(cover_td)
    sub_where = _node_index(subtree_td)
    out = []
    for comp, target in sources:
        comp_set = set(comp)
        boundary = sorted((v, u) for v in comp for u in g.adj[v] if layering.layer_of[u] == target)
        if not boundary:
            continue
        covering = set()
        for v, u in boundary:
            both = set(cover_where.get(v, ())).intersection(cover_where.get(u, ()))
            if not both:
                raise DecompositionError(f"no bag contains edge {v}-{u}")
            covering.add(min(both))
        nbrs = sorted({u for _, u in boundary})
        subtree = sorted({t for v in comp_set for t in sub_where.get(v, ())})
        out.append(
            ComponentLinkage(
                component=tuple(comp),
                layer=layering.layer_of[comp[0]],
                target_layer=target,
                covering=tuple(sorted(covering)),
                pairs=tuple(combinations(nbrs, 2)),
                subtree=tuple(subtree),
                neighbours=tuple(nbrs),
                boundary_edges=len(boundary),
            )
        )
    return out


def build_linkages_phase2(g: Graph, td: TreeDecomposition, c1: Coloring, layering: Layering) -> list[ComponentLinkage]:
    sources = [
        (comp, layering.layer_of[comp[0]] + 1)
        for comp in monochromatic_components(g, c1)
        if c1[comp[0]] == 2
    ]
    return _build_linkages(g, layering, td, td, sources)


def build_linkages_phase3(
    g: Graph,
    td: TreeDecomposition,
    td2: TreeDecomposition,
    c1: Coloring,
    c2: Coloring,
    g2: Graph,
    layering: Layering,
) -> list[ComponentLinkage]:
    # colour-1 components of U1 reach back one layer, colour-3 components of G2 reach forward one
    sources = [
        (comp, layering.layer_of[comp[0]] - 1)
        for comp in monochromatic_components(g, c1)
        if c1[comp[0]] == 1
    ]
    sources += [
        (comp, layering.layer_of[comp[0]] + 1)
        for comp in monochromatic_components(g2, c2)
        if c2[comp[0]] == 3
    ]
    sources.sort(key=lambda s: (s[0][0], s[1]))
    return _build_linkages(g, layering, td, td2, sources)


def _augmented_phase(
    g: Graph,
    td: TreeDecomposition,
    layering: Layering,
    layer_indices: Sequence[int],
    linkages: Sequence[ComponentLinkage],
    palette,
    threads: int,
):
    """Augment each target layer with its linkages and 2-colour it.

    Returns ``(aux_graph, per-node augmented bags, colouring, stats)``; the
    auxiliary graph lives on the full id range with the other vertices isolated.
    """
    by_layer: dict[int, list[ComponentLinkage]] = {}
    for link in linkages:
        by_layer.setdefault(link.target_layer, []).append(link)

    def run(i):
        layer = layering.layer(i)
        sub, ids, local, td_sub = _layer_piece(g, td, layer)
        entries = []
        for link in by_layer.get(i, ()):
            pairs = [(local[u], local[v]) for u, v in link.pairs]
            entries.append(LinkageEntry.build(link.covering, link.subtree, pairs))
        result = augment(sub, td_sub, LinkageFamily(tuple(entries)))
        coloring, _ = two_color_clustered(result.g_prime, result.td_prime, palette)
        return ids, td_sub, result, coloring

    results = _map(run, list(layer_indices), threads)
    stats = PhaseStats()
    edges = []
    color_of: dict[int, int] = {}
    bags: list[set[int]] = [set() for _ in range(td.n_nodes)]
    for ids, td_sub, result, coloring in results:
        edges.extend((ids[u], ids[v]) for u, v in result.g_prime.edges())
        color_of.update({ids[v]: c for v, c in coloring.color_of.items()})
        for t, bag in enumerate(result.td_prime.bags):
            bags[t].update(ids[v] for v in bag)
        stats.width_before = max(stats.width_before, td_sub.width)
        stats.width_after = max(stats.width_after, result.td_prime.width)
        stats.h = max(stats.h, result.h_actual)
        stats.k = max(stats.k, result.k_actual)
        stats.d = max(stats.d, result.d_actual)
        stats.bag_growth = max(stats.bag_growth, max(result.added_per_node, default=0))
    aux = Graph.from_edges(g.n, edges)
    for u, v in aux.edges():
        if layering.layer_of[u] != layering.layer_of[v]:
            raise PipelineInvariantError("auxiliary graph has an edge between two layers", (u, v))
    coloring = Coloring(dict(sorted(color_of.items())), tuple(palette))
    return aux, bags, coloring, stats


def _linkage_checks(linkages: Sequence[ComponentLinkage], td: TreeDecomposition) -> None:
    for link in linkages:
        if len(link.covering) > link.boundary_edges:
            raise PipelineInvariantError("covering set larger than its edge count", link.component)
        if not set(link.covering) <= set(link.subtree):
            raise PipelineInvariantError("covering nodes outside the component subtree", link.component)
        n = len(link.neighbours)
        if len(link.pairs) != n * (n - 1) // 2:
            raise PipelineInvariantError("pair count is not binom(|N|, 2)", link.component)


def phase2(g: Graph, ltd: LayeredTreeDecomposition, classes: LayerClasses, linkages, threads: int = 1):
    """Returns ``(G2, td2, c2, f2, stats)``; ``td2`` decomposes ``G[U1] + G2``."""
    _linkage_checks(linkages, ltd.td)
    g2, bags, c2, stats = _augmented_phase(
        g, ltd.td, ltd.layering, classes.layer_indices[1], linkages, CLASS_PALETTES[2], threads
    )
    u1 = set(classes.U(1))
    for t, bag in enumerate(ltd.td.bags):
        bags[t].update(bag & u1)
    td2 = TreeDecomposition(tuple(frozenset(b) for b in bags), ltd.td.edges, ltd.td.root)
    f2 = _max_component(g2, c2.color_of)
    return g2, td2, c2, f2, stats


def phase3(g: Graph, ltd: LayeredTreeDecomposition, classes: LayerClasses, linkages, threads: int = 1):
    """Returns ``(G3, c3, f3, stats)``."""
    _linkage_checks(linkages, ltd.td)
    g3, _, c3, stats = _augmented_phase(
        g, ltd.td, ltd.layering, classes.layer_indices[2], linkages, CLASS_PALETTES[3], threads
    )
    return g3, c3, _max_component(g3, c3.color_of), stats


def three_color(g: Graph, ltd: LayeredTreeDecomposition, config: PipelineConfig | None = None) -> PipelineReport:
    config = config or PipelineConfig()
    problems = validate_td(g, ltd.td) + validate_layering(g, ltd.layering)
    if problems:
        raise ValidationError("invalid layered tree-decomposition", problems)
    threads = max(1, config.threads)
    delta = g.max_degree
    ell = ltd.layered_width
    layering = ltd.layering
    classes = split_layers(layering, g)

    c1, f1, width1 = phase1(g, ltd, classes, threads)
    links2 = build_linkages_phase2(g, ltd.td, c1, layering)
    g2, td2, c2, f2, stats2 = phase2(g, ltd, classes, links2, threads)
    links3 = build_linkages_phase3(g, ltd.td, td2, c1, c2, g2, layering)
    g3, c3, f3, stats3 = phase3(g, ltd, classes, links3, threads)

    stats1 = PhaseStats(width_before=width1, width_after=width1)
    # lemma parameters, measured against the proof's formulas with measured f
    f_big = max(f1, f2)
    checks = [
        (stats2.h <= ell + 1, f"phase-2 overlap h={stats2.h} exceeds w+1={ell + 1}"),
        (stats2.k <= f1**2 * delta**2, f"phase-2 k={stats2.k} exceeds f1^2 D^2"),
        (stats2.d <= f1 * delta**2, f"phase-2 d={stats2.d} exceeds f1 D^2"),
        (stats3.h <= 2 * (max(stats2.width_after, 0) + 1), f"phase-3 overlap h={stats3.h} exceeds 2(w2+1)"),
        (stats3.k <= f_big**2 * delta**2, f"phase-3 k={stats3.k} exceeds f^2 D^2"),
        (stats3.d <= f_big * delta**2, f"phase-3 d={stats3.d} exceeds f D^2"),
        (stats2.bag_growth <= 2 * stats2.h * stats2.k, "phase-2 bag growth exceeds 2hk"),
        (stats3.bag_growth <= 2 * stats3.h * stats3.k, "phase-3 bag growth exceeds 2hk"),
    ]
    for ok, message in checks:
        if not ok:
            raise PipelineInvariantError(message)

    color_of = {**c1.color_of, **c2.color_of, **c3.color_of}
    coloring = Coloring(dict(sorted(color_of.items())), (1, 2, 3))
    per_color = _assert_components(g, coloring, classes, g2, g3, delta, f1, f2, f3)

    constant = config.f_constant()
    model = linear_f_model(constant)
    for name, measured, width, graph in (
        ("f1", f1, width1, g),
        ("f2", f2, stats2.width_after, g2),
        ("f3", f3, stats3.width_after, g3),
    ):
        expected = model(max(width, 0), max(graph.max_degree, 1))
        if measured > expected:
            log.warning("%s=%d exceeds the model C(w+1)D=%d (C=%s, w=%d)", name, measured, expected, constant, width)
    w_eff, d_eff = max(ell, 1), max(delta, 1)
    return PipelineReport(
        coloring=coloring,
        classes=classes,
        delta=delta,
        layered_width=ell,
        f1=f1,
        f2=f2,
        f3=f3,
        phase1=stats1,
        phase2=stats2,
        phase3=stats3,
        bounds_model=compute_bounds(w_eff, d_eff, model),
        bounds_measured=measured_bounds(w_eff, d_eff, max(f1, 1), max(f2, 1), max(f3, 1)),
        f_constant=constant,
        per_color=per_color,
        overall=max(per_color.values(), default=0),
        g2=g2,
        g3=g3,
    )


def _assert_components(g, coloring, classes, g2, g3, delta, f1, f2, f3) -> dict[int, int]:
    class_of = classes.class_of
    for v, c in coloring.color_of.items():
        if c not in CLASS_PALETTES[class_of[v]]:
            raise PipelineInvariantError(f"vertex {v} of U{class_of[v]} has colour {c}", (v,))
    f_of = {1: f1, 2: f2}
    per_color = {1: 0, 2: 0, 3: 0}
    for comp in monochromatic_components(g, coloring):
        color = coloring[comp[0]]
        per_color[color] = max(per_color[color], len(comp))
        if color == 2:
            core_class, core_graph, side_class, core_f = 2, g2, 1, f2
            forbidden = 3
        else:
            core_class, core_graph, core_f = 3, g3, f3
            side_class = 1 if color == 1 else 2
            forbidden = 2 if color == 1 else 1
        if any(class_of[v] == forbidden for v in comp):
            raise PipelineInvariantError(f"colour-{color} component meets U{forbidden}", comp)
        core = [v for v in comp if class_of[v] == core_class]
        side = [v for v in comp if class_of[v] == side_class]
        side_f = f_of[side_class]
        if not core:
            if len(comp) > side_f:
                raise PipelineInvariantError(f"colour-{color} component exceeds f{side_class}", comp)
            continue
        if len(connected_components(core_graph, core)) != 1:
            raise PipelineInvariantError(f"colour-{color} core is disconnected in G{core_class}", comp)
        if len(core) > core_f:
            raise PipelineInvariantError(f"colour-{color} core exceeds f{core_class}", comp)
        core_set = set(core)
        leaving = sum(1 for v in core for u in g.adj[v] if u not in core_set)
        pieces = len(connected_components(g, side)) if side else 0
        if pieces > leaving or leaving > core_f * delta:
            raise PipelineInvariantError(f"colour-{color} component has too many side pieces", comp)
        if len(comp) > (1 + side_f * delta) * core_f:
            raise PipelineInvariantError(f"colour-{color} component exceeds (1 + f D) f", comp)
    return per_color
