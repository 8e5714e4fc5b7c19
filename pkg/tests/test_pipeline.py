import json
from pathlib import Path

import pytest

from layered_coloring.errors import ValidationError
from layered_coloring.families import FamilySpec, generate_family, random_ktree_subgraph
from layered_coloring.graph import (
    Coloring,
    Graph,
    Layering,
    LayeredTreeDecomposition,
    TreeDecomposition,
    bfs_layering,
    connected_components,
)
from layered_coloring.oracles import exact_three_color
from layered_coloring.pipeline import (
    PipelineConfig,
    build_linkages_phase2,
    phase1,
    phase2,
    split_layers,
    three_color,
)
from layered_coloring.verify import check_pipeline_invariants

CALIBRATION = json.loads((Path(__file__).parent / "data" / "calibration.json").read_text())


def _ltd(g, bags, tree_edges, layer_of):
    return LayeredTreeDecomposition(TreeDecomposition.build(bags, tree_edges), Layering.from_sequence(layer_of))


def _star(leaves):
    # centre 0 in layer 1, leaves in layer 2, one bag per spoke hung off the first
    g = Graph.from_edges(leaves + 1, [(0, v) for v in range(1, leaves + 1)])
    ltd = _ltd(g, [[0, v] for v in range(1, leaves + 1)], [(0, i) for i in range(1, leaves)], [1] + [2] * leaves)
    return g, ltd


def test_split_layers_examples():
    one = split_layers(Layering.from_sequence([1, 1, 1]))
    assert one.U(1) == (0, 1, 2) and one.U(2) == () and one.U(3) == ()
    four = split_layers(Layering.from_sequence([1, 2, 3, 4]))
    assert four.U(1) == (0, 3) and four.U(2) == (1,) and four.U(3) == (2,)
    assert four.U(4) == four.U(1) and four.layer_indices[0] == (1, 4)
    n = 9
    g, ltd = generate_family(FamilySpec("tri-grid", n))
    classes = split_layers(ltd.layering, g)
    assert len(classes.U(1)) == 3 * n and classes.layer_indices[0] == (1, 4, 7)


def test_split_layers_rejects_same_class_edge():
    g = Graph.from_edges(2, [(0, 1)])
    with pytest.raises(ValidationError):
        split_layers(Layering.from_sequence([1, 4]), g)


def test_phase1_edgeless():
    g = Graph.from_edges(4, [])
    ltd = _ltd(g, [[0, 1], [2, 3]], [(0, 1)], [1, 1, 1, 1])
    c1, f1, _ = phase1(g, ltd, split_layers(ltd.layering))
    assert set(c1.color_of.values()) == {1} and f1 == 1


def test_phase1_single_layer_is_two_colouring():
    g, td = random_ktree_subgraph(12, seed=3)
    ltd = LayeredTreeDecomposition(td, Layering.from_sequence([1] * g.n))
    c1, f1, width = phase1(g, ltd, split_layers(ltd.layering))
    assert sorted(c1.color_of) == list(range(g.n)) and width == td.width
    assert f1 == max(len(c) for c in connected_components(g, [v for v in range(g.n) if c1[v] == 1])
                     + connected_components(g, [v for v in range(g.n) if c1[v] == 2]))


def test_phase1_tri_grid_plateau():
    values = []
    for n in (16, 32, 64):
        g, ltd = generate_family(FamilySpec("tri-grid", n))
        values.append(phase1(g, ltd, split_layers(ltd.layering))[1])
    assert values == [CALIBRATION["tri_grid"]["f1"]] * 3


@pytest.mark.parametrize("leaves, pairs", [(1, 0), (3, 3), (4, 6)])
def test_linkage_pair_counts(leaves, pairs):
    g, ltd = _star(leaves)
    c1 = Coloring({0: 2}, (1, 2))
    links = build_linkages_phase2(g, ltd.td, c1, ltd.layering)
    assert len(links) == 1 and len(links[0].pairs) == pairs
    assert set(links[0].covering) <= set(links[0].subtree)
    assert len(links[0].covering) <= links[0].boundary_edges


def test_no_colour_two_components_no_linkages():
    g, ltd = _star(3)
    assert build_linkages_phase2(g, ltd.td, Coloring({0: 1}, (1, 2)), ltd.layering) == []


def test_phase2_joins_neighbours():
    g, ltd = _star(2)
    classes = split_layers(ltd.layering)
    c1 = Coloring({0: 2}, (1, 2))
    links = build_linkages_phase2(g, ltd.td, c1, ltd.layering)
    g2, td2, c2, f2, stats = phase2(g, ltd, classes, links)
    assert g2.has_edge(1, 2) and not g.has_edge(1, 2)
    assert set(c2.color_of) == {1, 2}
    assert f2 == max(len(c) for c in connected_components(g2, [v for v in (1, 2) if c2[v] == c2[1]]) + [[0]])
    assert stats.k == 1 and stats.d == 1


def test_phase2_without_linkages_edgeless_u2():
    g = Graph.from_edges(3, [(0, 1), (0, 2)])
    ltd = _ltd(g, [[0, 1], [0, 2]], [(0, 1)], [1, 2, 2])
    classes = split_layers(ltd.layering)
    g2, _, c2, f2, _ = phase2(g, ltd, classes, [])
    assert set(c2.color_of.values()) == {2} and f2 == 1 and g2.m == 0


def test_two_layers_leave_u3_empty():
    g, ltd = _star(3)
    report = three_color(g, ltd)
    assert report.f3 == 0 and report.bounds_measured.f3 == 1
    assert report.overall >= 1


@pytest.mark.parametrize("n", [16, 32, 64])
def test_tri_grid_plateau(n):
    g, ltd = generate_family(FamilySpec("tri-grid", n))
    report = three_color(g, ltd)
    pinned = CALIBRATION["tri_grid"]
    assert (report.f1, report.f2, report.f3) == (pinned["f1"], pinned["f2"], pinned["f3"])
    assert report.overall == pinned["overall_clustering"]
    assert report.phase3.h <= 2 * (report.phase2.width_after + 1)
    assert report.phase2.width_after <= report.phase2.width_before + 2 * report.phase2.h * report.phase2.k


def test_torus_completes():
    g, ltd = generate_family(FamilySpec("torus-grid", 8))
    report = three_color(g, ltd)
    assert report.f3 > 0 and check_pipeline_invariants(g, ltd, report) == []


def test_edgeless_graph():
    g = Graph.from_edges(6, [])
    ltd = _ltd(g, [[v] for v in range(6)], [(v, v + 1) for v in range(5)], [1, 2, 3, 4, 5, 6])
    assert three_color(g, ltd).overall == 1


@pytest.mark.parametrize("seed", range(12))
def test_small_graph_not_better_than_optimum(seed):
    g, td = random_ktree_subgraph(5, seed=seed)
    ltd = LayeredTreeDecomposition(td, bfs_layering(g))
    assert exact_three_color(g) <= three_color(g, ltd).overall


def test_invalid_input_rejected():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    ltd = _ltd(g, [[0, 1]], [], [1, 1, 1])
    with pytest.raises(ValidationError):
        three_color(g, ltd)


def test_report_schema_and_threads():
    g, ltd = generate_family(FamilySpec("crossed-grid", 12))
    one = three_color(g, ltd, PipelineConfig(threads=1))
    four = three_color(g, ltd, PipelineConfig(threads=4))
    assert one.to_json() == four.to_json()
    data = one.to_dict()
    assert set(data) == {"colors", "palette_by_class", "measured", "bounds", "clustering"}
    assert {"f1", "f2", "f3", "widths", "h", "k", "d"} <= set(data["measured"])
    assert set(data["bounds"]) >= {"model", "measured"}


def test_f_model_constant_reaches_report():
    g, ltd = generate_family(FamilySpec("square-grid", 6))
    report = three_color(g, ltd, PipelineConfig(f_model="5/2"))
    assert report.to_dict()["bounds"]["f_model_constant"] == "5/2"
    # layered width 2, max degree 4: 5/2 * 3 * 4
    assert report.bounds_model.f1 == 30
