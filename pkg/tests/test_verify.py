import copy

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import recount_union_find
from layered_coloring.errors import InvalidColoringError
from layered_coloring.families import FamilySpec, generate_family, random_ktree_subgraph
from layered_coloring.graph import Graph
from layered_coloring.pipeline import three_color
from layered_coloring.verify import check_pipeline_invariants, cluster_stats

PALETTES = {1: (1, 2), 2: (2, 3), 3: (1, 3)}


@pytest.fixture(scope="module")
def tri8():
    g, ltd = generate_family(FamilySpec("tri-grid", 8))
    return g, ltd, three_color(g, ltd).to_dict()


def test_cluster_stats_examples():
    path = Graph.from_edges(5, [(i, i + 1) for i in range(4)])
    assert cluster_stats(path, {v: 1 + v % 2 for v in range(5)}).clustering == 1
    stats = cluster_stats(path, {v: 3 for v in range(5)})
    assert stats.clustering == 5 and stats.histogram == {5: 1} and stats.largest[3] == (0, 1, 2, 3, 4)
    with pytest.raises(InvalidColoringError):
        cluster_stats(path, {0: 1})


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 100_000), st.integers(2, 25), st.data())
def test_cluster_stats_matches_union_find(seed, n, data):
    g, _ = random_ktree_subgraph(n, k=3, max_degree=6, seed=seed)
    colors = data.draw(st.lists(st.integers(1, 3), min_size=n, max_size=n))
    color_of = dict(enumerate(colors))
    stats = cluster_stats(g, color_of)
    assert stats.max_size == recount_union_find(g, color_of)
    assert stats.total_vertices == n
    assert sum(stats.component_count.values()) == sum(stats.histogram.values())


def test_pipeline_report_matches_recomputation():
    g, ltd = generate_family(FamilySpec("tri-grid", 16))
    report = three_color(g, ltd)
    stats = cluster_stats(g, report.coloring)
    assert stats.max_size == {c: s for c, s in report.per_color.items() if s}
    assert stats.clustering == report.overall


def test_untouched_output_is_ok(tri8):
    g, ltd, data = tri8
    assert check_pipeline_invariants(g, ltd, data) == []
    assert check_pipeline_invariants(g, ltd.layering, data) == []


def _flip(data, v, color):
    out = copy.deepcopy(data)
    out["colors"][v] = color
    return out


def test_out_of_palette_recolouring_always_caught(tri8):
    g, ltd, data = tri8
    for v in range(g.n):
        j = (ltd.layering.layer_of[v] - 1) % 3 + 1
        bad = ({1, 2, 3} - set(PALETTES[j])).pop()
        problems = check_pipeline_invariants(g, ltd, _flip(data, v, bad))
        assert any(f"vertex {v} in U{j}" in p for p in problems)


def test_in_palette_flip_caught_when_clustering_changes(tri8):
    g, ltd, data = tri8
    recorded = {int(c): s for c, s in data["clustering"]["per_color"].items() if s}
    for v in range(g.n):
        j = (ltd.layering.layer_of[v] - 1) % 3 + 1
        a, b = PALETTES[j]
        flipped = _flip(data, v, b if data["colors"][v] == a else a)
        if cluster_stats(g, dict(enumerate(flipped["colors"]))).max_size != recorded:
            assert check_pipeline_invariants(g, ltd, flipped)


def test_hand_built_colouring_with_u1_vertex_three(tri8):
    g, ltd, data = tri8
    u1_vertex = ltd.layering.layer(1)[0]
    hand = _flip(data, u1_vertex, 3)
    assert any("U1" in p for p in check_pipeline_invariants(g, ltd, hand))


def test_report_tampering(tri8):
    g, ltd, data = tri8
    tampered = copy.deepcopy(data)
    tampered["measured"]["f1"] += 1
    assert check_pipeline_invariants(g, ltd, tampered)
    tampered = copy.deepcopy(data)
    tampered["clustering"]["overall"] += 1
    assert check_pipeline_invariants(g, ltd, tampered)
    tampered = copy.deepcopy(data)
    tampered["measured"]["widths"]["phase2"]["after"] += 100
    assert check_pipeline_invariants(g, ltd, tampered)
    assert check_pipeline_invariants(g, ltd, {**data, "colors": data["colors"][:-1]})
