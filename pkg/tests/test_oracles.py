import pytest

from layered_coloring.errors import SizeError
from layered_coloring.families import FamilySpec, generate_family
from layered_coloring.graph import Graph
from layered_coloring.oracles import exact_three_color, hex_check, min_clustering, triangular_grid
from layered_coloring.verify import cluster_stats


@pytest.mark.parametrize(
    "g, expected",
    [
        (Graph.from_edges(4, [(a, b) for a in range(4) for b in range(a + 1, 4)]), 2),
        (Graph.from_edges(5, [(i, i + 1) for i in range(4)]), 1),
        (generate_family(FamilySpec("square-grid", 3))[0], 1),
        (Graph.from_edges(0, []), 0),
    ],
)
def test_exact_three_color(g, expected):
    assert exact_three_color(g) == expected


def test_min_clustering_returns_witness():
    g = triangular_grid(3)
    colors, eta = min_clustering(g, 2)
    assert cluster_stats(g, dict(enumerate(colors))).clustering == eta


def test_three_color_cap():
    with pytest.raises(SizeError):
        exact_three_color(Graph.from_edges(16, []))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hex(n):
    assert hex_check(n) is None


@pytest.mark.parametrize("n", [0, 5])
def test_hex_cap(n):
    with pytest.raises(SizeError):
        hex_check(n)

