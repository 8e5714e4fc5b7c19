"""Benchmark graph families with analytically built layered tree-decompositions."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InternalError, InvalidSpecError
from .graph import Graph, Layering, LayeredTreeDecomposition, TreeDecomposition, validate_layering, validate_td

FAMILIES = ("square-grid", "tri-grid", "torus-grid", "crossed-grid")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    crossings: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidSpecError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        # n = 2 on the torus would need parallel edges
        min_n = 3 if self.family == "torus-grid" else 2
        if self.n < min_n:
            raise InvalidSpecError(f"{self.family} needs n >= {min_n}, got {self.n}")
        if self.crossings < 1:
            raise InvalidSpecError("crossings must be a positive stride")


def grid_id(n: int, row: int, col: int) -> int:
    return row * n + col


def _column_path_td(n: int, extra_cols=()) -> TreeDecomposition:
    # bag j = columns j, j+1 (plus extra_cols), joined as a path
    bags = []
    for j in range(max(n - 1, 1)):
        cols = {j, min(j + 1, n - 1), *extra_cols}
        bags.append({grid_id(n, r, c) for r in range(n) for c in cols})
    return TreeDecomposition.build(bags, [(j, j + 1) for j in range(len(bags) - 1)], root=0)


def _row_layering(n: int) -> Layering:
    return Layering.from_sequence([r + 1 for r in range(n) for _ in range(n)], n)


def crossing_faces(n: int, stride: int) -> list[tuple[int, int]]:
    """Grid faces (top-left corner) that receive a crossing.

    Only faces with both coordinates even are candidates, so no two chosen
    faces share a vertex; every ``stride``-th candidate is taken.
    """
    candidates = [(r, c) for r in range(0, n - 1, 2) for c in range(0, n - 1, 2)]
    return candidates[::stride]


def grid_edges(n: int, diagonals: bool = False) -> list[tuple[int, int]]:
    edges = []
    for r in range(n):
        for c in range(n):
            v = grid_id(n, r, c)
            if c + 1 < n:
                edges.append((v, grid_id(n, r, c + 1)))
            if r + 1 < n:
                edges.append((v, grid_id(n, r + 1, c)))
            if diagonals and r + 1 < n and c + 1 < n:
                edges.append((v, grid_id(n, r + 1, c + 1)))
    return edges


def generate_family(spec: FamilySpec) -> tuple[Graph, LayeredTreeDecomposition]:
    n = spec.n
    if spec.family == "square-grid":
        g = Graph.from_edges(n * n, grid_edges(n))
        td, layering = _column_path_td(n), _row_layering(n)
    elif spec.family == "tri-grid":
        g = Graph.from_edges(n * n, grid_edges(n, diagonals=True))
        td, layering = _column_path_td(n), _row_layering(n)
    elif spec.family == "crossed-grid":
        edges = grid_edges(n)
        for r, c in crossing_faces(n, spec.crossings):
            edges.append((grid_id(n, r, c), grid_id(n, r + 1, c + 1)))
            edges.append((grid_id(n, r, c + 1), grid_id(n, r + 1, c)))
        g = Graph.from_edges(n * n, edges)
        # both diagonals of a face already sit in the bag of its left column
        td, layering = _column_path_td(n), _row_layering(n)
    else:
        edges = []
        for r in range(n):
            for c in range(n):
                edges.append((grid_id(n, r, c), grid_id(n, r, (c + 1) % n)))
                edges.append((grid_id(n, r, c), grid_id(n, (r + 1) % n, c)))
        g = Graph.from_edges(n * n, edges)
        td = _column_path_td(n, extra_cols=(0, n - 1))
        # row k (1-based) and row n + 2 - k share layer k
        layer_of_row = [min(k, n + 2 - k) for k in range(1, n + 1)]
        layering = Layering.from_sequence(
            [layer_of_row[r] for r in range(n) for _ in range(n)], max(layer_of_row)
        )
    ltd = LayeredTreeDecomposition(td, layering)
    _check_emitted(g, ltd)
    return g, ltd


def _check_emitted(g: Graph, ltd: LayeredTreeDecomposition) -> None:
    problems = validate_td(g, ltd.td) + validate_layering(g, ltd.layering)
    if problems:
        raise InternalError(f"generated decomposition is invalid: {problems[:3]}")


def random_ktree_subgraph(
    n: int, k: int = 2, max_degree: int = 4, keep_prob: float = 0.8, seed: int = 0
) -> tuple[Graph, TreeDecomposition]:
    """Random subgraph of a random ``k``-tree together with its width-``k`` decomposition.

    Edges are dropped at random and then greedily until every degree is at
    most ``max_degree``; dropping edges keeps the decomposition valid.
    """
    if n < 1:
        raise InvalidSpecError("n must be positive")
    rng = random.Random(seed)
    base = min(n, k + 1)
    bags = [set(range(base))]
    tree_edges = []
    edges = {(a, b) for a in range(base) for b in range(a + 1, base)}
    # each k-clique maps to a node whose bag contains it
    cliques = []
    for node, bag in enumerate(bags):
        for drop in sorted(bag):
            cliques.append((frozenset(bag - {drop}), node))
    for v in range(base, n):
        clique, host = cliques[rng.randrange(len(cliques))]
        node = len(bags)
        bags.append(set(clique) | {v})
        tree_edges.append((host, node))
        for u in clique:
            edges.add((min(u, v), max(u, v)))
        for u in sorted(clique):
            cliques.append((frozenset((clique - {u}) | {v}), node))
    kept = sorted(e for e in sorted(edges) if rng.random() < keep_prob)
    degree = [0] * n
    final = []
    for u, v in kept:
        if degree[u] < max_degree and degree[v] < max_degree:
            final.append((u, v))
            degree[u] += 1
            degree[v] += 1
    g = Graph.from_edges(n, final)
    return g, TreeDecomposition.build(bags, tree_edges, root=0)
