"""Layered tree-decompositions of embedded planar graphs with layered width at most 3.

The graph is triangulated inside its embedding, a BFS spanning tree of the
original graph is fixed, and the triangles become decomposition nodes joined
along the duals of non-tree edges.  The bag of a triangle is the union of the
three tree paths from its corners to the root, so it meets every BFS layer in
at most three vertices.
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import DecompositionError, EmbeddingError, InvalidInputError
from .graph import (
    Graph,
    Layering,
    LayeredTreeDecomposition,
    TreeDecomposition,
    connected_components,
    contract_equal_bags,
    validate_layering,
    validate_td,
)


@dataclass(frozen=True)
class RotationSystem:
    """``rotations[v]`` lists the neighbours of ``v`` in cyclic (counter-clockwise) order."""

    rotations: tuple[tuple[int, ...], ...]
    genus0: bool = True

    @classmethod
    def from_lists(cls, rotations: Sequence[Sequence[int]]) -> RotationSystem:
        return cls(tuple(tuple(int(u) for u in r) for r in rotations))

    @property
    def n(self) -> int:
        return len(self.rotations)

    def graph(self) -> Graph:
        edges = []
        for v, rot in enumerate(self.rotations):
            if len(set(rot)) != len(rot):
                raise InvalidInputError(f"rotation of {v} repeats a neighbour")
            edges.extend((v, u) for u in rot)
        g = Graph.from_edges(self.n, edges)
        for v, rot in enumerate(self.rotations):
            if len(rot) != g.degree(v):
                raise InvalidInputError(f"rotation system is not symmetric at vertex {v}")
        return g

    def faces(self) -> list[list[int]]:
        """Face boundary walks as vertex lists; walk ``[a, b, c]`` uses darts a->b, b->c, c->a."""
        pos = [{u: i for i, u in enumerate(rot)} for rot in self.rotations]
        used = set()
        faces = []
        for v in range(self.n):
            for u in self.rotations[v]:
                if (v, u) in used:
                    continue
                walk = []
                a, b = v, u
                while (a, b) not in used:
                    used.add((a, b))
                    walk.append(a)
                    rot = self.rotations[b]
                    nxt = rot[(pos[b][a] + 1) % len(rot)]
                    a, b = b, nxt
                faces.append(walk)
        return faces

    def to_json(self) -> str:
        # ids are 1-based on disk, like the .gr / .td formats
        return json.dumps({"rotations": [[u + 1 for u in rot] for rot in self.rotations]})

    @classmethod
    def from_json(cls, text: str) -> RotationSystem:
        data = json.loads(text)
        try:
            rots = data["rotations"]
        except (KeyError, TypeError):
            raise InvalidInputError("rotation JSON needs a 'rotations' list") from None
        return cls.from_lists([[int(u) - 1 for u in rot] for rot in rots])


def rotation_from_coordinates(g: Graph, coords: Sequence[tuple[float, float]]) -> RotationSystem:
    """Rotation system of a straight-line drawing (neighbours sorted by angle)."""
    rots = []
    for v in range(g.n):
        x0, y0 = coords[v]
        rots.append(sorted(g.adj[v], key=lambda u: math.atan2(coords[u][1] - y0, coords[u][0] - x0)))
    return RotationSystem.from_lists(rots)


def grid_rotation(n: int, diagonals: bool = False) -> tuple[Graph, RotationSystem]:
    """Straight-line embedding of the square grid (or the triangulated grid)."""
    from .families import grid_edges

    g = Graph.from_edges(n * n, grid_edges(n, diagonals))
    coords = [(c, -r) for r in range(n) for c in range(n)]
    return g, rotation_from_coordinates(g, coords)


def _triangulate(faces: list[list[int]], n_edges: int, edge_id: dict) -> tuple[list, list]:
    """Split every face into triangles by adding chords.

    Returns ``(triangles, chords)`` where each triangle is a list of
    ``(vertex, edge id of the dart leaving it)`` and ``chords`` lists the new
    edges as vertex pairs (ids continue after ``n_edges``).
    """
    triangles = []
    chords = []
    for walk in faces:
        face = [(walk[i], edge_id[frozenset((walk[i], walk[(i + 1) % len(walk)]))]) for i in range(len(walk))]
        while len(face) > 3:
            k = len(face)
            apex = min(range(k), key=lambda i: (face[i][0], i))
            p = apex
            if face[p][0] == face[(p + 2) % k][0]:
                p = next(i for i in range(k) if face[i][0] != face[(i + 2) % k][0])
            a, b, c = face[p], face[(p + 1) % k], face[(p + 2) % k]
            chord = n_edges + len(chords)
            chords.append((a[0], c[0]))
            triangles.append([a, b, (c[0], chord)])
            face[p] = (a[0], chord)
            del face[(p + 1) % k]
        triangles.append(face)
    return triangles, chords


def planar_ltd(rot: RotationSystem, root: int = 0) -> LayeredTreeDecomposition:
    g = rot.graph()
    if g.n == 0:
        raise InvalidInputError("empty graph")
    if not 0 <= root < g.n:
        raise InvalidInputError(f"root {root} out of range")
    if len(connected_components(g)) != 1:
        raise InvalidInputError("planar_ltd needs a connected graph")
    layering_dist, parent = _bfs_tree(g, root)
    layering = Layering.from_sequence([d + 1 for d in layering_dist], max(layering_dist) + 1)

    if g.m <= 1:
        td = TreeDecomposition.build([range(g.n)], [], root=0)
        return _checked(g, LayeredTreeDecomposition(td, layering))

    faces = rot.faces()
    if g.n - g.m + len(faces) != 2:
        raise EmbeddingError(f"Euler check failed: V - E + F = {g.n - g.m + len(faces)}, expected 2")

    edge_list = g.edges()
    edge_id = {frozenset(e): i for i, e in enumerate(edge_list)}
    triangles, chords = _triangulate(faces, len(edge_list), edge_id)

    tree_edges = {edge_id[frozenset((v, parent[v]))] for v in range(g.n) if parent[v] >= 0}
    sides: dict[int, list[int]] = {}
    for f, tri in enumerate(triangles):
        for _, e in tri:
            sides.setdefault(e, []).append(f)
    dual_edges = []
    for e in sorted(sides):
        if e in tree_edges:
            continue
        fs = sides[e]
        if len(fs) != 2 or fs[0] == fs[1]:
            raise DecompositionError(f"edge {e} does not separate two distinct triangles")
        dual_edges.append((fs[0], fs[1]))
    if len(dual_edges) != len(triangles) - 1:
        raise DecompositionError(
            f"cotree has {len(dual_edges)} edges on {len(triangles)} triangles"
        )

    path_cache: dict[int, frozenset[int]] = {}

    def root_path(v):
        if v not in path_cache:
            p = parent[v]
            path_cache[v] = frozenset({v}) if p < 0 else root_path(p) | {v}
        return path_cache[v]

    for v in sorted(range(g.n), key=lambda v: layering_dist[v]):
        root_path(v)
    bags = [frozenset().union(*(path_cache[v] for v, _ in tri)) for tri in triangles]
    td = contract_equal_bags(TreeDecomposition.build(bags, dual_edges, root=0))
    return _checked(g, LayeredTreeDecomposition(td, layering))


def _bfs_tree(g: Graph, root: int):
    dist = [-1] * g.n
    parent = [-1] * g.n
    dist[root] = 0
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in g.adj[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                parent[u] = v
                queue.append(u)
    return dist, parent


def _checked(g: Graph, ltd: LayeredTreeDecomposition) -> LayeredTreeDecomposition:
    problems = validate_td(g, ltd.td) + validate_layering(g, ltd.layering)
    if problems:
        raise DecompositionError("planar construction produced an invalid decomposition", problems)
    if ltd.layered_width > 3:
        raise DecompositionError(f"planar construction has layered width {ltd.layered_width} > 3")
    return ltd
