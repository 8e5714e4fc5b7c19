"""Two-colouring with small monochromatic components for bounded treewidth and degree.

A rooted tree-decomposition is turned into a tree-partition by contracting,
for every edge whose endpoints have rootmost nodes two or more levels apart,
the vertical tree path between them.  Colouring blocks by depth parity then
confines every monochromatic component to a single block.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import DecompositionError, InternalError
from .graph import (
    Coloring,
    Graph,
    RootedTree,
    TreeDecomposition,
    monochromatic_components,
    tree_violations,
    validate_td,
)
from .oracles import exact_two_color  # noqa: F401  (re-exported oracle)


class DisjointSet:
    """Union-find over ``0 .. n-1`` whose representative is always the smallest member."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        lo, hi = (ra, rb) if ra < rb else (rb, ra)
        self.parent[hi] = lo
        return lo


@dataclass(frozen=True)
class TreePartition:
    """Blocks ``0 .. n_blocks-1`` on a tree; ``block_of[v]`` is the block holding ``v``."""

    block_of: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    n_blocks: int
    root: int = 0

    @cached_property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n_blocks)]
        for v, b in enumerate(self.block_of):
            out[b].append(v)
        return tuple(tuple(x) for x in out)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.blocks), default=0)

    @cached_property
    def rooted(self) -> RootedTree:
        adj: list[list[int]] = [[] for _ in range(self.n_blocks)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return RootedTree.from_adjacency([sorted(x) for x in adj], self.root)


def validate_tree_partition(g: Graph, tp: TreePartition) -> list[str]:
    problems = tree_violations(tp.n_blocks, list(tp.edges))
    if len(tp.block_of) != g.n:
        problems.append(f"partition covers {len(tp.block_of)} vertices, graph has {g.n}")
        return problems
    adjacent = {frozenset(e) for e in tp.edges}
    for u, v in g.edges():
        bu, bv = tp.block_of[u], tp.block_of[v]
        if bu != bv and frozenset((bu, bv)) not in adjacent:
            problems.append(f"edge {u}-{v} joins non-adjacent blocks {bu} and {bv}")
    return problems


def rootmost_assignment(td: TreeDecomposition, g: Graph | None = None) -> dict[int, int]:
    """Map each vertex to the shallowest node whose bag contains it."""
    if g is not None:
        problems = validate_td(g, td)
        if problems:
            raise DecompositionError("invalid tree-decomposition", problems)
    tau: dict[int, int] = {}
    for t in td.rooted.order:
        for v in td.bags[t]:
            if v not in tau:
                tau[v] = t
    return tau


def tree_partition(g: Graph, td: TreeDecomposition) -> TreePartition:
    tau = rootmost_assignment(td, g)
    rt = td.rooted
    dsu = DisjointSet(td.n_nodes)
    for u, v in g.edges():
        top, low = tau[u], tau[v]
        if rt.depth[top] > rt.depth[low]:
            top, low = low, top
        if rt.depth[low] - rt.depth[top] < 2:
            continue
        # merge the vertical path top .. parent(low)
        t = rt.parent[low]
        while t != top:
            dsu.union(t, rt.parent[t])
            t = rt.parent[t]
    reps = sorted({dsu.find(t) for t in range(td.n_nodes)})
    index = {r: i for i, r in enumerate(reps)}
    edges = set()
    for a, b in td.edges:
        ca, cb = index[dsu.find(a)], index[dsu.find(b)]
        if ca != cb:
            edges.add((min(ca, cb), max(ca, cb)))
    tp = TreePartition(
        block_of=tuple(index[dsu.find(tau[v])] for v in range(g.n)),
        edges=tuple(sorted(edges)),
        n_blocks=len(reps),
        root=index[dsu.find(td.root_node)],
    )
    problems = validate_tree_partition(g, tp)
    if problems:
        raise InternalError(f"vertical-path contraction produced an invalid tree-partition: {problems[:3]}")
    return tp


def parity_two_color(tp: TreePartition, palette: Sequence[int] = (1, 2), g: Graph | None = None) -> Coloring:
    """Colour blocks by depth parity.

    Without ``g`` the parity is the block depth in the partition tree.  With
    ``g`` it is taken relative to the topmost block of each group of blocks
    linked by edges of ``g``; blocks with no edges between them may then share
    a colour, and an edgeless graph gets a single colour.
    """
    even, odd = palette
    depth = tp.rooted.depth
    offset = [0] * tp.n_blocks
    if g is not None:
        touching: list[set[int]] = [set() for _ in range(tp.n_blocks)]
        for u, v in g.edges():
            bu, bv = tp.block_of[u], tp.block_of[v]
            if bu != bv:
                touching[bu].add(bv)
                touching[bv].add(bu)
        seen = [False] * tp.n_blocks
        for top in tp.rooted.order:
            if seen[top]:
                continue
            seen[top] = True
            stack = [top]
            while stack:
                b = stack.pop()
                offset[b] = depth[top]
                for nb in touching[b]:
                    if not seen[nb]:
                        seen[nb] = True
                        stack.append(nb)
    return Coloring(
        {v: even if (depth[b] - offset[b]) % 2 == 0 else odd for v, b in enumerate(tp.block_of)},
        (even, odd),
    )


def clustering_of(g: Graph, coloring: Coloring) -> int:
    return max((len(c) for c in monochromatic_components(g, coloring)), default=0)


def two_color_clustered(g: Graph, td: TreeDecomposition, palette: Sequence[int] = (1, 2)) -> tuple[Coloring, int]:
    """Colour ``g`` with two colours; returns the colouring and its measured clustering."""
    tp = tree_partition(g, td)
    coloring = parity_two_color(tp, palette, g)
    clustering = clustering_of(g, coloring)
    if clustering > tp.width:
        raise InternalError(f"clustering {clustering} exceeds tree-partition width {tp.width}")
    return coloring, clustering
