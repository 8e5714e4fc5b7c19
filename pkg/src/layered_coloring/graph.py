"""Graphs, layerings and tree-decompositions, plus their validators.

Vertex ids are dense integers ``0 .. n-1`` and every set-valued output is
sorted ascending so that results never depend on hash order.  Layer indices
are 1-based (``layer_of[v] == 1`` means ``v`` lies in the first layer).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import InvalidColoringError, InvalidInputError


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0 .. n-1``.

    ``adj[v]`` is the sorted, duplicate-free neighbour tuple of ``v``.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    declared_max_degree: int | None = None

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise InvalidInputError(f"adjacency has {len(self.adj)} rows, expected {self.n}")
        for v, nbrs in enumerate(self.adj):
            for i, u in enumerate(nbrs):
                if not 0 <= u < self.n:
                    raise InvalidInputError(f"neighbour {u} of {v} out of range")
                if u == v:
                    raise InvalidInputError(f"self-loop at {v}")
                if i and nbrs[i - 1] >= u:
                    raise InvalidInputError(f"neighbours of {v} not sorted/unique")
        for v, nbrs in enumerate(self.adj):
            for u in nbrs:
                if v not in self._adj_sets[u]:
                    raise InvalidInputError(f"adjacency not symmetric on {v}-{u}")
        if self.declared_max_degree is not None and self.max_degree > self.declared_max_degree:
            raise InvalidInputError(
                f"measured max degree {self.max_degree} exceeds declared {self.declared_max_degree}"
            )

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], max_degree: int | None = None) -> Graph:
        """Build a graph from an edge iterable; repeated edges collapse to one."""
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
            if u == v:
                raise InvalidInputError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs), max_degree)

    @cached_property
    def _adj_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    @cached_property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    @property
    def delta(self) -> int:
        """Declared maximum degree if present, else the measured one."""
        if self.declared_max_degree is not None:
            return self.declared_max_degree
        return self.max_degree

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj_sets[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Return ``(G[S], ids)`` where local vertex ``i`` is global ``ids[i]``."""
        ids = sorted(set(vertices))
        local = {v: i for i, v in enumerate(ids)}
        adj = tuple(tuple(local[u] for u in self.adj[v] if u in local) for v in ids)
        return Graph(len(ids), adj), ids


@dataclass(frozen=True)
class Layering:
    """Ordered partition of the vertices; ``layer_of[v]`` lies in ``1 .. n_layers``."""

    layer_of: tuple[int, ...]
    n_layers: int

    def __post_init__(self):
        for v, i in enumerate(self.layer_of):
            if not 1 <= i <= self.n_layers:
                raise InvalidInputError(f"vertex {v} has layer {i} outside [1, {self.n_layers}]")

    @classmethod
    def from_sequence(cls, layer_of: Sequence[int], n_layers: int | None = None) -> Layering:
        layer_of = tuple(int(i) for i in layer_of)
        if n_layers is None:
            n_layers = max(layer_of, default=1)
        return cls(layer_of, n_layers)

    @property
    def n(self) -> int:
        return len(self.layer_of)

    @cached_property
    def layers(self) -> tuple[tuple[int, ...], ...]:
        """``layers[i - 1]`` is the sorted vertex tuple of layer ``i``."""
        out: list[list[int]] = [[] for _ in range(self.n_layers)]
        for v, i in enumerate(self.layer_of):
            out[i - 1].append(v)
        return tuple(tuple(layer) for layer in out)

    def layer(self, i: int) -> tuple[int, ...]:
        if 1 <= i <= self.n_layers:
            return self.layers[i - 1]
        return ()


@dataclass(frozen=True)
class TreeDecomposition:
    """A tree on nodes ``0 .. len(bags)-1`` with one bag per node.

    The tree shape is only checked by :func:`validate_td`; helpers that need a
    rooted view assume it is a tree.
    """

    bags: tuple[frozenset[int], ...]
    edges: tuple[tuple[int, int], ...]
    root: int = 0
    declared_width: int | None = field(default=None, compare=False)

    @classmethod
    def build(cls, bags: Iterable[Iterable[int]], edges: Iterable[tuple[int, int]], root: int = 0):
        norm_edges = tuple(sorted((min(a, b), max(a, b)) for a, b in edges))
        return cls(tuple(frozenset(b) for b in bags), norm_edges, root)

    @property
    def n_nodes(self) -> int:
        return len(self.bags)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @cached_property
    def tree_adj(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @property
    def root_node(self) -> int:
        return self.root

    @cached_property
    def rooted(self) -> RootedTree:
        return RootedTree.from_adjacency(self.tree_adj, self.root_node)

    @cached_property
    def vertices(self) -> frozenset[int]:
        return frozenset().union(*self.bags) if self.bags else frozenset()

    def nodes_containing(self, vertices: Iterable[int]) -> list[int]:
        """Sorted list of nodes whose bag meets ``vertices``."""
        vs = set(vertices)
        return [t for t, bag in enumerate(self.bags) if not vs.isdisjoint(bag)]

    def relabel(self, mapping: Mapping[int, int]) -> TreeDecomposition:
        """Rename bag vertices; vertices missing from ``mapping`` are dropped."""
        bags = tuple(frozenset(mapping[v] for v in bag if v in mapping) for bag in self.bags)
        return TreeDecomposition(bags, self.edges, self.root, self.declared_width)


@dataclass(frozen=True)
class RootedTree:
    parent: tuple[int, ...]
    depth: tuple[int, ...]
    order: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]

    @classmethod
    def from_adjacency(cls, adj: Sequence[Sequence[int]], root: int) -> RootedTree:
        n = len(adj)
        parent = [-1] * n
        depth = [-1] * n
        order = []
        if n:
            depth[root] = 0
            queue = deque([root])
            while queue:
                t = queue.popleft()
                order.append(t)
                for s in adj[t]:
                    if depth[s] < 0:
                        depth[s] = depth[t] + 1
                        parent[s] = t
                        queue.append(s)
        children: list[list[int]] = [[] for _ in range(n)]
        for t in order:
            if parent[t] >= 0:
                children[parent[t]].append(t)
        return cls(tuple(parent), tuple(depth), tuple(order), tuple(tuple(c) for c in children))

    def path(self, a: int, b: int) -> list[int]:
        """Nodes on the tree path from ``a`` to ``b`` inclusive."""
        left, right = [a], [b]
        while left[-1] != right[-1]:
            if self.depth[left[-1]] >= self.depth[right[-1]]:
                left.append(self.parent[left[-1]])
            else:
                right.append(self.parent[right[-1]])
        right.pop()
        return left + right[::-1]


@dataclass(frozen=True)
class LayeredTreeDecomposition:
    td: TreeDecomposition
    layering: Layering
    layered_width: int = field(default=-1)

    def __post_init__(self):
        measured = layered_width_of(self.td, self.layering)
        if self.layered_width == -1:
            object.__setattr__(self, "layered_width", measured)
        elif self.layered_width != measured:
            raise InvalidInputError(f"stored layered width {self.layered_width} != measured {measured}")


@dataclass(frozen=True)
class Coloring:
    """Vertex -> colour map over some domain, with a declared palette."""

    color_of: Mapping[int, int]
    palette: tuple[int, ...]

    def __post_init__(self):
        allowed = set(self.palette)
        for v, c in self.color_of.items():
            if c not in allowed:
                raise InvalidColoringError(f"vertex {v} has colour {c} outside palette {self.palette}")

    @property
    def domain(self) -> list[int]:
        return sorted(self.color_of)

    def __getitem__(self, v: int) -> int:
        return self.color_of[v]

    def as_list(self, n: int) -> list[int]:
        try:
            return [self.color_of[v] for v in range(n)]
        except KeyError as exc:
            raise InvalidColoringError(f"vertex {exc.args[0]} is uncoloured") from None


def connected_components(g: Graph, subset: Iterable[int] | None = None) -> list[list[int]]:
    """Components of ``g[subset]``, each sorted, ordered by smallest member."""
    if subset is None:
        inside = set(range(g.n))
    else:
        inside = set(subset)
        bad = [v for v in inside if not 0 <= v < g.n]
        if bad:
            raise InvalidInputError(f"vertex ids {sorted(bad)} out of range [0, {g.n})")
    seen: set[int] = set()
    comps = []
    for s in sorted(inside):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for u in g.adj[v]:
                if u in inside and u not in seen:
                    seen.add(u)
                    comp.append(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def monochromatic_components(g: Graph, coloring: Coloring | Mapping[int, int]) -> list[list[int]]:
    """All monochromatic components over the colouring's domain, ordered by smallest member."""
    color_of = coloring.color_of if isinstance(coloring, Coloring) else coloring
    classes: dict[int, list[int]] = {}
    for v in sorted(color_of):
        classes.setdefault(color_of[v], []).append(v)
    comps = []
    for c in sorted(classes):
        comps.extend(connected_components(g, classes[c]))
    comps.sort(key=lambda comp: comp[0])
    return comps


def validate_layering(g: Graph, layering: Layering) -> list[str]:
    violations = []
    if layering.n != g.n:
        violations.append(f"layering covers {layering.n} vertices, graph has {g.n}")
        return violations
    for u, v in g.edges():
        lu, lv = layering.layer_of[u], layering.layer_of[v]
        if abs(lu - lv) > 1:
            violations.append(f"edge {u}-{v} spans layers {lu} and {lv}")
    return violations


def tree_violations(n_nodes: int, edges: Sequence[tuple[int, int]]) -> list[str]:
    out = []
    if n_nodes == 0:
        return ["tree has no nodes"]
    for a, b in edges:
        if not (0 <= a < n_nodes and 0 <= b < n_nodes) or a == b:
            out.append(f"bad tree edge {a}-{b}")
    if out:
        return out
    if len(set(edges)) != len(edges):
        out.append("repeated tree edge")
    if len(edges) != n_nodes - 1:
        out.append(f"tree has {len(edges)} edges on {n_nodes} nodes")
    adj: list[list[int]] = [[] for _ in range(n_nodes)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        t = stack.pop()
        for s in adj[t]:
            if s not in seen:
                seen.add(s)
                stack.append(s)
    if len(seen) != n_nodes:
        out.append(f"tree is disconnected ({len(seen)} of {n_nodes} nodes reachable from node 0)")
    return out


def validate_td(g: Graph, td: TreeDecomposition) -> list[str]:
    """Every violated tree-decomposition condition, as readable messages."""
    violations = tree_violations(td.n_nodes, td.edges)
    if violations:
        return violations
    if not 0 <= td.root < td.n_nodes:
        violations.append(f"root {td.root} is not a tree node")
    if td.declared_width is not None and td.width > td.declared_width:
        violations.append(f"declared width {td.declared_width} but a bag has {td.width + 1} vertices")
    where: list[list[int]] = [[] for _ in range(g.n)]
    for t, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < g.n:
                violations.append(f"bag {t} holds unknown vertex {v}")
            else:
                where[v].append(t)
    for v in range(g.n):
        if not where[v]:
            violations.append(f"vertex {v} is in no bag")
    for u, v in g.edges():
        if not any(u in td.bags[t] for t in where[v]):
            violations.append(f"edge {u}-{v} is in no bag")
    adj = td.tree_adj
    for v in range(g.n):
        nodes = set(where[v])
        if len(nodes) < 2:
            continue
        start = where[v][0]
        seen = {start}
        stack = [start]
        while stack:
            t = stack.pop()
            for s in adj[t]:
                if s in nodes and s not in seen:
                    seen.add(s)
                    stack.append(s)
        if len(seen) != len(nodes):
            violations.append(f"bags containing vertex {v} are not connected in the tree")
    return violations


def restrict_td(td: TreeDecomposition, subset: Iterable[int]) -> TreeDecomposition:
    keep = frozenset(subset)
    return TreeDecomposition(tuple(bag & keep for bag in td.bags), td.edges, td.root, td.declared_width)


def layered_width_of(td: TreeDecomposition, layering: Layering) -> int:
    best = 0
    for bag in td.bags:
        counts: dict[int, int] = {}
        for v in bag:
            i = layering.layer_of[v]
            counts[i] = counts.get(i, 0) + 1
        if counts:
            best = max(best, max(counts.values()))
    return best


def layered_width(ltd: LayeredTreeDecomposition) -> int:
    return layered_width_of(ltd.td, ltd.layering)


def bfs_layering(g: Graph, roots: Sequence[int] = (0,)) -> Layering:
    """Layer = 1 + BFS distance; each component not reached from ``roots`` restarts at its smallest vertex."""
    dist = [-1] * g.n
    starts = list(roots) + list(range(g.n))
    for s in starts:
        if dist[s] >= 0:
            continue
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.adj[v]:
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    queue.append(u)
    return Layering.from_sequence([d + 1 for d in dist], max(dist, default=0) + 1)


def steiner_subtree(td: TreeDecomposition, nodes: Iterable[int]) -> list[int]:
    """Smallest subtree of the decomposition tree containing ``nodes``, sorted."""
    nodes = sorted(set(nodes))
    if not nodes:
        return []
    rt = td.rooted
    out = {nodes[0]}
    for t in nodes[1:]:
        out.update(rt.path(nodes[0], t))
    return sorted(out)


def is_connected_in_tree(td: TreeDecomposition, nodes: Iterable[int]) -> bool:
    nodes = set(nodes)
    if not nodes:
        return True
    start = min(nodes)
    seen = {start}
    stack = [start]
    while stack:
        t = stack.pop()
        for s in td.tree_adj[t]:
            if s in nodes and s not in seen:
                seen.add(s)
                stack.append(s)
    return len(seen) == len(nodes)


def contract_equal_bags(td: TreeDecomposition) -> TreeDecomposition:
    """Merge tree-adjacent nodes that carry identical bags; node order follows the smallest original id."""
    rep = list(range(td.n_nodes))

    def find(t):
        while rep[t] != t:
            rep[t] = rep[rep[t]]
            t = rep[t]
        return t

    for a, b in td.edges:
        if td.bags[a] == td.bags[b]:
            ra, rb = find(a), find(b)
            rep[max(ra, rb)] = min(ra, rb)
    classes = sorted({find(t) for t in range(td.n_nodes)})
    new_id = {r: i for i, r in enumerate(classes)}
    edges = {
        (min(new_id[find(a)], new_id[find(b)]), max(new_id[find(a)], new_id[find(b)]))
        for a, b in td.edges
        if find(a) != find(b)
    }
    root = new_id[find(td.root_node)] if td.n_nodes else 0
    return TreeDecomposition.build([td.bags[r] for r in classes], edges, root=root)
