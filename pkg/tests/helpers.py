"""Shared generators and first-principles checkers for the test suite."""
import random
from itertools import combinations

from layered_coloring.enlarge import LinkageEntry, LinkageFamily
from layered_coloring.families import FamilySpec, generate_family
from layered_coloring.graph import Graph, TreeDecomposition

SMALL_FAMILIES = [
    FamilySpec("square-grid", 4),
    FamilySpec("square-grid", 6),
    FamilySpec("tri-grid", 5),
    FamilySpec("tri-grid", 7),
    FamilySpec("torus-grid", 4),
    FamilySpec("torus-grid", 5),
    FamilySpec("crossed-grid", 6),
]


def naive_td_ok(g: Graph, td: TreeDecomposition) -> bool:
    """Tree-decomposition check written independently of validate_td."""
    nodes = td.n_nodes
    if nodes == 0:
        return g.n == 0
    if len(td.edges) != nodes - 1:
        return False
    parent = list(range(nodes))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in td.edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    for v in range(g.n):
        holding = [t for t in range(nodes) if v in td.bags[t]]
        if not holding:
            return False
        # the holding nodes must be connected using only edges between holding nodes
        inside = set(holding)
        reached = {holding[0]}
        grew = True
        while grew:
            grew = False
            for a, b in td.edges:
                if a in inside and b in inside and (a in reached) != (b in reached):
                    reached.update((a, b))
                    grew = True
        if reached != inside:
            return False
    for u, v in g.edges():
        if not any(u in bag and v in bag for bag in td.bags):
            return False
    return True


def random_subtree(td: TreeDecomposition, rng: random.Random, size: int) -> list[int]:
    start = rng.randrange(td.n_nodes)
    nodes = {start}
    frontier = set(td.tree_adj[start])
    while len(nodes) < size and frontier:
        t = rng.choice(sorted(frontier))
        nodes.add(t)
        frontier |= set(td.tree_adj[t])
        frontier -= nodes
    return sorted(nodes)


def random_family(td: TreeDecomposition, rng: random.Random, max_entries: int = 4, max_pairs: int = 6) -> LinkageFamily:
    entries = []
    for _ in range(rng.randint(0, max_entries)):
        subtree = random_subtree(td, rng, rng.randint(1, 5))
        covering = rng.sample(subtree, rng.randint(1, min(3, len(subtree))))
        reach = sorted(set().union(*(td.bags[t] for t in covering)))
        candidates = list(combinations(reach, 2))
        pairs = rng.sample(candidates, min(len(candidates), rng.randint(0, max_pairs)))
        entries.append(LinkageEntry.build(covering, subtree, pairs))
    return LinkageFamily(tuple(entries))


def random_augment_instance(seed: int):
    rng = random.Random(seed)
    g, ltd = generate_family(SMALL_FAMILIES[seed % len(SMALL_FAMILIES)])
    return g, ltd.td, random_family(ltd.td, rng)


def recount_union_find(g: Graph, color_of) -> dict[int, int]:
    """Largest monochromatic component per colour, via union-find over monochromatic edges."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges():
        if color_of[u] == color_of[v]:
            parent[find(u)] = find(v)
    sizes: dict[int, int] = {}
    for v in range(g.n):
        r = find(v)
        sizes[r] = sizes.get(r, 0) + 1
    best: dict[int, int] = {}
    for r, s in sizes.items():
        best[color_of[r]] = max(best.get(color_of[r], 0), s)
    return dict(sorted(best.items()))
