"""Add pair-sets to a graph and grow its tree-decomposition along subtrees.

For each entry ``(Y, T, E)`` of a linkage family, the endpoints ``Z`` of the
pairs in ``E`` are added to every bag on the subtree ``T``.  Because every
endpoint already sits in a bag indexed by ``Y`` and ``Y`` lies inside ``T``,
the grown bags still form a tree-decomposition, now also covering ``E``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import DecompositionError, InternalError, LinkageError
from .graph import Graph, TreeDecomposition, is_connected_in_tree, validate_td


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class LinkageEntry:
    covering: tuple[int, ...]          # Y: decomposition nodes
    subtree: tuple[int, ...]           # T: connected node set containing Y
    pairs: tuple[tuple[int, int], ...]  # E: unordered vertex pairs

    @classmethod
    def build(cls, covering: Iterable[int], subtree: Iterable[int], pairs: Iterable[tuple[int, int]]):
        pair_set = set()
        for u, v in pairs:
            if u == v:
                raise LinkageError(f"self-pair ({u}, {u}) in linkage entry")
            pair_set.add(_pair(u, v))
        return cls(tuple(sorted(set(covering))), tuple(sorted(set(subtree))), tuple(sorted(pair_set)))

    @property
    def endpoints(self) -> list[int]:
        return sorted({v for p in self.pairs for v in p})


@dataclass(frozen=True)
class LinkageFamily:
    entries: tuple[LinkageEntry, ...] = ()

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class AugmentResult:
    g_prime: Graph
    td_prime: TreeDecomposition
    h_actual: int
    k_actual: int
    d_actual: int
    added_per_node: tuple[int, ...] = field(repr=False, default=())


def family_violations(td: TreeDecomposition, fam: LinkageFamily) -> list[str]:
    problems = []
    for i, entry in enumerate(fam):
        bad_nodes = [t for t in entry.covering + entry.subtree if not 0 <= t < td.n_nodes]
        if bad_nodes:
            problems.append(f"entry {i}: unknown nodes {bad_nodes}")
            continue
        if not is_connected_in_tree(td, entry.subtree):
            problems.append(f"entry {i}: subtree is disconnected")
        if not set(entry.covering) <= set(entry.subtree):
            problems.append(f"entry {i}: covering nodes not inside the subtree")
        reach = frozenset().union(*(td.bags[t] for t in entry.covering)) if entry.covering else frozenset()
        for u, v in entry.pairs:
            if u == v:
                problems.append(f"entry {i}: self-pair ({u}, {v})")
            elif u not in reach or v not in reach:
                problems.append(f"entry {i}: pair ({u}, {v}) leaves the covering bags")
    return problems


def measure_overlap(td: TreeDecomposition, fam: LinkageFamily) -> int:
    """Largest number of family subtrees passing through one node."""
    counts = [0] * td.n_nodes
    for entry in fam:
        for t in entry.subtree:
            counts[t] += 1
    return max(counts, default=0)


def augment(g: Graph, td: TreeDecomposition, fam: LinkageFamily) -> AugmentResult:
    problems = validate_td(g, td)
    if problems:
        raise DecompositionError("augment needs a valid tree-decomposition", problems)
    problems = family_violations(td, fam)
    if problems:
        raise LinkageError("invalid linkage family", problems)

    extra: list[set[int]] = [set() for _ in range(td.n_nodes)]
    all_pairs: set[tuple[int, int]] = set()
    for entry in fam:
        z = entry.endpoints
        for t in entry.subtree:
            extra[t].update(z)
        all_pairs.update(entry.pairs)
    bags = tuple(bag | extra[t] for t, bag in enumerate(td.bags))
    td_prime = TreeDecomposition(bags, td.edges, td.root)
    g_prime = Graph.from_edges(g.n, list(g.edges()) + sorted(all_pairs))

    pair_count = [0] * g.n
    for u, v in all_pairs:
        pair_count[u] += 1
        pair_count[v] += 1
    h = measure_overlap(td, fam)
    k = max((len(e.pairs) for e in fam), default=0)
    d = max(pair_count, default=0)
    added = tuple(len(bags[t]) - len(td.bags[t]) for t in range(td.n_nodes))

    # growth guarantees, checked against the measured parameters
    problems = validate_td(g_prime, td_prime)
    if problems:
        raise InternalError(f"augmented decomposition is invalid: {problems[:3]}")
    for t, grown in enumerate(added):
        if grown > 2 * h * k:
            raise InternalError(f"bag {t} grew by {grown} > 2hk = {2 * h * k}")
    for v in range(g.n):
        if g_prime.degree(v) > g.degree(v) + pair_count[v]:
            raise InternalError(f"degree of {v} grew beyond its pair count")
    return AugmentResult(g_prime, td_prime, h, k, d, added)
