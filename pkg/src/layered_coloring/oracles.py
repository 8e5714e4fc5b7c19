"""Exhaustive oracles for desk-scale instances.

Every oracle refuses inputs above a hard size cap instead of running for an
unbounded time.
"""
from __future__ import annotations

from collections import deque

from .errors import SizeError
from .graph import Coloring, Graph

MAX_TWO_COLOR = 20
MAX_THREE_COLOR = 15
MAX_HEX = 4


def _search_order(g: Graph) -> list[int]:
    # BFS order starting at vertex 0 keeps partial components connected early
    seen = [False] * g.n
    order = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for u in g.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
    return order


def _fits(g: Graph, colors: list[int], eta: int, n_colors: int) -> bool:
    order = _search_order(g)

    def component_size(v: int, c: int) -> int:
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for u in g.adj[x]:
                if colors[u] == c and u not in seen:
                    seen.add(u)
                    if len(seen) > eta:
                        return len(seen)
                    stack.append(u)
        return len(seen)

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        # colour symmetry: the first vertex takes colour 0
        for c in range(1 if i == 0 else n_colors):
            colors[v] = c
            if component_size(v, c) <= eta and place(i + 1):
                return True
        colors[v] = -1
        return False

    return place(0)


def min_clustering(g: Graph, n_colors: int) -> tuple[list[int], int]:
    """Colour list (values ``0 .. n_colors-1``) minimising the largest monochromatic component."""
    if g.n == 0:
        return [], 0
    for eta in range(1, g.n + 1):
        colors = [-1] * g.n
        if _fits(g, colors, eta, n_colors):
            return colors, eta
    raise AssertionError("a single colour class always fits eta = n")


def exact_two_color(g: Graph, max_n: int = MAX_TWO_COLOR, palette=(1, 2)) -> tuple[Coloring, int]:
    if g.n > max_n:
        raise SizeError(f"exact_two_color is capped at {max_n} vertices, got {g.n}")
    colors, eta = min_clustering(g, 2)
    return Coloring({v: palette[c] for v, c in enumerate(colors)}, tuple(palette)), eta


def exact_three_color(g: Graph, max_n: int = MAX_THREE_COLOR) -> int:
    if g.n > max_n:
        raise SizeError(f"exact_three_color is capped at {max_n} vertices, got {g.n}")
    return min_clustering(g, 3)[1]


def triangular_grid(n: int) -> Graph:
    from .families import grid_edges

    return Graph.from_edges(n * n, grid_edges(n, diagonals=True))


def _has_path(nbr_masks: list[int], allowed: int, length: int) -> bool:
    """Does ``allowed`` (a vertex bitmask) contain a simple path on ``length`` vertices?"""

    def extend(v: int, used: int, count: int) -> bool:
        if count >= length:
            return True
        options = nbr_masks[v] & allowed & ~used
        while options:
            low = options & -options
            u = low.bit_length() - 1
            if extend(u, used | low, count + 1):
                return True
            options ^= low
        return False

    rest = allowed
    while rest:
        low = rest & -rest
        if extend(low.bit_length() - 1, low, 1):
            return True
        rest ^= low
    return False


def hex_check(n: int) -> list[int] | None:
    """Check every 2-colouring of the ``n x n`` triangular grid for a monochromatic path on ``n`` vertices.

    Returns ``None`` when all colourings pass, else the first failing colouring
    as a list of colours in ``{1, 2}``.
    """
    if not 1 <= n <= MAX_HEX:
        raise SizeError(f"hex_check enumerates 2^(n^2) colourings and is capped at n <= {MAX_HEX}")
    g = triangular_grid(n)
    nbr_masks = [sum(1 << u for u in g.adj[v]) for v in range(g.n)]
    full = (1 << g.n) - 1
    cache: dict[int, bool] = {}

    def long_path(mask: int) -> bool:
        if mask not in cache:
            cache[mask] = _has_path(nbr_masks, mask, n)
        return cache[mask]

    for mask in range(1 << g.n):
        if not (long_path(mask) or long_path(full ^ mask)):
            return [1 + ((mask >> v) & 1) for v in range(g.n)]
    return None
