"""Readers and writers for .gr, .td, .layers and report files.

Files use 1-based vertex and bag ids; everything in memory is 0-based.

Graph (.gr, PACE 2017)::

    c optional comment
    p tw <n> <m>
    <u> <v>            (m lines)

Tree-decomposition (.td, PACE 2017)::

    s td <#bags> <max bag size> <n>
    b <bag id> <v> ...  (one line per bag)
    <b1> <b2>           (#bags - 1 tree edges)

Layering (.layers)::

    s layering <n> <#layers>
    <v> <layer>         (one line per vertex)
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import ParseError, ValidationError
from .graph import Graph, Layering, LayeredTreeDecomposition, TreeDecomposition


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line == "c" or line.startswith("c "):
            continue
        yield number, line.split()


def _ints(tokens, number, path, what):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"non-integer token in {what}", number, path) from None


def parse_gr(text: str, path=None) -> Graph:
    n = m = None
    edges = []
    seen = set()
    for number, tokens in _lines(text):
        if tokens[0] == "p":
            if n is not None:
                raise ParseError("second 'p' header", number, path)
            if len(tokens) != 4 or tokens[1] != "tw":
                raise ParseError("header must be 'p tw <n> <m>'", number, path)
            n, m = _ints(tokens[2:], number, path, "header")
            if n < 0 or m < 0:
                raise ParseError("negative size in header", number, path)
            continue
        if n is None:
            raise ParseError("edge line before 'p tw' header", number, path)
        if len(tokens) != 2:
            raise ParseError("edge line must hold exactly two ids", number, path)
        u, v = _ints(tokens, number, path, "edge line")
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex id out of range 1..{n}", number, path)
        if u == v:
            raise ParseError(f"self-loop at {u}", number, path)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {u} {v}", number, path)
        seen.add(key)
        edges.append((u - 1, v - 1))
    if n is None:
        raise ParseError("missing 'p tw' header", None, path)
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}", None, path)
    return Graph.from_edges(n, edges)


def write_gr(g: Graph) -> str:
    out = [f"p tw {g.n} {g.m}"]
    out.extend(f"{u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def parse_td(text: str, path=None, expected_n: int | None = None) -> TreeDecomposition:
    header = None
    bags: dict[int, list[int]] = {}
    edges = []
    for number, tokens in _lines(text):
        if tokens[0] == "s":
            if header is not None:
                raise ParseError("second 's td' header", number, path)
            if len(tokens) != 5 or tokens[1] != "td":
                raise ParseError("header must be 's td <#bags> <width+1> <n>'", number, path)
            header = _ints(tokens[2:], number, path, "header")
            if min(header) < 0:
                raise ParseError("negative size in header", number, path)
            if expected_n is not None and header[2] != expected_n:
                raise ValidationError(f"decomposition is for {header[2]} vertices, graph has {expected_n}")
            continue
        if header is None:
            raise ParseError("line before 's td' header", number, path)
        n_bags, _, n = header
        if tokens[0] == "b":
            ids = _ints(tokens[1:], number, path, "bag line")
            if not ids:
                raise ParseError("bag line without an id", number, path)
            bag_id, members = ids[0], ids[1:]
            if not 1 <= bag_id <= n_bags:
                raise ParseError(f"bag id {bag_id} out of range 1..{n_bags}", number, path)
            if bag_id in bags:
                raise ParseError(f"bag {bag_id} defined twice", number, path)
            if any(not 1 <= v <= n for v in members):
                raise ParseError(f"vertex id out of range 1..{n}", number, path)
            if len(set(members)) != len(members):
                raise ParseError(f"bag {bag_id} repeats a vertex", number, path)
            bags[bag_id] = [v - 1 for v in members]
            continue
        if len(tokens) != 2:
            raise ParseError("tree edge line must hold exactly two bag ids", number, path)
        a, b = _ints(tokens, number, path, "tree edge")
        if not (1 <= a <= n_bags and 1 <= b <= n_bags):
            raise ParseError(f"bag id out of range 1..{n_bags}", number, path)
        edges.append((a - 1, b - 1))
    if header is None:
        raise ParseError("missing 's td' header", None, path)
    n_bags, declared_size, _ = header
    if len(bags) != n_bags:
        missing = sorted(set(range(1, n_bags + 1)) - set(bags))
        raise ParseError(f"bags {missing[:5]} never defined", None, path)
    td = TreeDecomposition.build([bags[i] for i in range(1, n_bags + 1)], edges, root=0)
    return TreeDecomposition(td.bags, td.edges, td.root, declared_size - 1)


def write_td(td: TreeDecomposition, n: int) -> str:
    out = [f"s td {td.n_nodes} {td.width + 1} {n}"]
    for t, bag in enumerate(td.bags):
        out.append(" ".join(["b", str(t + 1), *(str(v + 1) for v in sorted(bag))]))
    out.extend(f"{a + 1} {b + 1}" for a, b in td.edges)
    return "\n".join(out) + "\n"


def parse_layers(text: str, path=None, expected_n: int | None = None) -> Layering:
    header = None
    layer_of: list[int | None] = []
    for number, tokens in _lines(text):
        if tokens[0] == "s":
            if header is not None:
                raise ParseError("second 's layering' header", number, path)
            if len(tokens) != 4 or tokens[1] != "layering":
                raise ParseError("header must be 's layering <n> <#layers>'", number, path)
            header = _ints(tokens[2:], number, path, "header")
            if header[0] < 0 or header[1] < 1:
                raise ParseError("bad sizes in header", number, path)
            if expected_n is not None and header[0] != expected_n:
                raise ValidationError(f"layering is for {header[0]} vertices, graph has {expected_n}")
            layer_of = [None] * header[0]
            continue
        if header is None:
            raise ParseError("line before 's layering' header", number, path)
        if len(tokens) != 2:
            raise ParseError("layer line must be '<v> <layer>'", number, path)
        v, i = _ints(tokens, number, path, "layer line")
        if not 1 <= v <= header[0]:
            raise ParseError(f"vertex id out of range 1..{header[0]}", number, path)
        if not 1 <= i <= header[1]:
            raise ParseError(f"layer {i} out of range 1..{header[1]}", number, path)
        if layer_of[v - 1] is not None:
            raise ParseError(f"vertex {v} assigned twice", number, path)
        layer_of[v - 1] = i
    if header is None:
        raise ParseError("missing 's layering' header", None, path)
    missing = [v + 1 for v, i in enumerate(layer_of) if i is None]
    if missing:
        raise ParseError(f"vertices {missing[:5]} have no layer", None, path)
    return Layering(tuple(layer_of), header[1])


def write_layers(layering: Layering) -> str:
    out = [f"s layering {layering.n} {layering.n_layers}"]
    out.extend(f"{v + 1} {i}" for v, i in enumerate(layering.layer_of))
    return "\n".join(out) + "\n"


REPORT_KEYS = ("colors", "palette_by_class", "measured", "bounds", "clustering")


def parse_report(text: str, path=None) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, path) from None
    if not isinstance(data, dict):
        raise ParseError("report must be a JSON object", None, path)
    missing = [k for k in REPORT_KEYS if k not in data]
    if missing:
        raise ParseError(f"report lacks keys {missing}", None, path)
    if not isinstance(data["colors"], list) or not all(isinstance(c, int) for c in data["colors"]):
        raise ParseError("'colors' must be a list of integers", None, path)
    return data


def write_report(report) -> str:
    data = report if isinstance(report, dict) else report.to_dict()
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


def read_bundle(gr_path, td_path, layers_path) -> tuple[Graph, LayeredTreeDecomposition]:
    """Load a graph with its decomposition and layering; mismatched ``n`` raises ValidationError."""
    g = parse_gr(Path(gr_path).read_text(), gr_path)
    td = parse_td(Path(td_path).read_text(), td_path, expected_n=g.n)
    layering = parse_layers(Path(layers_path).read_text(), layers_path, expected_n=g.n)
    return g, LayeredTreeDecomposition(td, layering)


def write_bundle(prefix, g: Graph, ltd: LayeredTreeDecomposition) -> list[Path]:
    prefix = str(prefix)
    paths = [Path(prefix + ".gr"), Path(prefix + ".td"), Path(prefix + ".layers")]
    paths[0].write_text(write_gr(g))
    paths[1].write_text(write_td(ltd.td, g.n))
    paths[2].write_text(write_layers(ltd.layering))
    return paths
