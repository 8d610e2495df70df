"""Text and JSON file formats.

Graph file::

    # comments
    n m d
    u v        (m lines, 0 <= u < v < n)

Coloring file: ``u v c`` per edge, in graph-file edge order.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

import numpy as np

from .census import BallCensus
from .coloring import EdgeColoring, check_coloring
from .errors import BadParams
from .graph import Graph, build_graph


def _data_lines(text: str) -> list[list[str]]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append(line.split())
    return out


def parse_graph(text: str, *, remap: bool = False) -> tuple[Graph, dict[str, int] | None]:
    """Parse the graph format.

    With ``remap`` the endpoint tokens are arbitrary labels, renumbered
    ``0..n-1`` by first appearance; the label -> id mapping is returned.
    """
    lines = _data_lines(text)
    if not lines or len(lines[0]) != 3:
        raise BadParams("first data line must be 'n m d'")
    try:
        n, m, d = (int(t) for t in lines[0])
    except ValueError as exc:
        raise BadParams(f"bad header: {exc}") from None
    body = lines[1:]
    if len(body) != m:
        raise BadParams(f"header declares {m} edges, found {len(body)}")
    mapping: dict[str, int] | None = {} if remap else None
    edges = []
    for toks in body:
        if len(toks) != 2:
            raise BadParams(f"edge line must have two fields: {' '.join(toks)}")
        if remap:
            ids = []
            for t in toks:
                if t not in mapping:
                    mapping[t] = len(mapping)
                ids.append(mapping[t])
            u, v = ids
        else:
            try:
                u, v = int(toks[0]), int(toks[1])
            except ValueError:
                raise BadParams(f"non-integer vertex id in: {' '.join(toks)}") from None
            if not u < v:
                raise BadParams(f"edge lines need u < v: {u} {v}")
        edges.append((u, v))
    if remap and len(mapping) > n:
        raise BadParams(f"{len(mapping)} distinct labels but n={n}")
    return build_graph(n, edges, d), mapping


def read_graph(path, *, remap: bool = False) -> tuple[Graph, dict[str, int] | None]:
    return parse_graph(Path(path).read_text(), remap=remap)


def format_graph(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    edges = g.edges()
    lines.append(f"{g.n} {len(edges)} {g.d}")
    lines += [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def write_graph(path, g: Graph, comment: str | None = None) -> None:
    Path(path).write_text(format_graph(g, comment))


def format_coloring(g: Graph, col: EdgeColoring) -> str:
    return "".join(f"{u} {v} {col.color(u, v)}\n" for u, v in g.edges())


def parse_coloring(g: Graph, text: str) -> EdgeColoring:
    colors = {}
    for toks in _data_lines(text):
        if len(toks) != 3:
            raise BadParams("coloring lines must be 'u v c'")
        u, v, c = (int(t) for t in toks)
        colors[(min(u, v), max(u, v))] = c
    col = EdgeColoring(dict(sorted(colors.items())))
    try:
        check_coloring(g, col)
    except Exception as exc:
        raise BadParams(f"invalid coloring: {exc}") from None
    return col


def read_coloring(path, g: Graph) -> EdgeColoring:
    return parse_coloring(g, Path(path).read_text())


def write_coloring(path, g: Graph, col: EdgeColoring) -> None:
    Path(path).write_text(format_coloring(g, col))


def write_census(path, c: BallCensus) -> None:
    Path(path).write_text(json.dumps(c.to_json(), indent=1) + "\n")


def read_census(path) -> BallCensus:
    return BallCensus.from_json(json.loads(Path(path).read_text()))


def format_spectrum(eigenvalues: Iterable[float]) -> str:
    return "".join(f"{float(x):.17g}\n" for x in eigenvalues)


def parse_spectrum(text: str) -> np.ndarray:
    return np.array([float(t) for t in text.split()], dtype=float)


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=1, sort_keys=False) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
