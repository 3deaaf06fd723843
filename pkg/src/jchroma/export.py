"""DIMACS and JSON/CSV serialization for graphs, colorings and solver results."""
from __future__ import annotations

import csv
import io
import json

from .graph_core import DEFAULT_EDGE_CAP, GraphSpec, enumerate_edges, enumerate_vertices, vertex_index


def _sign_str(signs) -> str:
    return " ".join("+" if s > 0 else "-" for s in signs)


def manifest(spec: GraphSpec) -> dict:
    return {
        "n": spec.n,
        "k": spec.k,
        "t": spec.t,
        "vertices": {
            str(i + 1): {"support": list(v.support), "signs": list(v.signs)}
            for i, v in enumerate(enumerate_vertices(spec))
        },
    }


def dimacs_text(spec: GraphSpec, max_edges: int = DEFAULT_EDGE_CAP) -> str:
    edges = enumerate_edges(spec, max_edges=max_edges)
    index = vertex_index(spec)
    lines = [
        f"c {spec} vertices in canonical order, see the JSON manifest",
        f"p edge {spec.vertex_count} {len(edges)}",
    ]
    lines += [f"e {index[u] + 1} {index[v] + 1}" for u, v in edges]
    return "\n".join(lines) + "\n"


def read_dimacs(text: str) -> tuple[int, int, list[tuple[int, int]]]:
    """Parse DIMACS ``.col`` text into (vertex count, declared edge count, edges)."""
    nv = ne = None
    edges = []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            nv, ne = int(parts[2]), int(parts[3])
        elif parts[0] == "e":
            edges.append((int(parts[1]), int(parts[2])))
        else:
            raise ValueError(f"unrecognized DIMACS line: {line!r}")
    if nv is None:
        raise ValueError("missing 'p edge' header")
    return nv, ne, edges


def graph_json(spec: GraphSpec, max_edges: int = DEFAULT_EDGE_CAP) -> dict:
    index = vertex_index(spec)
    return {
        "n": spec.n,
        "k": spec.k,
        "t": spec.t,
        "vertex_count": spec.vertex_count,
        "vertices": [[list(v.support), list(v.signs)] for v in enumerate_vertices(spec)],
        "edges": [[index[u] + 1, index[v] + 1] for u, v in enumerate_edges(spec, max_edges=max_edges)],
    }


def coloring_json(coloring) -> dict:
    spec = coloring.spec
    return {
        "construction": coloring.construction,
        "n": spec.n,
        "k": spec.k,
        "t": spec.t,
        "num_colors": coloring.num_colors,
        "assignment": [
            [list(v.support), list(v.signs), coloring.assignment[v]] for v in enumerate_vertices(spec)
        ],
        "palette": {str(c): label for c, label in sorted(coloring.palette.items())},
    }


def coloring_csv(coloring) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["support", "signs", "color_id"])
    for v in enumerate_vertices(coloring.spec):
        writer.writerow([" ".join(map(str, v.support)), _sign_str(v.signs), coloring.assignment[v]])
    return buf.getvalue()


def contest_coloring_json(n: int, colors: dict) -> dict:
    return {
        "construction": "contest",
        "n": n,
        "k": 3,
        "t": None,
        "num_colors": len(set(colors.values())),
        "assignment": [[list(tri), c] for tri, c in sorted(colors.items())],
        "palette": {str(c): f"contest:{c}" for c in sorted(set(colors.values()))},
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
