"""Independent checks: properness, independence and proof-mechanics audits.

Nothing here calls into :mod:`jchroma.constructions`.  Adjacency is
re-derived from scratch: two vertices u, v are adjacent exactly when their
supports meet in a set S, the sign patterns on S have inner product t, and
the rest of the supports are disjoint.  Bucketing vertices by (colour, S,
pattern on S) turns the search for a monochromatic edge into a join over
small buckets, which scales to graphs whose edge lists would not fit in
memory.
"""
from __future__ import annotations

import itertools
import operator
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import InvalidInputError, MissingVertexError
from .graph_core import Edge, GraphSpec, SignedVertex, enumerate_vertices, gc_paused, iter_edges


@dataclass
class CheckResult:
    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok


def _pattern_pairs(k: int, t: int) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    """For each overlap pattern sigma, the patterns tau with <sigma, tau> = t."""
    out: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for s in range(k + 1):
        for sigma in itertools.product((1, -1), repeat=s):
            partners = [
                tau for tau in itertools.product((1, -1), repeat=s)
                if sum(x * y for x, y in zip(sigma, tau)) == t and not (s == k and tau == sigma)
            ]
            if partners:
                out[sigma] = partners
    return out


def find_monochromatic_edge(spec: GraphSpec, colored: Iterable[tuple[SignedVertex, object]]) -> Edge | None:
    """Return some edge of ``spec`` whose ends share a colour, or None."""
    k = spec.k
    partners = _pattern_pairs(k, spec.t)
    sizes = {len(s) for s in partners}
    plans = [
        (_getter(pos), _getter(tuple(p for p in range(k) if p not in pos)))
        for s in sorted(sizes)
        for pos in itertools.combinations(range(k), s)
    ]
    buckets: dict = defaultdict(list)
    if k == 2 and sizes == {1}:
        # single shared coordinate out of two: index directly, no getters
        for v, color in colored:
            (a, b), (sa, sb) = v
            buckets[(color, (a,), (sa,))].append(((b,), v))
            buckets[(color, (b,), (sb,))].append(((a,), v))
    else:
        for v, color in colored:
            sup, sg = v
            for pick, rest in plans:
                buckets[(color, pick(sup), pick(sg))].append((rest(sup), v))
    for (color, shared, sigma), left in buckets.items():
        for tau in partners[sigma]:
            if tau < sigma:
                continue  # each unordered pattern pair once
            right = buckets.get((color, shared, tau))
            if not right:
                continue
            hit = _disjoint_pair(left, right, same=(tau == sigma))
            if hit is not None:
                return Edge(*hit)
    return None


def _getter(positions):
    """Like itemgetter, but always returns a tuple (also for 0 or 1 positions)."""
    if len(positions) == 0:
        return lambda seq: ()
    if len(positions) == 1:
        (p,) = positions
        return lambda seq: (seq[p],)
    return operator.itemgetter(*positions)


def _disjoint_pair(left, right, same):
    # dedupe remainders first so cross-intersecting buckets stay cheap
    lrep = {}
    for rest, v in left:
        lrep.setdefault(rest, v)
    if same:
        rrep = lrep
    else:
        rrep = {}
        for rest, v in right:
            rrep.setdefault(rest, v)
    rsets = [(frozenset(rb), vb) for rb, vb in rrep.items()]
    for ra, va in lrep.items():
        sa = frozenset(ra)
        for sb, vb in rsets:
            if va != vb and sa.isdisjoint(sb):
                return va, vb
    return None


def check_proper(spec: GraphSpec, coloring, method: str = "buckets") -> CheckResult:
    """True iff no edge is monochromatic; the witness is an offending edge.

    ``coloring`` is a mapping vertex -> colour or any object with an
    ``assignment`` mapping.  ``method="edges"`` walks the constructive edge
    list instead of the bucket join.
    """
    assignment = getattr(coloring, "assignment", coloring)
    verts = enumerate_vertices(spec)
    missing = object()
    colors = [assignment.get(v, missing) for v in verts]
    if missing in colors:
        raise MissingVertexError(verts[colors.index(missing)])
    if method == "edges":
        for e in iter_edges(spec):
            if assignment[e.u] == assignment[e.v]:
                return CheckResult(False, e)
        return CheckResult(True)
    if method != "buckets":
        raise InvalidInputError(f"unknown method {method!r}")
    with gc_paused():
        hit = find_monochromatic_edge(spec, zip(verts, colors))
    return CheckResult(hit is None, hit)


def check_proper_pairwise(spec: GraphSpec, coloring) -> CheckResult:
    """Quadratic reference check straight from the definition."""
    assignment = getattr(coloring, "assignment", coloring)
    verts = list(enumerate_vertices(spec))
    for v in verts:
        if v not in assignment:
            raise MissingVertexError(v)
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            if assignment[u] == assignment[v] and _dot(u, v) == spec.t:
                return CheckResult(False, Edge(u, v))
    return CheckResult(True)


def _dot(u: SignedVertex, v: SignedVertex) -> int:
    du = dict(zip(*u))
    return sum(s * du.get(c, 0) for c, s in zip(*v))


def check_independent(spec: GraphSpec, members: Iterable[SignedVertex]) -> CheckResult:
    members = list(members)
    for v in members:
        if not spec.contains(v):
            raise InvalidInputError(f"{v} is not a vertex of {spec}")
    hit = find_monochromatic_edge(spec, ((v, 0) for v in members))
    return CheckResult(hit is None, hit)


def _require_independent(spec: GraphSpec, members) -> None:
    res = check_independent(spec, members)
    if not res:
        raise InvalidInputError(f"set is not independent in {spec}: {res.witness.u} ~ {res.witness.v}")


def _two_color(nodes, edges) -> dict | None:
    adj = defaultdict(set)
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    side: dict = {}
    for start in nodes:
        if start in side:
            continue
        side[start] = 0
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in side:
                    side[y] = 1 - side[x]
                    queue.append(y)
                elif side[y] == side[x]:
                    return None
    return side


# -- J±(n,2,-1): support graph of an independent set of mixed vertices -----------


@dataclass
class SupportGraphReport:
    bipartite: bool
    classification: dict  # coordinate -> "positive" | "negative" | "diverse"
    diverse_matching: bool
    edges_typed: bool  # every support is positive-negative or diverse-diverse

    @property
    def holds(self) -> bool:
        return self.bipartite and self.diverse_matching and self.edges_typed


def support_graph_bipartite_k2(n: int, members: Iterable[SignedVertex]) -> SupportGraphReport:
    members = list(members)
    spec = GraphSpec(n, 2, -1)
    for v in members:
        if not spec.contains(v) or v.signs[0] == v.signs[1]:
            raise InvalidInputError(f"{v} is not a mixed-sign vertex of {spec}")
    _require_independent(spec, members)

    seen = defaultdict(set)
    for v in members:
        for c, s in zip(*v):
            seen[c].add(s)
    classification = {
        c: "diverse" if len(s) == 2 else ("positive" if 1 in s else "negative") for c, s in seen.items()
    }
    edges = sorted({v.support for v in members})
    bipartite = _two_color(range(1, n + 1), edges) is not None

    diverse_deg = defaultdict(int)
    typed = True
    for a, b in edges:
        kinds = {classification[a], classification[b]}
        if kinds == {"diverse"}:
            diverse_deg[a] += 1
            diverse_deg[b] += 1
        elif kinds != {"positive", "negative"}:
            typed = False
    matching = all(d <= 1 for d in diverse_deg.values())
    return SupportGraphReport(bipartite, classification, matching, typed)


# -- J±(n,3,-2): the pair graph H induced by an independent alternating set ------

ALTERNATING = ((1, -1, 1), (-1, 1, -1))


@dataclass
class PairGraphReport:
    bipartite: bool
    labels: dict = field(default_factory=dict)  # pair -> set of "L"/"R"
    label_bipartition_valid: bool = True
    double_labeled_isolated: bool = True

    @property
    def holds(self) -> bool:
        return self.bipartite and self.label_bipartition_valid and self.double_labeled_isolated

    def __bool__(self):
        return self.holds


def pairgraph_bipartite_k3(n: int, members: Iterable[SignedVertex]) -> PairGraphReport:
    members = list(members)
    spec = GraphSpec(n, 3, -2)
    for v in members:
        if not spec.contains(v) or v.signs not in ALTERNATING:
            raise InvalidInputError(f"{v} is not an alternating vertex of {spec}")
    _require_independent(spec, members)

    labels = defaultdict(set)
    supports_of_pair = defaultdict(set)
    h_edges = set()
    for v in members:
        a, b, c = v.support
        left, right = (a, b), (b, c)
        if v.signs[0] > 0:
            labels[left].add("L")
            labels[right].add("R")
        else:
            labels[left].add("R")
            labels[right].add("L")
        h_edges.add((left, right))
        supports_of_pair[left].add(v.support)
        supports_of_pair[right].add(v.support)

    double = {p for p, ls in labels.items() if len(ls) == 2}
    isolated = all(len(supports_of_pair[p]) == 1 for p in double)
    valid = all(
        p in double or q in double or labels[p] != labels[q]
        for p, q in h_edges
    )
    bipartite = _two_color(list(labels), h_edges) is not None
    return PairGraphReport(bipartite, dict(labels), valid, isolated)


def partition_from_independent_pairset(n: int, pairs: Iterable[tuple[int, int]]) -> tuple[set, set]:
    """Split [n] into B (first coordinates) and E so every pair runs from B to E."""
    pairs = [tuple(sorted(p)) for p in pairs]
    for a, b in pairs:
        if not 1 <= a < b <= n:
            raise InvalidInputError(f"{(a, b)} is not a pair of distinct coordinates in [{n}]")
    firsts = {a for a, _ in pairs}
    seconds = {b for _, b in pairs}
    clash = firsts & seconds
    if clash:
        x = min(clash)
        raise InvalidInputError(f"pairs chain through coordinate {x}: not independent in H")
    B = firsts
    E = set(range(1, n + 1)) - B
    if not all(a in B and b in E and a < b for a, b in pairs):
        raise AssertionError("partition failed to separate the pair set")
    return B, E


# -- the triple problem ---------------------------------------------------------


def check_contest_coloring(n: int, colors: dict, method: str = "pairs") -> CheckResult:
    """Check that {a,b,c} and {b,c,d} differ in colour for all a < b < c < d.

    ``method="pairs"`` groups by the shared middle pair (b, c); ``"quadruples"``
    scans every quadruple literally.
    """
    for tri in itertools.combinations(range(1, n + 1), 3):
        if tri not in colors:
            raise MissingVertexError(tri)
    if method == "quadruples":
        for a, b, c, d in itertools.combinations(range(1, n + 1), 4):
            if colors[(a, b, c)] == colors[(b, c, d)]:
                return CheckResult(False, ((a, b, c), (b, c, d)))
        return CheckResult(True)
    for b, c in itertools.combinations(range(1, n + 1), 2):
        left = {colors[(a, b, c)]: a for a in range(1, b)}
        for d in range(c + 1, n + 1):
            a = left.get(colors[(b, c, d)])
            if a is not None:
                return CheckResult(False, ((a, b, c), (b, c, d)))
    return CheckResult(True)
