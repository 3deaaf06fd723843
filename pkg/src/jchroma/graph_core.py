"""Vertices, adjacency and edge enumeration for Johnson-type signed graphs.

A vertex of J±(n, k, t) is a vector in {-1, 0, +1}^n with exactly k nonzero
entries; two vertices are adjacent when their scalar product equals t.
Vertices are stored as sorted signed supports (coordinates are 1-indexed)
because k is tiny while n can be large.
"""
from __future__ import annotations

import contextlib
import functools
import gc
import itertools
import random
from dataclasses import dataclass
from math import comb
from typing import Iterator, NamedTuple, Sequence

from .errors import EnumerationError, InvalidInputError, InvalidSpecError

DEFAULT_VERTEX_CAP = 20_000
DEFAULT_EDGE_CAP = 5_000_000

_SIGN_CHARS = {1: "+", -1: "-"}


class SignedVertex(NamedTuple):
    support: tuple[int, ...]
    signs: tuple[int, ...]

    @classmethod
    def of(cls, pairs) -> "SignedVertex":
        """Build a vertex from (coordinate, sign) pairs in any order."""
        items = sorted(pairs)
        support = tuple(c for c, _ in items)
        signs = tuple(s for _, s in items)
        if len(set(support)) != len(support):
            raise InvalidInputError(f"repeated coordinate in {items}")
        if any(s not in (1, -1) for s in signs):
            raise InvalidInputError(f"signs must be +1/-1, got {signs}")
        if any(c < 1 for c in support):
            raise InvalidInputError("coordinates are 1-indexed")
        return cls(support, signs)

    @classmethod
    def parse(cls, text: str) -> "SignedVertex":
        """Parse the compact notation used throughout, e.g. ``"1+2-3+"``."""
        pairs = []
        num = ""
        for ch in text.replace(" ", ""):
            if ch.isdigit():
                num += ch
            elif ch in "+-" and num:
                pairs.append((int(num), 1 if ch == "+" else -1))
                num = ""
            else:
                raise InvalidInputError(f"cannot parse vertex {text!r}")
        if num:
            raise InvalidInputError(f"dangling coordinate in {text!r}")
        return cls.of(pairs)

    @property
    def k(self) -> int:
        return len(self.support)

    def sign_at(self, coord: int) -> int:
        for c, s in zip(self.support, self.signs):
            if c == coord:
                return s
        return 0

    def to_vector(self, n: int) -> list[int]:
        vec = [0] * n
        for c, s in zip(self.support, self.signs):
            vec[c - 1] = s
        return vec

    def label(self) -> str:
        return "".join(f"{c}{_SIGN_CHARS[s]}" for c, s in zip(self.support, self.signs))

    def __str__(self):
        return self.label()


class Edge(NamedTuple):
    u: SignedVertex
    v: SignedVertex


@dataclass(frozen=True)
class GraphSpec:
    n: int
    k: int
    t: int

    def __post_init__(self):
        n, k, t = self.n, self.k, self.t
        if not all(isinstance(x, int) for x in (n, k, t)):
            raise InvalidSpecError("n, k, t must be integers")
        if n < 1 or k < 1:
            raise InvalidSpecError(f"n and k must be positive, got n={n}, k={k}")
        if k > n:
            raise InvalidSpecError(f"k={k} exceeds n={n}")
        if not -k <= t < k:
            raise InvalidSpecError(f"t={t} outside [-k, k) for k={k}")

    @property
    def vertex_count(self) -> int:
        return 2**self.k * comb(self.n, self.k)

    @property
    def degree(self) -> int:
        return vertex_degree(self)

    @property
    def edge_count(self) -> int:
        return self.vertex_count * self.degree // 2

    def contains(self, v: SignedVertex) -> bool:
        return (
            len(v.support) == self.k
            and all(1 <= c <= self.n for c in v.support)
            and all(a < b for a, b in zip(v.support, v.support[1:]))
        )

    def adjacent(self, u: SignedVertex, v: SignedVertex) -> bool:
        return adjacent(self, u, v)

    def __str__(self):
        return f"J±({self.n},{self.k},{self.t})"


def scalar_product(u: SignedVertex, v: SignedVertex) -> int:
    i = j = total = 0
    us, vs = u.support, v.support
    while i < len(us) and j < len(vs):
        if us[i] == vs[j]:
            total += u.signs[i] * v.signs[j]
            i += 1
            j += 1
        elif us[i] < vs[j]:
            i += 1
        else:
            j += 1
    return total


def adjacent(spec: GraphSpec, u: SignedVertex, v: SignedVertex) -> bool:
    return scalar_product(u, v) == spec.t


# -- vertices -----------------------------------------------------------------


@contextlib.contextmanager
def gc_paused():
    """Suspend the cyclic garbage collector around bulk tuple construction.

    Vertex lists and bucket tables are millions of acyclic tuples; without
    this every few thousand allocations trigger a collection that rescans
    all of them.
    """
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


def colex_supports(n: int, k: int) -> list[tuple[int, ...]]:
    return sorted(itertools.combinations(range(1, n + 1), k), key=lambda c: c[::-1])


@functools.lru_cache(maxsize=8)
def _vertices(n: int, k: int) -> tuple[SignedVertex, ...]:
    patterns = list(itertools.product((1, -1), repeat=k))
    make = functools.partial(tuple.__new__, SignedVertex)  # skips the NamedTuple arg parsing
    with gc_paused():
        return tuple(make((s, p)) for s in colex_supports(n, k) for p in patterns)


def enumerate_vertices(spec: GraphSpec) -> tuple[SignedVertex, ...]:
    """All vertices in canonical order.

    Supports run in colexicographic order; within one support the sign
    patterns run in binary order with +1 before -1, most significant
    position first (so ``1+2+, 1+2-, 1-2+, 1-2-``).
    """
    return _vertices(spec.n, spec.k)


@functools.lru_cache(maxsize=8)
def _index(n: int, k: int) -> dict[SignedVertex, int]:
    return {v: i for i, v in enumerate(_vertices(n, k))}


def vertex_index(spec: GraphSpec) -> dict[SignedVertex, int]:
    """Map each vertex to its 0-based position in canonical order."""
    return _index(spec.n, spec.k)


# -- neighbours and degrees ------------------------------------------------------


def _shared_sizes(k: int, t: int) -> list[int]:
    # an overlap of s coordinates contributes a sum of s terms +-1
    return [s for s in range(k + 1) if abs(t) <= s and (s - t) % 2 == 0 and not (s == k and t == k)]


def vertex_degree(spec: GraphSpec) -> int:
    n, k, t = spec.n, spec.k, spec.t
    total = 0
    for s in _shared_sizes(k, t):
        flips = (s - t) // 2
        total += comb(k, s) * comb(s, flips) * comb(n - k, k - s) * 2 ** (k - s)
    return total


def neighbors(spec: GraphSpec, v: SignedVertex) -> Iterator[SignedVertex]:
    """Generate every neighbour of ``v`` exactly once, without scanning V."""
    n, k, t = spec.n, spec.k, spec.t
    own = dict(zip(v.support, v.signs))
    outside = [c for c in range(1, n + 1) if c not in own]
    fresh_patterns = {r: list(itertools.product((1, -1), repeat=r)) for r in range(k + 1)}
    for s in _shared_sizes(k, t):
        flips = (s - t) // 2
        for shared in itertools.combinations(v.support, s):
            for flipped in itertools.combinations(shared, flips):
                base = [(c, -own[c] if c in flipped else own[c]) for c in shared]
                for fresh in itertools.combinations(outside, k - s):
                    for pattern in fresh_patterns[k - s]:
                        yield SignedVertex(*_sorted_pairs(base + list(zip(fresh, pattern))))


def _sorted_pairs(pairs):
    pairs.sort()
    return tuple(c for c, _ in pairs), tuple(s for _, s in pairs)


# -- edges ----------------------------------------------------------------------

FAST_FAMILIES = {(2, -1), (3, -2), (3, -1)}


def _edges_k2_t1(n: int) -> Iterator[Edge]:
    # shared coordinate x carries + in u and - in v; free coordinates differ
    for x in range(1, n + 1):
        others = [c for c in range(1, n + 1) if c != x]
        for y in others:
            for a in (1, -1):
                u = SignedVertex(*_sorted_pairs([(x, 1), (y, a)]))
                for z in others:
                    if z == y:
                        continue
                    for b in (1, -1):
                        yield Edge(u, SignedVertex(*_sorted_pairs([(x, -1), (z, b)])))


def _edges_k3_t2(n: int) -> Iterator[Edge]:
    # shared pair x<y with both signs opposed; u carries + on x
    for x, y in itertools.combinations(range(1, n + 1), 2):
        others = [c for c in range(1, n + 1) if c != x and c != y]
        for sy in (1, -1):
            for z in others:
                for sz in (1, -1):
                    u = SignedVertex(*_sorted_pairs([(x, 1), (y, sy), (z, sz)]))
                    for w in others:
                        if w == z:
                            continue
                        for sw in (1, -1):
                            yield Edge(u, SignedVertex(*_sorted_pairs([(x, -1), (y, -sy), (w, sw)])))


def _edges_by_neighbors(spec: GraphSpec) -> Iterator[Edge]:
    index = vertex_index(spec)
    for u in enumerate_vertices(spec):
        iu = index[u]
        for v in neighbors(spec, u):
            if iu < index[v]:
                yield Edge(u, v)


def _edges_pairwise(spec: GraphSpec) -> Iterator[Edge]:
    verts = enumerate_vertices(spec)
    t = spec.t
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            if scalar_product(u, v) == t:
                yield Edge(u, v)


def iter_edges(spec: GraphSpec, method: str = "auto") -> Iterator[Edge]:
    """Yield every edge once, oriented so ``u`` precedes ``v`` canonically.

    ``method`` is ``"auto"`` (constructive for the three families studied,
    pairwise otherwise), ``"fast"``, ``"neighbors"`` or ``"pairwise"``.
    """
    family = (spec.k, spec.t)
    if method == "auto":
        method = "fast" if family in FAST_FAMILIES else "pairwise"
    if method == "pairwise":
        yield from _edges_pairwise(spec)
        return
    if method == "neighbors" or family == (3, -1):
        yield from _edges_by_neighbors(spec)
        return
    if method != "fast":
        raise InvalidInputError(f"unknown edge method {method!r}")
    if family == (2, -1):
        raw = _edges_k2_t1(spec.n)
    elif family == (3, -2):
        raw = _edges_k3_t2(spec.n)
    else:
        raise InvalidInputError(f"no constructive fast path for (k, t) = {family}")
    index = vertex_index(spec)
    for u, v in raw:
        yield Edge(u, v) if index[u] < index[v] else Edge(v, u)


def enumerate_edges(spec: GraphSpec, method: str = "auto", max_edges: int = DEFAULT_EDGE_CAP) -> list[Edge]:
    """Materialize all edges, sorted by the canonical indices of their ends."""
    count = spec.edge_count
    if count > max_edges:
        raise EnumerationError(
            f"{spec} has {count} edges, above the enumeration cap of {max_edges}", count=count
        )
    index = vertex_index(spec)
    return sorted(iter_edges(spec, method), key=lambda e: (index[e.u], index[e.v]))


# -- automorphisms ------------------------------------------------------------


def apply_signed_permutation(v: SignedVertex, perm: Sequence[int], flips: Sequence[int]) -> SignedVertex:
    """Map coordinate ``i`` with sign ``s`` to ``perm[i-1]`` with sign ``s * flips[i-1]``."""
    pairs = [(perm[c - 1], s * flips[c - 1]) for c, s in zip(v.support, v.signs)]
    return SignedVertex(*_sorted_pairs(pairs))


def random_signed_permutation(n: int, rng: random.Random) -> tuple[list[int], list[int]]:
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    flips = [rng.choice((1, -1)) for _ in range(n)]
    return perm, flips


def signed_permutation_between(
    src: SignedVertex, dst: SignedVertex, n: int, rng: random.Random | None = None
) -> tuple[list[int], list[int]]:
    """A signed permutation mapping ``src`` onto ``dst``, random elsewhere."""
    if len(src.support) != len(dst.support):
        raise InvalidInputError("vertices have different support sizes")
    perm = [0] * n
    flips = [1] * n
    for a, sa, b, sb in zip(src.support, src.signs, dst.support, dst.signs):
        perm[a - 1] = b
        flips[a - 1] = sa * sb
    free_src = [c for c in range(1, n + 1) if c not in src.support]
    free_dst = [c for c in range(1, n + 1) if c not in dst.support]
    if rng is not None:
        rng.shuffle(free_dst)
    for a, b in zip(free_src, free_dst):
        perm[a - 1] = b
        if rng is not None:
            flips[a - 1] = rng.choice((1, -1))
    return perm, flips


# -- materialized adjacency --------------------------------------------------


@dataclass(frozen=True)
class MaterializedGraph:
    spec: GraphSpec
    vertices: tuple[SignedVertex, ...]
    index: dict
    adj: list[int]

    def __len__(self):
        return len(self.vertices)


def materialize(spec: GraphSpec, max_vertices: int = DEFAULT_VERTEX_CAP) -> MaterializedGraph:
    """Adjacency bitsets (Python ints) indexed in canonical vertex order."""
    if spec.vertex_count > max_vertices:
        raise EnumerationError(
            f"{spec} has {spec.vertex_count} vertices, above the cap of {max_vertices}",
            count=spec.vertex_count,
        )
    verts = enumerate_vertices(spec)
    index = vertex_index(spec)
    adj = [0] * len(verts)
    for i, u in enumerate(verts):
        bits = 0
        for v in neighbors(spec, u):
            bits |= 1 << index[v]
        adj[i] = bits
    return MaterializedGraph(spec, verts, index, adj)
