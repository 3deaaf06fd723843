"""Explicit proper colorings of J±(n,2,-1), J±(n,3,-2) and the triple problem.

Coordinates are 1-indexed, but the bit arithmetic runs on ``coord - 1`` so
that the coordinates of [n] fit in ceil(log2 n) bits.  Feeding raw
coordinates would need floor(log2 n) + 1 bits and overshoot the colour
counts at every power of two.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .errors import InvalidInputError, InvalidSpecError
from .graph_core import GraphSpec, SignedVertex, enumerate_vertices


def msb_diff(a: int, b: int) -> int:
    """1-indexed position of the most significant bit where ``a`` and ``b`` differ."""
    if a == b:
        raise InvalidInputError(f"msb_diff undefined for equal arguments ({a})")
    return (a ^ b).bit_length()


def ceil_log2(x: int) -> int:
    if x < 1:
        raise InvalidInputError(f"ceil_log2 needs x >= 1, got {x}")
    return (x - 1).bit_length()


@dataclass(frozen=True)
class Coloring:
    spec: GraphSpec
    assignment: dict
    palette: dict = field(default_factory=dict)
    construction: str = ""

    @property
    def num_colors(self) -> int:
        return len(set(self.assignment.values()))

    def __getitem__(self, v):
        return self.assignment[v]

    def __len__(self):
        return len(self.assignment)

    def classes(self) -> dict[int, list]:
        out: dict[int, list] = {}
        for v, c in self.assignment.items():
            out.setdefault(c, []).append(v)
        return out


# -- warm-up coloring of J±(n,2,-1) -------------------------------------------


def warmup_coloring_k2(n: int) -> Coloring:
    """At most 2*ceil(log2 n) + 2 colours.

    Ids 0 and 1 hold the all-positive and all-negative vertices.  A mixed
    vertex gets symbolic colour +-m, m being the top differing bit of its two
    coordinates, signed by the coordinate holding the 1 there (the larger
    one); +m is stored as id 2m and -m as 2m + 1.
    """
    if n < 2:
        raise InvalidSpecError("warm-up coloring needs n >= 2")
    spec = GraphSpec(n, 2, -1)
    assignment = {}
    palette = {}
    for v in enumerate_vertices(spec):
        (a, b), (sa, sb) = v
        if sa == sb:
            cid = 0 if sa > 0 else 1
            palette.setdefault(cid, "nonneg" if sa > 0 else "nonpos")
        else:
            m = msb_diff(a - 1, b - 1)
            high_sign = sb  # b > a, so b has the 1 in bit m
            cid = 2 * m if high_sign > 0 else 2 * m + 1
            palette.setdefault(cid, f"{'+' if high_sign > 0 else '-'}bit:{m}")
        assignment[v] = cid
    return Coloring(spec, assignment, palette, "warmup2")


# -- subset coloring of J±(n,2,-1) ------------------------------------------------


def min_m_for(n: int) -> int:
    """Smallest positive m with C(2m+1, m) >= n."""
    if n < 1:
        raise InvalidInputError("n must be positive")
    m = 1
    while comb(2 * m + 1, m) < n:
        m += 1
    return m


def colex_unrank(rank: int, size: int) -> tuple[int, ...]:
    """The ``rank``-th (0-based) ``size``-subset of {1, 2, ...} in colex order."""
    out = []
    for i in range(size, 0, -1):
        c = i - 1
        while comb(c + 1, i) <= rank:
            c += 1
        out.append(c + 1)
        rank -= comb(c, i)
    return tuple(sorted(out))


@dataclass(frozen=True)
class SubsetAssignment:
    m: int
    f: dict  # coordinate -> frozenset of m elements of [2m+1]

    def validate(self, n: int) -> None:
        m = self.m
        if m < 1:
            raise InvalidInputError("m must be positive")
        if n > comb(2 * m + 1, m):
            raise InvalidInputError(f"n={n} exceeds C({2 * m + 1},{m})")
        missing = [a for a in range(1, n + 1) if a not in self.f]
        if missing:
            raise InvalidInputError(f"assignment misses coordinate {missing[0]}")
        images = [frozenset(self.f[a]) for a in range(1, n + 1)]
        if len(set(images)) != n:
            raise InvalidInputError("subset assignment is not injective")
        for a, s in zip(range(1, n + 1), images):
            if len(s) != m or not s <= set(range(1, 2 * m + 2)):
                raise InvalidInputError(f"f({a})={sorted(s)} is not an {m}-subset of [{2 * m + 1}]")


def default_subset_assignment(n: int) -> SubsetAssignment:
    m = min_m_for(n)
    return SubsetAssignment(m, {a: frozenset(colex_unrank(a - 1, m)) for a in range(1, n + 1)})


def subset_coloring_k2(n: int, assignment: SubsetAssignment | None = None) -> Coloring:
    """Colour J±(n,2,-1) with 2m+2 classes built from an injection into m-subsets of [2m+1].

    Class i (1 <= i <= 2m+1) is every vertex whose signs agree with "+ on a
    iff i in f(a)"; class 2m+2 takes the all-positive vertices.  Where classes
    overlap the smallest index wins.
    """
    if assignment is None:
        assignment = default_subset_assignment(n)
    assignment.validate(n)
    m, f = assignment.m, assignment.f
    top = 2 * m + 2
    spec = GraphSpec(n, 2, -1)
    colors = {}
    for v in enumerate_vertices(spec):
        (a, b), (sa, sb) = v
        fa, fb = f[a], f[b]
        if sa > 0 and sb > 0:
            common = fa & fb
            cid = min(common) if common else top
        elif sa < 0 and sb < 0:
            cid = min(set(range(1, 2 * m + 2)) - fa - fb)
        elif sa > 0:
            cid = min(fa - fb)
        else:
            cid = min(fb - fa)
        colors[v] = cid
    palette = {c: (f"subset-color:{c}" if c < top else f"subset-color:{c}:all-positive") for c in set(colors.values())}
    return Coloring(spec, colors, palette, "subset2")


# -- alternating-sign coloring of J±(n,3,-2) --------------------------------------


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def triple_symbol(a: int, b: int, c: int) -> int:
    """Signed symbol sign(m1 - m2) * m(m1 - 1, m2 - 1) for a < b < c.

    m1 = m(a-1, b-1) and m2 = m(b-1, c-1); both shifts keep the values inside
    the smallest possible bit width.
    """
    m1 = msb_diff(a - 1, b - 1)
    m2 = msb_diff(b - 1, c - 1)
    return _sign(m1 - m2) * msb_diff(m1 - 1, m2 - 1)


def symbol_width(n: int) -> int:
    """Largest |triple_symbol| for coordinates in [n]: ceil(log2 ceil(log2 n))."""
    return ceil_log2(ceil_log2(n))


def _symbol_id(sym: int) -> int:
    return 2 * (abs(sym) - 1) + (0 if sym > 0 else 1)


CONSTANT_PATTERNS = ((1, 1, 1), (1, 1, -1), (1, -1, -1), (-1, 1, 1), (-1, -1, 1), (-1, -1, -1))


def _pattern_label(p) -> str:
    return "".join("+" if s > 0 else "-" for s in p)


def altsign_coloring_k3(n: int) -> Coloring:
    """At most 4*ceil(log2 ceil(log2 n)) + 6 colours.

    ``+-+`` vertices use palette P1 (ids [0, 2w)), ``-+-`` vertices use P2
    (ids [2w, 4w)), and the six other sign patterns take one constant id
    each, starting at 4w.
    """
    if n < 3:
        raise InvalidSpecError("alternating-sign coloring needs n >= 3")
    spec = GraphSpec(n, 3, -2)
    w = symbol_width(n)
    const_ids = {p: 4 * w + i for i, p in enumerate(CONSTANT_PATTERNS)}
    colors = {}
    palette = {}
    for v in enumerate_vertices(spec):
        (a, b, c), signs = v
        if signs == (1, -1, 1) or signs == (-1, 1, -1):
            sym = triple_symbol(a, b, c)
            offset = 0 if signs[0] > 0 else 2 * w
            cid = offset + _symbol_id(sym)
            palette.setdefault(cid, f"P{1 if offset == 0 else 2}:{'+' if sym > 0 else '-'}{abs(sym)}")
        else:
            cid = const_ids[signs]
            palette.setdefault(cid, f"class:{_pattern_label(signs)}")
        colors[v] = cid
    return Coloring(spec, colors, palette, "altsign3")


def contest_triple_coloring(n: int) -> dict[tuple[int, int, int], int]:
    """Colour the 3-subsets of [n] so that {a,b,c} and {b,c,d} differ when a<b<c<d.

    Uses the same symbol as the ``+-+`` palette above, so at most
    2*ceil(log2 ceil(log2 n)) ids.
    """
    if n <= 3:
        raise InvalidSpecError("contest problem needs n > 3")
    from itertools import combinations

    return {tri: _symbol_id(triple_symbol(*tri)) for tri in combinations(range(1, n + 1), 3)}


CONSTRUCTIONS = {
    "warmup2": ((2, -1), warmup_coloring_k2),
    "subset2": ((2, -1), subset_coloring_k2),
    "altsign3": ((3, -2), altsign_coloring_k3),
}


def declared_bound(construction: str, n: int) -> int:
    """The colour count each construction promises for a given n."""
    if construction == "warmup2":
        return 2 * ceil_log2(n) + 2
    if construction == "subset2":
        return 2 * min_m_for(n) + 2
    if construction == "altsign3":
        return 4 * symbol_width(n) + 6
    if construction == "contest":
        return 2 * symbol_width(n)
    raise InvalidInputError(f"unknown construction {construction!r}")
