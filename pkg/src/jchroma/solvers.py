"""Exact and randomized solvers on materialized adjacency bitsets.

All solvers work on a list ``adj`` of Python ints where bit j of ``adj[i]``
is set when i and j are adjacent.  Results carry an ``exact`` flag; a
search cut short by its node or time budget reports the best interval it
proved instead of a silent approximation.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from math import comb

from .constructions import Coloring, contest_triple_coloring
from .errors import BudgetExceededError, InvalidInputError
from .graph_core import (
    DEFAULT_VERTEX_CAP,
    GraphSpec,
    SignedVertex,
    apply_signed_permutation,
    materialize,
    random_signed_permutation,
    signed_permutation_between,
)
from .verify import check_independent


@dataclass(frozen=True)
class SolveBudget:
    max_vertices: int = DEFAULT_VERTEX_CAP
    time_limit: float | None = 60.0
    seed: int = 0
    max_nodes: int | None = None

    def __post_init__(self):
        if self.max_vertices <= 0:
            raise InvalidInputError("max_vertices must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise InvalidInputError("time_limit must be positive")
        if self.max_nodes is not None and self.max_nodes <= 0:
            raise InvalidInputError("max_nodes must be positive")


class _Clock:
    def __init__(self, budget: SolveBudget):
        self.start = time.perf_counter()
        self.deadline = None if budget.time_limit is None else self.start + budget.time_limit
        self.max_nodes = budget.max_nodes
        self.nodes = 0
        self.stopped = False

    def tick(self) -> bool:
        """Count one search node; True once the budget is spent."""
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            self.stopped = True
        elif self.deadline is not None and self.nodes & 255 == 0 and time.perf_counter() > self.deadline:
            self.stopped = True
        return self.stopped

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.start


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


# -- maximum independent set -------------------------------------------------------


@dataclass
class MISResult:
    alpha: int
    witness: list
    exact: bool
    upper: int
    nodes_explored: int = 0
    elapsed_seconds: float = 0.0


def _clique_cover_bound(cand: int, adj: list[int]):
    """Greedy clique cover of ``cand``; returns vertices with their cover index.

    Any independent set takes at most one vertex per clique, so the index of
    a vertex bounds what the remaining candidates can add.
    """
    order = []
    bounds = []
    rest = cand
    cover = 0
    while rest:
        cover += 1
        clique_cand = rest
        while clique_cand:
            low = clique_cand & -clique_cand
            v = low.bit_length() - 1
            clique_cand &= adj[v]
            rest ^= low
            order.append(v)
            bounds.append(cover)
    return order, bounds


def max_independent_set_bits(adj: list[int], budget: SolveBudget | None = None, initial: list[int] | None = None):
    """Branch and bound for a maximum independent set; returns (best, exact, upper, clock)."""
    budget = budget or SolveBudget()
    clock = _Clock(budget)
    n = len(adj)
    full = (1 << n) - 1
    best: list[int] = list(initial or _greedy_independent(adj))
    root_bound = _clique_cover_bound(full, adj)[1]
    upper = root_bound[-1] if root_bound else 0

    def expand(current: list[int], cand: int) -> None:
        nonlocal best
        if clock.tick():
            return
        order, bounds = _clique_cover_bound(cand, adj)
        for i in range(len(order) - 1, -1, -1):
            if len(current) + bounds[i] <= len(best):
                return
            v = order[i]
            current.append(v)
            new_cand = cand & ~adj[v] & ~(1 << v)
            if new_cand:
                expand(current, new_cand)
            elif len(current) > len(best):
                best = list(current)
            current.pop()
            cand &= ~(1 << v)
            if clock.stopped:
                return

    expand([], full)
    exact = not clock.stopped
    return best, exact, (len(best) if exact else max(upper, len(best))), clock


def _greedy_independent(adj: list[int]) -> list[int]:
    order = sorted(range(len(adj)), key=lambda v: adj[v].bit_count())
    chosen: list[int] = []
    blocked = 0
    for v in order:
        if not blocked >> v & 1:
            chosen.append(v)
            blocked |= adj[v] | (1 << v)
    return chosen


def max_independent_set(spec: GraphSpec, budget: SolveBudget | None = None) -> MISResult:
    """Exact independence number with a witness, or a flagged interval."""
    budget = budget or SolveBudget()
    g = materialize(spec, budget.max_vertices)
    nonneg = [i for i, v in enumerate(g.vertices) if all(s > 0 for s in v.signs)]
    start = nonneg if spec.t < 0 else None
    best, exact, upper, clock = max_independent_set_bits(g.adj, budget, start)
    if start is not None and len(start) > len(best):
        best = start
    return MISResult(
        alpha=len(best),
        witness=[g.vertices[i] for i in sorted(best)],
        exact=exact,
        upper=upper,
        nodes_explored=clock.nodes,
        elapsed_seconds=clock.elapsed,
    )


# -- exact chromatic number ---------------------------------------------------------


@dataclass
class ChromaticResult:
    chi: int | None
    colors: list  # color per vertex index of the best coloring found
    exact: bool
    lower: int
    upper: int
    nodes_explored: int = 0
    elapsed_seconds: float = 0.0
    witness: object = None


def dsatur_greedy(adj: list[int]) -> list[int]:
    n = len(adj)
    colors = [-1] * n
    forbidden = [0] * n  # bitmask of neighbour colours
    degree = [a.bit_count() for a in adj]
    uncolored = set(range(n))
    while uncolored:
        v = max(uncolored, key=lambda x: (forbidden[x].bit_count(), degree[x], -x))
        c = 0
        while forbidden[v] >> c & 1:
            c += 1
        colors[v] = c
        uncolored.discard(v)
        for u in _bits(adj[v]):
            forbidden[u] |= 1 << c
    return colors


def greedy_clique(adj: list[int]) -> list[int]:
    best: list[int] = []
    for start in range(len(adj)):
        clique = [start]
        cand = adj[start]
        while cand:
            v = max(_bits(cand), key=lambda x: (adj[x] & cand).bit_count())
            clique.append(v)
            cand &= adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def k_colorable(adj: list[int], k: int, clock: _Clock, fixed: list[int] | None = None) -> list[int] | None:
    """Backtracking k-colouring, DSATUR order; None when none exists (or budget ran out).

    ``fixed`` pre-colours a clique with distinct colours, which breaks the
    colour-permutation symmetry.
    """
    n = len(adj)
    colors = [-1] * n
    # count[v][c]: coloured neighbours of v with colour c
    count = [[0] * k for _ in range(n)]
    sat = [0] * n
    uncolored = set(range(n))
    degree = [a.bit_count() for a in adj]

    def assign(v: int, c: int) -> None:
        colors[v] = c
        uncolored.discard(v)
        for u in _bits(adj[v]):
            if count[u][c] == 0:
                sat[u] += 1
            count[u][c] += 1

    def unassign(v: int, c: int) -> None:
        colors[v] = -1
        uncolored.add(v)
        for u in _bits(adj[v]):
            count[u][c] -= 1
            if count[u][c] == 0:
                sat[u] -= 1

    used = 0
    for i, v in enumerate(fixed or []):
        if i >= k:
            return None
        assign(v, i)
        used = i + 1

    def search(used: int) -> bool:
        if not uncolored:
            return True
        if clock.tick():
            return False
        v = max(uncolored, key=lambda x: (sat[x], degree[x], -x))
        if sat[v] >= k:
            return False
        row = count[v]
        for c in range(min(used + 1, k)):
            if row[c]:
                continue
            assign(v, c)
            if search(max(used, c + 1)):
                return True
            unassign(v, c)
            if clock.stopped:
                return False
        return False

    return list(colors) if search(used) else None


def chromatic_number_bits(adj: list[int], budget: SolveBudget | None = None, lower_hint: int = 0) -> ChromaticResult:
    """Exact chromatic number by descending k-colourability tests from a DSATUR bound."""
    budget = budget or SolveBudget()
    clock = _Clock(budget)
    if not adj:
        return ChromaticResult(0, [], True, 0, 0)
    best = dsatur_greedy(adj)
    upper = max(best) + 1
    clique = greedy_clique(adj)
    lower = max(len(clique), lower_hint, 1)
    while upper > lower:
        found = k_colorable(adj, upper - 1, clock, clique)
        if found is None:
            if not clock.stopped:
                lower = upper
            break
        best = found
        upper = max(found) + 1
    exact = lower >= upper
    return ChromaticResult(upper if exact else None, best, exact, lower, upper, clock.nodes, clock.elapsed)


def exact_chromatic(spec: GraphSpec, budget: SolveBudget | None = None) -> ChromaticResult:
    budget = budget or SolveBudget()
    g = materialize(spec, budget.max_vertices)
    res = chromatic_number_bits(g.adj, budget)
    assignment = {v: res.colors[i] for i, v in enumerate(g.vertices)}
    res.witness = Coloring(spec, assignment, {c: f"color:{c}" for c in set(res.colors)}, "exact")
    return res


# -- transitive greedy cover --------------------------------------------------------


def nonnegative_class(spec: GraphSpec) -> list[SignedVertex]:
    from .graph_core import enumerate_vertices

    return [v for v in enumerate_vertices(spec) if all(s > 0 for s in v.signs)]


def greedy_transitive_cover(
    spec: GraphSpec,
    base: list[SignedVertex] | None = None,
    budget: SolveBudget | None = None,
    candidates: int = 16,
) -> Coloring:
    """Cover V by images of one independent set under random signed permutations.

    Each round samples ``candidates`` images (one of them forced onto the
    first uncoloured vertex so every round makes progress) and keeps the one
    covering the most uncoloured vertices.
    """
    budget = budget or SolveBudget()
    base = list(nonnegative_class(spec) if base is None else base)
    if not base:
        raise InvalidInputError("base set is empty")
    res = check_independent(spec, base)
    if not res:
        raise InvalidInputError(f"base is not independent: {res.witness.u} ~ {res.witness.v}")
    g = materialize(spec, budget.max_vertices)
    rng = random.Random(budget.seed)
    n = spec.n
    uncolored = dict.fromkeys(g.vertices)
    assignment: dict = {}
    color = 0
    while uncolored:
        target = next(iter(uncolored))
        anchor = base[rng.randrange(len(base))]
        trials = [signed_permutation_between(anchor, target, n, rng)]
        trials += [random_signed_permutation(n, rng) for _ in range(candidates - 1)]
        best_new: list = []
        for perm, flips in trials:
            new = [w for w in (apply_signed_permutation(v, perm, flips) for v in base) if w in uncolored]
            if len(new) > len(best_new):
                best_new = new
        for w in best_new:
            assignment[w] = color
            del uncolored[w]
        color += 1
    return Coloring(spec, assignment, {c: f"image:{c}" for c in range(color)}, "transitive_cover")


# -- independent-set size audit on J±(n,3,-1) --------------------------------------


@dataclass
class Lemma1Audit:
    size: int
    t_diverse: int
    bound: int

    @property
    def holds(self) -> bool:
        return self.size <= self.bound


def lemma1_audit(n: int, members) -> Lemma1Audit:
    """Compare |I| with 8t(n-2) + C(n-t, 3), t the number of diverse coordinates."""
    members = list(members)
    spec = GraphSpec(n, 3, -1)
    res = check_independent(spec, members)
    if not res:
        raise InvalidInputError(f"set is not independent in {spec}: {res.witness.u} ~ {res.witness.v}")
    signs_on: dict[int, set] = {}
    for v in members:
        for c, s in zip(*v):
            signs_on.setdefault(c, set()).add(s)
    t = sum(1 for s in signs_on.values() if len(s) == 2)
    bound = 8 * t * (n - 2) + comb(n - t, 3)
    return Lemma1Audit(len(set(members)), t, bound)


# -- random maximal independent sets ------------------------------------------------


def random_maximal_independent_set(adj: list[int], pool: list[int], rng: random.Random) -> list[int]:
    """Random greedy extension inside ``pool`` until no vertex of the pool can be added."""
    order = list(pool)
    rng.shuffle(order)
    chosen = []
    blocked = 0
    for v in order:
        if not blocked >> v & 1:
            chosen.append(v)
            blocked |= adj[v] | (1 << v)
    return chosen


# -- the triple problem -----------------------------------------------------------


def contest_graph(n: int) -> tuple[list[tuple[int, int, int]], list[int]]:
    """Triples of [n] with {a,b,c} ~ {b,c,d} whenever a < b < c < d."""
    triples = list(itertools.combinations(range(1, n + 1), 3))
    index = {tri: i for i, tri in enumerate(triples)}
    adj = [0] * len(triples)
    for a, b, c, d in itertools.combinations(range(1, n + 1), 4):
        i, j = index[(a, b, c)], index[(b, c, d)]
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return triples, adj


def contest_exhaustive_optimum(n: int, max_colors: int | None = None, budget: SolveBudget | None = None) -> int:
    """Exact minimum number of colours for the triple problem on [n].

    Raises :class:`BudgetExceededError` carrying the proved interval if the
    search budget runs out or the optimum exceeds ``max_colors``.
    """
    if n <= 3:
        raise InvalidInputError("contest problem needs n > 3")
    if n > 12:
        raise BudgetExceededError(f"n={n} is beyond exhaustive range (n <= 12)")
    budget = budget or SolveBudget()
    triples, adj = contest_graph(n)
    cap = max_colors if max_colors is not None else len(set(contest_triple_coloring(n).values()))
    res = chromatic_number_bits(adj, budget)
    if not res.exact:
        raise BudgetExceededError(
            f"contest optimum for n={n} not settled: {res.lower}..{res.upper}", lower=res.lower, upper=res.upper
        )
    if res.chi > cap:
        raise BudgetExceededError(f"optimum exceeds max_colors={cap}", lower=res.chi, upper=res.chi)
    return res.chi
