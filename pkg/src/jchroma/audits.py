"""Seeded randomized and exhaustive audits of the proof mechanics."""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .constructions import msb_diff
from .errors import InvalidInputError
from .graph_core import GraphSpec, materialize
from .solvers import lemma1_audit, random_maximal_independent_set
from .verify import ALTERNATING, pairgraph_bipartite_k3, support_graph_bipartite_k2

CHECKS = ("lemma1", "bipartite-k2", "bipartite-k3", "msbdiff-chain")


@dataclass
class AuditReport:
    check: str
    n: int
    samples: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"check": self.check, "n": self.n, "samples": self.samples, "failures": self.failures}


def sample_rng(seed: int, index: int) -> random.Random:
    # per-sample streams keep results independent of how samples are split across workers
    return random.Random(f"{seed}:{index}")


def _graph_for(check: str, n: int):
    if check == "lemma1":
        g = materialize(GraphSpec(n, 3, -1))
        pool = list(range(len(g.vertices)))
    elif check == "bipartite-k2":
        g = materialize(GraphSpec(n, 2, -1))
        pool = [i for i, v in enumerate(g.vertices) if v.signs[0] != v.signs[1]]
    else:
        g = materialize(GraphSpec(n, 3, -2))
        pool = [i for i, v in enumerate(g.vertices) if v.signs in ALTERNATING]
    return g, pool


def _run_chunk(check: str, n: int, seed: int, indices: range) -> list:
    g, pool = _graph_for(check, n)
    failures = []
    for i in indices:
        chosen = random_maximal_independent_set(g.adj, pool, sample_rng(seed, i))
        members = [g.vertices[j] for j in sorted(chosen)]
        labels = [v.label() for v in members]
        if check == "lemma1":
            res = lemma1_audit(n, members)
            if not res.holds:
                failures.append({"sample": i, "members": labels, "t_diverse": res.t_diverse, "bound": res.bound})
        elif check == "bipartite-k2":
            res = support_graph_bipartite_k2(n, members)
            if not res.holds:
                failures.append({"sample": i, "members": labels, "bipartite": res.bipartite,
                                 "diverse_matching": res.diverse_matching, "edges_typed": res.edges_typed})
        else:
            res = pairgraph_bipartite_k3(n, members)
            if not res.holds:
                failures.append({"sample": i, "members": labels, "bipartite": res.bipartite,
                                 "label_bipartition_valid": res.label_bipartition_valid,
                                 "double_labeled_isolated": res.double_labeled_isolated})
    return failures


def msb_chain_failures(limit: int) -> list:
    """All x < y < z <= limit with msb_diff(x, y) == msb_diff(y, z).

    For a fixed middle value y the condition only compares the set of
    msb_diff(x, y) over x < y with the set of msb_diff(y, z) over z > y, so
    the triple scan reduces to one set intersection per y.
    """
    failures = []
    for y in range(2, limit):
        below = {msb_diff(x, y) for x in range(1, y)}
        above = {msb_diff(y, z) for z in range(y + 1, limit + 1)}
        for m in sorted(below & above):
            x = next(x for x in range(1, y) if msb_diff(x, y) == m)
            z = next(z for z in range(y + 1, limit + 1) if msb_diff(y, z) == m)
            failures.append({"x": x, "y": y, "z": z, "msb": m})
    return failures


def run_audit(check: str, n: int, samples: int = 1000, seed: int = 0, threads: int = 1) -> AuditReport:
    if check not in CHECKS:
        raise InvalidInputError(f"unknown audit {check!r}; choose from {', '.join(CHECKS)}")
    if check == "msbdiff-chain":
        if n < 1:
            raise InvalidInputError("msbdiff-chain needs n >= 1")
        return AuditReport(check, n, n, msb_chain_failures(n))
    if samples < 1:
        raise InvalidInputError("samples must be positive")
    if threads <= 1 or samples < 2 * threads:
        return AuditReport(check, n, samples, _run_chunk(check, n, seed, range(samples)))
    step = -(-samples // threads)
    chunks = [range(lo, min(lo + step, samples)) for lo in range(0, samples, step)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(_run_chunk, [check] * len(chunks), [n] * len(chunks), [seed] * len(chunks), chunks)
        failures = [f for part in parts for f in part]
    return AuditReport(check, n, samples, failures)
