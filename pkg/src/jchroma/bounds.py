"""Closed-form chromatic bounds and comparison tables."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import constructions as cons
from .errors import InvalidInputError, JChromaError, UnsupportedFamilyError
from .graph_core import GraphSpec

FAMILIES = {(2, -1), (3, -1), (3, -2)}
BOUND_TOL = 1e-9


def ratio_bound(vertex_count: int, alpha: int) -> Fraction:
    """|V| / alpha as an exact rational; its ceiling bounds chi from below."""
    if alpha < 1:
        raise InvalidInputError("alpha must be at least 1")
    return Fraction(vertex_count, alpha)


def lovasz_bound(vertex_count: int, alpha: int) -> float:
    """(1 + ln alpha) |V| / alpha, an upper bound on chi for vertex-transitive graphs."""
    if alpha < 1:
        raise InvalidInputError("alpha must be at least 1")
    return (1 + math.log(alpha)) * vertex_count / alpha


def nonnegative_alpha(spec: GraphSpec) -> int:
    """Size of the all-positive class, independent whenever t < 0."""
    return comb(spec.n, spec.k)


def theorem_formulas(spec: GraphSpec) -> tuple[int, int]:
    """(lower, upper) closed-form chi bounds for one of the three supported families.

    J±(n,3,-1) has no explicit constants, so it reports the trivial lower
    bound 1 and the rounded-up Lovász bound evaluated at the all-positive
    class size (a lower estimate of alpha, which only enlarges the bound).
    """
    family = (spec.k, spec.t)
    n = spec.n
    if family == (2, -1):
        return cons.ceil_log2(n), 2 * cons.min_m_for(n) + 2
    if family == (3, -2):
        w = cons.ceil_log2(cons.ceil_log2(n))
        return w, 4 * w + 6
    if family == (3, -1):
        return 1, math.ceil(lovasz_bound(spec.vertex_count, nonnegative_alpha(spec)) - BOUND_TOL)
    raise UnsupportedFamilyError(f"no closed-form bounds for (k, t) = {family}")


@dataclass
class BoundReport:
    spec: GraphSpec
    vertex_count: int
    alpha: int | None = None
    alpha_exact: bool = False
    ratio_bound: Fraction | None = None
    lovasz_bound: float | None = None
    construction_colors: dict = field(default_factory=dict)
    theorem_lower: int | None = None
    theorem_upper: int | None = None
    chi: int | None = None
    chi_exact: bool = False
    chi_lower: int | None = None
    chi_upper: int | None = None
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.spec.n,
            "k": self.spec.k,
            "t": self.spec.t,
            "vertex_count": self.vertex_count,
            "alpha": self.alpha,
            "alpha_exact": self.alpha_exact,
            "ratio_bound": None if self.ratio_bound is None else str(self.ratio_bound),
            "lovasz_bound": self.lovasz_bound,
            "construction_colors": dict(self.construction_colors),
            "theorem_lower": self.theorem_lower,
            "theorem_upper": self.theorem_upper,
            "chi": self.chi,
            "chi_exact": self.chi_exact,
            "chi_lower": self.chi_lower,
            "chi_upper": self.chi_upper,
            "error": self.error,
        }


def _constructions_for(spec: GraphSpec) -> list[str]:
    family = (spec.k, spec.t)
    if family == (2, -1):
        return ["warmup2", "subset2"]
    if family == (3, -2):
        return ["altsign3"]
    return []


def bound_report(spec: GraphSpec, mode: str = "formulas", budget=None) -> BoundReport:
    """Assemble every bound for ``spec``.

    ``formulas`` mode never materializes the graph: alpha is the all-positive
    class size (flagged non-exact) and construction counts are their declared
    bounds.  ``exact`` mode runs the constructions and, within ``budget``, the
    exact solvers.
    """
    if mode not in ("formulas", "exact"):
        raise InvalidInputError(f"unknown mode {mode!r}")
    report = BoundReport(spec, spec.vertex_count)
    report.theorem_lower, report.theorem_upper = theorem_formulas(spec)
    alpha, exact = nonnegative_alpha(spec), False
    if mode == "formulas":
        report.construction_colors = {c: cons.declared_bound(c, spec.n) for c in _constructions_for(spec)}
    else:
        from .solvers import SolveBudget, exact_chromatic, greedy_transitive_cover, max_independent_set

        budget = budget or SolveBudget()
        for name in _constructions_for(spec):
            report.construction_colors[name] = cons.CONSTRUCTIONS[name][1](spec.n).num_colors
        if spec.vertex_count <= budget.max_vertices:
            mis = max_independent_set(spec, budget)
            alpha, exact = max(alpha, mis.alpha), mis.exact
            report.construction_colors["transitive_cover"] = greedy_transitive_cover(spec, budget=budget).num_colors
            res = exact_chromatic(spec, budget)
            report.chi, report.chi_exact = res.chi, res.exact
            report.chi_lower, report.chi_upper = res.lower, res.upper
    report.alpha, report.alpha_exact = alpha, exact
    report.ratio_bound = ratio_bound(spec.vertex_count, alpha)
    report.lovasz_bound = lovasz_bound(spec.vertex_count, alpha)
    if report.chi_lower is not None and not report.chi_exact:
        # a search that ran out of budget still leaves the other proved bounds
        if exact:
            report.chi_lower = max(report.chi_lower, math.ceil(report.ratio_bound))
        report.chi_upper = min([report.chi_upper, *report.construction_colors.values()])
    return report


def bound_table(specs, mode: str = "formulas", budget=None) -> list[BoundReport]:
    """One report per spec; a failing spec yields a row with ``error`` set."""
    rows = []
    for spec in specs:
        try:
            rows.append(bound_report(spec, mode, budget))
        except JChromaError as exc:
            rows.append(BoundReport(spec, spec.vertex_count, error=f"{type(exc).__name__}: {exc}"))
    return rows


CSV_BASE = ["n", "k", "t", "V", "alpha", "alpha_exact", "ratio", "lovasz", "thm_lower", "thm_upper", "chi", "chi_exact", "chi_lower", "chi_upper"]


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.9f}"
    return str(x)


def table_to_csv(rows: list[BoundReport]) -> str:
    names: list[str] = []
    for r in rows:
        for name in r.construction_colors:
            if name not in names:
                names.append(name)
    header = CSV_BASE + [f"construction:{name}" for name in names] + ["error"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for r in rows:
        writer.writerow([_fmt(x) for x in (
            r.spec.n, r.spec.k, r.spec.t, r.vertex_count, r.alpha, r.alpha_exact, r.ratio_bound,
            r.lovasz_bound, r.theorem_lower, r.theorem_upper, r.chi, r.chi_exact, r.chi_lower, r.chi_upper,
        )] + [_fmt(r.construction_colors.get(name)) for name in names] + [_fmt(r.error)])
    return buf.getvalue()


def table_to_json(rows: list[BoundReport]) -> str:
    return json.dumps([r.to_dict() for r in rows], indent=2, sort_keys=True)
