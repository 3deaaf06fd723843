import math
from fractions import Fraction
from math import comb

import pytest

from jchroma.bounds import (
    bound_report,
    bound_table,
    lovasz_bound,
    ratio_bound,
    table_to_csv,
    table_to_json,
    theorem_formulas,
)
from jchroma.constructions import min_m_for
from jchroma.errors import InvalidInputError, UnsupportedFamilyError
from jchroma.graph_core import GraphSpec


def test_ratio_bound():
    assert ratio_bound(4, 4) == 1
    assert isinstance(ratio_bound(12, 4), Fraction)
    with pytest.raises(InvalidInputError):
        ratio_bound(4, 0)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(3, 30) for k in (2, 3)])
def test_ratio_with_nonnegative_class_is_two_to_k(n, k):
    spec = GraphSpec(n, k, -1)
    assert ratio_bound(spec.vertex_count, comb(n, k)) == 2**k


def test_lovasz_bound():
    assert lovasz_bound(4, 4) == pytest.approx(1 + math.log(4), abs=1e-12)
    assert abs(lovasz_bound(4, 4) - 2.386294361) < 1e-9
    assert lovasz_bound(1, 1) == 1


def test_lovasz_dominates_ratio():
    for V in range(1, 60):
        for a in range(1, V + 1):
            assert ratio_bound(V, a) <= lovasz_bound(V, a) + 1e-9


@pytest.mark.parametrize(
    "n,k,t,expected",
    [(16, 3, -2, (2, 14)), (10, 2, -1, (4, 6)), (2, 2, -1, (1, 4)), (256, 3, -2, (3, 18)), (3, 3, -2, (1, 10))],
)
def test_theorem_formulas(n, k, t, expected):
    assert theorem_formulas(GraphSpec(n, k, t)) == expected


def test_theorem_formula_k3_t1():
    lo, hi = theorem_formulas(GraphSpec(10, 3, -1))
    assert lo == 1
    assert hi == math.ceil((1 + math.log(comb(10, 3))) * 8)


def test_unsupported_family():
    with pytest.raises(UnsupportedFamilyError):
        theorem_formulas(GraphSpec(5, 2, 0))


@pytest.mark.parametrize("family", [(2, -1), (3, -1), (3, -2)])
def test_formulas_monotone_and_ordered(family):
    k, t = family
    prev = (0, 0)
    for n in range(k, 2000):
        lo, hi = theorem_formulas(GraphSpec(n, k, t))
        assert lo <= hi
        assert lo >= prev[0] and hi >= prev[1]
        prev = (lo, hi)


def test_formulas_mode_scales_without_materializing():
    rows = bound_table([GraphSpec(10**6, 3, -2), GraphSpec(10**6, 2, -1)], mode="formulas")
    assert rows[0].theorem_lower == 5 and rows[0].theorem_upper == 26
    assert rows[1].theorem_upper == 2 * min_m_for(10**6) + 2
    assert all(r.error is None for r in rows)
    assert rows[0].ratio_bound == 8 and not rows[0].alpha_exact


def test_exact_sweep_k2():
    rows = bound_table([GraphSpec(n, 2, -1) for n in range(2, 7)], mode="exact")
    prev = 0
    for r in rows:
        assert r.alpha_exact and r.chi_exact
        lower = math.ceil(r.ratio_bound)
        assert lower >= prev
        prev = lower
        assert lower <= r.chi <= r.lovasz_bound + 1e-9
        assert r.theorem_lower <= r.chi <= r.theorem_upper
        assert all(r.chi <= c for c in r.construction_colors.values())


def test_errors_are_recorded_not_raised():
    rows = bound_table([GraphSpec(4, 2, 0), GraphSpec(4, 2, -1)])
    assert rows[0].error and "UnsupportedFamily" in rows[0].error
    assert rows[1].error is None


def test_csv_and_json_emission():
    rows = bound_table([GraphSpec(n, 3, -2) for n in range(3, 6)])
    text = table_to_csv(rows)
    header = text.splitlines()[0].split(",")
    assert header[:10] == ["n", "k", "t", "V", "alpha", "alpha_exact", "ratio", "lovasz", "thm_lower", "thm_upper"]
    assert "construction:altsign3" in header
    assert len(text.splitlines()) == 4
    assert '"theorem_upper": 10' in table_to_json(rows)


def test_report_exact_small():
    r = bound_report(GraphSpec(3, 2, -1), mode="exact")
    assert r.alpha == 4 and r.ratio_bound == 3 and r.chi == 3


def test_budgeted_row_keeps_proved_interval():
    from jchroma.solvers import SolveBudget

    r = bound_report(GraphSpec(7, 2, -1), mode="exact", budget=SolveBudget(time_limit=3))
    assert r.alpha_exact and not r.chi_exact and r.chi is None
    # alpha = 21 exactly, so 84/21 = 4 colours are needed; the subset colouring uses 6
    assert (r.chi_lower, r.chi_upper) == (4, 6)
    assert "4,6," in table_to_csv([r])
