import itertools
import random
from math import ceil, comb, log2

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jchroma.constructions import (
    CONSTANT_PATTERNS,
    SubsetAssignment,
    altsign_coloring_k3,
    ceil_log2,
    colex_unrank,
    contest_triple_coloring,
    declared_bound,
    default_subset_assignment,
    min_m_for,
    msb_diff,
    subset_coloring_k2,
    symbol_width,
    warmup_coloring_k2,
)
from jchroma.errors import InvalidInputError, InvalidSpecError
from jchroma.graph_core import GraphSpec, SignedVertex
from jchroma.verify import check_contest_coloring, check_independent, check_proper

from oracles import is_proper_dense

V = SignedVertex.parse


def top_bit_by_strings(a, b):
    """Position (from 1, least significant) of the leading differing binary digit."""
    width = max(a, b).bit_length() + 1
    sa, sb = format(a, f"0{width}b"), format(b, f"0{width}b")
    for i, (x, y) in enumerate(zip(sa, sb)):
        if x != y:
            return width - i


@pytest.mark.parametrize("a,b,expected", [(1, 2, 2), (2, 3, 1), (5, 6, 2)])
def test_msb_diff_examples(a, b, expected):
    assert msb_diff(a, b) == expected


def test_msb_diff_rejects_equal():
    with pytest.raises(InvalidInputError):
        msb_diff(4, 4)


@settings(max_examples=500)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_msb_diff_matches_string_oracle(a, b):
    if a == b:
        return
    assert msb_diff(a, b) == top_bit_by_strings(a, b) == msb_diff(b, a)


def test_msb_chain_literal_triples():
    for x, y, z in itertools.combinations(range(1, 65), 3):
        assert msb_diff(x, y) != msb_diff(y, z)


def test_ceil_log2():
    for x in range(1, 2000):
        assert ceil_log2(x) == ceil(log2(x))


# -- warm-up ------------------------------------------------------------------


def warmup_symbol(v):
    """Signed bit index straight from the definition, on 0-based coordinates."""
    (a, b), (sa, sb) = v
    m = top_bit_by_strings(a - 1, b - 1)
    # the coordinate holding the 1 in bit m is the larger one
    high_sign = sb if b > a else sa
    return m * high_sign


def test_warmup_examples_n4():
    col = warmup_coloring_k2(4)
    assert col[V("1+3+")] == 0
    assert col[V("2-4-")] == 1
    # 1+2-: bit 1 of (0, 1); coordinate 2 holds the 1 and carries '-'
    assert warmup_symbol(V("1+2-")) == -1
    assert col[V("1+2-")] == 2 * 1 + 1
    # 3+4-: bit 1 of (2, 3)
    assert col[V("3+4-")] == 3
    # 1-4+: bit 2 of (0, 3), coordinate 4 carries '+'
    assert col[V("1-4+")] == 4
    assert col.palette[4] == "+bit:2"


@pytest.mark.parametrize("n", range(2, 41))
def test_warmup_matches_definition_and_cap(n):
    col = warmup_coloring_k2(n)
    for v, cid in col.assignment.items():
        if v.signs[0] == v.signs[1]:
            assert cid == (0 if v.signs[0] > 0 else 1)
        else:
            sym = warmup_symbol(v)
            assert cid == (2 * sym if sym > 0 else 2 * -sym + 1)
    assert col.num_colors <= 2 * ceil_log2(n) + 2
    assert check_proper(col.spec, col)


@pytest.mark.parametrize("n", range(2, 7))
def test_warmup_proper_by_definition(n):
    col = warmup_coloring_k2(n)
    assert is_proper_dense(n, 2, -1, col.assignment)


def test_warmup_rejects_small_n():
    with pytest.raises(InvalidSpecError):
        warmup_coloring_k2(1)


# -- subset coloring --------------------------------------------------------------


def test_min_m_for_examples():
    assert min_m_for(3) == 1
    assert min_m_for(10) == 2
    assert min_m_for(200) == 5
    assert comb(9, 4) < 200 <= comb(11, 5)


def test_min_m_for_against_scan():
    for n in range(1, 5000):
        m = min_m_for(n)
        assert comb(2 * m + 1, m) >= n
        assert m == 1 or comb(2 * m - 1, m - 1) < n


def test_colex_unrank_matches_sorted_enumeration():
    for size in range(1, 5):
        universe = range(1, 2 * size + 2)
        ordered = sorted(itertools.combinations(universe, size), key=lambda c: c[::-1])
        assert [colex_unrank(r, size) for r in range(len(ordered))] == ordered


def test_default_assignment_examples():
    a3 = default_subset_assignment(3)
    assert a3.m == 1 and a3.f == {1: {1}, 2: {2}, 3: {3}}
    a10 = default_subset_assignment(10)
    assert a10.m == 2 and a10.f[1] == {1, 2}
    for n in (1, 7, 35, 126, 127, 400):
        a = default_subset_assignment(n)
        a.validate(n)
        assert len({frozenset(s) for s in a.f.values()}) == n


def test_subset_examples_n3():
    f = SubsetAssignment(1, {a: frozenset({a}) for a in (1, 2, 3)})
    col = subset_coloring_k2(3, f)
    assert col[V("1+2-")] == 1
    assert col[V("1-2-")] == 3
    assert col[V("1+2+")] == 4
    assert is_proper_dense(3, 2, -1, col.assignment)


def test_subset_invalid_assignments():
    with pytest.raises(InvalidInputError):
        subset_coloring_k2(3, SubsetAssignment(1, {1: frozenset({1}), 2: frozenset({1}), 3: frozenset({3})}))
    with pytest.raises(InvalidInputError):
        subset_coloring_k2(4, SubsetAssignment(1, {a: frozenset({a}) for a in range(1, 5)}))


def test_subset_n10_uses_at_most_six():
    col = subset_coloring_k2(10)
    assert col.num_colors <= 6
    assert check_proper(col.spec, col)


@pytest.mark.parametrize("n", range(2, 41))
def test_subset_default_total_and_proper(n):
    col = subset_coloring_k2(n)
    assert len(col) == GraphSpec(n, 2, -1).vertex_count
    assert col.num_colors <= 2 * min_m_for(n) + 2
    assert check_proper(col.spec, col)
    for members in col.classes().values():
        assert check_independent(col.spec, members)


@st.composite
def random_assignments(draw):
    m = draw(st.integers(1, 3))
    pool = list(itertools.combinations(range(1, 2 * m + 2), m))
    n = draw(st.integers(2, len(pool)))
    chosen = draw(st.permutations(pool))[:n]
    return n, SubsetAssignment(m, {a + 1: frozenset(s) for a, s in enumerate(chosen)})


@settings(max_examples=60, deadline=None)
@given(random_assignments())
def test_subset_proper_for_any_injection(data):
    n, assignment = data
    col = subset_coloring_k2(n, assignment)
    assert col.num_colors <= 2 * assignment.m + 2
    assert check_proper(col.spec, col)


# -- Theorem 3 alternating-sign coloring ----------------------------------------


def test_altsign_examples_n8():
    col = altsign_coloring_k3(8)
    # 0-based: m(0,2)=2, m(2,5)=3 -> sign -1, m(1,2)=2
    assert col.palette[col[V("1+3-6+")]] == "P1:-2"
    # 0-based: m(1,4)=3, m(4,6)=2 -> sign +1, m(2,1)=2
    assert col.palette[col[V("2-5+7-")]] == "P2:+2"
    assert col.palette[col[V("1+2+5-")]] == "class:++-"
    assert col.num_colors <= 4 * ceil_log2(ceil_log2(8)) + 6


@pytest.mark.parametrize("n", range(3, 21))
def test_altsign_proper_and_capped(n):
    col = altsign_coloring_k3(n)
    assert len(col) == GraphSpec(n, 3, -2).vertex_count
    assert col.num_colors <= 4 * symbol_width(n) + 6
    assert check_proper(col.spec, col)


@pytest.mark.parametrize("n", range(3, 7))
def test_altsign_proper_by_definition(n):
    assert is_proper_dense(n, 3, -2, altsign_coloring_k3(n).assignment)


@pytest.mark.parametrize("n", range(3, 13))
def test_constant_classes_are_independent(n):
    col = altsign_coloring_k3(n)
    classes = col.classes()
    for pattern in CONSTANT_PATTERNS:
        label = "class:" + "".join("+" if s > 0 else "-" for s in pattern)
        (cid,) = [c for c, lab in col.palette.items() if lab == label]
        members = classes[cid]
        assert all(v.signs == pattern for v in members)
        assert check_independent(col.spec, members)


def test_altsign_rejects_small_n():
    with pytest.raises(InvalidSpecError):
        altsign_coloring_k3(2)


# -- contest triples ------------------------------------------------------------


def test_contest_n4():
    col = contest_triple_coloring(4)
    assert col[(1, 2, 3)] != col[(2, 3, 4)]
    assert len(set(col.values())) <= 2


def test_contest_n5_all_constraints():
    col = contest_triple_coloring(5)
    quads = list(itertools.combinations(range(1, 6), 4))
    assert len(quads) == 5
    for a, b, c, d in quads:
        assert col[(a, b, c)] != col[(b, c, d)]


def test_contest_n4_brute_force_optimum():
    triples = list(itertools.combinations(range(1, 5), 3))
    best = min(
        len(set(colors))
        for colors in itertools.product(range(4), repeat=len(triples))
        if dict(zip(triples, colors))[(1, 2, 3)] != dict(zip(triples, colors))[(2, 3, 4)]
    )
    assert best == 2


@pytest.mark.parametrize("n", range(4, 25))
def test_contest_proper_literal_quadruples(n):
    col = contest_triple_coloring(n)
    assert check_contest_coloring(n, col, method="quadruples")
    assert len(set(col.values())) <= 2 * symbol_width(n)


def test_contest_rejects_small_n():
    with pytest.raises(InvalidSpecError):
        contest_triple_coloring(3)


def test_declared_bounds():
    assert declared_bound("warmup2", 16) == 10
    assert declared_bound("subset2", 10) == 6
    assert declared_bound("altsign3", 16) == 14
    assert declared_bound("altsign3", 64) == 18
    assert declared_bound("contest", 4) == 2


def test_raw_coordinates_would_overshoot_the_cap():
    # at n = 4 the raw coordinates need 3 bits, giving 8 warm-up colours > 6
    mixed = {(a, b) for a, b in itertools.permutations(range(1, 5), 2)}
    raw = {msb_diff(a, b) * (1 if b > a else -1) for a, b in mixed}
    assert len(raw) + 2 > 2 * ceil_log2(4) + 2
    assert warmup_coloring_k2(4).num_colors <= 2 * ceil_log2(4) + 2


def test_random_injections_never_share_a_subset():
    rng = random.Random(1)
    for _ in range(20):
        n = rng.randint(1, 300)
        a = default_subset_assignment(n)
        assert len(set(a.f.values())) == n
