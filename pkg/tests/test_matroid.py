import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from csdepth.io import format_matroid, parse_matroid
from csdepth.matroid import (
    ElementKind,
    ExplicitMatroid,
    GF2Matroid,
    GraphicMatroid,
    InputError,
    ParseError,
    ResourceError,
    UniformMatroid,
    circuits,
    classify,
    components,
    direct_sum,
    dual,
    elements_of,
    free_matroid,
    mask_of,
    minor,
    popcount,
)

from conftest import brute_components, gf2_rank_by_rows, graphic_rank_by_components, subsets


def test_rank_examples():
    assert UniformMatroid(3, 2).rank_of({0, 1}) == 2
    assert UniformMatroid(3, 0).rank_of({0, 1}) == 0
    cols = ["10", "01", "11"]
    assert GF2Matroid(2, cols).rank_of({0, 1, 2}) == gf2_rank_by_rows(cols) == 2


def test_rank_rejects_out_of_range():
    with pytest.raises(InputError):
        UniformMatroid(3, 2).rank(1 << 3)
    with pytest.raises(InputError):
        UniformMatroid(3, 2).rank_of([-1])


def test_is_independent_examples():
    assert not UniformMatroid(3, 2).is_independent(0b111)
    for m in (UniformMatroid(3, 0), GF2Matroid(2, ["00"]), free_matroid(0)):
        assert m.is_independent(0)
    cols = ["10", "01", "11"]
    assert GF2Matroid(2, cols).is_independent(mask_of([0, 2]))
    assert gf2_rank_by_rows([cols[0], cols[2]]) == 2


@pytest.mark.parametrize("rows,cols", [
    (3, ["101", "011", "110", "111", "000"]),
    (4, ["1000", "0100", "1100", "0011", "1111", "0110"]),
])
def test_gf2_rank_matches_row_reduction(rows, cols):
    m = GF2Matroid(rows, cols)
    for x in subsets(m.n):
        assert m.rank(x) == gf2_rank_by_rows([cols[i] for i in elements_of(x)])


def test_graphic_rank_matches_component_count():
    edges = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 3), (0, 1)]
    m = GraphicMatroid(4, edges)
    for x in subsets(m.n):
        sel = [edges[i] for i in elements_of(x)]
        used = sorted({v for e in sel for v in e})
        relabel = {v: i for i, v in enumerate(used)}
        expect = graphic_rank_by_components(len(used), [(relabel[u], relabel[v]) for u, v in sel])
        assert m.rank(x) == expect


def test_rank_axioms_hold_on_small_corpus(small_corpus):
    for entry in small_corpus:
        m = entry.matroid
        table = [m.rank(x) for x in subsets(m.n)]
        assert table[0] == 0
        for x in subsets(m.n):
            assert table[x] <= popcount(x)
            for e in range(m.n):
                if not x >> e & 1:
                    assert table[x | 1 << e] - table[x] in (0, 1), entry.name
        for x, y in itertools.product(subsets(m.n), repeat=2):
            assert table[x | y] + table[x & y] <= table[x] + table[y], entry.name


def test_dual_rank_formula_on_corpus(small_corpus):
    for entry in small_corpus:
        m = entry.matroid
        d = dual(m)
        for x in subsets(m.n):
            assert d.rank(x) == m.rank(m.full & ~x) + popcount(x) - m.matroid_rank
            assert dual(d).rank(x) == m.rank(x)


def test_dual_of_uniform_is_uniform():
    for n in range(6):
        for r in range(n + 1):
            d, u = dual(UniformMatroid(n, r)), UniformMatroid(n, n - r)
            assert all(d.rank(x) == u.rank(x) for x in subsets(n))


def test_dual_of_free_is_loops():
    d, loops = dual(free_matroid(3)), UniformMatroid(3, 0)
    assert all(d.rank(x) == loops.rank(x) for x in subsets(3))


def test_minor_examples():
    m = minor(UniformMatroid(3, 2), contract=0b001)
    u = UniformMatroid(2, 1)
    assert m.n == 2 and m.index_map == (1, 2)
    assert all(m.rank(x) == u.rank(x) for x in subsets(2))

    base = GF2Matroid(2, ["10", "01", "11"])
    assert all(minor(base).rank(x) == base.rank(x) for x in subsets(3))

    triangle = GraphicMatroid(3, [(0, 1), (1, 2), (0, 2)])
    c = minor(triangle, contract=0b001)
    assert [c.rank(0b01), c.rank(0b10), c.rank(0b11)] == [1, 1, 1]
    # contracted graph: vertices {0,1} merged, edges 1-2 twice
    assert graphic_rank_by_components(2, [(0, 1), (0, 1)]) == 1


def test_minor_rejects_overlap():
    with pytest.raises(InputError):
        minor(UniformMatroid(3, 2), contract=0b011, delete=0b010)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_minor_composition(data):
    m = GF2Matroid(3, ["100", "010", "110", "001", "101", "011"])
    labels = data.draw(st.lists(st.sampled_from("CDK"), min_size=6, max_size=6))
    c1 = mask_of(i for i, l in enumerate(labels) if l == "C")
    d1 = mask_of(i for i, l in enumerate(labels) if l == "D")
    first = minor(m, c1, d1)
    labels2 = data.draw(st.lists(st.sampled_from("CDK"), min_size=first.n, max_size=first.n))
    c2 = mask_of(i for i, l in enumerate(labels2) if l == "C")
    d2 = mask_of(i for i, l in enumerate(labels2) if l == "D")
    nested = minor(first, c2, d2)
    flat = minor(m, c1 | first.lift(c2), d1 | first.lift(d2))
    assert nested.n == flat.n
    for x in subsets(nested.n):
        assert nested.rank(x) == flat.rank(flat.project(first.lift(nested.lift(x))))


def test_classify_examples():
    assert classify(UniformMatroid(3, 0), 0) is ElementKind.LOOP
    assert classify(free_matroid(2), 1) is ElementKind.COLOOP
    u = UniformMatroid(3, 2)
    assert u.rank(0b001) == 1 and u.rank(0b110) == u.rank(0b111)
    assert classify(u, 0) is ElementKind.ORDINARY
    with pytest.raises(InputError):
        classify(u, 3)


def test_circuits_examples():
    assert circuits(UniformMatroid(3, 2)) == [0b111]
    assert circuits(free_matroid(4)) == []
    found = circuits(GF2Matroid(2, ["10", "01", "11", "11"]))
    assert mask_of([2, 3]) in found
    assert found == sorted(found, key=lambda c: (popcount(c), elements_of(c)))


def test_circuits_cap():
    with pytest.raises(ResourceError):
        circuits(UniformMatroid(20, 3))
    assert circuits(UniformMatroid(5, 4), cap=5) == [0b11111]


def test_components_examples():
    two = direct_sum(UniformMatroid(2, 1), UniformMatroid(2, 1))
    assert isinstance(two, ExplicitMatroid)
    assert components(two).blocks == (0b0011, 0b1100)
    assert [frozenset(elements_of(b)) for b in components(two).blocks] == brute_components(two)
    assert components(free_matroid(3)).blocks == (1, 2, 4)
    assert components(UniformMatroid(3, 2)).blocks == (0b111,)
    loops = components(UniformMatroid(2, 0))
    assert loops.trivial == (True, True)


def test_component_methods_agree_on_corpus(corpus):
    for entry in corpus:
        m = entry.matroid
        a = components(m, method="circuits")
        b = components(m, method="fundamental")
        assert a == b, entry.name
        assert sum(m.rank(blk) for blk in a.blocks) == m.matroid_rank
        if m.n <= 6:
            assert [frozenset(elements_of(x)) for x in a.blocks] == brute_components(m)


def test_rank_sum_criterion_detects_component_unions(small_corpus):
    for entry in small_corpus:
        m = entry.matroid
        blocks = components(m).blocks
        for x in subsets(m.n):
            is_union = all(b & x in (0, b) for b in blocks)
            additive = m.rank(x) + m.rank(m.full & ~x) == m.matroid_rank
            assert is_union == additive, entry.name


def test_non_coloops_survive_contraction(small_corpus):
    for entry in small_corpus:
        m = entry.matroid
        for x in subsets(m.n):
            mx = minor(m, contract=x)
            for e in range(m.n):
                if x >> e & 1 or classify(m, e) is ElementKind.COLOOP:
                    continue
                assert classify(mx, mx.index_map.index(e)) is not ElementKind.COLOOP


def test_explicit_rejects_bad_bases():
    with pytest.raises(InputError):
        ExplicitMatroid(3, [])
    with pytest.raises(InputError):
        ExplicitMatroid(3, [[0], [1, 2]])


# ------------------------------------------------------------------ file format

def test_parse_all_kinds():
    u = parse_matroid("matroid uniform\nn 4\nr 2\n")
    assert isinstance(u, UniformMatroid) and (u.n, u.r) == (4, 2)
    g = parse_matroid("# triangle\nmatroid graphic\nvertices 3\nedge 0 1\nedge 1 2\nedge 2 0 # back\n")
    assert g.matroid_rank == 2 and g.n == 3
    f = parse_matroid("matroid gf2\nrows 2\ncol 10\ncol 01\ncol 11\n")
    assert f.rank(0b111) == 2
    e = parse_matroid("matroid explicit\nn 3\nbasis 0 1\nbasis 0 2\nbasis 1 2\n")
    assert all(e.rank(x) == UniformMatroid(3, 2).rank(x) for x in subsets(3))
    loops = parse_matroid("matroid explicit\nn 2\nbasis\n")
    assert loops.matroid_rank == 0


@pytest.mark.parametrize("text,lineno", [
    ("matroid uniform\nn 3\nr x\n", 3),
    ("matroid bogus\n", 1),
    ("\n\nmatroid graphic\nvertices 2\nedge 0 5\n", 5),
    ("matroid gf2\nrows 2\ncol 10\ncol 101\n", 4),
    ("matroid explicit\nn 3\nbasis 0 1\nbasis 2\n", 4),
    ("matroid uniform\nn 2\nr 3\n", 3),
    ("hello\n", 1),
])
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(ParseError) as info:
        parse_matroid(text)
    assert info.value.lineno == lineno
    assert f"line {lineno}" in str(info.value)


def test_format_round_trip(corpus):
    for entry in list(corpus)[::7]:
        m = entry.matroid
        back = parse_matroid(format_matroid(m))
        assert back.n == m.n
        assert all(back.rank(x) == m.rank(x) for x in subsets(m.n))
    view = minor(UniformMatroid(4, 2), contract=1)
    back = parse_matroid(format_matroid(view))
    assert isinstance(back, ExplicitMatroid)
    assert all(back.rank(x) == view.rank(x) for x in subsets(view.n))
