import pytest

from csdepth.depth import (
    altered_contraction_depth,
    altered_deletion_depth,
    contraction_depth,
    csd_gf2_quotient,
    deletion_depth,
    depth,
    depth_witness,
)
from csdepth.matroid import (
    GF2Matroid,
    GraphicMatroid,
    InputError,
    ResourceError,
    UniformMatroid,
    components,
    direct_sum,
    dual,
    free_matroid,
    minor,
    restrict,
)

FANO = GF2Matroid(3, ["100", "010", "001", "110", "101", "011", "111"])


def naive_depth(m, kind):
    """Textbook recursion on explicit minor objects, components from circuits."""
    if m.n == 0:
        return 0
    if m.n == 1:
        if kind == "cd-alt":
            return m.rank(1)
        if kind == "dd-alt":
            return 1 - m.rank(1)
        return 1
    blocks = components(m, method="circuits").blocks
    if len(blocks) > 1:
        return max(naive_depth(restrict(m, b), kind) for b in blocks)
    if kind in ("cd", "cd-alt"):
        return 1 + min(naive_depth(minor(m, contract=1 << e), kind) for e in range(m.n))
    return 1 + min(naive_depth(minor(m, delete=1 << e), kind) for e in range(m.n))


def test_named_examples():
    assert contraction_depth(UniformMatroid(3, 0)) == 1
    assert contraction_depth(UniformMatroid(3, 1)) == 2
    assert contraction_depth(UniformMatroid(3, 2)) == 3
    assert contraction_depth(free_matroid(3)) == 1
    assert contraction_depth(free_matroid(0)) == 0
    assert deletion_depth(dual(UniformMatroid(3, 1))) == 2


def test_altered_examples():
    assert altered_contraction_depth(UniformMatroid(3, 1)) == 1
    assert altered_contraction_depth(UniformMatroid(3, 0)) == 0
    assert altered_contraction_depth(free_matroid(3)) == 1
    assert altered_deletion_depth(free_matroid(3)) == 0
    assert altered_deletion_depth(UniformMatroid(3, 0)) == 1


@pytest.mark.parametrize("kind", ["cd", "dd", "cd-alt", "dd-alt"])
def test_against_naive_recursion(small_corpus, kind):
    for entry in small_corpus[::3]:
        assert depth(entry.matroid, kind) == naive_depth(entry.matroid, kind), entry.name


def test_duality(corpus):
    for entry in corpus:
        m = entry.matroid
        assert contraction_depth(m) == deletion_depth(dual(m)), entry.name
        assert altered_contraction_depth(m) == altered_deletion_depth(dual(m)), entry.name


def test_memo_and_plain_agree(small_corpus):
    for entry in small_corpus[::2]:
        for kind in ("cd", "dd"):
            assert depth(entry.matroid, kind, memo=False) == depth(entry.matroid, kind)


def test_components_take_max():
    m = direct_sum(UniformMatroid(3, 2), UniformMatroid(2, 1))
    assert contraction_depth(m) == 3


def test_witness_element():
    value, e = depth_witness(UniformMatroid(3, 2))
    assert value == 3 and e == 0
    assert depth_witness(free_matroid(3)) == (1, None)
    value, e = depth_witness(GraphicMatroid(3, [(0, 1), (1, 2), (0, 2), (0, 1)]))
    assert value == contraction_depth(GraphicMatroid(3, [(0, 1), (1, 2), (0, 2), (0, 1)]))
    assert e is not None


def test_unknown_kind_and_cap():
    with pytest.raises(InputError):
        depth(UniformMatroid(2, 1), "td")
    with pytest.raises(ResourceError):
        depth(UniformMatroid(8, 2), cap=5)


def test_quotient_examples():
    assert csd_gf2_quotient(FANO) == 3
    assert csd_gf2_quotient(GF2Matroid(2, ["00", "00"])) == 0
    assert csd_gf2_quotient(GF2Matroid(2, ["10", "01"])) == 1
    assert csd_gf2_quotient(GF2Matroid(2, ["10", "01", "11"])) == 2
    with pytest.raises(InputError):
        csd_gf2_quotient(UniformMatroid(3, 1))
    with pytest.raises(ResourceError):
        csd_gf2_quotient(GF2Matroid(3, ["100", "010", "001"]), dim_cap=2)


def test_quotient_ignores_column_order():
    cols = ["100", "010", "110", "001", "011"]
    a = csd_gf2_quotient(GF2Matroid(3, cols))
    b = csd_gf2_quotient(GF2Matroid(3, cols[::-1]))
    assert a == b



def test_single_element_and_parallel_examples():
    assert deletion_depth(free_matroid(1)) == 1
    assert altered_contraction_depth(free_matroid(1)) == 1
    assert altered_contraction_depth(UniformMatroid(1, 0)) == 0
    assert altered_deletion_depth(UniformMatroid(1, 0)) == 1
    assert altered_deletion_depth(free_matroid(1)) == 0
    assert csd_gf2_quotient(GF2Matroid(1, ["1"])) == 1
    assert csd_gf2_quotient(GF2Matroid(1, ["1", "1"])) == 1
