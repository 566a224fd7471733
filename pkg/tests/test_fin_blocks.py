from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ramsey_degrees.errors import CeilingUnderflow, OverlappingSupport, TooFewPoints
from ramsey_degrees.fin_blocks import (
    BlockSeq,
    FinFunc,
    all_block_seqs,
    all_fin_funcs,
    decomposes,
    from_set,
    gen_semigroup,
    is_block_subseq,
    leq_fin,
    projections,
    sum_disjoint,
    tee,
)


def F(k, **vals):
    return FinFunc.from_dict(k, {int(p[1:]): v for p, v in vals.items()})


def single(k, p, v=None):
    return FinFunc(k, ((p, k if v is None else v),))


def test_tee_examples():
    f = FinFunc(2, ((0, 2), (1, 1), (3, 2)))
    assert tee(f).entries == ((0, 1), (3, 1))
    assert tee(f, 0) == f
    with pytest.raises(CeilingUnderflow):
        tee(f, 2)


@st.composite
def disjoint_pair(draw):
    k = draw(st.integers(1, 4))
    pos = draw(st.lists(st.integers(0, 20), min_size=2, max_size=10, unique=True))
    cut = draw(st.integers(1, len(pos) - 1))
    a, b = pos[:cut], pos[cut:]
    va = draw(st.lists(st.integers(1, k), min_size=len(a), max_size=len(a)))
    vb = draw(st.lists(st.integers(1, k), min_size=len(b), max_size=len(b)))
    va[0] = vb[0] = k
    return k, FinFunc.from_dict(k, dict(zip(a, va))), FinFunc.from_dict(k, dict(zip(b, vb)))


@given(disjoint_pair())
def test_tee_is_additive(data):
    k, f, g = data
    if k > 1:
        assert tee(sum_disjoint(f, g)) == sum_disjoint(tee(f), tee(g))


def test_sum_overlap():
    with pytest.raises(OverlappingSupport):
        sum_disjoint(single(1, 0), single(1, 0))


def test_fin_func_validation():
    with pytest.raises(ValueError):
        FinFunc(2, ((0, 1),))
    with pytest.raises(ValueError):
        FinFunc(2, ())
    with pytest.raises(ValueError):
        FinFunc(2, ((1, 2), (0, 2)))


def test_block_seq_validation():
    with pytest.raises(ValueError):
        BlockSeq(1, (single(1, 2), single(1, 2)))
    assert BlockSeq.from_json(BlockSeq(1, (single(1, 0),)).to_json()).k == 1


def test_generation_example():
    g = BlockSeq(2, (single(2, 0), single(2, 1)))
    top = gen_semigroup(g, 2)
    assert FinFunc(2, ((0, 2), (1, 1))) in top
    assert FinFunc(2, ((0, 1), (1, 2))) in top
    assert len(top) == 5
    assert len(gen_semigroup(g, 1)) == 3


@pytest.mark.parametrize("length", [1, 2, 3, 4])
def test_fin1_generation_size(length):
    g = from_set(range(length + 1), 1)
    assert len(gen_semigroup(g, 1)) == 2**length - 1


@pytest.mark.parametrize("k,width", [(1, 6), (2, 4), (3, 3)])
def test_decomposition_matches_generation(k, width):
    for g in all_block_seqs(k, width, 3):
        if not len(g):
            continue
        top = gen_semigroup(g, k)
        span = sorted({p for f in g for p in f.support})
        for f in all_fin_funcs(k, span):
            assert decomposes(f, g) == (f in top)


def test_block_subseq_is_a_preorder():
    seqs = [s for s in all_block_seqs(2, 4, 2) if len(s)]
    for a in seqs:
        assert is_block_subseq(a, a)
    for a in seqs[:40]:
        for b in seqs:
            if not is_block_subseq(a, b):
                continue
            for c in seqs:
                if is_block_subseq(b, c):
                    assert is_block_subseq(a, c)


def test_leq_fin_example():
    g = BlockSeq(1, (single(1, 0), single(1, 2)))
    f = BlockSeq(1, (FinFunc(1, ((0, 1), (2, 1))),))
    assert leq_fin(f, g)
    assert not leq_fin(BlockSeq(1, (single(1, 0),)), g)
    assert leq_fin(BlockSeq(1, ()), BlockSeq(1, ()))


def test_leq_fin_is_not_transitive():
    h = BlockSeq(2, tuple(single(2, p) for p in range(4)))
    g0 = sum_disjoint(h.funcs[0], tee(h.funcs[1]))
    g1 = sum_disjoint(h.funcs[2], tee(h.funcs[3]))
    g = BlockSeq(2, (g0, g1))
    f = BlockSeq(2, (sum_disjoint(g0, tee(g1)),))
    assert leq_fin(f, g) and leq_fin(g, h)
    assert not leq_fin(f, h)
    assert is_block_subseq(f, h)


def test_from_set_examples():
    f = from_set([1, 3, 4], 2)
    assert [x.entries for x in f] == [((1, 2), (2, 2)), ((3, 2),)]
    with pytest.raises(TooFewPoints):
        from_set([5], 1)


def test_from_set_monotone():
    base = list(range(8))
    for k in (1, 2):
        for r in (2, 3, 4):
            for b in combinations(base, r):
                for extra in base:
                    a = sorted(set(b) | {extra})
                    assert is_block_subseq(from_set(b, k), from_set(a, k))


def test_from_set_not_monotone_backwards():
    assert not is_block_subseq(from_set([0, 1, 2], 1), from_set([0, 2], 1))


def test_projections():
    f = from_set([1, 3, 4, 9], 1)
    assert projections(f) == (frozenset({1, 3, 4}), frozenset({2, 3, 8}))
    with pytest.raises(ValueError):
        projections(BlockSeq(1, ()))


def test_ceilings_must_agree():
    with pytest.raises(ValueError):
        is_block_subseq(from_set([0, 1], 1), from_set([0, 1], 2))
