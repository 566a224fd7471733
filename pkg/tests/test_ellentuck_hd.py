from __future__ import annotations

from itertools import combinations

import pytest

from ramsey_degrees.ellentuck_hd import (
    EkApprox,
    canonical_dk_member,
    count_pair_classes,
    is_tree_image,
    pair_pattern,
    project,
)
from ramsey_degrees.errors import ArityError, BudgetExceeded, DegenerateInput
from ramsey_degrees.seq_orders import NondecSeq, prec_key, unrank_full


def domain_configurations(k, n):
    """Pair classes read off the domain alone.

    For leaves u before v, compare every prefix of v with every prefix of u
    in the prec order (or note equality).  A prec- and prefix-preserving
    tree map carries this matrix to the entry relations of the image pair,
    so the number of distinct matrices is the number of classes forced in
    every member.  No labels are involved.
    """
    leaves = [unrank_full(k, i).entries for i in range(n)]

    def cmp(p, q):
        if p == q:
            return "="
        return "<" if prec_key(p) < prec_key(q) else ">"

    out = set()
    for j in range(n):
        for i in range(j):
            u, v = leaves[i], leaves[j]
            out.add("|".join("".join(cmp(v[: a + 1], u[: b + 1]) for b in range(k)) for a in range(k)))
    return out


def test_witness_small_examples():
    a = canonical_dk_member(2, 3)
    x, y, z = a.tuples
    assert x[0] == y[0] and y[0] != z[0]
    assert len({x[1], y[1], z[1]}) == 3
    (single,) = canonical_dk_member(2, 1).tuples
    assert single[0] < single[1]
    four = canonical_dk_member(3, 4).tuples
    # preimages (0,0,0),(0,0,1),(0,1,1),(1,1,1)
    assert four[0][:2] == four[1][:2]
    assert four[1][0] == four[2][0] and four[1][1] != four[2][1]
    assert four[3][0] != four[0][0]


@pytest.mark.parametrize("k", [2, 3, 4])
def test_witness_sharing_matches_preimages(k):
    n = 60
    leaves = canonical_dk_member(k, n).tuples
    pre = [unrank_full(k, i).entries for i in range(n)]
    for i, j in combinations(range(n), 2):
        for pos in range(k):
            assert (leaves[i][pos] == leaves[j][pos]) == (pre[i][: pos + 1] == pre[j][: pos + 1])


@pytest.mark.parametrize("k", [2, 3, 4])
def test_witness_is_in_dense_set(k):
    leaves = canonical_dk_member(k, 80).tuples
    for s, t in combinations(leaves, 2):
        for i in range(1, k):
            if s[i] == t[i]:
                assert s[i - 1] == t[i - 1]


@pytest.mark.parametrize("k", [2, 3])
def test_witness_is_a_tree_image(k):
    leaves = canonical_dk_member(k, 50).tuples
    assert is_tree_image(k, leaves)
    assert all(a < b for x in leaves for a, b in zip(x, x[1:]))


def test_witness_is_stable_under_growth():
    small = canonical_dk_member(3, 30).tuples
    big = canonical_dk_member(3, 90).tuples
    for s, t in combinations(range(30), 2):
        assert pair_pattern(small[s], small[t]) == pair_pattern(big[s], big[t])


def test_pair_pattern_two_dimensional_cases():
    assert str(pair_pattern((1, 3), (0, 2))) == "><|>>"
    assert str(pair_pattern((0, 3), (0, 2))) == "=<|>>"
    assert str(pair_pattern((2, 3), (0, 1))) == ">>|>>"


def test_pair_pattern_symmetric():
    leaves = canonical_dk_member(3, 40).tuples
    for s, t in combinations(leaves, 2):
        assert pair_pattern(s, t) == pair_pattern(t, s)


def test_pair_pattern_rejects_degenerate_pairs():
    with pytest.raises(DegenerateInput):
        pair_pattern((0, 0), (1, 2))
    with pytest.raises(DegenerateInput):
        pair_pattern((1, 2), (1, 2))
    with pytest.raises(DegenerateInput):
        pair_pattern((1, 2), (1, 2, 3))


def test_no_off_diagonal_equalities():
    _, patterns = count_pair_classes(3)
    for p in patterns:
        for i in range(3):
            for j in range(3):
                if i != j:
                    assert p.rel[i][j] != "="


def test_two_dimensional_count():
    count, patterns = count_pair_classes(2)
    assert count == 4
    assert sorted(str(p) for p in patterns) == ["<<|>>", "=<|>>", "><|>>", ">>|>>"]


@pytest.mark.parametrize("k", [2, 3, 4])
def test_count_matches_domain_oracle(k):
    count, patterns = count_pair_classes(k)
    oracle = domain_configurations(k, 300)
    assert count == len(oracle)
    assert {str(p) for p in patterns} == oracle


def test_known_counts():
    # the witness count; the sum-of-powers formula gives 13 and 40 here
    assert count_pair_classes(3)[0] == 14
    assert count_pair_classes(4)[0] == 49


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        count_pair_classes(4, step=5, max_leaves=20)


def test_project_examples():
    a = canonical_dk_member(2, 3)
    p = project(a, 1)
    assert len(p) == 2 and p.k == 1
    with pytest.raises(ArityError):
        project(a, 2)
    with pytest.raises(ArityError):
        project(a, 0)


def test_project_keeps_count_without_shared_prefixes():
    a = EkApprox(2, (NondecSeq((0, 1), 2), NondecSeq((2, 3), 2)))
    assert len(project(a, 1)) == 2


@pytest.mark.parametrize("k,l", [(3, 1), (3, 2), (4, 2)])
def test_projection_is_valid(k, l):
    p = project(canonical_dk_member(k, 40), l)
    keys = [prec_key(x.entries) for x in p.leaves]
    assert keys == sorted(set(keys))
    assert all(len(x) == l for x in p.leaves)


def test_ek_approx_validation():
    with pytest.raises(ValueError):
        EkApprox(2, (NondecSeq((0, 2), 2), NondecSeq((0, 1), 2)))
    with pytest.raises(ArityError):
        EkApprox(2, (NondecSeq((0,), 2),))


def test_tree_image_rejects_order_reversal():
    assert not is_tree_image(2, [(0, 5), (0, 3)])
    assert not is_tree_image(2, [(0, 1), (1, 2), (2, 3)])  # (0,1) and (1,1) must share a first entry
    assert is_tree_image(2, [(0, 1), (0, 2), (3, 4)])
