from __future__ import annotations

from itertools import product
from math import comb

import pytest
from hypothesis import given, strategies as st

from ramsey_degrees.degree_calc import (
    KFunction,
    closed_form,
    compositions,
    cross_verify,
    degree_from_k,
    laflamme_recursion,
    psi,
    psi_inv,
)
from ramsey_degrees.errors import ElementOutOfRange, MethodUnavailable, MissingK
from ramsey_degrees.space_core import Family, SpaceId


def _brute_compositions(n):
    out = set()
    for q in range(1, n + 1):
        for parts in product(range(1, n + 1), repeat=q):
            if sum(parts) == n:
                out.add(parts)
    return out


def test_compositions_of_three():
    assert compositions(3) == [(3,), (1, 2), (2, 1), (1, 1, 1)]
    assert compositions(1) == [(1,)]
    assert len(compositions(4)) == 8


@pytest.mark.parametrize("n", range(1, 8))
def test_compositions_match_brute_force(n):
    got = compositions(n)
    assert len(got) == len(set(got))
    assert set(got) == _brute_compositions(n)


def test_composition_count_up_to_sixteen():
    for n in range(1, 17):
        assert len(compositions(n)) == 2 ** (n - 1)


def test_compositions_are_in_colex_order_of_psi_images():
    for n in range(1, 9):
        keys = [sum(1 << b for b in psi(x)) for x in compositions(n)]
        assert keys == sorted(keys)


def test_psi_examples():
    assert psi((1, 2, 1)) == {0, 2}
    assert psi((5,)) == frozenset()
    assert psi((1, 1, 1)) == {0, 1}


def test_psi_inv_examples():
    assert psi_inv(4, {0, 2}) == (1, 2, 1)
    assert psi_inv(6, set()) == (6,)
    assert psi_inv(4, {0, 1, 2}) == (1, 1, 1, 1)
    with pytest.raises(ElementOutOfRange):
        psi_inv(4, {3})
    with pytest.raises(ElementOutOfRange):
        psi_inv(4, {-1})


def test_psi_round_trip_exhaustive():
    for n in range(1, 13):
        for mask in range(1 << (n - 1)):
            m = frozenset(b for b in range(n - 1) if mask >> b & 1)
            x = psi_inv(n, m)
            assert sum(x) == n and min(x) >= 1
            assert psi(x) == m
            assert psi_inv(n, psi(x)) == x


def test_degree_from_k_examples():
    assert degree_from_k(KFunction.constant(1, 3), 3) == 4
    assert degree_from_k({1: 1, 2: 2}, 2) == 3
    assert degree_from_k({1: 1}, 1) == 1


def test_degree_from_k_constant_one():
    for n in range(1, 17):
        assert degree_from_k(KFunction.constant(1, n), n) == 2 ** (n - 1)


def test_degree_from_k_matches_binomial_sum():
    # constant c per block: sum over q of C(n-1, q-1) c^q
    for c in (1, 2, 5):
        for n in range(1, 10):
            expected = sum(comb(n - 1, q - 1) * c**q for q in range(1, n + 1))
            assert degree_from_k(KFunction.constant(c, n), n) == expected


def test_degree_from_k_missing_values():
    with pytest.raises(MissingK):
        degree_from_k({1: 1}, 2)
    with pytest.raises(MissingK):
        KFunction.from_mapping({1: 1, 3: 2})
    with pytest.raises(MissingK):
        KFunction.constant(1, 2)(3)


def test_big_values_do_not_overflow():
    value = laflamme_recursion(100, 12)
    assert value == 101**11
    assert value > 2**64


@given(st.lists(st.integers(1, 6), min_size=4, max_size=4), st.integers(0, 3), st.integers(1, 4))
def test_degree_from_k_is_monotone(table, idx, bump):
    lo = KFunction(tuple(table))
    raised = list(table)
    raised[idx] += bump
    hi = KFunction(tuple(raised))
    for n in range(1, 5):
        assert degree_from_k(lo, n) <= degree_from_k(hi, n)


def test_laflamme_recursion_examples():
    assert laflamme_recursion(2, 2) == 3
    assert laflamme_recursion(2, 3) == 9
    assert laflamme_recursion(1, 4) == 8


def test_laflamme_recursion_matches_power():
    for k in range(1, 5):
        for n in range(1, 7):
            assert laflamme_recursion(k, n) == (k + 1) ** (n - 1)


def test_closed_form_values():
    assert closed_form(SpaceId(Family.LAFLAMME, 3), 3) == 16
    assert closed_form(SpaceId(Family.HYPERCUBE, 2), 2) == 5
    assert closed_form(SpaceId(Family.HYPERCUBE, 3), 2) == 14
    assert closed_form(SpaceId(Family.CLIQUEFREE, 4), 2) == 3
    assert closed_form(SpaceId(Family.ELLENTUCK_HD, 3), 2) == 13
    assert closed_form(SpaceId(Family.ELLENTUCK_HD, 3), 3) is None
    assert closed_form(SpaceId(Family.HYPERCUBE, 2), 3) is None
    assert closed_form(SpaceId(Family.FIN, 2), 2) is None


def test_cross_verify_laflamme_one():
    table = cross_verify(SpaceId(Family.LAFLAMME, 1), 4)
    assert table.passed
    for n, want in zip(range(1, 5), (1, 2, 4, 8)):
        assert table.values(n) == {"bruteforce": want, "combinator": want, "closed": want}


def test_cross_verify_small_ellentuck():
    table = cross_verify(SpaceId(Family.ELLENTUCK_HD, 2), 2)
    assert table.passed
    assert table.values(2) == {"bruteforce": 4, "closed": 4}


def test_cross_verify_hypercube_three():
    table = cross_verify(SpaceId(Family.HYPERCUBE, 3), 2)
    assert table.values(2)["combinator"] == 14 and table.values(2)["closed"] == 14


def test_cross_verify_detects_perturbed_combinator():
    space = SpaceId(Family.LAFLAMME, 1)
    methods = {
        "closed": lambda n: closed_form(space, n),
        "combinator": lambda n: degree_from_k(KFunction((1, 2, 1, 1)), n),
    }
    table = cross_verify(space, 3, methods=methods)
    assert not table.passed


def test_cross_verify_marks_unavailable_rows():
    table = cross_verify(SpaceId(Family.HYPERCUBE, 2), 3)
    rows = [r for r in table.rows if r.n == 3 and r.method != "closed"]
    assert rows and all(r.value is None and r.error for r in rows)
    assert table.passed


def test_cross_verify_needs_two_methods():
    with pytest.raises(MethodUnavailable):
        cross_verify(SpaceId(Family.LAFLAMME, 1), 2, methods={"closed": lambda n: 1})


def test_table_json_is_sorted():
    out = cross_verify(SpaceId(Family.LAFLAMME, 2), 2).to_json()
    assert set(out) == {"space", "param", "rows", "pass"}
    keys = [(r["n"], r["method"]) for r in out["rows"]]
    assert keys == [(1, "bruteforce"), (1, "combinator"), (1, "closed"), (2, "bruteforce"), (2, "combinator"), (2, "closed")]
