from __future__ import annotations

from itertools import combinations, product

import pytest

from ramsey_degrees.carlson_simpson import (
    FinPartition,
    PairColoring,
    RigidSurjection,
    approx,
    factors_through,
    find_monochromatic,
    from_surjection,
    is_coarser,
    mono_coarsening,
    mono_witness,
    pentagon_coloring,
    restricted_growth_strings,
    to_surjection,
)
from ramsey_degrees.errors import DomainMismatch, NoMonochromaticSet, NotRigid, TooFewClasses

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140]


def test_partition_examples():
    e = FinPartition.from_classes(5, [[0, 2], [1, 4], [3]])
    assert e.rgs == (0, 1, 0, 2, 1)
    assert e.minima() == (0, 1, 3)
    assert e.classes() == [(0, 2), (1, 4), (3,)]
    with pytest.raises(ValueError):
        FinPartition((1, 0))
    with pytest.raises(ValueError):
        FinPartition.from_classes(3, [[0, 1]])


def test_surjection_round_trip_bell():
    for n in range(9):
        seen = set()
        for g in restricted_growth_strings(n):
            e = FinPartition(g)
            h = to_surjection(e)
            assert h.is_rigid()
            assert from_surjection(h) == e
            seen.add(g)
        assert len(seen) == BELL[n]


def test_non_rigid_rejected():
    with pytest.raises(NotRigid):
        from_surjection(RigidSurjection((1, 0, 1)))
    with pytest.raises(NotRigid):
        from_surjection((0, 2, 1))


def test_coarsening_is_a_partial_order():
    for n in range(1, 7):
        parts = list(restricted_growth_strings(n))
        for a in parts:
            assert is_coarser(a, a)
        for a, b in product(parts, repeat=2):
            if a != b and is_coarser(a, b):
                assert not is_coarser(b, a)
        if n <= 5:
            for a, b, c in product(parts, repeat=3):
                if is_coarser(a, b) and is_coarser(b, c):
                    assert is_coarser(a, c)


def test_coarser_matches_factorization():
    for n in range(1, 7):
        parts = list(restricted_growth_strings(n))
        for a, b in product(parts, repeat=2):
            assert is_coarser(a, b) == factors_through(a, b)


def test_coarser_example_and_mismatch():
    assert is_coarser((0, 0, 0), (0, 1, 2))
    assert not is_coarser((0, 1, 0), (0, 0, 1))
    with pytest.raises(DomainMismatch):
        is_coarser((0,), (0, 0))


def test_approx_examples():
    e = FinPartition((0, 1, 0, 2, 1, 3))
    assert approx(e, 0).rgs == ()
    assert approx(e, 1).rgs == (0,)
    assert approx(e, 3).rgs == (0, 1, 0, 2, 1)
    with pytest.raises(TooFewClasses):
        approx(e, 4)


def test_approx_coherence():
    for g in restricted_growth_strings(7):
        e = FinPartition(g)
        for n in range(e.num_classes):
            r = approx(e, n)
            assert r.num_classes == n
            for m in range(n):
                assert approx(r, m) == approx(e, m)


def test_pentagon_has_no_triangle():
    c = pentagon_coloring()
    with pytest.raises(NoMonochromaticSet):
        find_monochromatic(c, 3)
    assert len(find_monochromatic(c, 2)) == 2


def test_six_points_force_triangle():
    for bits in range(0, 1 << 15, 97):
        c = PairColoring(6, bits)
        sub = find_monochromatic(c, 3)
        assert len({c(i, j) for i, j in combinations(sub, 2)}) == 1


def test_coloring_json_round_trip():
    c = pentagon_coloring()
    assert PairColoring.from_json(c.to_json()) == c
    with pytest.raises(ValueError):
        PairColoring(3, 1 << 3)


def test_mono_coarsening_example():
    e = FinPartition(tuple(range(6)))
    c = PairColoring.from_function(6, lambda i, j: int(i % 2 == j % 2))
    f = mono_coarsening(e, c, 3)
    kept = mono_witness(e, c, 3)
    assert is_coarser(f, e)
    assert set(f.minima()) - {0} == set(kept) - {0}
    assert len({c(i, j) for i, j in combinations(kept, 2)}) == 1


def test_mono_coarsening_sampled_six():
    e = FinPartition((0, 1, 0, 2, 3, 1, 4, 5))
    for bits in range(0, 1 << 15, 13):
        c = PairColoring(6, bits)
        f = mono_coarsening(e, c, 3)
        kept = mono_witness(e, c, 3)
        assert is_coarser(f, e)
        assert set(f.minima()) - {0} == set(kept) - {0}
        pos = {m: i for i, m in enumerate(e.minima())}
        assert len({c(pos[a], pos[b]) for a, b in combinations(kept, 2)}) == 1


def test_mono_coarsening_errors():
    e = FinPartition((0, 1, 2))
    with pytest.raises(ValueError):
        mono_coarsening(e, pentagon_coloring(), 2)
    with pytest.raises(ValueError):
        mono_coarsening(e, PairColoring(3, 0), 1)
