from __future__ import annotations

import json

import pytest

from ramsey_degrees.errors import IndexOutOfRange, UnsupportedSpace
from ramsey_degrees.laflamme_trees import build_tree
from ramsey_degrees.space_core import (
    AuditReport,
    Family,
    FiniteApprox,
    SpaceId,
    audit_axioms,
    audit_model,
    model_for,
    parse_family,
    restrict,
)
from ramsey_degrees.suites import AUDIT_SPACES, corrupted_fixture


def test_space_id_validation():
    assert SpaceId("e", 2).family is Family.ELLENTUCK_HD
    assert SpaceId("arrow", 3).family is Family.CLIQUEFREE
    with pytest.raises(ValueError):
        SpaceId(Family.ELLENTUCK_HD, 1)
    with pytest.raises(ValueError):
        SpaceId(Family.LAFLAMME, 0)
    with pytest.raises(UnsupportedSpace):
        parse_family("bogus")


def test_restrict_figure_tree():
    tree = build_tree(1, 5)
    a = FiniteApprox(SpaceId(Family.LAFLAMME, 1), tree.blocks)
    two = restrict(a, 2)
    assert [b[0][0] for b in two.blocks] == [0, 1]
    assert len(restrict(a, 0)) == 0
    assert restrict(a, 5) == a
    with pytest.raises(IndexOutOfRange):
        restrict(a, 6)
    with pytest.raises(IndexOutOfRange):
        restrict(a, -1)


def test_restrict_is_coherent():
    a = FiniteApprox(SpaceId(Family.LAFLAMME, 1), build_tree(1, 5).blocks)
    for j in range(6):
        for i in range(j + 1):
            assert restrict(restrict(a, j), i) == restrict(a, i)


@pytest.mark.parametrize("space", AUDIT_SPACES, ids=str)
def test_audit_passes(space):
    report = audit_axioms(space, 4)
    assert report.passed, report.to_json()
    assert report.examined > 1
    assert [c.axiom for c in report.checks] == ["A.1(a)", "A.1(c)", "A.2(a)"]


@pytest.mark.parametrize("space", [SpaceId(Family.ELLENTUCK_HD, 3), SpaceId(Family.FIN, 1), SpaceId(Family.FIN, 3), SpaceId(Family.HYPERCUBE, 1)], ids=str)
def test_audit_other_parameters(space):
    assert audit_axioms(space, 4).passed


def test_audit_laflamme_two_shallow():
    from ramsey_degrees.laflamme_trees import LaflammeModel

    assert audit_model(LaflammeModel(SpaceId(Family.LAFLAMME, 2), bound=3), 3).passed


def test_corrupted_fixture_fails_with_witness():
    report = audit_model(corrupted_fixture(), 4)
    bad = {c.axiom: c for c in report.checks if not c.passed}
    assert "A.1(c)" in bad
    assert bad["A.1(c)"].witness
    json.loads(bad["A.1(c)"].witness)


def test_audit_depth_must_be_positive():
    with pytest.raises(ValueError):
        audit_axioms(SpaceId(Family.LAFLAMME, 1), 0)


def test_audit_report_json_is_deterministic():
    a = audit_axioms(SpaceId(Family.CARLSON_SIMPSON), 3).to_json()
    b = audit_axioms(SpaceId(Family.CARLSON_SIMPSON), 3).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert set(a) == {"space", "param", "depth", "checks"}
    assert all(set(c) == {"axiom", "pass", "witness"} for c in a["checks"])


@pytest.mark.parametrize("space", AUDIT_SPACES, ids=str)
def test_leq_fin_reflexive_and_locations_increase(space):
    model = model_for(space)
    for a in model.approximations(3):
        assert model.leq_fin(a, a)
        locs = [model.location(b) for b in a.blocks]
        assert locs == sorted(set(locs))
        assert model.restrict(a, len(a)) == a


@pytest.mark.parametrize(
    "space",
    [s for s in AUDIT_SPACES if s.family is not Family.FIN],
    ids=str,
)
def test_leq_fin_transitive(space):
    model = model_for(space)
    approxs = list(model.approximations(2))[:60]
    for b in approxs:
        for a in model.below(b):
            for c in approxs:
                if model.leq_fin(b, c):
                    assert model.leq_fin(a, c)


def test_empty_report_passes():
    assert AuditReport(SpaceId(Family.FIN, 1), 1).passed
