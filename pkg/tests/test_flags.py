from __future__ import annotations

import itertools
import random

import pytest

from structurable import albert as al
from structurable import brown as br
from structurable import flags as fl
from structurable import ideals as idl
from structurable.linalg import Subspace


@pytest.fixture(scope="module")
def e6(alb):
    return [fl.typed(alb, "e6", S) for _, S in fl.canonical_spaces("e6")]


@pytest.fixture(scope="module")
def e7(split):
    return [fl.typed(split, "e7", S) for _, S in fl.canonical_spaces("e7")]


def test_chamber_dimensions():
    assert [S.dim for _, S in fl.canonical_spaces("e6")] == [fl.E6_DIMS[i] for i in range(1, 7)]
    assert [S.dim for _, S in fl.canonical_spaces("e7")] == [fl.E7_DIMS[j] for j in range(1, 8)]


def test_chamber_types(e6, e7):
    assert [t.type.index for t in e6] == list(range(1, 7))
    assert [t.type.index for t in e7] == list(range(1, 8))


def test_chamber_is_incident(e6, e7):
    for geometry, chamber in (("e6", e6), ("e7", e7)):
        for a, b in itertools.combinations(chamber, 2):
            assert fl.incident(geometry, a, b)
            assert fl.incident(geometry, b, a)


def test_rule_tables():
    assert fl.RULES == {"e6": {(4, 5): 4, (5, 6): 5}, "e7": {(5, 6): 5, (6, 7): 6}}
    assert fl.PAPER_RULES["e6"][(4, 5)] == 3 and fl.PAPER_RULES["e7"][(5, 6)] == 4


def test_strict_table_rejects_two_chamber_pairs(e6, e7):
    failing = []
    for geometry, chamber in (("e6", e6), ("e7", e7)):
        for a, b in itertools.combinations(chamber, 2):
            if not fl.incident(geometry, a, b, strict_paper=True):
                failing.append((geometry, a.type.index, b.type.index))
    assert failing == [("e6", 4, 5), ("e7", 5, 6)]


def test_non_incident_pair(alb, e6):
    other = fl.typed(alb, "e6", Subspace.span([al.E1], 27))
    assert other.type.index == 1
    assert not fl.incident("e6", other, e6[1])


def test_duality_swaps_types(alb):
    V = dict(fl.canonical_spaces("e6"))
    assert fl.classify_e6(alb, alb.duality_map(V["V2"])) == fl.SpaceType("e6", 4)
    assert fl.classify_e6(alb, alb.duality_map(V["V4"])) == fl.SpaceType("e6", 2)


def test_e6_rejects(alb):
    assert fl.classify_e6(alb, Subspace.span([al.ONE], 27)) is None
    assert fl.classify_e6(alb, Subspace.span([al.basis(i) for i in range(4)], 27)) is None
    with pytest.raises(ValueError):
        fl.classify_e6(alb, Subspace.span([br.diag(1, 0)], br.DIM))


def test_e7_rejects(split):
    assert fl.classify_e7(split, Subspace.span([br.diag(1, 1)], br.DIM)) is None
    assert fl.classify_e7(split, Subspace.span([br.diag(1, 0), br.diag(0, 1)], br.DIM)) is None
    with pytest.raises(fl.Unclassified):
        fl.typed(split, "e7", Subspace.span([br.diag(1, 1)], br.DIM))
    with pytest.raises(ValueError):
        fl.classify(split, "g2", Subspace.zero(br.DIM))


def test_maximality_certificates(split, quad):
    W5 = dict(fl.canonical_spaces("e7"))["W5"]
    assert fl.maximality_certificate(split, W5).status == "maximal"
    assert fl.maximality_certificate(quad, idl.i6_ideal(quad)).status == "maximal"
    assert fl.classify_e7(quad, idl.i6_ideal(quad)) == fl.SpaceType("e7", 5)


def test_extendable_certificate(split):
    W4 = dict(fl.canonical_spaces("e7"))["W4"]
    cert = fl.maximality_certificate(split, W4)
    assert cert.status == "extendable"
    assert idl.is_singular_ideal(split, Subspace.span(W4.vectors() + [cert.extension], br.DIM))


def test_invariance_under_group_words(split):
    rng = random.Random(11)
    for _ in range(2):
        g = br.random_group_element(split, rng)
        for j, (_, W) in enumerate(fl.canonical_spaces("e7"), 1):
            assert fl.classify_e7(split, W.image(g)) == fl.SpaceType("e7", j)


def test_incidence_requires_matching_geometry(e6, e7):
    with pytest.raises(fl.Unclassified):
        fl.incident("e6", e6[0], e7[0])
