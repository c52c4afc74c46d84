from __future__ import annotations

import pytest
from hypothesis import given

from conftest import vectors
from structurable import _exact as ex
from structurable import cayley as cy

u = cy.basis
octonions = vectors(8)


def test_star_table_anchors():
    assert (cy.star(u(2), u(3)) == u(1)).all()
    assert (cy.star(u(4), u(4)) == u(5)).all()


def test_involution_anchors():
    assert (cy.pi(u(4)) == u(5)).all()
    assert (cy.pi(u(1)) == -u(1)).all()
    assert (cy.mul(u(4), u(4)) == u(4)).all()


def test_norm_anchors():
    assert cy.norm(cy.ONE) == 1
    assert cy.norm(u(1)) == 0
    assert cy.norm_bilinear(u(1), u(8)) == 1


def test_norm_gram_is_antidiagonal():
    G = cy.norm_gram()
    want = ex.zeros((8, 8))
    for i in range(8):
        want[i, 7 - i] = 1
    assert (G == want).all()


def test_integrity_report_passes():
    assert all(ok for _, ok in cy.integrity_report())


@given(octonions, octonions)
def test_norm_is_multiplicative(x, y):
    assert cy.norm(cy.mul(x, y)) == cy.norm(x) * cy.norm(y)


@given(octonions, octonions)
def test_alternative_laws(x, y):
    assert ex.is_zero(ex.normalize(cy.mul(cy.mul(x, x), y) - cy.mul(x, cy.mul(x, y))))
    assert ex.is_zero(ex.normalize(cy.mul(cy.mul(y, x), x) - cy.mul(y, cy.mul(x, x))))


@given(octonions, octonions, octonions)
def test_moufang_identity(x, y, z):
    lhs = cy.mul(cy.mul(x, cy.mul(y, x)), z)
    rhs = cy.mul(x, cy.mul(y, cy.mul(x, z)))
    assert ex.is_zero(ex.normalize(lhs - rhs))


@given(octonions, octonions)
def test_star_recovers_ordinary_product(x, y):
    assert ex.is_zero(ex.normalize(cy.mul(x, y) - cy.star(cy.pi(x), cy.pi(y))))


@given(octonions)
def test_round_trip(x):
    assert (cy.parse_element(cy.format_element(x)) == x).all()


def test_parse_rejects_wrong_length():
    with pytest.raises(ValueError):
        cy.parse_element("1 2 3")
