"""Split octonions from a twisted multiplication table.

The basis u1..u8 carries a product ``x * y`` (here ``star``) that is not
unital. The ordinary octonion product is recovered as
``x y = pi(x) star pi(y)`` where ``pi(x) = (u4 + u5) star x`` is the
standard involution, and the norm is defined by ``x pi(x) = n(x) 1``.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import _exact as ex
from .scalars import format_scalar, parse_scalar

DIM = 8

# Row x, column y, entry x star y as a signed basis index (0 means zero).
STAR_TABLE = (
    (0, 0, 0, -1, 0, -2, 3, -4),
    (0, 0, 1, 0, -2, 0, -5, -6),
    (0, -1, 0, 0, -3, -5, 0, 7),
    (0, -2, -3, 5, 0, 0, 0, -8),
    (-1, 0, 0, 0, 4, -6, -7, 0),
    (2, 0, -4, -6, 0, 0, -8, 0),
    (-3, -4, 0, -7, 0, 8, 0, 0),
    (-5, 6, -7, 0, -8, 0, 0, 0),
)


class NotScalarMultiple(ValueError):
    """x pi(x) came out as something other than a multiple of the identity."""


class CayleyIntegrityError(RuntimeError):
    """The multiplication table failed a structural self-check."""


def basis(i: int) -> np.ndarray:
    """The basis vector u_i for i in 1..8."""
    v = ex.zeros(DIM)
    v[i - 1] = 1
    return v


def element(*coords) -> np.ndarray:
    if len(coords) == 1 and not np.isscalar(coords[0]):
        coords = tuple(coords[0])
    if len(coords) != DIM:
        raise ValueError(f"an octonion has {DIM} coordinates")
    return ex.obj(coords)


ONE = ex.obj([0, 0, 0, 1, 1, 0, 0, 0])
ZERO = ex.zeros(DIM)

_STAR = ex.Bilinear(
    [
        (x, y, abs(e) - 1, 1 if e > 0 else -1)
        for x, row in enumerate(STAR_TABLE)
        for y, e in enumerate(row)
        if e
    ],
    DIM, DIM, DIM,
)


def star(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """The twisted product read off the table."""
    return _STAR(x, y)


_PI = _STAR.left_matrix(ONE)


def pi(x: np.ndarray) -> np.ndarray:
    """Standard involution, pi(x) = (u4 + u5) star x."""
    return ex.matmul(_PI, x)


def _ordinary_entries():
    out = []
    for i in range(DIM):
        for j in range(DIM):
            prod = star(pi(basis(i + 1)), pi(basis(j + 1)))
            out.extend((i, j, k, c) for k, c in enumerate(prod.tolist()) if c)
    return out


_MUL = ex.Bilinear(_ordinary_entries(), DIM, DIM, DIM)


def mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Ordinary octonion product pi(x) star pi(y)."""
    return _MUL(x, y)


def mul_left_matrix(x: np.ndarray) -> np.ndarray:
    return _MUL.left_matrix(x)


def mul_right_matrix(y: np.ndarray) -> np.ndarray:
    return _MUL.right_matrix(y)


def star_left_matrix(x: np.ndarray) -> np.ndarray:
    return _STAR.left_matrix(x)


def star_right_matrix(y: np.ndarray) -> np.ndarray:
    return _STAR.right_matrix(y)


def pi_matrix() -> np.ndarray:
    return _PI.copy()


def norm(x: np.ndarray):
    """n(x), defined by x pi(x) = n(x) 1."""
    r = mul(x, pi(x))
    lam = r[3]
    if not ex.is_zero(r - lam * ONE):
        raise NotScalarMultiple(f"x pi(x) = {r.tolist()} is not a multiple of 1")
    return lam


def norm_bilinear(x: np.ndarray, y: np.ndarray):
    """n(x, y) = n(x + y) - n(x) - n(y)."""
    return norm(x + y) - norm(x) - norm(y)


def norm_gram() -> np.ndarray:
    """Gram matrix of n(x, y) in the basis u1..u8."""
    G = ex.zeros((DIM, DIM))
    for i in range(DIM):
        for j in range(DIM):
            G[i, j] = norm_bilinear(basis(i + 1), basis(j + 1))
    return G


def format_element(x: np.ndarray) -> str:
    return " ".join(format_scalar(v) for v in x.tolist())


def parse_element(text: str, field=None) -> np.ndarray:
    tokens = text.split()
    if len(tokens) != DIM:
        raise ValueError(f"expected {DIM} scalars, found {len(tokens)}")
    return ex.obj(parse_scalar(t, field) for t in tokens)


def integrity_report():
    """Run the structural checks; return a list of (name, passed) pairs."""
    basis_vecs = [basis(i) for i in range(1, DIM + 1)]
    checks = []
    checks.append(("unit laws", all(
        ex.is_zero(mul(ONE, b) - b) and ex.is_zero(mul(b, ONE) - b) for b in basis_vecs
    )))
    checks.append(("pi is an involution", ex.is_zero(ex.matmul(_PI, _PI) - ex.identity(DIM))))
    checks.append(("pi reverses products", all(
        ex.is_zero(pi(mul(a, b)) - mul(pi(b), pi(a)))
        for a, b in itertools.product(basis_vecs, repeat=2)
    )))
    try:
        ok = all(
            norm(mul(a, b)) == norm(a) * norm(b)
            for a, b in itertools.product(basis_vecs + [ONE + basis_vecs[0], basis_vecs[1] + basis_vecs[6]], repeat=2)
        )
    except NotScalarMultiple:
        ok = False
    checks.append(("norm is multiplicative", ok))
    probes = basis_vecs + [a + b for a, b in itertools.combinations(basis_vecs, 2)]
    checks.append(("alternative", all(
        ex.is_zero(mul(mul(a, a), b) - mul(a, mul(a, b)))
        and ex.is_zero(mul(mul(b, a), a) - mul(b, mul(a, a)))
        for a in probes for b in basis_vecs
    )))
    checks.append(("star is not unital", any(
        not ex.is_zero(star(ONE, b) - b) for b in basis_vecs
    )))
    return checks


def check_integrity():
    failed = [name for name, ok in integrity_report() if not ok]
    if failed:
        raise CayleyIntegrityError("multiplication table fails: " + ", ".join(failed))


check_integrity()
