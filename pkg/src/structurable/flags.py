"""Flag spaces for E6 (in an Albert algebra) and E7 (in a Brown algebra).

E6: the i-spaces are totally singular subspaces of J of dimensions
1, 2, 3, 5 (maximal), 6 and the hyperlines d x J (dimension 10).
E7: the i-spaces are singular ideals of dimensions 1, 2, 3, 4, 6 (maximal),
7 and the 12-dimensional inner ideals.

Incidence is inclusion except for two special pairs per geometry, which
instead ask for a fixed intersection dimension. Those thresholds are read
off the canonical chamber; the alternative published thresholds are kept in
a second table.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from . import _exact as ex
from ._exact import QArray
from .albert import A_SLOT, B_SLOT, AlbertCtx, element as albert_element
from .brown import DIM, BrownCtx, block_element
from .ideals import is_inner_ideal, is_singular_element
from .linalg import Subspace, kernel

E6_DIMS = {1: 1, 2: 2, 3: 3, 4: 5, 5: 6, 6: 10}
E7_DIMS = {1: 1, 2: 2, 3: 3, 4: 4, 5: 6, 6: 7, 7: 12}


class Unclassified(ValueError):
    """A space handed to incidence is not a flag space."""


@dataclass(frozen=True)
class SpaceType:
    geometry: str
    index: int


@dataclass(frozen=True)
class TypedSpace:
    type: SpaceType
    space: Subspace


@dataclass(frozen=True)
class MaximalityCertificate:
    """Outcome of trying to extend a singular ideal by one dimension.

    status is "maximal", "extendable" or "undecided". solutions is the space
    of z satisfying the conditions that are linear in z; extension is a z
    with I + F z singular when one was found.
    """

    status: str
    solutions: Subspace
    extension: np.ndarray | None = None


# canonical chambers -----------------------------------------------------------

def _oct(slot: slice, *indices) -> list:
    out = []
    for i in indices:
        v = ex.zeros(27)
        v[slot.start + i - 1] = 1
        out.append(v)
    return out


def _e6_chamber():
    e1, e2 = albert_element(e1=1), albert_element(e2=1)
    spaces = {
        1: [e2],
        2: [e2] + _oct(A_SLOT, 1),
        3: [e2] + _oct(A_SLOT, 1, 2),
        4: [e2] + _oct(A_SLOT, 1, 2, 3, 4),
        5: [e2] + _oct(A_SLOT, 1, 2, 3, 5) + _oct(B_SLOT, 1),
        6: [e1, e2] + _oct(A_SLOT, *range(1, 9)),
    }
    return {i: Subspace.span(vs, 27) for i, vs in spaces.items()}


def _e7_chamber(V):
    beta = block_element(beta=1)
    W = {}
    for j in range(1, 7):
        vecs = [beta] + ([block_element(j=v) for v in V[j - 1].vectors()] if j > 1 else [])
        W[j] = Subspace.span(vecs, DIM)
    e0 = albert_element(e0=1)
    W[7] = Subspace.span([beta, block_element(jp=e0)] + [block_element(j=v) for v in V[6].vectors()], DIM)
    return W


_V = _e6_chamber()
_W = _e7_chamber(_V)


def canonical_spaces(geometry: str):
    """Named list [(name, Subspace)] of the canonical chamber."""
    geometry = geometry.lower()
    if geometry == "e6":
        return [(f"V{i}", S) for i, S in sorted(_V.items())]
    if geometry == "e7":
        return [(f"W{j}", S) for j, S in sorted(_W.items())]
    raise ValueError(f"unknown geometry {geometry!r}")


def _special_thresholds(chamber, pairs):
    return {p: (chamber[p[0]] & chamber[p[1]]).dim for p in pairs}


RULES = {
    "e6": _special_thresholds(_V, [(4, 5), (5, 6)]),
    "e7": _special_thresholds(_W, [(5, 6), (6, 7)]),
}
PAPER_RULES = {
    "e6": {(4, 5): 3, (5, 6): 5},
    "e7": {(5, 6): 4, (6, 7): 6},
}


# classification -------------------------------------------------------------------

def classify_e6(ctx: AlbertCtx, W: Subspace) -> SpaceType | None:
    if W.ambient_dim != 27:
        raise ValueError("E6 spaces live in J (dimension 27)")
    n = W.dim
    if n == 10:
        line = ctx.duality_map(W)
        if line.dim != 1:
            return None
        d = line.basis[0]
        if not ctx.is_rank_one(d) or ctx.hyperline(d) != W or ctx.duality_map(line) != W:
            return None
        return SpaceType("e6", 6)
    if n not in (1, 2, 3, 5, 6) or not ctx.is_totally_singular(W):
        return None
    if n == 5:
        dual = ctx.duality_map(W)
        if dual.dim != 2 or ctx.duality_map(dual) != W:
            return None
        return SpaceType("e6", 4)
    return SpaceType("e6", {1: 1, 2: 2, 3: 3, 6: 5}[n])


def _extension_system(ctx: BrownCtx, I: Subspace):
    """Stacked blocks, one per (u, w), of z -> t(u, z, w) - b(w, z) u - b(w, u) z."""
    G = ctx._b_gram_q
    eye = ctx._eye_q
    for u in I.vectors():
        U = QArray.of(u)
        bu = G @ U  # b(w, u) for all w
        for w in range(DIM):
            ew = QArray.of(_unit(w))
            yield ctx.t_matrix_q(U, ew) - U.outer(G[w]) - eye.scale(bu.obj()[w])


def _unit(i: int) -> np.ndarray:
    v = ex.zeros(DIM)
    v[i] = 1
    return v


def maximality_certificate(ctx: BrownCtx, I: Subspace, seed: int = 0, tries: int = 20) -> MaximalityCertificate:
    """Try to extend a singular ideal I by one singular direction."""
    K = ex.identity(DIM)  # columns span the current solution space
    for M in _extension_system(ctx, I):
        R = (M @ QArray.of(K)).obj()
        sol = kernel(R)
        K = ex.matmul(K, sol.basis.T) if sol.dim else ex.zeros((DIM, 0))
        if K.shape[1] == I.dim:
            break
    L = Subspace.span(K.T, DIM) if K.shape[1] else Subspace.zero(DIM)
    if L == I:
        return MaximalityCertificate("maximal", L)
    extra = [v for v in L.vectors() if not I.contains(v)]
    rng = random.Random(seed)
    candidates = extra + [
        ex.normalize(sum((rng.randint(-3, 3) * v for v in L.vectors()), ex.zeros(DIM)))
        for _ in range(tries)
    ]
    for z in candidates:
        if I.contains(z):
            continue
        if is_singular_element(ctx, z):
            return MaximalityCertificate("extendable", L, z)
    return MaximalityCertificate("undecided", L)


def classify_e7(ctx: BrownCtx, I: Subspace) -> SpaceType | None:
    if I.ambient_dim != DIM:
        raise ValueError(f"E7 spaces live in the Brown algebra (dimension {DIM})")
    n = I.dim
    if n not in E7_DIMS.values():
        return None
    report = is_inner_ideal(ctx, I)
    if not report.is_inner:
        return None
    if n == 12:
        return SpaceType("e7", 7)
    if not report.is_singular:
        return None
    if n == 6:
        cert = maximality_certificate(ctx, I)
        return SpaceType("e7", 5) if cert.status == "maximal" else None
    return SpaceType("e7", {1: 1, 2: 2, 3: 3, 4: 4, 7: 6}[n])


def classify(ctx, geometry: str, W: Subspace) -> SpaceType | None:
    geometry = geometry.lower()
    if geometry == "e6":
        return classify_e6(ctx, W)
    if geometry == "e7":
        return classify_e7(ctx, W)
    raise ValueError(f"unknown geometry {geometry!r}")


def typed(ctx, geometry: str, W: Subspace) -> TypedSpace:
    t = classify(ctx, geometry, W)
    if t is None:
        raise Unclassified(f"subspace of dimension {W.dim} is not an {geometry.upper()} flag space")
    return TypedSpace(t, W)


def incident(geometry: str, A: TypedSpace, B: TypedSpace, strict_paper: bool = False) -> bool:
    """Inclusion, or a prescribed intersection dimension for the special pairs."""
    geometry = geometry.lower()
    if A.type.geometry != geometry or B.type.geometry != geometry:
        raise Unclassified("both spaces must be classified in the requested geometry")
    rules = (PAPER_RULES if strict_paper else RULES)[geometry]
    pair = tuple(sorted((A.type.index, B.type.index)))
    if pair in rules:
        return (A.space & B.space).dim == rules[pair]
    return A.space <= B.space or B.space <= A.space
