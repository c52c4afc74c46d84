"""Singular elements, singular ideals and inner ideals of a Brown algebra.

A nonzero e is singular when U_e x = {e, x, e} lies on the line F e for every
x. A subspace I is an inner ideal when U_e B lies in I for every e in I, and a
singular ideal when it consists of singular elements. Inner-ness is decided
two ways, through U and through the trilinear form t, and the two answers
are required to agree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _exact as ex
from ._exact import QArray
from .albert import A_SLOT, B_SLOT, C_SLOT, element as albert_element
from .brown import DIM, BrownCtx, VariantMismatch, block_element, block_parts, random_group_element
from .linalg import Subspace, rref


class CriteriaDisagree(RuntimeError):
    """The U-criterion and the t-criterion gave different answers."""


@dataclass(frozen=True)
class IdealReport:
    subspace: Subspace
    is_inner: bool
    is_singular: bool
    dim: int
    witness: np.ndarray | None = None

    def summary(self) -> str:
        return (f"inner={str(self.is_inner).lower()} "
                f"singular={str(self.is_singular).lower()} dim={self.dim}")


def _require_ambient(I: Subspace):
    if I.ambient_dim != DIM:
        raise ValueError(f"ideal must live in ambient dimension {DIM}, not {I.ambient_dim}")


def is_singular_element(ctx: BrownCtx, e: np.ndarray) -> bool:
    """e != 0 and U_e B lies in F e."""
    E = QArray.of(e)
    if E.is_zero():
        return False
    U = ctx.middle_operator_q(E, E)
    p = int(np.flatnonzero(E.n)[0])
    # column c lies on F e iff e_p c - c_p e = 0
    ep = Fraction(int(E.n[p]), E.den)
    return (U.scale(ep) - E.outer(U[p])).is_zero()


def sreglem_conditions(ctx: BrownCtx, e: np.ndarray):
    """The four conditions on (a, j, j', b) that together characterize singularity.

    (1) T(j, j') = 3 a b, (2) j'# = a j, (3) j# = b j', (4) <j, j'> = 0.
    """
    ctx._require_split(zeta_one=True)
    A = ctx.albert
    a, j, k, b = block_parts(e)
    c1 = A.trace_form(j, k) == 3 * a * b
    c2 = ex.is_zero(ex.normalize(A.sharp(k) - a * j))
    c3 = ex.is_zero(ex.normalize(A.sharp(j) - b * k))
    c4 = ex.is_zero(A.bracket(j, k))
    return bool(c1), bool(c2), bool(c3), bool(c4)


def _u_criterion(ctx: BrownCtx, I: Subspace):
    """None if U_e B lies in I for all e in I, else an e whose U_e escapes."""
    gens = [QArray.of(v) for v in I.vectors()]
    for i, gi in enumerate(gens):
        for j in range(i, len(gens)):
            M = ctx.middle_operator_q(gi, gens[j])
            if not I.contains_columns_q(M):
                w = gi if i == j else gi + gens[j]
                return w.obj()
    return None


def _t_criterion(ctx: BrownCtx, I: Subspace) -> bool:
    """Whether t(I, I, B) lies in I."""
    gens = [QArray.of(v) for v in I.vectors()]
    for i, gi in enumerate(gens):
        for j in range(i, len(gens)):
            if not I.contains_columns_q(ctx.t_matrix_q(gi, gens[j])):
                return False
    return True


def is_singular_ideal(ctx: BrownCtx, I: Subspace) -> bool:
    """t(u, v, z) = b(z, v) u + b(z, u) v for u, v in I and all z."""
    _require_ambient(I)
    gens = [QArray.of(v) for v in I.vectors()]
    for i, u in enumerate(gens):
        bu = ctx.b_row_q(u)
        for j in range(i, len(gens)):
            v = gens[j]
            # b(z, v) = -b(v, z), so the right side is -(u b_v + v b_u) as a map of z
            R = ctx.t_matrix_q(u, v) + u.outer(ctx.b_row_q(v)) + v.outer(bu)
            if not R.is_zero():
                return False
    return True


def is_inner_ideal(ctx: BrownCtx, I: Subspace) -> IdealReport:
    _require_ambient(I)
    witness = _u_criterion(ctx, I)
    inner = witness is None
    if inner != _t_criterion(ctx, I):
        raise CriteriaDisagree(f"U-criterion says {inner}, t-criterion says {not inner}")
    singular = inner and I.dim > 0 and is_singular_ideal(ctx, I)
    return IdealReport(I, inner, singular, I.dim, witness)


def inner_closure(ctx: BrownCtx, generators) -> Subspace:
    """Smallest inner ideal containing the generators."""
    S = Subspace.span(list(generators), DIM)
    gens = [QArray.of(v) for v in S.vectors()]
    j = 0
    while j < len(gens) and S.dim < DIM:
        for i in range(j + 1):
            M = ctx.middle_operator_q(gens[i], gens[j])
            if S.contains_columns_q(M):
                continue
            # only the part of the image outside S becomes new generators
            B = S.basis_q()
            X = M.T
            if S.dim:
                X = X - X[:, list(S.pivots)] @ B
            R, _ = rref(X)
            new = Subspace.span(np.vstack([S.basis, R]) if S.dim else R, DIM)
            gens.extend(QArray.of(r) for r in R)
            S = new
            if S.dim == DIM:
                break
        j += 1
    return S


# canonical examples ---------------------------------------------------------

def _slot_vector(slot: slice, i: int) -> np.ndarray:
    v = ex.zeros(27)
    v[slot.start + i - 1] = 1
    return v


def totally_singular_chain():
    """Totally singular subspaces of J of dimensions 0..6 along the standard chain."""
    e2 = albert_element(e2=1)
    a = [_slot_vector(A_SLOT, i) for i in range(1, 9)]
    b1 = _slot_vector(B_SLOT, 1)
    chain = [
        [],
        [e2],
        [e2, a[0]],
        [e2, a[0], a[1]],
        [e2, a[0], a[1], a[2]],
        [e2, a[0], a[1], a[2], a[3]],
        [e2, a[0], a[1], a[2], a[4], b1],
    ]
    return [Subspace.span(vs, 27) for vs in chain]


def singular_family_ideal(V: Subspace) -> Subspace:
    """(F, 0, V, 0)."""
    vecs = [block_element(alpha=1)]
    vecs += [block_element(jp=v) for v in V.vectors()]
    return Subspace.span(vecs, DIM)


def hyperline_ideal(ctx: BrownCtx, d: np.ndarray) -> Subspace:
    """(F, F d, d x J, 0) for d of rank one."""
    A = ctx.albert
    vecs = [block_element(alpha=1), block_element(j=d)]
    vecs += [block_element(jp=v) for v in A.hyperline(d).vectors()]
    return Subspace.span(vecs, DIM)


def i6_ideal(ctx: BrownCtx) -> Subspace:
    """(0, W, W, 0) tensor Delta for W = (0, 0, 0; F u1, F u2, F u5), in F-coordinates."""
    if ctx.variant != "quadratic":
        raise VariantMismatch("I6 lives in the quadratic variant")
    idx = [A_SLOT.start, B_SLOT.start + 1, C_SLOT.start + 4]
    vecs = []
    for off in (2, 29):
        for i in idx:
            v = ex.zeros(DIM)
            v[off + i] = 1
            vecs.append(v)
    return Subspace.span(vecs, DIM)


def canonical_ideals(ctx: BrownCtx):
    """Named list of the standard examples available in this context."""
    out = []
    if ctx.variant == "split":
        for V in totally_singular_chain():
            out.append((f"singular-{V.dim + 1}", singular_family_ideal(V)))
        e0 = albert_element(e0=1)
        out.append(("hyperline", hyperline_ideal(ctx, e0)))
    else:
        out.append(("I6", i6_ideal(ctx)))
    return out


# closure experiments ----------------------------------------------------------

@dataclass(frozen=True)
class ClosureRun:
    label: str
    dim: int
    is_singular: bool


def _combination(rng: random.Random, vectors) -> np.ndarray:
    out = ex.zeros(DIM)
    for v in vectors:
        out = out + rng.randint(-3, 3) * v
    return ex.normalize(out)


def seed_corpus(ctx: BrownCtx, count: int = 100, seed: int = 0):
    """Generator lists built from canonical ideals moved by random group words.

    Each entry is (label, generators). Kinds cycle through: a subset of a basis,
    random combinations inside one ideal, pieces of two different ideals, and a
    singular element together with an arbitrary element.
    """
    rng = random.Random(seed)
    named = canonical_ideals(ctx)
    corpus = []
    for n in range(count):
        g = random_group_element(ctx, rng) if ctx.variant == "split" and ctx.zeta == 1 else ex.identity(DIM)
        (name, I), (name2, I2) = rng.choice(named), rng.choice(named)
        basis = I.image(g).vectors()
        kind = n % 4
        if kind == 0:
            gens = rng.sample(basis, rng.randint(1, len(basis)))
        elif kind == 1:
            gens = [_combination(rng, basis) for _ in range(rng.randint(1, 3))]
        elif kind == 2:
            other = I2.image(g).vectors()
            gens = [_combination(rng, basis), _combination(rng, other)]
            name = f"{name}+{name2}"
        else:
            gens = [basis[0], ctx.random_element(rng, height=3, integral=True)]
            name = f"{name}+random"
        gens = [v for v in gens if not ex.is_zero(v)] or [basis[0]]
        corpus.append((f"{n}:{name}", gens))
    return corpus


def closure_experiment(ctx: BrownCtx, corpus):
    """Close every seed; return the list of ClosureRun results."""
    runs = []
    for label, gens in corpus:
        S = inner_closure(ctx, gens)
        singular = S.dim < DIM and is_singular_ideal(ctx, S)
        runs.append(ClosureRun(label, S.dim, singular))
    return runs
