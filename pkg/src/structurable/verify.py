"""Self-check suites: each check is a named zero-argument predicate.

The runner prints one "ok n name" or "not ok n name" line per check, in a
fixed order, and reports whether everything passed. Randomized checks draw
from a random.Random seeded by the suite seed.
"""

from __future__ import annotations

import itertools
import random
import sys

from . import _exact as ex
from . import albert as al
from . import brown as br
from . import cayley as cy
from . import flags as fl
from . import ideals as idl
from .linalg import Subspace, matmul
from .scalars import QuadField

SUITES = ("cayley", "albert", "brown", "fts", "duality", "ideals", "flags")


def _rng(seed: int, salt: str) -> random.Random:
    return random.Random(f"{seed}:{salt}")


def _all(it) -> bool:
    return all(it)


# cayley ----------------------------------------------------------------------

def cayley_checks(seed: int):
    rng = _rng(seed, "cayley")
    pairs = [(al.random_vector(8, rng), al.random_vector(8, rng)) for _ in range(200)]
    checks = [(f"cayley: {name}", (lambda ok=ok: ok)) for name, ok in cy.integrity_report()]
    checks += [
        ("cayley: pi squared is the identity", lambda: ex.is_zero(matmul(cy.pi_matrix(), cy.pi_matrix()) - ex.identity(8))),
        ("cayley: n(xy) = n(x) n(y) on 200 random pairs",
         lambda: _all(cy.norm(cy.mul(x, y)) == cy.norm(x) * cy.norm(y) for x, y in pairs)),
        ("cayley: alternative laws on 100 random pairs",
         lambda: _all(
             ex.is_zero(ex.normalize(cy.mul(cy.mul(x, x), y) - cy.mul(x, cy.mul(x, y))))
             and ex.is_zero(ex.normalize(cy.mul(cy.mul(y, x), x) - cy.mul(y, cy.mul(x, x))))
             for x, y in pairs[:100])),
        ("cayley: n(1) = 1 and n(u1) = 0", lambda: cy.norm(cy.ONE) == 1 and cy.norm(cy.basis(1)) == 0),
    ]
    return checks


# albert ------------------------------------------------------------------------

def albert_checks(seed: int):
    rng = _rng(seed, "albert")
    A = al.albert_context()
    xs = [A.random_element(rng) for _ in range(100)]
    u1, u4 = cy.basis(1), cy.basis(4)
    return [
        ("albert: (e1 + e2)# = e0", lambda: ex.is_zero(A.sharp(al.E1 + al.E2) - al.E0)),
        ("albert: (0,0,0;u1,0,-u4)# = (0,0,0;0,u1,0)",
         lambda: ex.is_zero(A.sharp(al.element(a=u1, c=-u4)) - al.element(b=u1))),
        ("albert: x## = N(x) x on 100 random x",
         lambda: _all(ex.is_zero(ex.normalize(A.sharp(A.sharp(x)) - A.norm(x) * x)) for x in xs)),
        ("albert: sharp routes agree (table, derivative, adjoint)",
         lambda: _all(
             ex.is_zero(ex.normalize(A.sharp(x) - A.sharp_by_derivative(x)))
             and ex.is_zero(ex.normalize(A.sharp(x) - A.sharp_by_adjoint(x)))
             for x in xs[:5])),
        ("albert: T(x#, x) = 3 N(x)", lambda: _all(A.trace_form(A.sharp(x), x) == 3 * A.norm(x) for x in xs[:20])),
        ("albert: N(1) = 1 and T(1) = 3", lambda: A.norm(al.ONE) == 1 and A.trace(al.ONE) == 3),
        ("albert: psi_lam has multiplier lam", lambda: A.norm_multiplier(A.psi_similarity(3)) == 3),
        ("albert: dim(e0 x J) = 10", lambda: A.hyperline(al.E0).dim == 10),
        ("albert: dim(d x J) = 10 for 20 sampled rank one d",
         lambda: _all(A.hyperline(A.random_rank_one(rng)).dim == 10 for _ in range(20))),
    ]


# brown ---------------------------------------------------------------------------

def structurable_identity(ctx: br.BrownCtx, x, y, z, w) -> bool:
    """[V_{x,y}, V_{z,w}] = V_{V_{x,y} z, w} - V_{z, V_{y,x} w}."""
    Q = ex.QArray.of
    X, Y, Z, W = Q(x), Q(y), Q(z), Q(w)
    Vxy, Vzw = ctx.v_operator_q(X, Y), ctx.v_operator_q(Z, W)
    lhs = Vxy @ Vzw - Vzw @ Vxy
    rhs = ctx.v_operator_q(Vxy @ Z, W) - ctx.v_operator_q(Z, ctx.v_operator_q(Y, X) @ W)
    return (lhs - rhs).is_zero()


def descent_anchor_images():
    """(m(f1), m(f2), f1, f2) over Q(sqrt 2), with f1, f2 in upstairs coordinates."""
    ctx = br.split_context(1)
    K = QuadField(2)
    one = ctx.albert.one
    f1 = ex.normalize(br.block_element(1, one, one, 1) * K(1))
    f2 = ex.normalize(br.block_element(-1, -one, one, 1) * K.sqrt)
    M = br.m_map(ctx, K)
    return matmul(M, f1), matmul(M, f2), f1, f2


def brown_checks(seed: int):
    rng = _rng(seed, "brown")
    split = br.split_context(1)
    quad = br.quadratic_context(2)
    K = quad.field

    def anchor():
        m1, m2, _, _ = descent_anchor_images()
        delta = K.sqrt
        want1 = br.block_element(beta=8 * delta * delta)
        want2 = br.block_element(alpha=-1)
        return ex.is_zero(ex.normalize(m1 - want1)) and ex.is_zero(ex.normalize(m2 - want2))

    def f_singular():
        _, _, f1, f2 = descent_anchor_images()
        return all(idl.is_singular_element(quad, quad.descend(f)) for f in (f1, f2))

    def formulas(zeta):
        ctx = br.split_context(zeta)
        r = _rng(seed, f"formulas{zeta}")
        for _ in range(100):
            x, y = ctx.random_element(r), ctx.random_element(r)
            if ctx.b(x, y) != ctx.traceform(x, y) or ctx.q(x, x, x, x) != ctx.normform(x):
                return False
        return True

    def identity(ctx, n):
        r = _rng(seed, f"identity{ctx!r}")
        return _all(structurable_identity(ctx, *[ctx.random_element(r) for _ in range(4)]) for _ in range(n))

    x, y = split.random_element(rng), split.random_element(rng)
    return [
        ("brown: table product equals block formula", lambda: ex.is_zero(ex.normalize(split.mul(x, y) - split.mul_blocks(x, y)))),
        ("brown: b through the Gram matrix equals b from s0", lambda: split.b(x, y) == split.b_form(x, y)),
        ("brown: q(1,1,1,1) = 12 and nu(1) = 1",
         lambda: split.q(*[br.diag(1, 1)] * 4) == 12 and split.nu(br.diag(1, 1)) == 1),
        ("brown: skew elements are one-dimensional", lambda: br.skew_dimension(split) == 1 and br.skew_dimension(quad) == 1),
        ("brown: structurable identity, 50 quadruples, split zeta = 1", lambda: identity(split, 50)),
        ("brown: structurable identity, 50 quadruples, quadratic d = 2", lambda: identity(quad, 50)),
        ("brown: b = traceform and q = normform, 100 elements, zeta = 1", lambda: formulas(1)),
        ("brown: b = traceform and q = normform, 100 elements, zeta = 2", lambda: formulas(2)),
        ("brown: b = traceform and q = normform, 100 elements, zeta = -3", lambda: formulas(-3)),
        ("brown: m(f1) = (0,0,0,8 delta^2), m(f2) = (-1,0,0,0) over Q(sqrt 2)", anchor),
        ("brown: f1 and f2 are singular", f_singular),
    ]


# fts -------------------------------------------------------------------------------

def fts_checks(seed: int):
    checks = []
    for zeta in (1, 2, -3):
        ctx = br.split_context(zeta)
        rng = _rng(seed, f"fts{zeta}")

        def fts1(ctx=ctx, rng=rng):
            for _ in range(3):
                v = [ctx.random_element(rng) for _ in range(4)]
                if len({ctx.q(*p) for p in itertools.permutations(v)}) != 1:
                    return False
            return True

        def fts2(ctx=ctx):
            one = br.diag(1, 1)
            return ctx.q(one, one, one, one) != 0

        def fts3(ctx=ctx, rng=rng):
            for _ in range(30):
                x, y = ctx.random_element(rng), ctx.random_element(rng)
                txxx = ctx.t(x, x, x)
                lhs = ctx.t(txxx, x, y)
                rhs = ex.normalize(ctx.b(y, x) * txxx + ctx.q(y, x, x, x) * x)
                if not ex.is_zero(ex.normalize(lhs - rhs)):
                    return False
            return True

        checks += [
            (f"fts: FTS1 q is symmetric under all 24 permutations, zeta = {zeta}", fts1),
            (f"fts: FTS2 q is not identically zero, zeta = {zeta}", fts2),
            (f"fts: FTS3 on 30 random pairs, zeta = {zeta}", fts3),
        ]
    return checks


# duality -------------------------------------------------------------------------------

def duality_cases():
    """(name, W, expected image) for the standard correspondence examples."""
    sp = lambda vs: Subspace.span(vs, 27)
    u = cy.basis
    c_star_u1 = [cy.star(u(i), u(1)) for i in range(1, 9)]
    line = sp([al.E0])
    hyper = sp([al.E1, al.E2] + [al.element(a=u(i)) for i in range(1, 9)])
    w2 = sp([al.E2, al.element(a=u(1))])
    w5 = sp([al.E0] + [al.element(c=v) for v in c_star_u1 if not ex.is_zero(v)])
    w3 = sp([al.element(a=u(1)), al.element(b=u(2)), al.element(c=u(5))])
    w6 = sp([al.E2, al.element(b=u(1))] + [al.element(a=v) for v in c_star_u1 if not ex.is_zero(v)])
    return [
        ("F e0 -> e0 x J", line, hyper),
        ("e0 x J -> F e0", hyper, line),
        ("2-dim -> 5-dim", w2, w5),
        ("5-dim -> 2-dim", w5, w2),
        ("3-dim self-dual", w3, w3),
        ("6-dim -> 0", w6, Subspace.zero(27)),
    ]


def duality_checks(seed: int):
    A = al.albert_context()
    return [
        (f"duality: {name}", (lambda W=W, want=want: A.duality_map(W) == want))
        for name, W, want in duality_cases()
    ]


# ideals -------------------------------------------------------------------------------

def criteria_agree_on_random_subspaces(ctx, rng, count: int = 50) -> bool:
    """is_inner_ideal raises CriteriaDisagree on any disagreement; mix in sub-ideals too."""
    named = [I for _, I in idl.canonical_ideals(ctx)]
    for n in range(count):
        dim = rng.randint(1, 13)
        if n % 2:
            vecs = [ctx.random_element(rng, height=3, integral=True) for _ in range(dim)]
        else:
            base = rng.choice(named)
            vecs = [idl._combination(rng, base.vectors()) for _ in range(min(dim, base.dim))]
        idl.is_inner_ideal(ctx, Subspace.span(vecs, br.DIM))
    return True


def ideals_checks(seed: int):
    split = br.split_context(1)
    quad = br.quadratic_context(2)
    A = split.albert
    rng = _rng(seed, "ideals")
    lit = br.block_element(j=al.E0, jp=al.element(a=cy.basis(1)))
    moved = br.block_element(j=al.E0, jp=al.element(b=cy.basis(1)))
    d = A.random_rank_one(rng)

    def family():
        reports = [idl.is_inner_ideal(split, I) for name, I in idl.canonical_ideals(split) if name.startswith("singular-")]
        return [r.dim for r in reports] == list(range(1, 8)) and all(r.is_inner and r.is_singular for r in reports)

    def hyperline():
        r = idl.is_inner_ideal(split, idl.hyperline_ideal(split, al.E0))
        return r.is_inner and not r.is_singular and r.dim == 12

    def i6():
        I = idl.i6_ideal(quad)
        return I.dim == 6 and idl.is_singular_ideal(quad, I) and idl.is_inner_ideal(quad, I).is_inner

    def corpus():
        runs = idl.closure_experiment(split, idl.seed_corpus(split, 100, seed))
        proper = [r for r in runs if r.dim < br.DIM]
        return all(r.dim <= 12 for r in proper) and all(r.dim <= 7 for r in proper if r.is_singular)

    return [
        ("ideals: diag(1,0), diag(0,1) are singular",
         lambda: idl.is_singular_element(split, br.diag(1, 0)) and idl.is_singular_element(split, br.diag(0, 1))),
        ("ideals: (0,j,0,0) and (0,0,j,0) with j# = 0 are singular",
         lambda: idl.is_singular_element(split, br.block_element(j=d)) and idl.is_singular_element(split, br.block_element(jp=d))),
        ("ideals: four conditions match the U-test on sampled elements",
         lambda: _all(all(idl.sreglem_conditions(split, e)) == idl.is_singular_element(split, e)
                      for e in [lit, moved, br.diag(1, 0), br.block_element(1, A.one, A.one, 1)]
                      + [split.random_element(rng, height=2, integral=True) for _ in range(5)])),
        ("ideals: (0,e0,(0,0,0;0,u1,0),0) meets (1)-(3) but not (4) and is not singular",
         lambda: idl.sreglem_conditions(split, moved) == (True, True, True, False)
         and not idl.is_singular_element(split, moved)),
        ("ideals: singular family has dims 1..7, all singular ideals", family),
        ("ideals: hyperline ideal is inner, not singular, dim 12", hyperline),
        ("ideals: I6 is a 6-dim singular ideal over Q(sqrt 2)", i6),
        ("ideals: U- and t-criteria agree on 50 subspaces", lambda: criteria_agree_on_random_subspaces(split, rng)),
        ("ideals: closure of diag(1,0) is F diag(1,0)",
         lambda: idl.inner_closure(split, [br.diag(1, 0)]) == Subspace.span([br.diag(1, 0)], br.DIM)),
        ("ideals: closure of a generic element is everything",
         lambda: idl.inner_closure(split, [split.random_element(rng)]).dim == br.DIM),
        ("ideals: 100 closure seeds stay within dim 12 (inner) and 7 (singular)", corpus),
    ]


# flags -----------------------------------------------------------------------------------

def flags_checks(seed: int):
    split = br.split_context(1)
    A = split.albert

    def chamber(geometry, ctx):
        spaces = fl.canonical_spaces(geometry)
        typed = [fl.typed(ctx, geometry, S) for _, S in spaces]
        good = all(t.type.index == i for i, t in enumerate(typed, 1))
        return good and all(fl.incident(geometry, a, b) for a, b in itertools.combinations(typed, 2))

    def invariance():
        rng = _rng(seed, "flags")
        for _ in range(20):
            g = br.random_group_element(split, rng)
            for j, (_, W) in enumerate(fl.canonical_spaces("e7"), 1):
                t = fl.classify_e7(split, W.image(g))
                if t is None or t.index != j:
                    return False
        return True

    V = dict(fl.canonical_spaces("e6"))
    return [
        ("flags: classify_e6(V_i) = i and the chamber is incident", lambda: chamber("e6", A)),
        ("flags: classify_e7(W_j) = j and the chamber is incident", lambda: chamber("e7", split)),
        ("flags: duality swaps 2-spaces and 4-spaces",
         lambda: fl.classify_e6(A, A.duality_map(V["V2"])) == fl.SpaceType("e6", 4)
         and fl.classify_e6(A, A.duality_map(V["V4"])) == fl.SpaceType("e6", 2)),
        ("flags: classify_e7 is invariant under 20 random group words", invariance),
    ]


# runner ----------------------------------------------------------------------------------

_BUILDERS = {
    "cayley": cayley_checks,
    "albert": albert_checks,
    "brown": brown_checks,
    "fts": fts_checks,
    "duality": duality_checks,
    "ideals": ideals_checks,
    "flags": flags_checks,
}


def checks_for(suite: str, seed: int):
    names = SUITES if suite == "all" else (suite,)
    out = []
    for name in names:
        if name not in _BUILDERS:
            raise ValueError(f"unknown suite {suite!r}")
        out.extend(_BUILDERS[name](seed))
    return out


def run(suite: str = "all", seed: int = 0, out=None) -> bool:
    """Run a suite, print one line per check, return True when all pass."""
    out = out or sys.stdout
    passed = True
    n = 0
    for name, check in checks_for(suite, seed):
        n += 1
        try:
            ok = bool(check())
            note = ""
        except Exception as e:  # a crash is a failed check, reported with its cause
            ok, note = False, f" # {type(e).__name__}: {e}"
        passed &= ok
        print(f"{'ok' if ok else 'not ok'} {n} {name}{note}", file=out, flush=True)
    return passed
