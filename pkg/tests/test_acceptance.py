"""One PASS/FAIL line per acceptance criterion, printed in the terminal summary."""

from __future__ import annotations

import itertools
import random
import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE_LINES
from structurable import _exact as ex
from structurable import albert as al
from structurable import brown as br
from structurable import cayley as cy
from structurable import flags as fl
from structurable import ideals as idl
from structurable.linalg import Subspace, matmul
from structurable.scalars import QuadField
from structurable.verify import duality_cases, structurable_identity, descent_anchor_images


def record(n, text: str, ok: bool, detail: str = ""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {text}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def zero(v) -> bool:
    return ex.is_zero(ex.normalize(v))


def test_criterion_01_cayley_integrity():
    rng = random.Random(101)
    start = time.perf_counter()
    pairs = [(al.random_vector(8, rng), al.random_vector(8, rng)) for _ in range(200)]
    ok = zero(matmul(cy.pi_matrix(), cy.pi_matrix()) - ex.identity(8))
    basis = [cy.basis(i) for i in range(1, 9)]
    ok &= all(zero(cy.mul(cy.ONE, u) - u) and zero(cy.mul(u, cy.ONE) - u) for u in basis)
    ok &= all(cy.norm(cy.mul(x, y)) == cy.norm(x) * cy.norm(y) for x, y in pairs)
    ok &= all(zero(cy.mul(cy.mul(x, x), y) - cy.mul(x, cy.mul(x, y)))
              and zero(cy.mul(cy.mul(y, x), x) - cy.mul(y, cy.mul(x, x))) for x, y in pairs[:100])
    elapsed = time.perf_counter() - start
    record(1, "pi^2 = id, unit laws, n(xy) = n(x)n(y) x200, alternativity x100, < 1 s",
           bool(ok) and elapsed < 1.0, f"{elapsed:.3f} s")


def test_criterion_02_sharp_anchors(alb):
    rng = random.Random(102)
    u1, u4 = cy.basis(1), cy.basis(4)
    ok = zero(alb.sharp(al.E1 + al.E2) - al.E0)
    ok &= zero(alb.sharp(al.element(a=u1, c=-u4)) - al.element(b=u1))
    xs = [alb.random_element(rng) for _ in range(100)]
    ok &= all(zero(alb.sharp(alb.sharp(x)) - alb.norm(x) * x) for x in xs)
    record(2, "(e1+e2)# = e0, (0,0,0;u1,0,-u4)# = (0,0,0;0,u1,0), x## = N(x)x x100", bool(ok))


def test_criterion_03_hyperline_dimension(alb):
    rng = random.Random(103)
    ds = [al.E0] + [alb.random_rank_one(rng) for _ in range(20)]
    dims = {alb.hyperline(d).dim for d in ds}
    record(3, "dim(d x J) = 10 for e0 and 20 sampled rank-one d", dims == {10}, f"dims {sorted(dims)}")


def test_criterion_04_duality_map(alb):
    results = [(name, alb.duality_map(W) == want) for name, W, want in duality_cases()]
    bad = [name for name, ok in results if not ok]
    record(4, "duality map sends the displayed pairs to each other and the 6-dim example to 0",
           not bad, ", ".join(bad))


def test_criterion_05_structurable_identity(split, quad):
    start = time.perf_counter()
    ok = True
    for ctx, seed in ((split, 1), (quad, 2)):
        rng = random.Random(500 + seed)
        for _ in range(50):
            ok &= structurable_identity(ctx, *[ctx.random_element(rng) for _ in range(4)])
    elapsed = time.perf_counter() - start
    record(5, "structurable identity on 50 quadruples, split zeta=1 and quadratic d=2, < 30 s",
           bool(ok) and elapsed < 30.0, f"{elapsed:.1f} s")


def test_criterion_06_fts_axioms():
    ok = True
    for zeta in (1, 2, -3):
        ctx = br.split_context(zeta)
        rng = random.Random(600 + zeta)
        v = [ctx.random_element(rng) for _ in range(4)]
        ok &= len({ctx.q(*p) for p in itertools.permutations(v)}) == 1
        one = br.diag(1, 1)
        ok &= ctx.q(one, one, one, one) != 0
        for _ in range(30):
            x, y = ctx.random_element(rng), ctx.random_element(rng)
            txxx = ctx.t(x, x, x)
            ok &= zero(ctx.t(txxx, x, y) - (ctx.b(y, x) * txxx + ctx.q(y, x, x, x) * x))
    record(6, "FTS1 symmetry, FTS2 q nonzero, FTS3 x30, zeta in {1, 2, -3}", bool(ok))


def test_criterion_07_formula_match():
    ok = True
    for zeta in (1, 2, -3):
        ctx = br.split_context(zeta)
        rng = random.Random(700 + zeta)
        xs = [ctx.random_element(rng) for _ in range(101)]
        for x, y in zip(xs, xs[1:]):
            ok &= ctx.b(x, y) == ctx.traceform(x, y)
            ok &= ctx.q(x, x, x, x) == ctx.normform(x)
    record(7, "b = traceform and q(x,x,x,x) = normform on 100 elements per zeta", bool(ok))


def test_criterion_08_singular_elements(split, alb):
    d = alb.random_rank_one(random.Random(108))
    ok = all(idl.is_singular_element(split, e)
             for e in (br.diag(1, 0), br.diag(0, 1), br.block_element(j=d), br.block_element(j=al.E0)))
    moved = br.block_element(j=al.E0, jp=al.element(b=cy.basis(1)))
    ok &= idl.sreglem_conditions(split, moved) == (True, True, True, False)
    ok &= not idl.is_singular_element(split, moved)
    record(8, "diag(1,0), diag(0,1), (0,j,0,0) with j# = 0 singular; "
              "(0,e0,(0,0,0;0,u1,0),0) meets (1)-(3), fails (4), not singular", bool(ok))


@pytest.mark.xfail(strict=True, reason="the element lies in e0 x J, so condition (4) holds and it is singular")
def test_criterion_08_literal_counterexample(split):
    literal = br.block_element(j=al.E0, jp=al.element(a=cy.basis(1)))
    conditions = idl.sreglem_conditions(split, literal)
    singular = idl.is_singular_element(split, literal)
    record("8 (literal)", "(0,e0,(0,0,0;u1,0,0),0) meets (1)-(3), fails (4), not singular",
           conditions == (True, True, True, False) and not singular,
           f"conditions {conditions}, singular {singular}")


def test_criterion_09_ideal_dimensions(split, quad):
    reports = [idl.is_inner_ideal(split, idl.singular_family_ideal(V)) for V in idl.totally_singular_chain()]
    ok = [r.dim for r in reports] == list(range(1, 8)) and all(r.is_singular for r in reports)
    n = idl.is_inner_ideal(split, idl.hyperline_ideal(split, al.E0))
    ok &= n.is_inner and not n.is_singular and n.dim == 12
    I6 = idl.i6_ideal(quad)
    ok &= I6.dim == 6 and idl.is_inner_ideal(quad, I6).is_singular
    runs = idl.closure_experiment(split, idl.seed_corpus(split, 100, seed=9))
    proper = [r for r in runs if r.dim < br.DIM]
    ok &= len(runs) >= 100
    ok &= all(r.dim <= 12 for r in proper) and all(r.dim <= 7 for r in proper if r.is_singular)
    dims = sorted({r.dim for r in runs})
    record(9, "(F,0,V,0) dims 1..7 singular, hyperline ideal inner non-singular dim 12, I6 singular dim 6, "
              "100 closure seeds within bounds", bool(ok), f"closure dims {dims}")


def test_criterion_10_descent_anchor(quad):
    m1, m2, f1, f2 = descent_anchor_images()
    delta = QuadField(2).sqrt
    ok = zero(m1 - br.block_element(beta=8 * delta * delta)) and zero(m2 - br.block_element(alpha=-1))
    ok &= all(idl.is_singular_element(quad, quad.descend(f)) for f in (f1, f2))
    record(10, "m(f1) = (0,0,0,8 delta^2), m(f2) = (-1,0,0,0) over Q(sqrt 2), f1 and f2 singular", bool(ok))


def test_criterion_11_flags(split, alb):
    e6 = [fl.classify_e6(alb, S) for _, S in fl.canonical_spaces("e6")]
    e7 = [fl.classify_e7(split, S) for _, S in fl.canonical_spaces("e7")]
    ok = [t and t.index for t in e6] == list(range(1, 7)) and [t and t.index for t in e7] == list(range(1, 8))
    for geometry, ctx in (("e6", alb), ("e7", split)):
        typed = [fl.typed(ctx, geometry, S) for _, S in fl.canonical_spaces(geometry)]
        ok &= all(fl.incident(geometry, a, b) for a, b in itertools.combinations(typed, 2))
    rng = random.Random(111)
    for _ in range(20):
        g = br.random_group_element(split, rng)
        for j, (_, W) in enumerate(fl.canonical_spaces("e7"), 1):
            ok &= fl.classify_e7(split, W.image(g)) == fl.SpaceType("e7", j)
    record(11, "classify_e6(V_i) = i, classify_e7(W_j) = j, chamber incident, invariant under 20 words", bool(ok))


def test_criterion_12_end_to_end():
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "structurable", "verify", "--suite", "all", "--seed", "42"],
                          capture_output=True, text=True, timeout=300)
    elapsed = time.perf_counter() - start
    failed = [ln for ln in proc.stdout.splitlines() if ln.startswith("not ok")]
    record(12, "verify --suite all --seed 42 exits 0 in under 2 minutes",
           proc.returncode == 0 and elapsed < 120.0, f"{elapsed:.1f} s, {len(failed)} failing checks")
