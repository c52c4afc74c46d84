"""Brown algebras and their Freudenthal triple systems.

An element of the split algebra B(J, F x F, zeta) is a 56-vector
(alpha, j[27], j'[27], beta) with product

    (a1 a2 + z T(j1, j2'),        a1 j2 + b2 j1 + z (j1' x j2'),
     a2 j1' + b1 j2' + j1 x j2,   b1 b2 + z T(j2, j1'))

and involution swapping alpha and beta. The quadratic form B(J, Delta) is the
subalgebra of B(J, F x F) tensor Delta fixed by varpi tensor iota; it is
handled through its own 56-dimensional F-coordinates (alpha_p, alpha_q,
x_p[27], x_q[27]) for alpha = alpha_p + alpha_q w and x = x_p + x_q w, with
every product computed upstairs and read back.

All derived operations (brace, U, b, t, q) only use the structure tensor,
the involution and the skew element s0, so both variants share them.
"""

from __future__ import annotations

import random
from functools import lru_cache

import numpy as np

from . import _exact as ex
from ._exact import QArray
from .albert import DIM as JDIM
from .albert import AlbertCtx, albert_context, random_vector
from .linalg import matmul, rank
from .scalars import QuadField, divide, format_scalar, inverse as scalar_inverse, parse_scalar, rational

DIM = 56
ALPHA = 0
J = slice(1, 28)
JP = slice(28, 55)
BETA = 55


class ContextMismatch(ValueError):
    """Objects from incompatible contexts were combined."""


class VariantMismatch(ValueError):
    """An operation was called on a variant it is not defined for."""


class NotSkewSpan(ValueError):
    """psi(x, y) did not land on the line through s0."""


class NotSimilarity(ValueError):
    """A map expected to be a norm similarity is not one."""


class NotFixed(ValueError):
    """An upstairs element is not fixed by varpi tensor iota."""


def block_element(alpha=0, j=None, jp=None, beta=0) -> np.ndarray:
    """Assemble (alpha, j, j', beta) as a 56-vector."""
    x = ex.zeros(DIM)
    x[ALPHA] = alpha
    x[BETA] = beta
    if j is not None:
        x[J] = list(j)
    if jp is not None:
        x[JP] = list(jp)
    return ex.normalize(x)


def block_parts(x: np.ndarray):
    return x[ALPHA], x[J], x[JP], x[BETA]


def diag(alpha, beta) -> np.ndarray:
    return block_element(alpha, None, None, beta)


def basis(i: int, n: int = DIM) -> np.ndarray:
    v = ex.zeros(n)
    v[i] = 1
    return v


def _split_entries(A: AlbertCtx, zeta):
    g = A.gram
    out = [(ALPHA, ALPHA, ALPHA, 1), (BETA, BETA, BETA, 1)]
    for p in range(JDIM):
        for q in range(JDIM):
            if g[p, q]:
                out.append((1 + p, 28 + q, ALPHA, zeta * g[p, q]))
                out.append((28 + q, 1 + p, BETA, zeta * g[p, q]))
    for k in range(JDIM):
        out.append((ALPHA, 1 + k, 1 + k, 1))
        out.append((1 + k, BETA, 1 + k, 1))
        out.append((28 + k, ALPHA, 28 + k, 1))
        out.append((BETA, 28 + k, 28 + k, 1))
    for i, j, k, c in A._cross.entries:
        out.append((28 + i, 28 + j, 1 + k, zeta * c))
        out.append((1 + i, 1 + j, 28 + k, c))
    return out


class BrownCtx:
    """A Brown algebra with chosen skew element s0 (s0^2 = mu 1).

    Use :func:`split_context` or :func:`quadratic_context` to build one.
    """

    def __init__(self, albert: AlbertCtx, zeta, variant: str, entries, bar_matrix,
                 s0, one, mu, field=None, upstairs=None, s0_scale=1):
        self.albert = albert
        self.zeta = rational(zeta)
        self.variant = variant
        self.field = field
        self.d = field.d if field is not None else None
        self.upstairs = upstairs
        self.dim = DIM
        self._mul = ex.Bilinear(entries, DIM, DIM, DIM)
        self.bar_matrix = bar_matrix
        self.one = one
        s0_scale = rational(s0_scale)
        if s0_scale == 0:
            raise ValueError("s0 scale must be nonzero")
        self.s0 = ex.normalize(s0 * s0_scale)
        self.mu = rational(mu * s0_scale * s0_scale)
        self._one_index = next(i for i, v in enumerate(one.tolist()) if v)
        self._bar_q = QArray.of(bar_matrix)
        self._s0_q = QArray.of(self.s0)
        self._eye_q = QArray.of(ex.identity(DIM))
        self._check_skew_generator()
        self.b_gram = self._b_gram()
        self._b_gram_q = QArray.of(self.b_gram)

    def __repr__(self):
        if self.variant == "split":
            return f"BrownCtx(split, zeta={format_scalar(self.zeta)})"
        return f"BrownCtx(quadratic, d={format_scalar(self.d)})"

    # basic structure ------------------------------------------------------

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self._mul(x, y)

    def left_matrix(self, x: np.ndarray) -> np.ndarray:
        return self._mul.left_matrix(x)

    def right_matrix(self, y: np.ndarray) -> np.ndarray:
        return self._mul.right_matrix(y)

    def bar(self, x: np.ndarray) -> np.ndarray:
        return matmul(self.bar_matrix, x)

    def scalar_of(self, x: np.ndarray):
        """The lam with x = lam 1; raises ValueError otherwise."""
        lam = divide(x[self._one_index], self.one[self._one_index])
        if not ex.is_zero(ex.normalize(x - self.one * lam)):
            raise ValueError("element is not a scalar multiple of 1")
        return lam

    def _check_skew_generator(self):
        if ex.is_zero(self.s0) or not ex.is_zero(self.bar(self.s0) + self.s0):
            raise ValueError("s0 must be a nonzero skew element")
        sq = self.mul(self.s0, self.s0)
        if not ex.is_zero(ex.normalize(sq - self.mu * self.one)):
            raise ValueError("s0^2 is not mu 1")

    def random_element(self, rng: random.Random, height: int = 9, integral: bool = False) -> np.ndarray:
        return random_vector(DIM, rng, height, integral)

    # triple products -------------------------------------------------------
    # The *_q methods work on integer-scaled QArrays and back the public ones.

    def mul_q(self, X: QArray, Y: QArray) -> QArray:
        return self._mul.call_q(X, Y)

    def bar_q(self, X: QArray) -> QArray:
        return self._bar_q @ X

    def brace(self, x, y, z) -> np.ndarray:
        """{x, y, z} = (x ybar) z + (z ybar) x - (z xbar) y."""
        return self.brace_q(QArray.of(x), QArray.of(y), QArray.of(z)).obj()

    def brace_q(self, X, Y, Z) -> QArray:
        m = self.mul_q
        Yb = self.bar_q(Y)
        return m(m(X, Yb), Z) + m(m(Z, Yb), X) - m(m(Z, self.bar_q(X)), Y)

    def v_operator_q(self, X: QArray, Y: QArray) -> QArray:
        L, R = self._mul.left_q, self._mul.right_q
        Yb = self.bar_q(Y)
        return L(self.mul_q(X, Yb)) + R(X) @ R(Yb) - R(Y) @ R(self.bar_q(X))

    def v_operator(self, x, y) -> np.ndarray:
        """Matrix of z -> {x, y, z}."""
        return self.v_operator_q(QArray.of(x), QArray.of(y)).obj()

    def middle_operator_q(self, X: QArray, Z: QArray) -> QArray:
        L, R = self._mul.left_q, self._mul.right_q
        return (
            R(Z) @ (L(X) @ self._bar_q) + R(X) @ (L(Z) @ self._bar_q)
            - L(self.mul_q(Z, self.bar_q(X)))
        )

    def middle_operator(self, x, z) -> np.ndarray:
        """Matrix of y -> {x, y, z}."""
        return self.middle_operator_q(QArray.of(x), QArray.of(z)).obj()

    def u_operator(self, e) -> np.ndarray:
        """Matrix of x -> U_e x = {e, x, e}."""
        return self.middle_operator(e, e)

    def u_apply(self, e, x) -> np.ndarray:
        return self.brace(e, x, e)

    # the skew form ---------------------------------------------------------

    def skew_psi(self, x, y) -> np.ndarray:
        """psi(x, y) = x ybar - y xbar, checked to lie on F s0."""
        p = ex.normalize(self.mul(x, self.bar(y)) - self.mul(y, self.bar(x)))
        idx = next(i for i, v in enumerate(self.s0.tolist()) if v)
        lam = divide(p[idx], self.s0[idx])
        if not ex.is_zero(ex.normalize(p - self.s0 * lam)):
            raise NotSkewSpan("psi(x, y) is not a multiple of s0")
        return p

    def b_form(self, x, y):
        """b(x, y), the scalar with psi(x, y) s0 = b(x, y) 1."""
        return self.scalar_of(self.mul(self.skew_psi(x, y), self.s0))

    def _b_gram(self) -> np.ndarray:
        # rows: (e_i ebar_j) s0 for all j, so b_ij comes from two table lookups
        Rs = self.right_matrix(self.s0)
        Q = [matmul(Rs, matmul(self.left_matrix(basis(i)), self.bar_matrix)) for i in range(DIM)]
        G = ex.zeros((DIM, DIM))
        for i in range(DIM):
            for j in range(i + 1, DIM):
                elt = ex.normalize(Q[i][:, j] - Q[j][:, i])
                if not ex.is_zero(elt):
                    G[i, j] = self.scalar_of(elt)
                    G[j, i] = -G[i, j]
        return G

    def b(self, x, y):
        """b(x, y) through the precomputed Gram matrix."""
        return matmul(x, matmul(self.b_gram, y))

    def b_row(self, x) -> np.ndarray:
        """Covector z -> b(x, z)."""
        return matmul(x, self.b_gram)

    def b_row_q(self, X: QArray) -> QArray:
        return X @ self._b_gram_q

    def t(self, y, z, w) -> np.ndarray:
        """t(y, z, w) = 2{y, s0 z, w} - b(z, w) y - b(z, y) w - b(y, w) z."""
        return ex.normalize(
            2 * self.brace(y, self.mul(self.s0, z), w)
            - self.b(z, w) * y - self.b(z, y) * w - self.b(y, w) * z
        )

    def t_matrix_q(self, Y: QArray, Z: QArray) -> QArray:
        V = self.v_operator_q(Y, self.mul_q(self._s0_q, Z))
        bz = self.b_row_q(Z)
        by = self.b_row_q(Y)
        bzy = (bz @ Y).obj().item()
        return V.scale(2) - Y.outer(bz) - self._eye_q.scale(bzy) - Z.outer(by)

    def t_matrix(self, y, z) -> np.ndarray:
        """Matrix of w -> t(y, z, w)."""
        return self.t_matrix_q(QArray.of(y), QArray.of(z)).obj()

    def q(self, x, y, z, w):
        return self.b(x, self.t(y, z, w))

    def nu(self, x):
        """nu(x) = q(x, x, x, x) / (12 mu)."""
        return divide(self.q(x, x, x, x), 12 * self.mu)

    # split-only formulas ----------------------------------------------------

    def _require_split(self, zeta_one=False):
        if self.variant != "split":
            raise VariantMismatch("operation is defined for the split variant only")
        if zeta_one and self.zeta != 1:
            raise VariantMismatch("operation is defined for zeta = 1 only")

    def mul_blocks(self, x, y) -> np.ndarray:
        """The displayed four-block product, evaluated with Albert operations."""
        self._require_split()
        A = self.albert
        z = self.zeta
        a1, j1, k1, b1 = block_parts(x)
        a2, j2, k2, b2 = block_parts(y)
        return block_element(
            a1 * a2 + z * A.trace_form(j1, k2),
            a1 * j2 + b2 * j1 + z * A.cross(k1, k2),
            a2 * k1 + b1 * k2 + A.cross(j1, j2),
            b1 * b2 + z * A.trace_form(j2, k1),
        )

    def traceform(self, x, y):
        """(a1 b2 - a2 b1) + zeta (T(j1, j2') - T(j1', j2))."""
        self._require_split()
        A = self.albert
        a1, j1, k1, b1 = block_parts(x)
        a2, j2, k2, b2 = block_parts(y)
        return ex.normalize(ex.obj([
            a1 * b2 - a2 * b1 + self.zeta * (A.trace_form(j1, k2) - A.trace_form(k1, j2))
        ]))[0]

    def normform(self, x):
        """12 (4 a z N(j) + 4 b z^2 N(j') - 4 z^2 T(j'#, j#) + (a b - z T(j, j'))^2)."""
        self._require_split()
        A = self.albert
        z = self.zeta
        a, j, k, b = block_parts(x)
        inner = (
            4 * a * z * A.norm(j) + 4 * b * z * z * A.norm(k)
            - 4 * z * z * A.trace_form(A.sharp(k), A.sharp(j))
            + (a * b - z * A.trace_form(j, k)) ** 2
        )
        return ex.normalize(ex.obj([12 * inner]))[0]

    def varpi(self) -> np.ndarray:
        """Matrix of (alpha, j, j', beta) -> (beta, j', j, alpha)."""
        self._require_split()
        return _varpi_matrix()

    def phi_translation(self, k) -> np.ndarray:
        """phi_k(a, j, j', b) = (a + b N(k) + T(j', k) + T(j, k#), j + b k, j' + j x k + b k#, b)."""
        self._require_split(zeta_one=True)
        A = self.albert
        ks = A.sharp(k)
        M = ex.identity(DIM)
        M[ALPHA, BETA] = A.norm(k)
        M[ALPHA, JP] = matmul(A.gram, k)
        M[ALPHA, J] = matmul(A.gram, ks)
        M[J, BETA] = k
        M[JP, J] = A.cross_matrix(k)
        M[JP, BETA] = ks
        return ex.normalize(M)

    def psi_translation(self, k) -> np.ndarray:
        """psi_k(a, j, j', b) = (a, j + j' x k + a k#, j' + a k, b + a N(k) + T(j, k) + T(j', k#))."""
        self._require_split(zeta_one=True)
        A = self.albert
        ks = A.sharp(k)
        M = ex.identity(DIM)
        M[J, JP] = A.cross_matrix(k)
        M[J, ALPHA] = ks
        M[JP, ALPHA] = k
        M[BETA, ALPHA] = A.norm(k)
        M[BETA, J] = matmul(A.gram, k)
        M[BETA, JP] = matmul(A.gram, ks)
        return ex.normalize(M)

    def f_phi(self, phi: np.ndarray) -> np.ndarray:
        """f_phi(a, j, j', b) = (a / lam, phi j, phi-dagger j', lam b) for a similarity phi."""
        self._require_split()
        A = self.albert
        lam = A.norm_multiplier(phi)
        if lam is None:
            raise NotSimilarity("phi is not a norm similarity of J")
        M = ex.zeros((DIM, DIM))
        M[ALPHA, ALPHA] = scalar_inverse(lam)
        M[BETA, BETA] = lam
        M[J, J] = phi
        M[JP, JP] = A.dagger(phi)
        return ex.normalize(M)

    # quadratic descent --------------------------------------------------------

    def lift(self, x: np.ndarray) -> np.ndarray:
        """Upstairs coordinates (alpha, j, j', beta) over Delta."""
        if self.variant != "quadratic":
            return x
        return _lift(x, self.field)

    def descend(self, Z: np.ndarray) -> np.ndarray:
        if self.variant != "quadratic":
            return Z
        return _descend(Z, self.field)


@lru_cache(maxsize=None)
def _varpi_matrix() -> np.ndarray:
    M = ex.zeros((DIM, DIM))
    M[ALPHA, BETA] = 1
    M[BETA, ALPHA] = 1
    for k in range(JDIM):
        M[1 + k, 28 + k] = 1
        M[28 + k, 1 + k] = 1
    return M


def _bar_split() -> np.ndarray:
    M = ex.identity(DIM)
    M[ALPHA, ALPHA] = 0
    M[BETA, BETA] = 0
    M[ALPHA, BETA] = 1
    M[BETA, ALPHA] = 1
    return M


def _lift(x: np.ndarray, field: QuadField) -> np.ndarray:
    """(alpha, x) coordinates -> (alpha, x, iota x, iota alpha) over Delta."""
    Z = ex.zeros(DIM)
    Z[ALPHA] = field(x[0], x[1])
    Z[BETA] = field(x[0], -x[1])
    for i in range(JDIM):
        Z[1 + i] = field(x[2 + i], x[29 + i])
        Z[28 + i] = field(x[2 + i], -x[29 + i])
    return Z


def _descend(Z: np.ndarray, field: QuadField) -> np.ndarray:
    p, q, f = ex.split(Z)
    if q is None:
        q = ex.zeros(DIM)
    elif f != field:
        raise ContextMismatch(f"{f} vs {field}")
    x = ex.zeros(DIM)
    x[0], x[1] = p[ALPHA], q[ALPHA]
    x[2:29] = p[J]
    x[29:56] = q[J]
    fixed = (
        p[BETA] == p[ALPHA] and q[BETA] == -q[ALPHA]
        and all(a == b for a, b in zip(p[JP].tolist(), p[J].tolist()))
        and all(a == -b for a, b in zip(q[JP].tolist(), q[J].tolist()))
    )
    if not fixed:
        raise NotFixed("element is not fixed by varpi tensor iota")
    return ex.normalize(x)


@lru_cache(maxsize=16)
def split_context(zeta=1, gamma=(1, 1, 1), s0_scale=1) -> BrownCtx:
    """B(J, F x F, zeta) with s0 = diag(1, -1), mu = 1."""
    zeta = rational(zeta)
    if zeta == 0:
        raise ValueError("zeta must be nonzero")
    A = albert_context(tuple(rational(g) for g in gamma))
    return BrownCtx(A, zeta, "split", _split_entries(A, zeta), _bar_split(),
                    diag(1, -1), diag(1, 1), 1, s0_scale=s0_scale)


@lru_cache(maxsize=16)
def quadratic_context(d, gamma=(1, 1, 1), s0_scale=1) -> BrownCtx:
    """B(J, Delta) for Delta = Q(sqrt d), with s0 = delta diag(1, -1), mu = d."""
    field = QuadField(d)
    up = split_context(1, gamma)
    # parameter basis lifted upstairs: columns D = Dp + w Dq
    Dp = ex.zeros((DIM, DIM))
    Dq = ex.zeros((DIM, DIM))
    Dp[ALPHA, 0] = Dp[BETA, 0] = 1
    Dq[ALPHA, 1] = 1
    Dq[BETA, 1] = -1
    for i in range(JDIM):
        Dp[1 + i, 2 + i] = Dp[28 + i, 2 + i] = 1
        Dq[1 + i, 29 + i] = 1
        Dq[28 + i, 29 + i] = -1
    dd = field.d
    entries = []
    for a in range(DIM):
        Lp = up.left_matrix(Dp[:, a])
        Lq = up.left_matrix(Dq[:, a])
        P = ex.normalize(matmul(Lp, Dp) + dd * matmul(Lq, Dq))
        Q = ex.normalize(matmul(Lp, Dq) + matmul(Lq, Dp))
        for b in range(DIM):
            z = _descend(ex.merge(P[:, b], Q[:, b], field), field)
            entries.extend((a, b, e, c) for e, c in enumerate(z.tolist()) if c)
    bar = ex.identity(DIM)
    bar[1, 1] = -1
    s0 = basis(1)
    one = basis(0)
    ctx = BrownCtx(up.albert, 1, "quadratic", entries, bar, s0, one, dd,
                   field=field, upstairs=up, s0_scale=s0_scale)
    # the bar above is varpi tensor iota restricted; confirm it against upstairs
    for a in (0, 1, 2, 29):
        if not ex.is_zero(_lift(ctx.bar(basis(a)), field) - up.bar(_lift(basis(a), field))):
            raise NotFixed("descended involution disagrees with the upstairs one")
    return ctx


def similarity_f(ctx1: BrownCtx, ctx2: BrownCtx) -> np.ndarray:
    """f(a, j, j', b) = (zeta a, j, j', b) from zeta = 1 to zeta = ctx2.zeta."""
    if ctx1.albert is not ctx2.albert or ctx1.variant != "split" or ctx2.variant != "split" or ctx1.zeta != 1:
        raise ContextMismatch("similarity_f maps a zeta = 1 split context to a split context on the same J")
    M = ex.identity(DIM)
    M[ALPHA, ALPHA] = ctx2.zeta
    return M


def h_map(field: QuadField) -> np.ndarray:
    """h(a, j, j', b) = (a / delta, delta j, j', delta^2 b) over Delta."""
    delta = field.sqrt
    M = ex.zeros((DIM, DIM))
    M[ALPHA, ALPHA] = delta.inverse()
    for k in range(JDIM):
        M[1 + k, 1 + k] = delta
        M[28 + k, 28 + k] = field(1)
    M[BETA, BETA] = delta * delta
    return M


def m_map(ctx: BrownCtx, field: QuadField) -> np.ndarray:
    """m = phi_{-1/(2 delta)} psi_delta h, with the translations by scalar multiples of 1_J."""
    if ctx.variant != "split" or ctx.zeta != 1:
        raise VariantMismatch("m is defined on the split zeta = 1 context over Delta")
    delta = field.sqrt
    one_j = ctx.albert.one
    k_phi = ex.normalize(one_j * (-(2 * delta).inverse()))
    k_psi = ex.normalize(one_j * delta)
    return matmul(ctx.phi_translation(k_phi), matmul(ctx.psi_translation(k_psi), h_map(field)))


def random_group_element(ctx: BrownCtx, rng: random.Random, length: int = 4, height: int = 2) -> np.ndarray:
    """Product of up to `length` random phi_k, psi_k and f_{psi_lam}, all preserving q up to scale."""
    A = ctx.albert
    g = ex.identity(DIM)
    for _ in range(rng.randint(1, length)):
        kind = rng.choice(("phi", "psi", "f"))
        if kind == "f":
            M = ctx.f_phi(A.psi_similarity(rng.choice((2, -1, 3, -2))))
        else:
            # sparse small translations keep the entries of long words manageable
            k = ex.obj(rng.randint(-height, height) if rng.random() < 0.3 else 0 for _ in range(JDIM))
            M = ctx.phi_translation(k) if kind == "phi" else ctx.psi_translation(k)
        g = matmul(M, g)
    return g


def format_element(x: np.ndarray) -> str:
    return " ".join(format_scalar(v) for v in x.tolist())


def parse_element(text: str, field=None) -> np.ndarray:
    tokens = text.split()
    if len(tokens) != DIM:
        raise ValueError(f"expected {DIM} scalars, found {len(tokens)}")
    return ex.obj(parse_scalar(t, field) for t in tokens)


def skew_dimension(ctx: BrownCtx) -> int:
    """Dimension of {x : xbar = -x}."""
    return DIM - rank(ex.normalize(ctx.bar_matrix + ex.identity(DIM)))
