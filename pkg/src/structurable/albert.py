"""The split Albert algebra of twisted hermitian 3x3 octonion matrices.

An element is a 27-vector (e0, e1, e2, a1..a8, b1..b8, c1..c8) standing for
the matrix

    [[e0,               c,                 g0^-1 g2 pi(b)],
     [g1^-1 g0 pi(c),   e1,                a             ],
     [b,                g2^-1 g1 pi(a),    e2            ]]

with Jordan product (XY + YX)/2 computed with the ordinary octonion product.
The cubic norm comes from the characteristic identity and the sharp map from
the derivative of the norm. Those definitions are used once per context to
tabulate the Jordan and cross products; the public operations run on the
tables and the definitional routes stay available for cross-checking.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _exact as ex
from . import cayley
from ._exact import QArray
from .linalg import (
    NotInvertible,
    Subspace,
    dual_solve,
    inverse,
    kernel,
    matmul,
)
from .scalars import divide, format_scalar, parse_scalar, rational

DIM = 27
EPS = (0, 1, 2)
A_SLOT = slice(3, 11)
B_SLOT = slice(11, 19)
C_SLOT = slice(19, 27)


class ReadbackMismatch(ValueError):
    """A matrix product did not land back in the Albert algebra."""


class NormResidual(ValueError):
    """The characteristic polynomial residual was not a multiple of 1."""


class NotRankOne(ValueError):
    """An element expected to be rank one is zero or has nonzero sharp."""


class SamplerDegenerate(RuntimeError):
    """The rank-one sampler exhausted its attempts."""


class InvalidMultiplier(ValueError):
    """A similarity or isometry was requested with an unusable multiplier."""


def element(e0=0, e1=0, e2=0, a=None, b=None, c=None) -> np.ndarray:
    """Assemble (e0, e1, e2; a, b, c) into a coordinate vector."""
    x = ex.zeros(DIM)
    x[0], x[1], x[2] = e0, e1, e2
    for slot, v in ((A_SLOT, a), (B_SLOT, b), (C_SLOT, c)):
        if v is not None:
            x[slot] = list(v)
    return ex.normalize(x)


def parts(x: np.ndarray):
    """Split a coordinate vector into (e0, e1, e2, a, b, c)."""
    return x[0], x[1], x[2], x[A_SLOT], x[B_SLOT], x[C_SLOT]


def basis(i: int) -> np.ndarray:
    v = ex.zeros(DIM)
    v[i] = 1
    return v


E0 = element(1, 0, 0)
E1 = element(0, 1, 0)
E2 = element(0, 0, 1)
ONE = element(1, 1, 1)


def octonion_slot(slot: str, octonion) -> np.ndarray:
    """Element with a single octonion entry in slot 'a', 'b' or 'c'."""
    return element(**{slot: octonion})


def _octonion_matrix_tensor():
    """Product of 3x3 octonion matrices as a bilinear map on 72-vectors."""
    entries = []
    oct_entries = cayley._MUL.entries
    for r, s, t in itertools.product(range(3), repeat=3):
        for p, q, k, c in oct_entries:
            entries.append((8 * (3 * r + s) + p, 8 * (3 * s + t) + q, 8 * (3 * r + t) + k, c))
    return ex.Bilinear(entries, 72, 72, 72)


_OCTMAT = _octonion_matrix_tensor()


class AlbertCtx:
    """Albert algebra for a fixed twist gamma = (g0, g1, g2).

    Attributes ``gram`` and ``gram_inverse`` are the Gram matrix of the
    bilinear trace T(x, y) = T(x.y) and its inverse.
    """

    def __init__(self, gamma=(1, 1, 1)):
        gamma = tuple(rational(g) for g in gamma)
        if len(gamma) != 3 or any(g == 0 for g in gamma):
            raise ValueError(f"gamma must be three nonzero scalars, got {gamma}")
        self.gamma = gamma
        self.dim = DIM
        self._embed = self._embedding_matrix()
        self._readback = self._readback_matrix()
        self._jordan = ex.Bilinear(self._jordan_entries(), DIM, DIM, DIM)
        self.one = ONE.copy()
        self.gram = ex.zeros((DIM, DIM))
        for i in range(DIM):
            for j in range(DIM):
                self.gram[i, j] = self.trace(self._jordan(basis(i), basis(j)))
        self.gram_inverse = inverse(self.gram)
        self._cubic = self._cubic_coefficients()
        self._cubic_slices = None
        self._cross = ex.Bilinear(self._cross_entries(), DIM, DIM, DIM)

    def __repr__(self):
        return f"AlbertCtx(gamma={tuple(format_scalar(g) for g in self.gamma)})"

    # definitional product -------------------------------------------------

    def _embedding_matrix(self):
        g0, g1, g2 = (Fraction(g) for g in self.gamma)
        P = cayley.pi_matrix()
        E = ex.zeros((72, DIM))

        def put(r, s, block, coeffs):
            E[8 * (3 * r + s):8 * (3 * r + s) + 8, block] = coeffs

        for i in range(3):
            E[8 * (3 * i + i):8 * (3 * i + i) + 8, i] = cayley.ONE
        eye = ex.identity(8)
        put(0, 1, C_SLOT, eye)
        put(1, 2, A_SLOT, eye)
        put(2, 0, B_SLOT, eye)
        put(1, 0, C_SLOT, ex.normalize(P * (g0 / g1)))
        put(0, 2, B_SLOT, ex.normalize(P * (g2 / g0)))
        put(2, 1, A_SLOT, ex.normalize(P * (g1 / g2)))
        return ex.normalize(E)

    def _readback_matrix(self):
        R = ex.zeros((DIM, 72))
        for i in range(3):
            R[i, 8 * (3 * i + i) + 3] = 1
        for block, (r, s) in ((C_SLOT, (0, 1)), (A_SLOT, (1, 2)), (B_SLOT, (2, 0))):
            R[block, 8 * (3 * r + s):8 * (3 * r + s) + 8] = ex.identity(8)
        return R

    def embed(self, x: np.ndarray) -> np.ndarray:
        """The 3x3 octonion matrix of x, as a 3x3x8 array."""
        return matmul(self._embed, x).reshape(3, 3, 8)

    def readback(self, Z: np.ndarray) -> np.ndarray:
        """Inverse of :meth:`embed`; raises if Z is not in the image."""
        Z = Z.reshape(72)
        z = matmul(self._readback, Z)
        if not ex.is_zero(matmul(self._embed, z) - Z):
            raise ReadbackMismatch("matrix is not of the required twisted hermitian shape")
        return z

    def jordan_mul_embedded(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """x.y = (XY + YX)/2 via the matrix embedding."""
        X = matmul(self._embed, x)
        Y = matmul(self._embed, y)
        Z = ex.normalize((_OCTMAT(X, Y) + _OCTMAT(Y, X)) * Fraction(1, 2))
        return self.readback(Z)

    def _jordan_entries(self):
        out = []
        for i in range(DIM):
            for j in range(i, DIM):
                z = self.jordan_mul_embedded(basis(i), basis(j))
                for k, c in enumerate(z.tolist()):
                    if c:
                        out.append((i, j, k, c))
                        if i != j:
                            out.append((j, i, k, c))
        return out

    # tabulated operations ---------------------------------------------------

    def jordan_mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self._jordan(x, y)

    def trace(self, x: np.ndarray):
        return ex.normalize(ex.obj([x[0] + x[1] + x[2]]))[0]

    def trace_form(self, x: np.ndarray, y: np.ndarray):
        """Bilinear trace T(x, y) = T(x.y)."""
        return matmul(x, matmul(self.gram, y))

    def norm(self, x: np.ndarray):
        """Cubic norm from x^3 - T(x) x^2 + S(x) x = N(x) 1."""
        x2 = self._jordan(x, x)
        x3 = self._jordan(x2, x)
        t = self.trace(x)
        s = (t * t - self.trace(x2)) * Fraction(1, 2)
        r = ex.normalize(x3 - t * x2 + s * x)
        n = r[0]
        if not ex.is_zero(r - n * ONE):
            raise NormResidual(f"residual {r.tolist()} is not a multiple of 1")
        return n

    def _cubic_coefficients(self):
        """Symmetric trilinear form with N(x) = Nt(x, x, x), on basis triples."""
        cache = {}

        def n_of(idx):
            key = tuple(sorted(idx))
            if key not in cache:
                v = ex.zeros(DIM)
                for i in key:
                    v[i] += 1
                cache[key] = self.norm(v)
            return cache[key]

        coeffs = {}
        for i, j, k in itertools.combinations_with_replacement(range(DIM), 3):
            six = (
                n_of((i, j, k)) - n_of((i, j)) - n_of((i, k)) - n_of((j, k))
                + n_of((i,)) + n_of((j,)) + n_of((k,))
            )
            if six:
                coeffs[(i, j, k)] = Fraction(six, 6)
        return coeffs

    def _cross_entries(self):
        # T(x cross y, z) = 6 Nt(x, y, z), so (e_i cross e_j) = G^-1 (6 Nt(e_i, e_j, .))
        grad = {}
        for (i, j, k), c in self._cubic.items():
            for p, q, r in set(itertools.permutations((i, j, k))):
                grad.setdefault((p, q), ex.zeros(DIM))
                grad[(p, q)][r] += 6 * c
        out = []
        for (p, q), f in grad.items():
            v = matmul(self.gram_inverse, f)
            out.extend((p, q, k, c) for k, c in enumerate(v.tolist()) if c)
        return out

    def cross(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """x cross y = (x + y)^# - x^# - y^#."""
        return self._cross(x, y)

    def cross_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of y -> x cross y."""
        return self._cross.left_matrix(x)

    def sharp(self, x: np.ndarray) -> np.ndarray:
        return ex.normalize(self._cross(x, x) * Fraction(1, 2))

    def norm_trilinear(self, x, y, z):
        """Nt(x, y, z) with Nt(x, x, x) = N(x)."""
        return ex.normalize(ex.obj([self.trace_form(self.cross(x, y), z) * Fraction(1, 6)]))[0]

    # definitional sharp -----------------------------------------------------

    def norm_derivative(self, x: np.ndarray, y: np.ndarray):
        """Coefficient of t in N(x + t y), from t in {0, 1, -1, 2}."""
        c0 = self.norm(x)
        p1 = self.norm(x + y)
        m1 = self.norm(x - y)
        p2 = self.norm(x + 2 * y)
        s = Fraction(p1 - m1, 2)
        c2 = Fraction(p1 + m1, 2) - c0
        c3 = (p2 - c0 - 4 * c2 - 2 * s) / 6
        return rational(s - c3)

    def sharp_by_derivative(self, x: np.ndarray) -> np.ndarray:
        """x^# as the T-dual of the linear form y -> dN_x(y)."""
        f = ex.obj(self.norm_derivative(x, basis(k)) for k in range(DIM))
        return ex.normalize(dual_solve(self.gram, f))

    def sharp_by_adjoint(self, x: np.ndarray) -> np.ndarray:
        """x^# = x^2 - T(x) x + S(x) 1, the classical adjoint formula."""
        x2 = self._jordan(x, x)
        t = self.trace(x)
        s = (t * t - self.trace(x2)) * Fraction(1, 2)
        return ex.normalize(x2 - t * x + s * ONE)

    # operators --------------------------------------------------------------

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Matrix of j -> <x, y> j = (y cross (x cross j) - T(j, y) x - T(x, y) j / 3) / 2."""
        Xx = self.cross_matrix(x)
        Xy = self.cross_matrix(y)
        gy = matmul(self.gram, y)
        txy = matmul(x, gy)
        M = matmul(Xy, Xx) - np.outer(x, gy) - ex.identity(DIM) * divide(txy, 3)
        return ex.normalize(M * Fraction(1, 2))

    def bracket_apply(self, x, y, j) -> np.ndarray:
        """<x, y> j computed directly from the defining formula."""
        t = self.trace_form(j, y) * x + self.trace_form(x, y) * Fraction(1, 3) * j
        return ex.normalize((self.cross(y, self.cross(x, j)) - t) * Fraction(1, 2))

    def adjoint(self, f: np.ndarray) -> np.ndarray:
        """T-adjoint f* with T(f x, y) = T(x, f* y)."""
        return matmul(self.gram_inverse, matmul(f.T, self.gram))

    def dagger(self, f: np.ndarray) -> np.ndarray:
        """f-dagger = (f^-1)*."""
        try:
            return self.adjoint(inverse(f))
        except NotInvertible as e:
            raise NotInvertible("f has no inverse, so f-dagger is undefined") from e

    def norm_multiplier(self, f: np.ndarray):
        """lambda with N(f x) = lambda N(x) for all x, or None if f is no similarity."""
        f = ex.normalize(f)
        n = self.norm(matmul(f, ONE))
        lam = n  # N(1) = 1
        if lam == 0:
            return None
        # compare 6 Nt(f e_i, f e_j, f e_k) = T(f e_i x f e_j, f e_k) with 6 lam Nt(e_i, e_j, e_k)
        F = QArray.of(f)
        GF = QArray.of(self.gram) @ F
        six = self._cubic_dense()
        for i in range(DIM):
            P = (self._cross.left_q(F[:, i]) @ F).T @ GF
            if not (P - six[i].scale(lam)).is_zero():
                return None
        return lam

    def _cubic_dense(self):
        """Slices [i] of the dense tensor 6 Nt(e_i, e_j, e_k), cached."""
        if self._cubic_slices is None:
            T = np.zeros((DIM, DIM, DIM), dtype=object)
            for (i, j, k), c in self._cubic.items():
                for p, q, r in set(itertools.permutations((i, j, k))):
                    T[p, q, r] = 6 * c
            self._cubic_slices = [QArray.of(ex.normalize(T[i])) for i in range(DIM)]
        return self._cubic_slices

    def psi_similarity(self, lam) -> np.ndarray:
        """psi_lam(e; a, b, c) = (lam e0, lam e1, e2 / lam; a, b, lam c), multiplier lam."""
        lam = rational(lam)
        if lam == 0:
            raise InvalidMultiplier("psi needs a nonzero multiplier")
        d = [lam, lam, Fraction(1) / lam] + [1] * 16 + [lam] * 8
        return ex.normalize(_diag(d))

    def s_isometry(self, lam0, lam1, lam2) -> np.ndarray:
        """S_lam(e; a, b, c) = (e0/lam0^2, e1/lam1^2, e2/lam2^2; lam0 a, lam1 b, lam2 c)."""
        lams = [rational(v) for v in (lam0, lam1, lam2)]
        if lams[0] * lams[1] * lams[2] != 1:
            raise InvalidMultiplier("S needs lam0 lam1 lam2 = 1")
        d = [Fraction(1) / (l * l) for l in lams] + [lams[0]] * 8 + [lams[1]] * 8 + [lams[2]] * 8
        return ex.normalize(_diag(d))

    # rank one elements and singular subspaces --------------------------------

    def is_rank_one(self, x: np.ndarray) -> bool:
        return not ex.is_zero(x) and ex.is_zero(self.sharp(x))

    def random_element(self, rng: random.Random, height: int = 9, integral: bool = False) -> np.ndarray:
        return random_vector(DIM, rng, height, integral)

    def random_rank_one(self, rng: random.Random, height: int = 9, attempts: int = 50) -> np.ndarray:
        """Sample x with N(x) = 0 by solving for e0, then return x^# if nonzero."""
        for _ in range(attempts):
            x = self.random_element(rng, height, integral=True)
            x[0] = 0
            base = self.norm(x)
            slope = self.norm(x + E0) - base
            if slope == 0:
                continue
            x[0] = rational(Fraction(-base) / slope)
            if self.norm(x) != 0:
                raise RuntimeError("norm is not affine in e0")
            y = self.sharp(x)
            if not ex.is_zero(y):
                return y
        raise SamplerDegenerate(f"no rank one element after {attempts} attempts")

    def hyperline(self, d: np.ndarray) -> Subspace:
        """d cross J for a rank one element d."""
        if not self.is_rank_one(d):
            raise NotRankOne("hyperline needs a rank one element")
        return Subspace.span(self.cross_matrix(d).T, DIM)

    def is_totally_singular(self, W: Subspace) -> bool:
        vecs = W.vectors()
        if any(not ex.is_zero(self.sharp(w)) for w in vecs):
            return False
        return all(ex.is_zero(self.cross(u, v)) for u, v in itertools.combinations(vecs, 2))

    def bracket_system(self, w: np.ndarray) -> np.ndarray:
        """Rows whose kernel is {j : <w, j> = 0}, scaled by 6 to stay integral."""
        gw = matmul(self.gram, w)
        blocks = []
        for m in range(DIM):
            v = basis(m)
            blk = 3 * self.cross_matrix(self.cross(w, v)) - 3 * np.outer(w, self.gram[m]) - np.outer(v, gw)
            blocks.append(blk)
        return ex.normalize(np.vstack(blocks))

    def duality_map(self, W: Subspace) -> Subspace:
        """W' = {j : <w, j> = 0 for all w in W}."""
        if W.ambient_dim != DIM:
            raise ValueError("duality map acts on subspaces of J")
        K = Subspace.full(DIM)
        for w in W.vectors():
            if K.dim == 0:
                break
            rows = matmul(self.bracket_system(w), K.basis.T)
            sol = kernel(rows)
            if sol.dim == 0:
                return Subspace.zero(DIM)
            K = Subspace.span(matmul(sol.basis, K.basis), DIM)
        return K


def _diag(values) -> np.ndarray:
    n = len(values)
    M = ex.zeros((n, n))
    for i, v in enumerate(values):
        M[i, i] = v
    return M


def random_scalar(rng: random.Random, height: int = 9, integral: bool = False):
    n = rng.randint(-height, height)
    if integral:
        return n
    return rational(Fraction(n, rng.randint(1, height)))


def random_vector(n: int, rng: random.Random, height: int = 9, integral: bool = False) -> np.ndarray:
    return ex.obj(random_scalar(rng, height, integral) for _ in range(n))


@lru_cache(maxsize=16)
def albert_context(gamma=(1, 1, 1)) -> AlbertCtx:
    """Shared AlbertCtx for a given twist (contexts are immutable)."""
    return AlbertCtx(tuple(rational(g) for g in gamma))


def format_element(x: np.ndarray) -> str:
    return " ".join(format_scalar(v) for v in x.tolist())


def parse_element(text: str, field=None) -> np.ndarray:
    tokens = text.split()
    if len(tokens) != DIM:
        raise ValueError(f"expected {DIM} scalars, found {len(tokens)}")
    return ex.obj(parse_scalar(t, field) for t in tokens)
