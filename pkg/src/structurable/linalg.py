"""Exact dense linear algebra over Q and Q(sqrt d).

Matrices are numpy object arrays. Rank, kernels and subspace arithmetic use
fraction-free (Bareiss) elimination over the integers for rational input and
plain Gauss-Jordan over the field for quadratic input. Subspaces are stored by
their reduced row echelon basis, which makes equality a direct comparison.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import numpy as np

from . import _exact as ex
from .scalars import QuadScalar, divide, format_scalar, parse_scalar

matmul = ex.matmul
identity = ex.identity
zeros = ex.zeros


class AmbientMismatch(ValueError):
    """Subspaces of different ambient spaces were combined."""


class SingularGram(ValueError):
    """The Gram matrix handed to dual_solve is singular."""


class NotInvertible(ValueError):
    """A linear map expected to be invertible has a kernel."""


class DimensionMismatch(ValueError):
    """A vector or matrix has the wrong size."""


def _primitive_rows(M: np.ndarray):
    """Integer rows spanning the same row space, zero rows dropped."""
    rows = []
    seen = set()
    for row in M.tolist():
        if type(row) is not list:
            row = [row]
        if all(type(v) is int for v in row):
            ints = row
        else:
            den = lcm(*[v.denominator for v in row])
            ints = [v.numerator * (den // v.denominator) for v in row]
        g = gcd(*ints)
        if g == 0:
            continue
        lead = next(v for v in ints if v)
        if lead < 0:
            g = -g
        if g != 1:
            ints = [v // g for v in ints]
        key = tuple(ints)
        if key not in seen:
            seen.add(key)
            rows.append(ints)
    return rows


def _bareiss_echelon(rows, ncols):
    """Fraction-free row echelon form; returns (rows, pivots) of an echelon basis."""
    if not rows:
        return [], []
    A = np.array(rows, dtype=object).reshape(len(rows), ncols)
    m = A.shape[0]
    r = 0
    prev = 1
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        col = A[r:, c]
        nz = [i for i, v in enumerate(col.tolist()) if v]
        if not nz:
            continue
        # smallest pivot keeps intermediate growth down
        k = min(nz, key=lambda i: abs(col[i])) + r
        if k != r:
            A[[r, k]] = A[[k, r]]
        p = A[r, c]
        if r + 1 < m:
            below = A[r + 1:, c + 1:]
            factor = A[r + 1:, c:c + 1]
            A[r + 1:, c + 1:] = (below * p - factor * A[r, c + 1:]) // prev
            A[r + 1:, c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _rational_rref(M: np.ndarray):
    ncols = M.shape[1]
    E, pivots = _bareiss_echelon(_primitive_rows(M), ncols)
    r = len(pivots)
    if r == 0:
        return ex.zeros((0, ncols)), []
    # clear above each pivot, keeping rows primitive
    for i in range(r - 1, 0, -1):
        pc = pivots[i]
        above = E[:i, pc]
        if not any(above.tolist()):
            continue
        E[:i] = E[:i] * E[i, pc] - np.outer(above, E[i])
        for k in range(i):
            g = gcd(*E[k].tolist())
            if g > 1:
                E[k] = E[k] // g
    R = np.empty((r, ncols), dtype=object)
    for i, pc in enumerate(pivots):
        p = E[i, pc]
        R[i] = [v // p if v % p == 0 else Fraction(v, p) for v in E[i].tolist()]
    return R, pivots


def _field_rref(M: np.ndarray):
    A = [list(row) for row in M.tolist()]
    m = len(A)
    ncols = M.shape[1]
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        k = next((i for i in range(r, m) if A[i][c]), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        p = A[r][c]
        A[r] = [divide(v, p) for v in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    R = ex.matrix(A[:r]) if r else ex.zeros((0, ncols))
    return R, pivots


def rref(M: np.ndarray):
    """Reduced row echelon form: (R, pivots) with zero rows removed."""
    if isinstance(M, ex.QArray):
        M = M.n.astype(object)
    M = np.asarray(M, dtype=object)
    if M.ndim == 1:
        M = M.reshape(1, -1)
    if M.shape[0] == 0:
        return ex.zeros((0, M.shape[1])), []
    if any(type(v) is QuadScalar for v in M.ravel().tolist()):
        return _field_rref(M)
    return _rational_rref(M)


def rref_rank(M: np.ndarray):
    """Return (R, rank) for the reduced row echelon form R of M."""
    R, pivots = rref(M)
    return R, len(pivots)


def rank(M: np.ndarray) -> int:
    return len(rref(M)[1])


def _kernel_from_rref(R, pivots, ncols):
    free = [c for c in range(ncols) if c not in set(pivots)]
    K = ex.zeros((len(free), ncols))
    for t, f in enumerate(free):
        K[t, f] = 1
        for i, pc in enumerate(pivots):
            K[t, pc] = -R[i, f]
    return K


def kernel(M: np.ndarray) -> "Subspace":
    """Right kernel {v : M v = 0} as a Subspace."""
    M = np.asarray(M, dtype=object)
    R, pivots = rref(M)
    return Subspace.span(_kernel_from_rref(R, pivots, M.shape[1]), M.shape[1])


class Subspace:
    """A subspace of F^n held by its canonical reduced row echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots", "_key", "_basis_q", "_ann_q")

    def __init__(self, ambient_dim: int, basis: np.ndarray, pivots):
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = tuple(pivots)
        self._key = None
        self._basis_q = None
        self._ann_q = None

    @classmethod
    def span(cls, vectors, ambient_dim: int | None = None) -> "Subspace":
        if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
            M = vectors
        else:
            vectors = list(vectors)
            if not vectors:
                if ambient_dim is None:
                    raise DimensionMismatch("empty span needs an ambient dimension")
                return cls(ambient_dim, ex.zeros((0, ambient_dim)), [])
            M = ex.matrix(vectors)
        n = M.shape[1] if ambient_dim is None else ambient_dim
        if M.shape[1] != n:
            raise DimensionMismatch(f"vectors of length {M.shape[1]} in ambient dimension {n}")
        if M.shape[0] == 0:
            return cls(n, ex.zeros((0, n)), [])
        R, pivots = rref(M)
        return cls(n, R, pivots)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ex.zeros((0, n)), [])

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, ex.identity(n), range(n))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def vectors(self):
        return [self.basis[i] for i in range(self.dim)]

    def key(self):
        if self._key is None:
            self._key = (self.ambient_dim, tuple(self.basis.ravel().tolist()))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(f"{self.ambient_dim} vs {other.ambient_dim}")

    def residual(self, X: np.ndarray) -> np.ndarray:
        """Rows of X reduced modulo the subspace (zero rows lie inside)."""
        X = np.asarray(X, dtype=object)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        if self.dim == 0:
            return X
        return ex.normalize(X - matmul(X[:, list(self.pivots)], self.basis))

    def basis_q(self) -> ex.QArray:
        if self._basis_q is None:
            self._basis_q = ex.QArray.of(self.basis)
        return self._basis_q

    def annihilator_q(self) -> ex.QArray:
        """Rows spanning the annihilator, as a QArray (possibly zero rows)."""
        if self._ann_q is None:
            ann = self.annihilator()
            self._ann_q = ex.QArray.of(ann.basis) if ann.dim else ex.QArray.of(ex.zeros((0, self.ambient_dim)))
        return self._ann_q

    def contains_columns_q(self, M: ex.QArray) -> bool:
        """Whether every column of M lies in the subspace."""
        A = self.annihilator_q()
        if A.shape[0] == 0:
            return True
        return (A @ M).is_zero()

    def contains(self, v) -> bool:
        return ex.is_zero(self.residual(v))

    def contains_rows(self, X) -> bool:
        X = np.asarray(X, dtype=object)
        if X.size == 0:
            return True
        return ex.is_zero(self.residual(X))

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return other.contains_rows(self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        return Subspace.span(np.vstack([self.basis, other.basis]), self.ambient_dim)

    def extend(self, X) -> "Subspace":
        X = np.asarray(X, dtype=object)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        return Subspace.span(np.vstack([self.basis, X]), self.ambient_dim)

    def annihilator(self) -> "Subspace":
        """Vectors orthogonal to the subspace under the standard dot product."""
        if self.dim == 0:
            return Subspace.full(self.ambient_dim)
        return Subspace.span(
            _kernel_from_rref(self.basis, self.pivots, self.ambient_dim), self.ambient_dim
        )

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return (self.annihilator() + other.annihilator()).annihilator()

    def image(self, A: np.ndarray) -> "Subspace":
        """Image under the linear map with matrix A (acting on columns)."""
        if self.dim == 0:
            return Subspace.zero(A.shape[0])
        return Subspace.span(matmul(A, self.basis.T).T, A.shape[0])


def intersect_sum(U: Subspace, V: Subspace):
    """Return (U & V, U + V)."""
    U._check(V)
    return U & V, U + V


def solve(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """The unique x with A x = b; raises NotInvertible if A is singular."""
    A = np.asarray(A, dtype=object)
    n = A.shape[0]
    if A.shape != (n, n):
        raise DimensionMismatch("solve needs a square matrix")
    b = np.asarray(b, dtype=object)
    B = b.reshape(n, -1)
    R, pivots = rref(np.hstack([A, B]))
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise NotInvertible("matrix is singular")
    X = R[:n, n:]
    return X.reshape(b.shape)


def inverse(A: np.ndarray) -> np.ndarray:
    return solve(A, ex.identity(np.asarray(A).shape[0]))


def dual_solve(G: np.ndarray, f: np.ndarray) -> np.ndarray:
    """The x with G(x, y) = f(y) for all y, i.e. x^T G = f."""
    try:
        return solve(np.asarray(G, dtype=object).T, f)
    except NotInvertible as e:
        raise SingularGram("Gram matrix is singular") from e


def matvec(A: np.ndarray, v: np.ndarray) -> np.ndarray:
    return matmul(A, v)


def format_subspace(S: Subspace) -> str:
    lines = [f"{S.ambient_dim} {S.dim}"]
    for row in S.basis.tolist():
        lines.append(" ".join(format_scalar(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_subspace(text: str, field=None) -> Subspace:
    """Read ``ambient_dim k`` followed by k rows of scalars."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty subspace file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("subspace header must be 'ambient_dim k'")
    n, k = int(head[0]), int(head[1])
    tokens = " ".join(lines[1:]).split()
    if len(tokens) != n * k:
        raise DimensionMismatch(f"expected {n * k} scalars, found {len(tokens)}")
    vals = [parse_scalar(t, field) for t in tokens]
    if k == 0:
        return Subspace.zero(n)
    return Subspace.span(ex.matrix([vals[i * n:(i + 1) * n] for i in range(k)]), n)
