"""Exact array kernels over Q and Q(sqrt d).

Vectors and matrices are numpy object arrays of scalars (int, Fraction,
QuadScalar). The kernels here split quadratic arrays into rational parts,
clear denominators, and run the integer work in int64 whenever a bound check
proves the result cannot overflow; otherwise they fall back to Python ints.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .scalars import FieldMismatch, QuadField, QuadScalar

INT64_LIMIT = 1 << 62


def obj(values) -> np.ndarray:
    """1-D object array of the given scalars."""
    values = list(values)
    a = np.empty(len(values), dtype=object)
    a[:] = values
    return a


def matrix(rows) -> np.ndarray:
    """2-D object array from a sequence of equal-length rows."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    a = np.empty((len(rows), ncols), dtype=object)
    for i, r in enumerate(rows):
        a[i, :] = r
    return a


def zeros(shape) -> np.ndarray:
    a = np.empty(shape, dtype=object)
    a.fill(0)
    return a


def identity(n: int) -> np.ndarray:
    a = zeros((n, n))
    for i in range(n):
        a[i, i] = 1
    return a


def split(arr: np.ndarray):
    """Return (p, q, field) with arr = p + q*sqrt(d); q is None over Q."""
    flat = arr.ravel().tolist()
    field = None
    for v in flat:
        if type(v) is QuadScalar:
            field = v.field
            break
    if field is None:
        return arr, None, None
    ps = []
    qs = []
    for v in flat:
        if type(v) is QuadScalar:
            if v.field != field:
                raise FieldMismatch(f"{v.field} vs {field}")
            ps.append(v.p)
            qs.append(v.q)
        else:
            ps.append(v)
            qs.append(0)
    return obj(ps).reshape(arr.shape), obj(qs).reshape(arr.shape), field


def merge(p: np.ndarray, q: np.ndarray, field: QuadField) -> np.ndarray:
    out = np.empty(p.shape, dtype=object)
    out.ravel()[:] = [QuadScalar(a, b, field) for a, b in zip(p.ravel().tolist(), q.ravel().tolist())]
    return out


def common_field(*arrays):
    field = None
    for a in arrays:
        for v in a.ravel().tolist():
            if type(v) is QuadScalar:
                if field is None:
                    field = v.field
                elif v.field != field:
                    raise FieldMismatch(f"{v.field} vs {field}")
                break
    return field


def to_int(arr: np.ndarray):
    """Clear denominators: return (ints, den, bound) with arr = ints / den.

    ``ints`` is int64 when every entry is below INT64_LIMIT, else object.
    """
    flat = arr.ravel().tolist()
    if all(type(v) is int for v in flat):
        ints = flat
        den = 1
    else:
        den = lcm(*[v.denominator for v in flat]) if flat else 1
        ints = [v.numerator * (den // v.denominator) for v in flat]
    bound = max(map(abs, ints), default=0)
    if bound < INT64_LIMIT:
        out = np.array(ints, dtype=np.int64).reshape(arr.shape)
    else:
        out = np.empty(arr.shape, dtype=object)
        out.ravel()[:] = ints
    return out, den, bound


def from_int(ints: np.ndarray, den: int) -> np.ndarray:
    """Inverse of :func:`to_int`, producing normalized rationals."""
    if den == 1:
        return ints.astype(object) if ints.dtype != object else ints
    flat = ints.ravel().tolist()
    vals = []
    for n in flat:
        n = int(n)
        if n % den == 0:
            vals.append(n // den)
        else:
            vals.append(Fraction(n, den))
    out = np.empty(ints.shape, dtype=object)
    out.ravel()[:] = vals
    return out


def _fits(bound) -> bool:
    return bound < INT64_LIMIT


def _maxabs(n: np.ndarray) -> int:
    if n.size == 0:
        return 0
    if n.dtype != object:
        return int(np.abs(n).max())
    return max(map(abs, n.ravel().tolist()))


def _gcd_all(n: np.ndarray) -> int:
    if n.size == 0:
        return 0
    if n.dtype != object:
        return int(np.gcd.reduce(n.ravel()))
    return gcd(*n.ravel().tolist())


class QArray:
    """Rational array stored as integer numerators over one denominator.

    Numerators are int64 while a running bound proves they fit, and Python
    ints otherwise. Every result is reduced by the gcd of its entries.
    """

    __slots__ = ("n", "den", "bound")

    def __init__(self, n: np.ndarray, den: int = 1, bound: int | None = None, reduce: bool = True):
        if bound is None:
            bound = _maxabs(n)
        if reduce and den != 1:
            g = gcd(_gcd_all(n), den)
            if g > 1:
                n = n // g
                den //= g
                bound //= g
        self.n = n if isinstance(n, np.ndarray) else np.asarray(n)
        self.den = den
        self.bound = bound

    @classmethod
    def of(cls, arr) -> "QArray":
        if isinstance(arr, QArray):
            return arr
        n, den, bound = to_int(np.asarray(arr, dtype=object))
        return cls(n, den, bound, reduce=False)

    @property
    def shape(self):
        return self.n.shape

    @property
    def T(self) -> "QArray":
        return QArray(self.n.T, self.den, self.bound, reduce=False)

    def obj(self) -> np.ndarray:
        return from_int(self.n, self.den)

    def __getitem__(self, idx) -> "QArray":
        return QArray(np.asarray(self.n[idx]), self.den, self.bound, reduce=False)

    def _times(self, f: int):
        if f == 1:
            return self.n, self.bound
        b = self.bound * abs(f)
        n = self.n
        if n.dtype != object and not _fits(b):
            n = n.astype(object)
        return n * f, b

    def _combine(self, other: "QArray", sign: int) -> "QArray":
        L = lcm(self.den, other.den)
        n1, b1 = self._times(L // self.den)
        n2, b2 = other._times(L // other.den)
        if (n1.dtype != object and n2.dtype != object) and not _fits(b1 + b2):
            n1 = n1.astype(object)
        n = n1 + n2 if sign > 0 else n1 - n2
        return QArray(n, L, b1 + b2 if n.dtype == object else None)

    def __add__(self, other) -> "QArray":
        return self._combine(QArray.of(other), 1)

    def __sub__(self, other) -> "QArray":
        return self._combine(QArray.of(other), -1)

    def __neg__(self) -> "QArray":
        return QArray(-self.n, self.den, self.bound, reduce=False)

    def scale(self, c) -> "QArray":
        """Multiply by a rational scalar."""
        c = Fraction(c)
        n, b = self._times(c.numerator)
        return QArray(n, self.den * c.denominator, b)

    def __matmul__(self, other) -> "QArray":
        other = QArray.of(other)
        A, B = self.n, other.n
        inner = A.shape[-1] if A.ndim else 1
        bound = self.bound * other.bound * max(inner, 1)
        if A.dtype != object and B.dtype != object and _fits(bound):
            out = np.asarray(A @ B)
            return QArray(out, self.den * other.den)
        out = np.asarray(A.astype(object) @ B.astype(object))
        return QArray(out, self.den * other.den, None)

    def is_zero(self) -> bool:
        if self.n.dtype != object:
            return not self.n.any()
        return all(v == 0 for v in self.n.ravel().tolist())

    def outer(self, other: "QArray") -> "QArray":
        A, B = self.n, other.n
        bound = self.bound * other.bound
        if A.dtype != object and B.dtype != object and _fits(bound):
            return QArray(np.outer(A, B), self.den * other.den)
        return QArray(np.outer(A.astype(object), B.astype(object)), self.den * other.den)


def _rat_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return (QArray.of(A) @ QArray.of(B)).obj()


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Exact product of object matrices (or matrix times vector).

    Two vectors give their dot product as a scalar.
    """
    out = _matmul(np.asarray(A, dtype=object), np.asarray(B, dtype=object))
    return out.item() if out.ndim == 0 else out


def _matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    Ap, Aq, fa = split(A)
    Bp, Bq, fb = split(B)
    if fa is None and fb is None:
        return _rat_matmul(A, B)
    if fa is not None and fb is not None and fa != fb:
        raise FieldMismatch(f"{fa} vs {fb}")
    field = fa or fb
    d = field.d
    p = _rat_matmul(Ap, Bp)
    if Aq is not None and Bq is not None:
        p = p + d * _rat_matmul(Aq, Bq)
        q = _rat_matmul(Ap, Bq) + _rat_matmul(Aq, Bp)
    elif Aq is not None:
        q = _rat_matmul(Aq, Bp)
    else:
        q = _rat_matmul(Ap, Bq)
    return merge(normalize(p), normalize(q), field)


def normalize(a: np.ndarray) -> np.ndarray:
    """Collapse integral Fractions to int (in a fresh array)."""
    out = np.empty(a.shape, dtype=object)
    out.ravel()[:] = [
        (v.numerator if v.denominator == 1 else v) if type(v) is Fraction else v
        for v in a.ravel().tolist()
    ]
    return out


def is_zero(a) -> bool:
    return all(not v for v in np.asarray(a, dtype=object).ravel().tolist())


def scale(a: np.ndarray, s) -> np.ndarray:
    return normalize(a * s)


class Bilinear:
    """Sparse bilinear map with structure constants: out[k] = sum c x[i] y[j].

    ``entries`` is an iterable of (i, j, k, c) with rational c. Repeated
    (i, j, k) triples are summed.
    """

    def __init__(self, entries, dim_x: int, dim_y: int, dim_out: int):
        acc: dict = {}
        for i, j, k, c in entries:
            if c:
                key = (i, j, k)
                acc[key] = acc.get(key, 0) + c
        items = [(key, c) for key, c in acc.items() if c]
        self.dim_x, self.dim_y, self.dim_out = dim_x, dim_y, dim_out
        self.nnz = len(items)
        coeffs = obj([c for _, c in items]) if items else zeros(0)
        C, self.den, self.cbound = to_int(coeffs)
        idx = np.array([key for key, _ in items], dtype=np.int64).reshape(-1, 3)
        I, J, K = idx[:, 0], idx[:, 1], idx[:, 2]
        self._call = self._plan(I, J, K, C, K)
        self._left = self._plan(I, J, K, C, K * dim_y + J)
        self._right = self._plan(I, J, K, C, K * dim_x + I)
        self.entries = [(int(a), int(b), int(c), v) for (a, b, c), v in zip(idx.tolist(), coeffs.tolist())]

    @staticmethod
    def _plan(I, J, K, C, key):
        order = np.argsort(key, kind="stable")
        skey = key[order]
        if len(skey):
            starts = np.flatnonzero(np.r_[True, skey[1:] != skey[:-1]])
            groups = skey[starts]
            maxgroup = int(np.max(np.diff(np.r_[starts, len(skey)])))
        else:
            starts = np.zeros(0, dtype=np.int64)
            groups = starts
            maxgroup = 0
        return I[order], J[order], K[order], C[order], starts, groups, maxgroup

    @staticmethod
    def _reduce(vals, starts, groups, size, dtype):
        out = np.zeros(size, dtype=dtype)
        if len(starts):
            out[groups] = np.add.reduceat(vals, starts)
        return out

    def call_q(self, X: QArray, Y: QArray) -> QArray:
        """B(x, y) on integer-scaled arrays."""
        I, J, _, C, starts, groups, mg = self._call
        bound = self.cbound * X.bound * Y.bound * max(mg, 1)
        if X.n.dtype != object and Y.n.dtype != object and C.dtype != object and _fits(bound):
            vals = C * X.n[I] * Y.n[J]
            out = self._reduce(vals, starts, groups, self.dim_out, np.int64)
        else:
            vals = C.astype(object) * X.n.astype(object)[I] * Y.n.astype(object)[J]
            out = self._reduce(vals, starts, groups, self.dim_out, object)
        return QArray(out, self.den * X.den * Y.den)

    def _matrix_q(self, plan, V: QArray, ncols: int, use_i: bool) -> QArray:
        I, J, _, C, starts, groups, mg = plan
        idx = I if use_i else J
        size = self.dim_out * ncols
        if V.n.dtype != object and C.dtype != object and _fits(self.cbound * V.bound * max(mg, 1)):
            out = self._reduce(C * V.n[idx], starts, groups, size, np.int64)
        else:
            out = self._reduce(C.astype(object) * V.n.astype(object)[idx], starts, groups, size, object)
        return QArray(out.reshape(self.dim_out, ncols), self.den * V.den)

    def left_q(self, X: QArray) -> QArray:
        """Matrix of y -> B(x, y) on integer-scaled arrays."""
        return self._matrix_q(self._left, X, self.dim_y, True)

    def right_q(self, Y: QArray) -> QArray:
        """Matrix of x -> B(x, y) on integer-scaled arrays."""
        return self._matrix_q(self._right, Y, self.dim_x, False)

    def _rat_call(self, x, y):
        return self.call_q(QArray.of(x), QArray.of(y)).obj()

    def __call__(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        xp, xq, fx = split(x)
        yp, yq, fy = split(y)
        if fx is None and fy is None:
            return self._rat_call(x, y)
        if fx is not None and fy is not None and fx != fy:
            raise FieldMismatch(f"{fx} vs {fy}")
        field = fx or fy
        p = self._rat_call(xp, yp)
        q = zeros(self.dim_out)
        if xq is not None and yq is not None:
            p = p + field.d * self._rat_call(xq, yq)
        if yq is not None:
            q = q + self._rat_call(xp, yq)
        if xq is not None:
            q = q + self._rat_call(xq, yp)
        return merge(normalize(p), normalize(q), field)

    def _matrix(self, plan, v, ncols, use_i):
        p, q, field = split(v)
        if field is None:
            return self._matrix_q(plan, QArray.of(v), ncols, use_i).obj()
        return merge(
            self._matrix_q(plan, QArray.of(p), ncols, use_i).obj(),
            self._matrix_q(plan, QArray.of(q), ncols, use_i).obj(),
            field,
        )

    def left_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of y -> B(x, y)."""
        return self._matrix(self._left, x, self.dim_y, True)

    def right_matrix(self, y: np.ndarray) -> np.ndarray:
        """Matrix of x -> B(x, y)."""
        return self._matrix(self._right, y, self.dim_x, False)
