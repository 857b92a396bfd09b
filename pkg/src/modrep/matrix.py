"""
Dense matrices over Q(zeta_m).

Entries are kept as an integer array of shape (rows, cols, m) -- the
coefficient of zeta_m^k of entry (i, j) is num[i, j, k] / den.  Products are
cyclic convolutions done as m shifted integer matmuls, so numpy does the heavy
lifting; int64 is used whenever a coefficient bound proves it safe, Python
ints (object arrays) otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import numpy as np

from modrep.cyclotomic import CycNum, _as_fraction, reduction_table

_INT64_SAFE = 2**62


def _absmax(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(max(abs(int(a.max())), abs(int(a.min()))))


def _fit(a: np.ndarray) -> np.ndarray:
    """Downcast an object array to int64 when every entry fits."""
    if a.dtype == object and _absmax(a) < _INT64_SAFE:
        return a.astype(np.int64)
    return a


def _widen(a: np.ndarray, bound: int) -> np.ndarray:
    return a.astype(object) if bound >= _INT64_SAFE else a


class CycMatrix:
    __slots__ = ("order", "num", "den")

    def __init__(self, order: int, num: np.ndarray, den: int = 1):
        num = np.asarray(num)
        if num.ndim != 3 or num.shape[2] != order:
            raise ValueError(f"expected shape (rows, cols, {order}), got {num.shape}")
        if num.dtype != object:
            num = num.astype(np.int64)
        g = gcd(int(den), *(int(x) for x in np.unique(num))) if num.size else int(den)
        if g > 1 and den % g == 0:
            num = num // g
            den //= g
        if den < 0:
            num, den = -num, -den
        self.order = order
        self.num = _fit(num)
        self.den = int(den)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, order, rows, cols=None):
        cols = rows if cols is None else cols
        return cls(order, np.zeros((rows, cols, order), dtype=np.int64))

    @classmethod
    def identity(cls, order, n):
        a = np.zeros((n, n, order), dtype=np.int64)
        a[np.arange(n), np.arange(n), 0] = 1
        return cls(order, a)

    @classmethod
    def from_exponents(cls, order, exps, coeffs=None):
        """Entry (i, j) = coeffs[i, j] * zeta^exps[i, j]."""
        exps = np.asarray(exps) % order
        rows, cols = exps.shape
        a = np.zeros((rows, cols, order), dtype=np.int64)
        c = np.ones_like(exps) if coeffs is None else np.asarray(coeffs)
        ii, jj = np.indices(exps.shape)
        np.add.at(a, (ii, jj, exps), c)
        return cls(order, a)

    @classmethod
    def diagonal_from_exponents(cls, order, exps):
        exps = np.asarray(exps) % order
        n = len(exps)
        a = np.zeros((n, n, order), dtype=np.int64)
        a[np.arange(n), np.arange(n), exps] = 1
        return cls(order, a)

    @classmethod
    def from_entries(cls, entries, order=None):
        rows = [list(r) for r in entries]
        flat = [x for r in rows for x in r]
        if order is None:
            order = 1
            for x in flat:
                if isinstance(x, CycNum):
                    order = lcm(order, x.order)
        fracs = []
        for x in flat:
            x = x if isinstance(x, CycNum) else CycNum.rational(x)
            fracs.append(x.to_order(order).terms)
        den = 1
        for t in fracs:
            for c in t.values():
                den = lcm(den, c.denominator)
        n, m = len(rows), len(rows[0]) if rows else 0
        a = np.zeros((n, m, order), dtype=object)
        a[...] = 0
        for idx, t in enumerate(fracs):
            i, j = divmod(idx, m)
            for k, c in t.items():
                a[i, j, k] = int(c * den)
        return cls(order, a, den)

    @classmethod
    def scalar(cls, x, n, order=None):
        x = x if isinstance(x, CycNum) else CycNum.rational(x)
        order = order or x.order
        ident = cls.identity(order, n)
        return ident * x

    # -- basic accessors ----------------------------------------------------

    @property
    def shape(self):
        return self.num.shape[:2]

    def __getitem__(self, ij) -> CycNum:
        i, j = ij
        v = self.num[i, j]
        return CycNum(self.order, {k: Fraction(int(v[k]), self.den) for k in np.flatnonzero(v)})

    def entries(self):
        rows, cols = self.shape
        return [[self[i, j] for j in range(cols)] for i in range(rows)]

    def __repr__(self):
        return f"CycMatrix(order={self.order}, shape={self.shape}, den={self.den})"

    # -- field changes ------------------------------------------------------

    def to_order(self, order: int) -> "CycMatrix":
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"{self.order} does not divide {order}")
        f = order // self.order
        a = np.zeros(self.shape + (order,), dtype=self.num.dtype)
        a[:, :, ::f] = self.num
        return CycMatrix(order, a, self.den)

    def _align(self, other: "CycMatrix"):
        m = lcm(self.order, other.order)
        return self.to_order(m), other.to_order(m)

    # -- arithmetic ---------------------------------------------------------

    def _addsub(self, other, sign):
        a, b = self._align(other)
        if a.shape != b.shape:
            raise ValueError("shape mismatch")
        den = lcm(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        bound = _absmax(a.num) * fa + _absmax(b.num) * fb
        x, y = _widen(a.num, bound), _widen(b.num, bound)
        return CycMatrix(a.order, x * fa + sign * (y * fb), den)

    def __add__(self, other):
        return self._addsub(other, 1)

    def __sub__(self, other):
        return self._addsub(other, -1)

    def __neg__(self):
        return CycMatrix(self.order, -self.num, self.den)

    def __mul__(self, x):
        """Scalar multiplication by an int, Fraction or CycNum."""
        if isinstance(x, CycNum):
            m = lcm(self.order, x.order)
            a = self.to_order(m)
            terms = x.to_order(m).terms
            if not terms:
                return CycMatrix.zeros(m, *self.shape)
            den = 1
            for c in terms.values():
                den = lcm(den, c.denominator)
            bound = _absmax(a.num) * sum(abs(int(c * den)) for c in terms.values())
            src = _widen(a.num, bound)
            out = np.zeros_like(src)
            for k, c in terms.items():
                out = out + np.roll(src, k, axis=2) * int(c * den)
            return CycMatrix(m, out, a.den * den)
        q = _as_fraction(x)
        bound = _absmax(self.num) * abs(q.numerator)
        return CycMatrix(self.order, _widen(self.num, bound) * q.numerator, self.den * q.denominator)

    __rmul__ = __mul__

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        a, b = self._align(other)
        p, q = a.shape
        q2, s = b.shape
        if q != q2:
            raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
        m = a.order
        bound = _absmax(a.num) * _absmax(b.num) * q * m
        x, y = _widen(a.num, bound), _widen(b.num, bound)
        # float64 BLAS is exact while every partial sum stays below 2^53
        exact_float = bound < 2**53 and x.dtype != object
        if exact_float:
            x, y = x.astype(np.float64), y.astype(np.float64)
        bflat = y.reshape(q, s * m)
        out = np.zeros((p, s, m), dtype=x.dtype)
        for t in range(m):
            at = x[:, :, t]
            if not at.any():
                continue
            prod = (at @ bflat).reshape(p, s, m)
            out = out + np.roll(prod, t, axis=2)
        if exact_float:
            out = out.astype(np.int64)
        return CycMatrix(m, out, a.den * b.den)

    def __pow__(self, e: int) -> "CycMatrix":
        if e < 0:
            raise ValueError("negative matrix powers are not supported")
        result = CycMatrix.identity(self.order, self.shape[0])
        base = self
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def transpose(self):
        return CycMatrix(self.order, self.num.transpose(1, 0, 2).copy(), self.den)

    @property
    def T(self):
        return self.transpose()

    def galois(self, t: int) -> "CycMatrix":
        if gcd(t, self.order) != 1:
            raise ValueError(f"gcd({t}, {self.order}) != 1")
        idx = (np.arange(self.order) * t) % self.order
        out = np.zeros_like(self.num)
        out[:, :, idx] = self.num
        return CycMatrix(self.order, out, self.den)

    def conj(self):
        return self.galois(-1)

    def adjoint(self):
        return self.conj().transpose()

    # -- exact predicates ---------------------------------------------------

    def canonical(self) -> np.ndarray:
        """Power-basis coefficients (times den) after reduction mod Phi_m."""
        table = reduction_table(self.order)
        rows, cols = self.shape
        flat = self.num.reshape(rows * cols, self.order)
        bound = _absmax(flat) * self.order * _absmax(table)
        if bound >= _INT64_SAFE:
            red = flat.astype(object) @ table.astype(object)
        else:
            red = flat.astype(np.int64) @ table.astype(np.int64)
        return red.reshape(rows, cols, -1)

    def zero_mask(self) -> np.ndarray:
        return ~self.canonical().any(axis=2)

    def is_zero(self) -> bool:
        return bool(self.zero_mask().all())

    def __eq__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def is_diagonal(self) -> bool:
        z = self.zero_mask()
        np.fill_diagonal(z, True)
        return bool(z.all())

    def diagonal(self):
        n = min(self.shape)
        return [self[i, i] for i in range(n)]

    def scalar_value(self):
        """c if the matrix equals c * I exactly, else None."""
        rows, cols = self.shape
        if rows != cols or not self.is_diagonal():
            return None
        c = self[0, 0]
        if self != CycMatrix.scalar(c, rows, self.order):
            return None
        return c.reduced()

    def ratio_to(self, other: "CycMatrix"):
        """c with self == c * other exactly, or None."""
        if self.shape != other.shape:
            return None
        nz = np.argwhere(~other.zero_mask())
        if len(nz) == 0:
            return CycNum.rational(0, self.order) if self.is_zero() else None
        i, j = nz[0]
        c = self[i, j] / other[i, j]
        return c if self == other * c else None

    # -- numerics -----------------------------------------------------------

    def to_complex(self) -> np.ndarray:
        roots = np.exp(2j * np.pi * np.arange(self.order) / self.order)
        return (self.num.astype(float) @ roots) / self.den


class SignedPerm:
    """e_i -> signs[i] * e_{perm[i]}."""

    __slots__ = ("perm", "signs")

    def __init__(self, perm, signs=None):
        self.perm = np.asarray(perm, dtype=np.int64)
        n = len(self.perm)
        self.signs = np.ones(n, dtype=np.int64) if signs is None else np.asarray(signs, dtype=np.int64)
        if sorted(self.perm.tolist()) != list(range(n)):
            raise ValueError("not a permutation")

    @classmethod
    def identity(cls, n):
        return cls(np.arange(n))

    def __len__(self):
        return len(self.perm)

    def __matmul__(self, other: "SignedPerm") -> "SignedPerm":
        # (self @ other) e_i = self(other(e_i))
        perm = self.perm[other.perm]
        signs = other.signs * self.signs[other.perm]
        return SignedPerm(perm, signs)

    def __pow__(self, e: int) -> "SignedPerm":
        result = SignedPerm.identity(len(self))
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            base = base @ base
        return result

    def inverse(self) -> "SignedPerm":
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(len(self.perm))
        return SignedPerm(inv, self.signs[inv])

    def __eq__(self, other):
        return np.array_equal(self.perm, other.perm) and np.array_equal(self.signs, other.signs)

    __hash__ = None

    def is_identity(self) -> bool:
        return self == SignedPerm.identity(len(self))

    def to_array(self) -> np.ndarray:
        n = len(self.perm)
        a = np.zeros((n, n), dtype=np.int64)
        a[self.perm, np.arange(n)] = self.signs
        return a

    def to_matrix(self, order: int = 1) -> CycMatrix:
        a = np.zeros((len(self), len(self), order), dtype=np.int64)
        a[:, :, 0] = self.to_array()
        return CycMatrix(order, a)

    def apply(self, vec: dict) -> dict:
        """Act on a sparse vector {index: coeff}."""
        return {int(self.perm[i]): c * int(self.signs[i]) for i, c in vec.items()}

    def conjugate(self, mat: CycMatrix) -> CycMatrix:
        """P M P^-1, computed by reindexing."""
        out = np.zeros_like(mat.num)
        s = np.outer(self.signs, self.signs)
        out[np.ix_(self.perm, self.perm)] = mat.num * s[:, :, None]
        return CycMatrix(mat.order, out, mat.den)

    def commutes_with(self, mat: CycMatrix) -> bool:
        return self.conjugate(mat) == mat
