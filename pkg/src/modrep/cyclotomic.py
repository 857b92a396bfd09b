"""
Exact arithmetic in cyclotomic fields Q(zeta_m).

An element is a formal rational combination sum_k c_k zeta_m^k over all m
powers.  Nothing is reduced during arithmetic; the canonical form (remainder
modulo the m-th cyclotomic polynomial) is only computed for equality and
zero tests, and cached.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

import mpmath
import numpy as np


def _divisors(m):
    return [d for d in range(1, m + 1) if m % d == 0]


def _poly_divexact(num, den):
    # num, den: integer coefficient lists, low degree first; den monic
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for k, b in enumerate(den):
                num[i - dd + k] -= c * b
    assert not any(num[:dd]), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple:
    """Coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m)[:-1]:
        num = _poly_divexact(num, cyclotomic_poly(d))
    return tuple(num)


def euler_phi(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


@lru_cache(maxsize=None)
def reduction_table(m: int) -> np.ndarray:
    """Row k holds x^k mod Phi_m in the power basis 1, x, ..., x^(phi-1)."""
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    rows = []
    v = [1] + [0] * (deg - 1)
    for _ in range(m):
        rows.append(v)
        top = v[-1]
        v = [0] + v[:-1]
        if top:
            v = [a - top * b for a, b in zip(v, phi[:-1])]
    big = max(abs(x) for row in rows for x in row)
    table = np.array(rows, dtype=np.int64 if big < 2**31 else object)
    table.setflags(write=False)
    return table


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"not a rational coefficient: {x!r}")


class CycNum:
    """Element of Q(zeta_order) stored as {exponent: Fraction}."""

    __slots__ = ("order", "_terms", "_canon")

    def __init__(self, order: int, terms=None):
        if order < 1:
            raise ValueError("order must be >= 1")
        acc = {}
        if terms:
            for k, c in dict(terms).items():
                k = int(k) % order
                acc[k] = acc.get(k, 0) + _as_fraction(c)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_terms", {k: c for k, c in acc.items() if c})
        object.__setattr__(self, "_canon", None)

    def __setattr__(self, name, value):
        raise AttributeError("CycNum is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def rational(cls, q, order: int = 1) -> "CycNum":
        return cls(order, {0: _as_fraction(q)})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    # -- field changes ------------------------------------------------------

    def to_order(self, order: int) -> "CycNum":
        """Re-express in Q(zeta_order); order must be a multiple of self.order."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"Q(zeta_{self.order}) is not a subfield of Q(zeta_{order})")
        f = order // self.order
        return CycNum(order, {k * f: c for k, c in self._terms.items()})

    def _coerce(self, other):
        if isinstance(other, CycNum):
            if other.order == self.order:
                return self, other
            m = self.order * other.order // gcd(self.order, other.order)
            return self.to_order(m), other.to_order(m)
        try:
            q = _as_fraction(other)
        except TypeError:
            return None
        return self, CycNum(self.order, {0: q})

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        t = dict(a._terms)
        for k, c in b._terms.items():
            t[k] = t.get(k, 0) + c
        return CycNum(a.order, t)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.order, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        m = a.order
        t = {}
        for i, x in a._terms.items():
            for j, y in b._terms.items():
                k = (i + j) % m
                t[k] = t.get(k, 0) + x * y
        return CycNum(m, t)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        # a lone monomial stays a monomial
        if len(self._terms) == 1:
            (k, c), = self._terms.items()
            return CycNum(self.order, {k * e: c**e})
        result = CycNum(self.order, {0: 1})
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, CycNum):
            a, b = self._coerce(other)
            return (a * b.inverse()).reduced()
        q = _as_fraction(other)
        return CycNum(self.order, {k: c / q for k, c in self._terms.items()})

    def __rtruediv__(self, other):
        return self.inverse() * other

    def inverse(self) -> "CycNum":
        """Multiplicative inverse via extended gcd with Phi_m over Q."""
        import flint

        if len(self._terms) == 1:
            (k, c), = self._terms.items()
            return CycNum(self.order, {-k: 1 / c})
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        a = flint.fmpq_poly([_to_fmpq(c) for c in self.canonical()])
        phi = flint.fmpq_poly(list(cyclotomic_poly(self.order)))
        g, s, _ = a.xgcd(phi)
        assert g == 1
        coeffs = [Fraction(int(c.p), int(c.q)) for c in s.coeffs()]
        return CycNum(self.order, dict(enumerate(coeffs)))

    # -- canonical form, equality ------------------------------------------

    def canonical(self) -> tuple:
        """Coefficients of the remainder modulo Phi_m (power basis)."""
        if self._canon is None:
            table = reduction_table(self.order)
            out = [Fraction(0)] * table.shape[1]
            for k, c in self._terms.items():
                row = table[k]
                for i in np.flatnonzero(row):
                    out[i] += c * int(row[i])
            object.__setattr__(self, "_canon", tuple(out))
        return self._canon

    def is_zero(self) -> bool:
        return not any(self.canonical())

    def reduced(self) -> "CycNum":
        """Same element, rewritten in the power basis 1, zeta, ..., zeta^(phi-1)."""
        return CycNum(self.order, dict(enumerate(self.canonical())))

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return (a - b).is_zero()

    __hash__ = None

    def __bool__(self):
        return not self.is_zero()

    def rational_value(self):
        """The element as a Fraction if it is rational, else None."""
        c = self.canonical()
        if any(c[1:]):
            return None
        return c[0]

    # -- automorphisms ------------------------------------------------------

    def galois(self, t: int) -> "CycNum":
        """Apply zeta_m -> zeta_m^t."""
        if gcd(t, self.order) != 1:
            raise ValueError(f"gcd({t}, {self.order}) != 1: not a Galois automorphism")
        return CycNum(self.order, {k * t: c for k, c in self._terms.items()})

    def conj(self) -> "CycNum":
        return self.galois(-1)

    # -- numerics -----------------------------------------------------------

    def embed(self, precision: int = 53):
        """
        Value at zeta_m = exp(2 pi i / m) as an mpmath complex.

        Each term is evaluated with `precision` working bits, so the absolute
        error is at most about sum_k |c_k| * len(terms) * 2**(-precision).
        """
        if precision < 53:
            raise ValueError("precision must be >= 53 bits")
        with mpmath.workprec(precision + 10):
            total = mpmath.mpc(0)
            for k, c in self._terms.items():
                total += mpmath.mpf(c.numerator) / c.denominator * mpmath.expjpi(mpmath.mpf(2 * k) / self.order)
            return +total

    def __complex__(self):
        if not self._terms:
            return 0j
        ks = np.fromiter(self._terms.keys(), dtype=float)
        cs = np.array([float(c) for c in self._terms.values()])
        return complex(np.sum(cs * np.exp(2j * np.pi * ks / self.order)))

    # -- display / serialization ------------------------------------------

    def __repr__(self):
        if not self._terms:
            return f"CycNum({self.order}, 0)"
        parts = []
        for k, c in self.items():
            parts.append(f"{c}" if k == 0 else f"{c}*z{self.order}^{k}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "terms": [[k, c.numerator, c.denominator] for k, c in self.items()],
        }

    @classmethod
    def from_json(cls, obj) -> "CycNum":
        return cls(obj["order"], {k: Fraction(p, q) for k, p, q in obj["terms"]})


def _to_fmpq(c: Fraction):
    import flint

    return flint.fmpq(c.numerator, c.denominator)


def root_power(m: int, k: int) -> CycNum:
    """zeta_m^k."""
    return CycNum(m, {k % m: 1})


def galois(x: CycNum, t: int) -> CycNum:
    return x.galois(t)


def embed(x: CycNum, precision: int = 53):
    return x.embed(precision)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


def legendre(k: int, r: int) -> int:
    """Quadratic character of k mod the odd prime r (0 at k = 0)."""
    k %= r
    if k == 0:
        return 0
    return 1 if pow(k, (r - 1) // 2, r) == 1 else -1


def gauss_sqrt(r: int, order: int | None = None) -> CycNum:
    """
    The quadratic Gauss sum g = sum_k chi(k) zeta_r^k.

    g^2 = chi(-1) r, so g = sqrt(r) when r = 1 mod 4 and sqrt(-r) when
    r = 3 mod 4 (both with positive real / imaginary part).
    """
    if r < 3 or not is_prime(r):
        raise ValueError(f"{r} is not an odd prime")
    g = CycNum(r, {k: legendre(k, r) for k in range(1, r)})
    return g.to_order(order) if order else g


def sqrt_rational(q, order: int | None = None) -> CycNum:
    """
    Square root of a rational whose numerator and denominator are products
    of primes dividing `order` (plus signs).  The root returned is the one
    with positive real part, or positive imaginary part for negative q.
    """
    q = _as_fraction(q)
    if q == 0:
        return CycNum(order or 1)
    num, den = q.numerator * q.denominator, q.denominator
    sign = -1 if num < 0 else 1
    num = abs(num)
    # pull out squares
    outer = Fraction(1, den)
    n, p = num, 2
    free = []
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            outer *= p
        if n % p == 0:
            free.append(p)
            n //= p
        p += 1
    if n > 1:
        free.append(n)
    root = CycNum(1, {0: outer})
    for p in free:
        if p == 2:
            root = root * CycNum(8, {1: 1, 7: 1})
        elif p % 4 == 1:
            root = root * gauss_sqrt(p)
        else:
            # gauss_sqrt(p) = i sqrt(p)
            root = root * gauss_sqrt(p) * CycNum(4, {3: 1})
    if sign < 0:
        root = root * CycNum(4, {1: 1})
    if order is not None:
        root = root.to_order(order)
    return root
