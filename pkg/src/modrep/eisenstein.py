"""
The field R_r = Z[omega]/r for primes r = 2 mod 3.

Elements are stored as z = a + b*omega with omega^2 = -1 - omega.  (Some
texts write a - b*omega; only the + convention is used here.)  Then

    conj(a + b w) = (a - b) - b w,   N = a^2 - a b + b^2,   Tr = 2a - b.
"""

from __future__ import annotations

from dataclasses import dataclass

from modrep.cyclotomic import is_prime, legendre


class UnsupportedPrime(ValueError):
    pass


def check_prime(r: int) -> None:
    if not is_prime(r) or r < 5:
        raise UnsupportedPrime(f"r = {r} must be a prime >= 5")
    if r % 3 == 1:
        raise UnsupportedPrime(f"r = {r} = 1 mod 3: split case not supported (Z[omega]/r is not a field)")


@dataclass(frozen=True, order=True)
class EisElem:
    r: int
    a: int
    b: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.r)
        object.__setattr__(self, "b", self.b % self.r)

    @classmethod
    def omega(cls, r):
        return cls(r, 0, 1)

    @classmethod
    def one(cls, r):
        return cls(r, 1, 0)

    def __add__(self, other):
        if isinstance(other, int):
            other = EisElem(self.r, other, 0)
        return EisElem(self.r, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return EisElem(self.r, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return EisElem(self.r, self.a * other, self.b * other)
        a, b, c, d = self.a, self.b, other.a, other.b
        return EisElem(self.r, a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = EisElem.one(self.r), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            base = base * base
        return result

    def conj(self):
        return EisElem(self.r, self.a - self.b, -self.b)

    def norm(self) -> int:
        return (self.a * self.a - self.a * self.b + self.b * self.b) % self.r

    def trace(self) -> int:
        return (2 * self.a - self.b) % self.r

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero has no inverse in R_r")
        return self.conj() * pow(n, -1, self.r)

    def index(self) -> int:
        """Position in the (a, b)-lexicographic ordering of R_r."""
        return self.a * self.r + self.b

    @classmethod
    def from_index(cls, r, i):
        return cls(r, *divmod(i, r))

    def __repr__(self):
        return f"({self.a}+{self.b}w mod {self.r})"

    def to_json(self):
        return {"r": self.r, "a": self.a, "b": self.b}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["r"], obj["a"], obj["b"])


def norm(z: EisElem) -> int:
    return z.norm()


def trace(z: EisElem) -> int:
    return z.trace()


def conj(z: EisElem) -> EisElem:
    return z.conj()


def elements(r: int):
    """All of R_r in basis order."""
    return [EisElem(r, a, b) for a in range(r) for b in range(r)]


def _prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(z: EisElem) -> int:
    group = z.r * z.r - 1
    order = group
    for p in _prime_factors(group):
        while order % p == 0 and (z ** (order // p)) == EisElem.one(z.r):
            order //= p
    return order


def primitive_root(r: int) -> EisElem:
    """First generator of R_r^* in (a, b)-lexicographic order."""
    group = r * r - 1
    for z in elements(r):
        if not z.is_zero() and multiplicative_order(z) == group:
            return z
    raise AssertionError(f"no primitive root found for r = {r}")


@dataclass(frozen=True)
class SymmetryData:
    r: int
    n: int
    u: EisElem
    rho: EisElem
    primitive_root: EisElem
    # N(rho) as actually computed (3 for rho = omega - conj(omega))
    rho_norm: int

    @property
    def order_u(self) -> int:
        return 6 * self.n

    def u_power(self, j: int) -> EisElem:
        return self.u ** (j % self.order_u)

    def trace_table(self):
        """Tr(u^j) for j = 0..r."""
        return [self.u_power(j).trace() for j in range(self.order_u)]


def build_symmetry_data(r: int) -> SymmetryData:
    check_prime(r)
    n = (r + 1) // 6
    one, w = EisElem.one(r), EisElem.omega(r)
    x = primitive_root(r)
    u = x ** (r - 1)
    if u ** (2 * n) != w:
        u = u.inverse()
        x = x.inverse()
    assert u.norm() == 1
    assert multiplicative_order(u) == 6 * n
    assert u ** (2 * n) == w and u ** (3 * n) == -one

    if r % 4 == 1:
        rho = w - w.conj()
        assert legendre(3, r) == -1 and legendre(-3, r) == -1
    else:
        assert legendre(-1, r) == -1
        cands = [z for z in elements(r) if z.norm() == r - 1 and z.conj() == u * z]
        if not cands:
            raise AssertionError(f"no rho with N(rho) = -1 and conj(rho) = u rho for r = {r}")
        rho = cands[0]
    assert legendre(rho.norm(), r) == -1
    return SymmetryData(r=r, n=n, u=u, rho=rho, primitive_root=x, rho_norm=rho.norm())


def weyl_orbit(z: EisElem):
    """
    [(w(z), sgn(w))] in the order z, wz, w^2 z, -zbar, -w zbar, -w^2 zbar;
    the first three are the even elements of W.
    """
    w = EisElem.omega(z.r)
    w2 = w * w
    zb = z.conj()
    return [(z, 1), (w * z, 1), (w2 * z, 1), (-zb, -1), (-(w * zb), -1), (-(w2 * zb), -1)]


def weyl_maps(r: int):
    """The six Weyl elements as (callable, sign), in weyl_orbit order."""
    w = EisElem.omega(r)
    w2 = w * w
    return [
        (lambda z: z, 1),
        (lambda z: w * z, 1),
        (lambda z: w2 * z, 1),
        (lambda z: -z.conj(), -1),
        (lambda z: -(w * z.conj()), -1),
        (lambda z: -(w2 * z.conj()), -1),
    ]
