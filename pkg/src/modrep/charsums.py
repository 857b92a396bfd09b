"""
Character-sum identities over Z/r behind the S-matrix comparison: Gauss
sums, the degree-2 sum, the square substitution, Jacobsthal's identity, the
alternating trace sum s, and the alpha/beta identity.

Identity checks return both sides so that a failure shows what went wrong.
"""

from __future__ import annotations

from dataclasses import dataclass

from modrep.cyclotomic import CycNum, gauss_sqrt, is_prime
from modrep.eisenstein import build_symmetry_data, check_prime
from modrep.psu2 import QuadChar


@dataclass(frozen=True)
class IdentityResult:
    lhs: object
    rhs: object

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def __iter__(self):
        return iter((self.lhs, self.rhs, self.equal))


def _odd_prime(r):
    if r < 3 or not is_prime(r):
        raise ValueError(f"r = {r} must be an odd prime")
    return QuadChar.build(r)


def inv(x: int, r: int) -> int:
    return pow(x % r, -1, r)


def gauss_identity(r: int, l: int) -> IdentityResult:
    """sum_{k=1}^{r-1} chi(k) zeta^(lk)  vs  chi(l) * sqrt(+-r)."""
    chi = _odd_prime(r)
    terms = {}
    for k in range(1, r):
        e = (l * k) % r
        terms[e] = terms.get(e, 0) + chi(k)
    lhs = CycNum(r, terms)
    rhs = gauss_sqrt(r) * chi(l)
    return IdentityResult(lhs, rhs)


def degree2_direct(r: int, a: int, b: int, c: int) -> int:
    chi = _odd_prime(r)
    return sum(chi(a * i * i + b * i + c) for i in range(r))


def degree2_closed(r: int, a: int, b: int, c: int) -> int | None:
    """-chi(a) if the discriminant is nonzero, else (r-1) chi(a); None for a = 0."""
    chi = _odd_prime(r)
    if a % r == 0:
        return None
    if (b * b - 4 * a * c) % r:
        return -chi(a)
    return (r - 1) * chi(a)


def degree2_sum(r: int, a: int, b: int, c: int) -> int:
    """Exact value of sum_i chi(a i^2 + b i + c); checked against the closed form when a != 0."""
    direct = degree2_direct(r, a, b, c)
    closed = degree2_closed(r, a, b, c)
    if closed is not None and closed != direct:
        raise AssertionError(f"degree-2 sum mismatch at r={r}, (a,b,c)=({a},{b},{c}): {direct} != {closed}")
    return direct


def _poly_eval(coeffs, x, r):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % r
    return acc


def square_identity(r: int, f) -> IdentityResult:
    """sum chi(f(x^2)) - sum chi(f(x)) vs sum chi(x f(x)), x = 1..r-1; f lowest degree first."""
    chi = _odd_prime(r)
    xs = range(1, r)
    lhs = sum(chi(_poly_eval(f, x * x, r)) for x in xs) - sum(chi(_poly_eval(f, x, r)) for x in xs)
    rhs = sum(chi(x * _poly_eval(f, x, r)) for x in xs)
    return IdentityResult(lhs, rhs)


def jacobsthal_identity(r: int, a: int, b: int) -> IdentityResult:
    """sum chi(x) chi(x^2 + a x + b) vs sum chi(x + a) chi(x^2 - 4b), x = 0..r-1."""
    chi = _odd_prime(r)
    lhs = sum(chi(x) * chi(x * x + a * x + b) for x in range(r))
    rhs = sum(chi(x + a) * chi(x * x - 4 * b) for x in range(r))
    return IdentityResult(lhs, rhs)


def s_direct(r: int, i: int = 1, data=None) -> CycNum:
    """s_i = sum_{j=0}^{r} (-1)^j zeta^(i Tr(u^j))."""
    data = data or build_symmetry_data(r)
    terms = {}
    for j, t in enumerate(data.trace_table()):
        e = (i * t) % r
        terms[e] = terms.get(e, 0) + (-1) ** j
    return CycNum(r, terms)


def s_closed(r: int) -> CycNum:
    """
    zeta^-2 (A - B) for r = 1 mod 4 and zeta^-2 (B - A) for r = 3 mod 4, where
    A = sum_a zeta^(3/(a^2+a+1)), B = sum_a zeta^(3((2a+1)/(a^2+a+1))^2), a = 1..r-1.
    """
    check_prime(r)
    A, B = {}, {}
    for a in range(1, r):
        q = inv(a * a + a + 1, r)
        ea = (3 * q) % r
        eb = (3 * ((2 * a + 1) * q) ** 2) % r
        A[ea] = A.get(ea, 0) + 1
        B[eb] = B.get(eb, 0) + 1
    diff = CycNum(r, A) - CycNum(r, B)
    if r % 4 == 3:
        diff = -diff
    return CycNum(r, {-2: 1}) * diff


def s_value(r: int) -> IdentityResult:
    return IdentityResult(s_direct(r), s_closed(r))


def alpha(r, i, j, a):
    return (2 * (j - i) + 3 * i * inv(a * a + a + 1, r)) % r


def beta(r, i, j, a):
    q = (2 * a + 1) * inv(a * a + a + 1, r)
    return (2 * (j - i) + 3 * i * q * q) % r


def alpha_beta_identity(r: int, i: int, j: int) -> IdentityResult:
    """sum_a chi(alpha_ija) vs sum_a chi(beta_ija), a = 0..r-1, for i != j."""
    check_prime(r)
    half = (r - 1) // 2
    if i == j:
        raise ValueError("alpha/beta identity needs i != j")
    if not (1 <= i <= half and 1 <= j <= half):
        raise ValueError(f"i, j must lie in 1..{half}")
    chi = QuadChar.build(r)
    lhs = sum(chi(alpha(r, i, j, a)) for a in range(r))
    rhs = sum(chi(beta(r, i, j, a)) for a in range(r))
    return IdentityResult(lhs, rhs)


# -- sweeps ------------------------------------------------------------------


def degree2_sweep(r: int):
    """Check the degree-2 closed form for all r^3 triples (a != 0) at once."""
    import numpy as np

    chi = np.array(_odd_prime(r).values)
    a, b, c, i = np.ix_(*(np.arange(r),) * 4)
    sums = chi[(a * i * i + b * i + c) % r].sum(axis=3)
    A, B, C = np.ix_(*(np.arange(r),) * 3)
    disc = (B * B - 4 * A * C) % r
    closed = np.where(disc != 0, -chi[A], (r - 1) * chi[A]) + 0 * (B + C)
    ok = bool((sums[1:] == closed[1:]).all())
    return ok, (r - 1) * r * r


def identity_suite(r: int, rng=None, samples: int = 100) -> dict:
    """
    Run every identity for one odd prime.  Gauss, degree-2 and Jacobsthal are
    swept over all parameters; the square identity over every linear f plus
    random higher-degree ones.
    Returns {name: (passed, cases)}.
    """
    import random

    rng = rng or random.Random(r)
    out = {}
    out["gauss"] = _all(gauss_identity(r, l).equal for l in range(r))
    out["degree2"] = degree2_sweep(r)
    polys = [[c0, c1] for c0 in range(r) for c1 in range(r)]
    polys += [[rng.randrange(r) for _ in range(rng.randint(3, 5))] for _ in range(samples)]
    out["square"] = _all(square_identity(r, f).equal for f in polys)
    out["jacobsthal"] = _all(jacobsthal_identity(r, a, b).equal for a in range(r) for b in range(r))
    return out


def _all(it):
    n = 0
    ok = True
    for x in it:
        n += 1
        ok &= bool(x)
    return ok, n
