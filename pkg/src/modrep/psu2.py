"""
Quantum PSU(2) representation matrices at xi = zeta^4, in the form quoted
from the literature and in the reindexed quadratic-character form.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

import numpy as np

from modrep.cyclotomic import CycNum, is_prime
from modrep.matrix import CycMatrix, SignedPerm
from modrep.weil import RepPair


def _check_odd_prime(r):
    if r < 3 or not is_prime(r):
        raise ValueError(f"r = {r} must be an odd prime")


@dataclass(frozen=True)
class QuadChar:
    r: int
    values: tuple

    @classmethod
    def build(cls, r: int) -> "QuadChar":
        _check_odd_prime(r)
        squares = {(k * k) % r for k in range(1, r)}
        return cls(r, tuple(0 if k == 0 else (1 if k in squares else -1) for k in range(r)))

    def __call__(self, k: int) -> int:
        return self.values[k % self.r]


def build_psu2_le_form(r: int) -> RepPair:
    """S'_ab = xi^(2ab-a-b) - xi^(-2ab+a+b-1),  T'_ab = delta_ab xi^(-a(a-1)),  xi = zeta^4."""
    _check_odd_prime(r)
    half = (r - 1) // 2
    a = np.arange(1, half + 1)
    A, B = np.meshgrid(a, a, indexing="ij")
    e1 = 4 * (2 * A * B - A - B)
    e2 = 4 * (-2 * A * B + A + B - 1)
    S = CycMatrix.from_exponents(r, e1) - CycMatrix.from_exponents(r, e2)
    T = CycMatrix.diagonal_from_exponents(r, -4 * a * (a - 1))
    return RepPair(r, "psu2", S, T, tuple(f"e'_{k}" for k in a))


def build_psu2(r: int) -> RepPair:
    """S'_ab = chi(ab) (zeta^(2ab) - zeta^(-2ab)),  T'_ab = delta_ab zeta^(-a^2)."""
    _check_odd_prime(r)
    chi = QuadChar.build(r)
    half = (r - 1) // 2
    a = np.arange(1, half + 1)
    A, B = np.meshgrid(a, a, indexing="ij")
    sign = np.vectorize(chi)(A * B)
    S = CycMatrix.from_exponents(r, 2 * A * B, sign) - CycMatrix.from_exponents(r, -2 * A * B, sign)
    T = CycMatrix.diagonal_from_exponents(r, -a * a)
    return RepPair(r, "psu2", S, T, tuple(f"e'_{k}" for k in a))


def build_psu2_conjugated(r: int) -> RepPair:
    return build_psu2(r).conj(label="psu2_conjugated")


@dataclass
class ReindexWitness:
    """P S_le P^-1 = s_scale * S_new and P T_le P^-1 = t_scale * T_new."""

    perm: SignedPerm
    s_scale: CycNum
    t_scale: CycNum
    method: str


def _closed_form_witness(r):
    # with xi = zeta^4 the le-form index a behaves like c = +-(2a - 1) mod r
    half = (r - 1) // 2
    chi = QuadChar.build(r)
    perm, signs = [], []
    for a in range(1, half + 1):
        c = (2 * a - 1) % r
        flip = c > half
        c = r - c if flip else c
        perm.append(c - 1)
        signs.append((-1 if flip else 1) * chi(c))
    return SignedPerm(perm, signs)


def _structured_witness(le, new):
    """Search signed permutations matching T up to a global factor, then S."""
    d = le.dim
    tle, tnew = le.T.diagonal(), new.T.diagonal()
    for k in range(d):
        t_scale = tle[0] / tnew[k]
        # T determines the permutation once the global factor is fixed
        perm = []
        for i in range(d):
            hits = [j for j in range(d) if tle[i] == t_scale * tnew[j]]
            if len(hits) != 1:
                break
            perm.append(hits[0])
        else:
            if len(set(perm)) != d:
                continue
            for signs in product((1, -1), repeat=d):
                if signs[0] == -1:
                    continue
                P = SignedPerm(perm, signs)
                s_scale = P.conjugate(le.S).ratio_to(new.S)
                if s_scale is not None:
                    return P, s_scale, t_scale
    return None


def reindex_witness(r: int) -> ReindexWitness:
    """
    Signed permutation relating the literature form to the reindexed form.
    The closed-form map a -> +-(2a-1) is tried first; if it fails, a search
    over signed permutations compatible with the T-diagonals is run.
    """
    le, new = build_psu2_le_form(r), build_psu2(r)
    P = _closed_form_witness(r)
    s_scale = P.conjugate(le.S).ratio_to(new.S)
    t_scale = P.conjugate(le.T).ratio_to(new.T)
    if s_scale is not None and t_scale is not None:
        return ReindexWitness(P, s_scale, t_scale, "closed_form")
    found = _structured_witness(le, new)
    if found is None:
        raise AssertionError(f"no signed permutation relates the two PSU(2) forms at r = {r}")
    P, s_scale, t_scale = found
    return ReindexWitness(P, s_scale, t_scale, "search")


def exhaustive_witnesses(r: int):
    """All signed permutations (up to the overall sign) relating the two forms; small r only."""
    le, new = build_psu2_le_form(r), build_psu2(r)
    d = le.dim
    out = []
    for perm in permutations(range(d)):
        for signs in product((1, -1), repeat=d):
            if signs[0] == -1:
                continue
            P = SignedPerm(perm, signs)
            s = P.conjugate(le.S).ratio_to(new.S)
            t = P.conjugate(le.T).ratio_to(new.T)
            if s is not None and t is not None:
                out.append(ReindexWitness(P, s, t, "exhaustive"))
    return out

