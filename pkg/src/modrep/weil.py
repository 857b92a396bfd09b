"""
The unfolded (Weil) representation of SL(2,Z) on functions on R_r, its
symmetries, the orbit bases, and the restriction to the (r-1)/2-dimensional
invariant subspace V_r.

Basis vectors e_z of the unfolded space are indexed by z = a + b*omega in
(a, b)-lexicographic order, i.e. index a*r + b.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from modrep.eisenstein import (
    EisElem,
    SymmetryData,
    build_symmetry_data,
    check_prime,
    weyl_maps,
)
from modrep.matrix import CycMatrix, SignedPerm

LABELS = ("unfolded", "psu3_restricted", "psu2", "psu2_conjugated")


@dataclass(frozen=True)
class RepPair:
    r: int
    label: str
    S: CycMatrix
    T: CycMatrix
    basis_labels: tuple = ()

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"unknown label {self.label!r}")
        if self.S.shape != self.T.shape or self.S.shape[0] != self.S.shape[1]:
            raise ValueError("S and T must be square of equal size")
        want = self.r * self.r if self.label == "unfolded" else (self.r - 1) // 2
        if self.dim != want:
            raise ValueError(f"dimension {self.dim} does not match label {self.label} (expected {want})")

    @property
    def dim(self) -> int:
        return self.S.shape[0]

    @property
    def field_order(self) -> int:
        return max(self.S.order, self.T.order)

    def conj(self, label=None) -> "RepPair":
        return RepPair(self.r, label or self.label, self.S.conj(), self.T.conj(), self.basis_labels)


# -- index tables ------------------------------------------------------------


def _coords(r):
    a, b = np.divmod(np.arange(r * r), r)
    return a, b


def _trace_pairing(r):
    """E[x, y] = Tr(conj(x) y) mod r for all x, y in basis order."""
    a, b = _coords(r)
    # conj(x) = (a - b) - b w ; Tr(p + q w) = 2p - q
    ca, cb = (a - b) % r, (-b) % r
    A1, B1 = ca[:, None], cb[:, None]
    A2, B2 = a[None, :], b[None, :]
    pa = A1 * A2 - B1 * B2
    pb = A1 * B2 + B1 * A2 - B1 * B2
    return (2 * pa - pb) % r


def _norms(r):
    a, b = _coords(r)
    return (a * a - a * b + b * b) % r


def build_unfolded(r: int) -> RepPair:
    """S_xy = zeta^Tr(conj(x) y), T = diag(zeta^-N(x)) on the r^2 basis e_z."""
    check_prime(r)
    S = CycMatrix.from_exponents(r, _trace_pairing(r))
    T = CycMatrix.diagonal_from_exponents(r, -_norms(r))
    labels = tuple(f"e[{a}+{b}w]" for a in range(r) for b in range(r))
    return RepPair(r, "unfolded", S, T, labels)


# -- symmetries --------------------------------------------------------------


def _perm_from_map(r, fn, sign):
    perm = np.array([fn(EisElem.from_index(r, i)).index() for i in range(r * r)])
    return SignedPerm(perm, np.full(r * r, sign))


def symmetry_operator(r: int, which: str, data: SymmetryData | None = None, k: int = 1) -> SignedPerm:
    """
    Signed permutation of the standard basis.

    which = "unit_u"      e_z -> -e_{u z}  (k-th power for k != 1)
            "weyl:<i>"    e_z -> sgn(w_i) e_{w_i(z)}, i = 0..5 in weyl_orbit order
            "charge_conj" e_z -> e_{-z}
    """
    data = data or build_symmetry_data(r)
    if which == "unit_u":
        u = data.u
        op = _perm_from_map(r, lambda z: u * z, -1)
        return op ** k
    if which == "charge_conj":
        return _perm_from_map(r, lambda z: -z, 1)
    if which.startswith("weyl"):
        i = int(which.split(":")[1])
        fn, sign = weyl_maps(r)[i]
        return _perm_from_map(r, fn, sign)
    raise ValueError(f"unknown symmetry {which!r}")


def all_symmetry_operators(r: int, data: SymmetryData | None = None) -> dict:
    """Every generator of the U-action (u^k, k prime to r+1), the six Weyl elements, and C."""
    from math import gcd

    data = data or build_symmetry_data(r)
    ops = {}
    base = symmetry_operator(r, "unit_u", data)
    for k in range(1, r + 1):
        if gcd(k, r + 1) == 1:
            ops[f"unit_u^{k}"] = base ** k
    for i in range(6):
        ops[f"weyl:{i}"] = symmetry_operator(r, f"weyl:{i}", data)
    ops["charge_conj"] = symmetry_operator(r, "charge_conj", data)
    return ops


# -- orbit bases -------------------------------------------------------------

KINDS = ("plus", "minus", "plus_o", "minus_o", "plus_e", "minus_e")


@dataclass
class OrbitBasis:
    r: int
    kind: str
    vectors: list  # sparse {basis index: +-1}
    index_labels: list
    dropped: list = field(default_factory=list)  # labels whose orbit sum vanished

    def dense(self) -> np.ndarray:
        out = np.zeros((len(self.vectors), self.r * self.r), dtype=np.int64)
        for i, v in enumerate(self.vectors):
            for k, c in v.items():
                out[i, k] = c
        return out

    def __len__(self):
        return len(self.vectors)


def _add(vec, idx, c):
    vec[idx] = vec.get(idx, 0) + c


def unit_orbit_sum(z: EisElem, data: SymmetryData) -> dict:
    """sum_j u^j(e_z) with u(e_z) = -e_{uz}."""
    vec = {}
    for j in range(data.order_u):
        _add(vec, (data.u_power(j) * z).index(), (-1) ** j)
    return {k: c for k, c in vec.items() if c}


def weyl_orbit_sum(z: EisElem) -> dict:
    """sum_w w(e_z) with w(e_z) = sgn(w) e_{w(z)}."""
    vec = {}
    for fn, sign in weyl_maps(z.r):
        _add(vec, fn(z).index(), sign)
    return {k: c for k, c in vec.items() if c}


def orbit_basis(r: int, kind: str, data: SymmetryData | None = None) -> OrbitBasis:
    if kind not in KINDS:
        raise ValueError(f"unknown orbit-basis kind {kind!r}")
    data = data or build_symmetry_data(r)
    if kind.endswith("_o") and r % 4 != 1:
        raise ValueError(f"{kind} needs r = 1 mod 4 (r = {r})")
    if kind.endswith("_e") and r % 4 != 3:
        raise ValueError(f"{kind} needs r = 3 mod 4 (r = {r})")
    n, rho = data.n, data.rho
    half = (r - 1) // 2
    vectors, labels, dropped = [], [], []

    def push(vec, label):
        if vec:
            vectors.append(vec)
            labels.append(label)
        else:
            dropped.append(label)

    for a in range(1, half + 1):
        za = EisElem(r, a, 0)
        if kind == "plus":
            push(unit_orbit_sum(za, data), (a,))
        elif kind == "minus":
            push(unit_orbit_sum(za * rho, data), (a,))
        elif kind == "plus_o":
            # j = 0 and j = n give the same Weyl orbit (u^{2n} = omega)
            for j in range(n):
                push(weyl_orbit_sum(za * data.u_power(2 * j)), (a, j))
        elif kind == "minus_o":
            for j in range(1, n + 1):
                push(weyl_orbit_sum(za * rho * data.u_power(j)), (a, j))
        elif kind == "plus_e":
            for j in range(1, n + 1):
                push(weyl_orbit_sum(za * data.u_power(n // 2 + j)), (a, j))
        elif kind == "minus_e":
            for j in range(1, n + 1):
                push(weyl_orbit_sum(za * rho * data.u_power(2 * j)), (a, j))
    return OrbitBasis(r, kind, vectors, labels, dropped)


def restricted_kind(r: int) -> str:
    """Which U-orbit basis spans V_r: e^+ for r = 1 mod 4, e^- for r = 3 mod 4."""
    return "plus" if r % 4 == 1 else "minus"


# -- restricted representation ----------------------------------------------


def build_restricted(r: int, data: SymmetryData | None = None) -> RepPair:
    """
    r = 1 mod 4:  S_ab = sum_j (-1)^j zeta^( ab Tr(u^j)),  T = diag zeta^(-a^2)
    r = 3 mod 4:  S_ab = sum_j (-1)^j zeta^(-ab Tr(u^j)),  T = diag zeta^(+a^2)
    for 1 <= a, b <= (r-1)/2.
    """
    check_prime(r)
    data = data or build_symmetry_data(r)
    sign = 1 if r % 4 == 1 else -1
    half = (r - 1) // 2
    idx = np.arange(1, half + 1)
    tr = np.array(data.trace_table())
    alt = (-1) ** np.arange(len(tr))
    num = np.zeros((half, half, r), dtype=np.int64)
    ab = np.outer(idx, idx)
    for j, t in enumerate(tr):
        e = (sign * ab * t) % r
        np.add.at(num, (*np.indices(ab.shape), e), alt[j])
    S = CycMatrix(r, num)
    T = CycMatrix.diagonal_from_exponents(r, -sign * idx * idx)
    kind = restricted_kind(r)
    labels = tuple(f"e{'+' if kind == 'plus' else '-'}_{a}" for a in idx)
    return RepPair(r, "psu3_restricted", S, T, labels)


def apply_unfolded_S(r: int, vec: dict) -> CycMatrix:
    """S-hat applied to a sparse vector, as an (r^2, 1) column."""
    support = np.array(sorted(vec))
    coeff = np.array([vec[i] for i in support])
    a, b = _coords(r)
    # Tr(conj(y) x) for all y and x in support
    ya, yb = a[:, None], b[:, None]
    ca, cb = (ya - yb) % r, (-yb) % r
    xa, xb = a[support][None, :], b[support][None, :]
    pa = ca * xa - cb * xb
    pb = ca * xb + cb * xa - cb * xb
    E = (2 * pa - pb) % r
    num = np.zeros((r * r, 1, r), dtype=np.int64)
    rows = np.broadcast_to(np.arange(r * r)[:, None], E.shape)
    np.add.at(num, (rows, 0, E), np.broadcast_to(coeff, E.shape))
    return CycMatrix(r, num)


def restriction_crosscheck(r: int, data: SymmetryData | None = None) -> dict:
    """
    Expand S-hat e_a for every basis vector e_a of V_r, read off the
    coordinates in the orbit basis, and measure what is left over.

    Coordinates are read at the representative e_b (or e_{b rho}), which occurs
    with coefficient +1 in exactly one basis vector; the projected matrix is
    then compared with build_restricted's closed form.
    """
    data = data or build_symmetry_data(r)
    kind = restricted_kind(r)
    basis = orbit_basis(r, kind, data)
    half = (r - 1) // 2
    reps = [(EisElem(r, b, 0) if kind == "plus" else EisElem(r, b, 0) * data.rho).index() for b in range(1, half + 1)]
    for vec, rep in zip(basis.vectors, reps):
        assert vec[rep] == 1
    dense = basis.dense()
    proj = np.zeros((half, half, r), dtype=np.int64)
    leak_entries = 0
    for a, vec in enumerate(basis.vectors):
        img = apply_unfolded_S(r, vec).num[:, 0, :]  # (r^2, r)
        coords = img[reps]  # (half, r)
        proj[:, a, :] = coords
        rest = img - np.einsum("bk,bz->zk", coords, dense)
        leak = CycMatrix(r, rest[:, None, :])
        leak_entries += int((~leak.zero_mask()).sum())
    projected = CycMatrix(r, proj)
    closed = build_restricted(r, data)
    factor = projected.ratio_to(closed.S)

    # T-hat acts diagonally on e_a iff the norm is constant on its support
    norms = _norms(r)
    t_ok = True
    for a, vec in enumerate(basis.vectors, start=1):
        want = (a * a * (1 if kind == "plus" else data.rho_norm)) % r
        t_ok &= all(norms[i] == want for i in vec)
    return {
        "prime": r,
        "kind": kind,
        "leakage_entries": leak_entries,
        "leakage_zero": leak_entries == 0,
        "normalization_factor": factor,
        "agrees_with_closed_form": factor is not None,
        "T_eigen_ok": t_ok,
    }
