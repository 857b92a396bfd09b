"""
Representation-level checks: projective relations, lifts to honest
SL(2,Z) representations, S-matrix proportionality and products, the
charge-conjugation parity split, commutant dimensions, and the end-to-end
PSU(2)-inside-PSU(3) verifier.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm, pi

import numpy as np

from modrep.cyclotomic import CycNum, euler_phi, gauss_sqrt, reduction_table, root_power, sqrt_rational
from modrep.eisenstein import EisElem, build_symmetry_data, check_prime
from modrep.matrix import CycMatrix, SignedPerm
from modrep.psu2 import build_psu2, build_psu2_conjugated
from modrep.weil import (
    RepPair,
    build_restricted,
    orbit_basis,
    restricted_kind,
    restriction_crosscheck,
    symmetry_operator,
)

DEFAULT_MAX_EXACT = 4096
FLOAT_TOL = 1e-9


class ResourceGuardError(RuntimeError):
    pass


class LiftError(RuntimeError):
    pass


# -- reports -----------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    witness: object = None
    claim: str = ""


@dataclass
class VerifyReport:
    prime: int | None = None
    checks: list = field(default_factory=list)
    commutant_dim: int | None = None
    parity_dims: tuple | None = None
    proportionality_constant: CycNum | None = None
    scalars: dict = field(default_factory=dict)

    def add(self, name, passed, witness=None, claim=""):
        self.checks.append(Check(name, bool(passed), witness, claim))
        return bool(passed)

    def extend(self, other: "VerifyReport", prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.claim))
        for k, v in other.scalars.items():
            self.scalars[prefix + k] = v

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def check(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "claim": c.claim, "witness": _jsonable(c.witness)}
                for c in self.checks
            ],
            "commutant_dim": self.commutant_dim,
            "parity_dims": list(self.parity_dims) if self.parity_dims else None,
            "proportionality_constant": _jsonable(self.proportionality_constant),
            "scalars": {k: _jsonable(v) for k, v in self.scalars.items()},
        }


def _jsonable(x):
    if isinstance(x, CycNum):
        z = complex(x)
        return {"exact": x.reduced().to_json(), "numeric": [z.real, z.imag]}
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


# -- projective relations ----------------------------------------------------


def projective_relations(rep: RepPair) -> VerifyReport:
    """Find kappa, lambda with S^4 = kappa I and (ST)^3 = lambda S^2, if they exist."""
    rep_report = VerifyReport(prime=rep.r)
    S, T = rep.S, rep.T
    S2 = S @ S
    S4 = S2 @ S2
    ST = S @ T
    ST3 = ST @ ST @ ST
    kappa = S4.scalar_value()
    lam = ST3.ratio_to(S2)
    rep_report.add("S^4 = kappa I", kappa is not None and not kappa.is_zero(), kappa, "S^4 = I projectively")
    rep_report.add("(ST)^3 = lambda S^2", lam is not None and not lam.is_zero(), lam, "(ST)^3 = S^2 projectively")
    rep_report.scalars["kappa"] = kappa
    rep_report.scalars["lambda"] = lam
    s2 = S2.scalar_value()
    if s2 is not None:
        rep_report.scalars["S^2"] = s2
    return rep_report


# -- lifting -----------------------------------------------------------------


def _int_root(n: int, k: int):
    if n < 0:
        return None
    x = round(n ** (1.0 / k)) if n else 0
    for y in (x - 1, x, x + 1):
        if y >= 0 and y**k == n:
            return y
    lo, hi = 0, n + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**k == n else None


def _rational_root(q: Fraction, k: int):
    a, b = _int_root(q.numerator, k), _int_root(q.denominator, k)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def solve_root(y: CycNum, k: int, order: int):
    """
    All x in Q(zeta_M) with x^k = y, where M = lcm(order, whatever the modulus
    needs), listed by increasing exponent j in x = zeta_M^j * |x|.
    Raises LiftError if |y| has no suitable root.
    """
    y = y.reduced()
    mod2 = (y * y.conj()).rational_value()
    if mod2 is None or mod2 <= 0:
        raise LiftError(f"|y|^2 is not a positive rational (y = {y})")
    # |x|^2 = (|y|^2)^(1/k)
    t = _rational_root(mod2, k)
    if t is None:
        raise LiftError(f"|y|^2 = {mod2} has no rational {k}-th root")
    p = sqrt_rational(t)
    M = lcm(order, p.order)
    p = p.to_order(M)
    pk = p**k
    phase = complex(y) / complex(pk)
    arg = (np.angle(phase) / (2 * pi)) * M
    j0 = round(arg)
    if abs(arg - j0) > 1e-6:
        raise LiftError(f"y / |y| is not an M-th root of unity for M = {M}")
    out = []
    for j in range(M):
        if (k * j - j0) % M:
            continue
        x = root_power(M, j) * p
        if x**k == y:
            out.append(x)
    if not out:
        raise LiftError(f"no {k}-th root of {y} in Q(zeta_{M})")
    return out


@dataclass
class LiftedRep:
    base: RepPair
    c1: CycNum
    c2: CycNum
    field_order: int
    kappa: CycNum = None
    lam: CycNum = None

    @property
    def S(self) -> CycMatrix:
        return self.base.S * self.c1

    @property
    def T(self) -> CycMatrix:
        return self.base.T * self.c2

    def honest_relations(self) -> dict:
        """
        Re-verify (S~T~)^3 = S~^2 and S~^4 = I as matrix identities.  The base
        products are formed exactly in the base field, then rescaled, so the
        final comparison is entrywise in Q(zeta_M).
        """
        S, T = self.base.S, self.base.T
        S2 = S @ S
        ST = S @ T
        lhs = (ST @ ST @ ST) * ((self.c1 * self.c2) ** 3)
        rhs = S2 * (self.c1**2)
        s4 = (S2 @ S2) * (self.c1**4)
        ident = CycMatrix.identity(s4.order, self.base.dim)
        return {"(ST)^3 = S^2": lhs == rhs, "S^4 = I": s4 == ident}


def lift(rep: RepPair, field_order: int | None = None, relations: VerifyReport | None = None) -> LiftedRep:
    """
    Scalars c1, c2 with c1^4 kappa = 1 and c1 c2^3 lambda = 1, so that
    (c1 S, c2 T) satisfy (ST)^3 = S^2 and S^4 = I.  The first solution in
    increasing root-of-unity exponent (c1 first, then c2) is returned.
    """
    relations = relations or projective_relations(rep)
    kappa, lam = relations.scalars.get("kappa"), relations.scalars.get("lambda")
    if kappa is None or lam is None:
        raise LiftError("representation is not projective; nothing to lift")
    M = field_order or 24 * rep.r
    c1 = solve_root(1 / kappa, 4, M)[0]
    M = lcm(M, c1.order)
    c2 = solve_root(1 / (c1 * lam), 3, M)[0]
    M = lcm(M, c2.order)
    lifted = LiftedRep(rep, c1.to_order(M).reduced(), c2.to_order(M).reduced(), M, kappa, lam)
    bad = [k for k, ok in lifted.honest_relations().items() if not ok]
    if bad:
        raise LiftError(f"lift failed post-hoc verification: {bad}")
    return lifted


# -- comparisons -------------------------------------------------------------


def proportionality(a: RepPair, b: RepPair):
    """(c, T_equal): c with a.S = c b.S exactly (None if no such c)."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    return a.S.ratio_to(b.S), a.T == b.T


def comparison_pair(r: int):
    """(restricted PSU(3), matching PSU(2)) -- the PSU(2) side is conjugated when r = 3 mod 4."""
    psu3 = build_restricted(r)
    psu2 = build_psu2(r) if r % 4 == 1 else build_psu2_conjugated(r)
    return psu3, psu2


def product_check(r: int) -> VerifyReport:
    """S_zeta S'_xi is a scalar matrix; for r = 1 mod 4 the scalar is r sqrt(r)."""
    check_prime(r)
    report = VerifyReport(prime=r)
    psu3, psu2 = comparison_pair(r)
    P = psu3.S @ psu2.S
    off = P.zero_mask()
    np.fill_diagonal(off, True)
    report.add("off-diagonal entries vanish", off.all(), int((~off).sum()), "(S S')_ij = 0 for i != j")
    scalar = P.scalar_value()
    report.add("product is scalar", scalar is not None, scalar)
    report.scalars["product_scalar"] = scalar
    if scalar is None:
        return report
    if r % 4 == 1:
        want = gauss_sqrt(r) * r
        report.add("diagonal = r sqrt(r)", scalar == want, scalar, "(S S')_ii = r sqrt(r)")
    else:
        import mpmath

        mod = abs(scalar.embed(120))
        err = float(abs(mod - mpmath.mpf(r) ** mpmath.mpf(1.5)))
        report.add("|diagonal| = r^(3/2)", err < FLOAT_TOL, err)
    return report


# -- parity ------------------------------------------------------------------


def charge_conjugation(r: int) -> SignedPerm:
    return symmetry_operator(r, "charge_conj")


def parity_bases(r: int):
    """Eigenbases of e_z -> e_{-z}: (+1: e_0 and e_z + e_-z, -1: e_z - e_-z)."""
    plus, minus = [{0: 1}], []
    seen = {0}
    for i in range(r * r):
        if i in seen:
            continue
        j = (-EisElem.from_index(r, i)).index()
        seen |= {i, j}
        plus.append({i: 1, j: 1})
        minus.append({i: 1, j: -1})
    return plus, minus


def parity_split(rep: RepPair):
    """
    Split the unfolded space into C = +-1 eigenspaces and verify that S and T
    map each eigenspace into itself.  Returns (plus, minus, report).
    """
    if rep.label != "unfolded":
        raise ValueError("parity_split needs the unfolded representation")
    r = rep.r
    C = charge_conjugation(r)
    plus, minus = parity_bases(r)
    report = VerifyReport(prime=r, parity_dims=(len(plus), len(minus)))
    report.add("dims sum to r^2", len(plus) + len(minus) == r * r, (len(plus), len(minus)))
    for name, vecs, sign in (("plus", plus, 1), ("minus", minus, -1)):
        # every basis vector is e_i +- e_j, so its image is a sum of two columns
        first = np.array([min(v) for v in vecs])
        second = np.array([max(v) for v in vecs])
        coef = np.array([v[max(v)] if len(v) == 2 else 0 for v in vecs])
        for gname, G in (("S", rep.S), ("T", rep.T)):
            img = CycMatrix(G.order, G.num[:, first] + coef[None, :, None] * G.num[:, second], G.den)
            # C acts on the image columns by permuting rows
            perm_img = _apply_perm_rows(C, img)
            report.add(f"{gname} preserves {name} space", perm_img == img * sign)
    report.add("minus space nonzero", len(minus) > 0, len(minus), "Z/2 action non-trivial on the torus")
    report.add("C commutes with S", C.commutes_with(rep.S))
    report.add("C commutes with T", C.commutes_with(rep.T))
    return plus, minus, report


def _apply_perm_rows(P: SignedPerm, M: CycMatrix) -> CycMatrix:
    out = np.zeros_like(M.num)
    out[P.perm] = M.num * P.signs[:, None, None]
    return CycMatrix(M.order, out, M.den)


def restricted_parity(r: int, data=None):
    """C-eigenvalue of each basis vector of V_r (None if not an eigenvector)."""
    data = data or build_symmetry_data(r)
    C = charge_conjugation(r)
    out = []
    for v in orbit_basis(r, restricted_kind(r), data).vectors:
        img = C.apply(v)
        if img == v:
            out.append(1)
        elif img == {k: -c for k, c in v.items()}:
            out.append(-1)
        else:
            out.append(None)
    return out


def parity_sign(r: int) -> int:
    return (-1) ** ((r + 1) // 6)


# -- commutant ---------------------------------------------------------------


def max_exact_dim() -> int:
    return int(os.environ.get("MODREP_MAX_EXACT_DIM", DEFAULT_MAX_EXACT))


def _mult_blocks(mat: CycMatrix):
    """For each entry x, the phi x phi integer matrix of y -> x*y in the power basis (times den)."""
    m = mat.order
    table = reduction_table(m).astype(object) if reduction_table(m).dtype == object else reduction_table(m)
    phi = table.shape[1]
    rows, cols = mat.shape
    flat = mat.num.reshape(rows * cols, m)
    # rolled[e, l, :] = coefficients of zeta^l * entry e
    idx = (np.arange(m)[None, :] - np.arange(phi)[:, None]) % m
    rolled = flat[:, idx]
    blocks = rolled @ table  # (entries, l, phi): row l = image of zeta^l
    return blocks.transpose(0, 2, 1).reshape(rows, cols, phi, phi), mat.den


def _t_blocks(T: CycMatrix):
    if not T.is_diagonal():
        return None
    canon = T.canonical()
    keys = [tuple(canon[i, i]) for i in range(T.shape[0])]
    return keys


def commutant_dim_exact(S: CycMatrix, T: CycMatrix) -> int:
    """dim of {M : MS = SM, MT = TM} over Q(zeta_m), via an exact rank over Q."""
    import flint

    m = lcm(S.order, T.order)
    S, T = S.to_order(m), T.to_order(m)
    d = S.shape[0]
    phi = euler_phi(m)
    keys = _t_blocks(T)
    if keys is not None:
        unknowns = [(i, j) for i in range(d) for j in range(d) if keys[i] == keys[j]]
        gens = [S]
    else:
        unknowns = [(i, j) for i in range(d) for j in range(d)]
        gens = [S, T]
    col_of = {u: n for n, u in enumerate(unknowns)}
    blocks_all = []
    for G in gens:
        blocks, den = _mult_blocks(G)
        blocks_all.append((G, blocks))
    nrows = len(gens) * d * d * phi
    A = np.zeros((nrows, len(unknowns) * phi), dtype=object)
    A[...] = 0
    row = 0
    for G, blocks in blocks_all:
        for p in range(d):
            for q in range(d):
                sl = slice(row, row + phi)
                # (MG)_pq = sum_k M_pk G_kq
                for k in range(d):
                    c = col_of.get((p, k))
                    if c is not None and G.num[k, q].any():
                        A[sl, c * phi:(c + 1) * phi] += blocks[k, q]
                    c = col_of.get((k, q))
                    if c is not None and G.num[p, k].any():
                        A[sl, c * phi:(c + 1) * phi] -= blocks[p, k]
                row += phi
    A = A[[i for i in range(nrows) if any(A[i])]] if nrows else A
    ncols = len(unknowns) * phi
    if A.shape[0] == 0:
        return ncols // phi
    rank = flint.fmpz_mat([[int(x) for x in r_] for r_ in A]).rank()
    nullity = ncols - rank
    assert nullity % phi == 0, "Q-nullity is not a multiple of the field degree"
    return nullity // phi


def _float_system(S: np.ndarray, T: np.ndarray):
    """Sparse matrix of M -> MG - GM on the unknowns allowed by a diagonal T."""
    import scipy.sparse as sp

    d = S.shape[0]
    tdiag = np.allclose(T, np.diag(np.diag(T)))
    if tdiag:
        t = np.diag(T)
        allowed = np.argwhere(np.abs(t[:, None] - t[None, :]) < 1e-8)
        gens = [S]
    else:
        allowed = np.argwhere(np.ones((d, d), dtype=bool))
        gens = [S, T]
    q = np.arange(d)
    blocks = []
    for G in gens:
        rows, cols, vals = [], [], []
        for c, (i, j) in enumerate(allowed):
            # M_ij contributes G_jq to (MG)_iq and -G_pi to (GM)_pj
            rows += [i * d + q, q * d + j]
            cols += [np.full(d, c)] * 2
            vals += [G[j, :], -G[:, i]]
        blocks.append(
            sp.csr_matrix(
                (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                shape=(d * d, len(allowed)),
            )
        )
    return sp.vstack(blocks).tocsr(), len(allowed)


def commutant_dim_float(S: np.ndarray, T: np.ndarray, tol: float = FLOAT_TOL, seed: int = 0) -> int:
    """
    Numeric commutant dimension: singular values below tol * largest count as
    zero.  Tall systems are first compressed by a Gaussian sketch, which keeps
    the rank and distorts singular values only by a bounded factor.
    """
    A, n = _float_system(S, T)
    if n == 0:
        return 0
    if A.shape[0] > 3 * n:
        rng = np.random.default_rng(seed)
        k = 2 * n
        R = (rng.standard_normal((k, A.shape[0])) + 1j * rng.standard_normal((k, A.shape[0]))) / np.sqrt(2 * k)
        A = np.asarray((A.T @ R.T).T)
    else:
        A = A.toarray()
    sv = np.linalg.svd(A, compute_uv=False)
    return int(n - np.sum(sv > tol * max(sv[0], 1.0)))


def commutant_dim(rep, mode: str = "exact", force: bool = False, max_exact: int | None = None) -> int:
    """
    Dimension of the commutant of (S, T).  Rescaling by lift constants does
    not change it, so a LiftedRep is analysed through its base pair.

    mode="exact" refuses when dim^2 exceeds the guard (MODREP_MAX_EXACT_DIM,
    default 4096) unless force=True; mode="float" uses the numeric rank.
    """
    base = rep.base if isinstance(rep, LiftedRep) else rep
    bound = max_exact if max_exact is not None else max_exact_dim()
    if mode == "exact":
        if base.dim**2 > bound and not force:
            raise ResourceGuardError(
                f"exact commutant refused: dim^2 = {base.dim**2} > {bound} (set MODREP_MAX_EXACT_DIM or force)"
            )
        return commutant_dim_exact(base.S, base.T)
    if mode != "float":
        raise ValueError(f"unknown mode {mode!r}")
    return commutant_dim_float(base.S.to_complex(), base.T.to_complex())


def commutant_report(rep, mode: str = "exact", force: bool = False) -> VerifyReport:
    base = rep.base if isinstance(rep, LiftedRep) else rep
    report = VerifyReport(prime=base.r)
    dim = commutant_dim(rep, mode=mode, force=force)
    report.commutant_dim = dim
    method = "exact" if mode == "exact" else f"float(tol={FLOAT_TOL:g})"
    report.add(f"commutant dim of {base.label} [{method}]", dim >= 1, {"dim": dim, "method": method})
    return report


# -- numeric invariant subspaces --------------------------------------------


def invariant_subspaces(S: np.ndarray, T: np.ndarray, tol: float = FLOAT_TOL, seed: int = 0):
    """
    Split C^d into (S, T)-invariant pieces numerically: take a random
    self-adjoint element of the commutant and return its eigenspaces, each
    with its invariance residual.  Assumes S, T unitary.
    """
    d = S.shape[0]
    ident = np.eye(d)
    A = np.vstack([np.kron(ident, S.T) - np.kron(S, ident), np.kron(ident, T.T) - np.kron(T, ident)])
    _, sv, vh = np.linalg.svd(A)
    null = vh[np.sum(sv > tol * max(sv[0], 1.0)):].conj()
    rng = np.random.default_rng(seed)
    X = (rng.standard_normal(len(null)) @ null).reshape(d, d)
    H = X + X.conj().T
    w, V = np.linalg.eigh(H)
    pieces = []
    start = 0
    for i in range(1, d + 1):
        if i == d or w[i] - w[i - 1] > 1e-6:
            Q = V[:, start:i]
            res = max(
                np.linalg.norm(G @ Q - Q @ (Q.conj().T @ G @ Q)) for G in (S, T)
            )
            pieces.append((Q, float(res)))
            start = i
    return pieces


def unitarity_residual(lifted: LiftedRep) -> float:
    S, T = lifted.S.to_complex(), lifted.T.to_complex()
    d = S.shape[0]
    return float(max(np.abs(S @ S.conj().T - np.eye(d)).max(), np.abs(np.abs(np.diag(T)) - 1).max()))


# -- Theorem: PSU(2) is a summand of PSU(3) ---------------------------------


def theorem2_verify(r: int, crosscheck: bool = True) -> VerifyReport:
    """
    Restricted PSU(3) vs PSU(2) (conjugated for r = 3 mod 4): equal T,
    proportional S, scalar product S S', honest lifts that coincide, and
    the parity sign (-1)^((r+1)/6) of the embedded space.
    """
    check_prime(r)
    report = VerifyReport(prime=r)
    data = build_symmetry_data(r)
    eps = parity_sign(r)
    report.scalars["epsilon"] = eps
    report.scalars["rho_norm"] = data.rho_norm
    psu3, psu2 = comparison_pair(r)

    c, t_equal = proportionality(psu3, psu2)
    report.add("T_zeta = T'_xi", t_equal, claim="T-matrices coincide")
    report.add("S_zeta proportional to S'_xi", c is not None, c, "S-matrices are proportional")
    report.proportionality_constant = c
    if c is not None and r % 4 == 1:
        report.add("c^2 = r", c * c == r, c * c)
    if c is not None:
        report.scalars["c^2"] = (c * c).reduced()

    report.extend(product_check(r), "product: ")

    rel3, rel2 = projective_relations(psu3), projective_relations(psu2)
    report.extend(rel3, "psu3: ")
    report.extend(rel2, "psu2: ")
    try:
        lift3 = lift(psu3, relations=rel3)
        lift2 = lift(psu2, relations=rel2)
    except LiftError as exc:
        report.add("lift", False, str(exc))
        return report
    report.add("lift psu3 honest", all(lift3.honest_relations().values()), (lift3.c1, lift3.c2))
    report.add("lift psu2 honest", all(lift2.honest_relations().values()), (lift2.c1, lift2.c2))
    report.scalars.update({"psu3 c1": lift3.c1, "psu3 c2": lift3.c2, "psu2 c1": lift2.c1, "psu2 c2": lift2.c2})

    if c is not None:
        # (c1 S, c2 T) = (c1 c S', c2 T'): the PSU(2) pair lifted by (c1 c, c2) is the same honest rep
        same = LiftedRep(psu2, (lift3.c1 * c).reduced(), lift3.c2, lift3.field_order)
        report.add(
            "lifted reps coincide",
            t_equal and lift3.S == same.S and all(same.honest_relations().values()),
            claim="PSU(2) lift is a summand of the PSU(3) lift",
        )
        report.scalars["psu2 c1 relative to induced"] = (lift2.c1 / same.c1).reduced()
        report.scalars["psu2 c2 relative to induced"] = (lift2.c2 / same.c2).reduced()
    res = unitarity_residual(lift3)
    report.add("lifted S unitary (numeric)", res < FLOAT_TOL, res)

    par = restricted_parity(r, data)
    report.add(
        "V_r in parity eigenspace epsilon",
        all(p == eps for p in par),
        {"epsilon": eps, "observed": sorted(set(par), key=str)},
        "C acts on V_r by (-1)^((r+1)/6)",
    )
    if crosscheck:
        cc = restriction_crosscheck(r, data)
        report.add("V_r invariant (zero leakage)", cc["leakage_zero"], cc["leakage_entries"])
        report.add("closed form = projected S", cc["agrees_with_closed_form"], cc["normalization_factor"])
    return report
