import numpy as np
import pytest

from modrep.cyclotomic import CycNum, root_power
from modrep.eisenstein import EisElem, UnsupportedPrime, build_symmetry_data
from modrep.matrix import CycMatrix
from modrep.psu2 import build_psu2
from modrep.weil import (
    all_symmetry_operators,
    build_restricted,
    build_unfolded,
    orbit_basis,
    restriction_crosscheck,
    symmetry_operator,
    unit_orbit_sum,
    weyl_orbit_sum,
)


def z(k, r=5):
    return root_power(r, k)


@pytest.fixture(scope="module")
def unfolded5():
    return build_unfolded(5)


def idx(r, a, b):
    return EisElem(r, a, b).index()


def test_unfolded_examples(unfolded5):
    U = unfolded5
    assert U.dim == 25
    assert all(U.S[0, j] == 1 for j in range(25))
    assert U.T[idx(5, 1, 0), idx(5, 1, 0)] == z(-1)
    assert U.T[idx(5, 0, 1), idx(5, 0, 1)] == z(-1)
    assert U.S @ U.S.conj() == CycMatrix.identity(5, 25) * 25


def test_unfolded_rejects_split_primes():
    with pytest.raises(UnsupportedPrime):
        build_unfolded(7)


def test_S_squared_is_charge_conjugation(unfolded5):
    C = symmetry_operator(5, "charge_conj").to_matrix(5)
    assert unfolded5.S @ unfolded5.S == C * 25


def test_symmetry_operator_orders():
    C = symmetry_operator(5, "charge_conj")
    assert (C @ C).is_identity()
    for r in (5, 11):
        u = symmetry_operator(r, "unit_u")
        assert (u ** (r + 1)).is_identity()
        assert not (u ** ((r + 1) // 2)).is_identity() or r + 1 == 2


@pytest.mark.parametrize("r", [5, 11])
def test_symmetries_commute(r):
    U = build_unfolded(r)
    for name, op in all_symmetry_operators(r).items():
        assert op.commutes_with(U.S), name
        assert op.commutes_with(U.T), name


def test_orbit_basis_examples():
    r, d = 5, build_symmetry_data(5)
    u = d.u
    one = EisElem.one(r)
    want = {}
    for j in range(6):
        want[(u**j * one).index()] = want.get((u**j * one).index(), 0) + (-1) ** j
    assert orbit_basis(r, "plus").vectors[0] == want
    # for n = 1 the Weyl orbit of e_1 is the U-orbit
    assert orbit_basis(r, "plus_o").vectors[0] == unit_orbit_sum(one, d)
    assert len(orbit_basis(r, "plus_o").vectors[0]) == 6


@pytest.mark.parametrize("r", [5, 17, 29])
def test_minus_o_top_index_vanishes(r):
    d = build_symmetry_data(r)
    for a in range(1, (r - 1) // 2 + 1):
        assert weyl_orbit_sum(EisElem(r, a, 0) * d.rho * d.u_power(d.n)) == {}
    b = orbit_basis(r, "minus_o", d)
    assert {lab[1] for lab in b.dropped} == {d.n}


@pytest.mark.parametrize("r", [5, 17, 29])
def test_plus_expansion_in_weyl_orbits(r):
    d = build_symmetry_data(r)
    plus = orbit_basis(r, "plus", d)
    plus_o = orbit_basis(r, "plus_o", d)
    for a, vec in enumerate(plus.vectors, start=1):
        acc = {}
        for (aa, j), w in zip(plus_o.index_labels, plus_o.vectors):
            if aa == a:
                for k, c in w.items():
                    acc[k] = acc.get(k, 0) + c
        assert {k: c for k, c in acc.items() if c} == vec


def test_orbit_basis_kind_checks():
    with pytest.raises(ValueError):
        orbit_basis(11, "plus_o")
    with pytest.raises(ValueError):
        orbit_basis(5, "minus_e")
    with pytest.raises(ValueError):
        orbit_basis(5, "bogus")


def test_restricted_r5():
    R = build_restricted(5)
    assert R.dim == 2
    assert R.T == CycMatrix.from_entries([[z(-1), 0], [0, z(-4)]])
    assert R.S[0, 0] == z(2) - z(3) - 2 * z(1) + 2 * z(4)


@pytest.mark.parametrize("r", [5, 17, 29])
def test_restricted_symmetry_r1mod4(r):
    S = build_restricted(r).S
    assert S == S.T
    assert S == -S.conj()


@pytest.mark.parametrize("r", [5, 11, 17, 23])
def test_restricted_T_matches_psu2(r):
    T2 = build_psu2(r).T
    assert build_restricted(r).T == (T2 if r % 4 == 1 else T2.conj())


@pytest.mark.parametrize("r", [5, 11])
def test_crosscheck(r):
    cc = restriction_crosscheck(r)
    assert cc["leakage_zero"] and cc["leakage_entries"] == 0
    assert cc["agrees_with_closed_form"]
    assert cc["normalization_factor"] == 1
    assert cc["T_eigen_ok"]


@pytest.mark.parametrize("r", [5, 11, 17, 23])
def test_charge_conjugation_on_V(r):
    d = build_symmetry_data(r)
    C = symmetry_operator(r, "charge_conj")
    eps = (-1) ** ((r + 1) // 6)
    kind = "plus" if r % 4 == 1 else "minus"
    for v in orbit_basis(r, kind, d).vectors:
        assert C.apply(v) == {k: eps * c for k, c in v.items()}


def test_T_eigenvectors_r5():
    U = build_unfolded(5)
    for a, v in enumerate(orbit_basis(5, "plus").vectors, start=1):
        col = np.zeros((25, 1, 5), dtype=np.int64)
        for k, c in v.items():
            col[k, 0, 0] = c
        vec = CycMatrix(5, col)
        assert U.T @ vec == vec * CycNum(5, {-a * a: 1})
