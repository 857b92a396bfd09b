
import pytest
from hypothesis import given
from hypothesis import strategies as st

from modrep.charsums import (
    alpha,
    alpha_beta_identity,
    beta,
    degree2_closed,
    degree2_direct,
    degree2_sum,
    gauss_identity,
    identity_suite,
    jacobsthal_identity,
    s_closed,
    s_direct,
    s_value,
    square_identity,
)
from modrep.cyclotomic import CycNum, gauss_sqrt, is_prime, root_power

ODD_PRIMES = [p for p in range(3, 50) if is_prime(p)]


def z(k, r=5):
    return root_power(r, k)


def test_gauss_examples():
    lhs, rhs, ok = gauss_identity(5, 0)
    assert lhs == 0 and rhs == 0 and ok
    assert gauss_identity(5, 1).lhs == gauss_sqrt(5)
    assert gauss_identity(5, 2).lhs == -gauss_sqrt(5)


def test_degree2_examples():
    assert degree2_sum(5, 1, 1, 1) == -1
    assert degree2_sum(5, 1, 2, 1) == 4
    assert degree2_sum(5, 2, 0, 0) == -4
    assert degree2_closed(5, 0, 1, 1) is None


def test_square_examples():
    assert tuple(square_identity(5, [1])) == (0, 0, True)
    res = square_identity(5, [0, 1])
    assert res.lhs == 4 and res.rhs == 4
    assert square_identity(5, [3, 1]).equal


def test_jacobsthal_examples():
    assert tuple(jacobsthal_identity(5, 0, 0)) == (0, 0, True)
    assert jacobsthal_identity(5, 1, 1).equal
    assert all(jacobsthal_identity(5, a, b).equal for a in range(5) for b in range(5))


def test_s_value_r5():
    direct = z(2) - z(1) + z(4) - z(3) + z(4) - z(1)
    assert s_direct(5) == direct
    assert s_value(5).equal
    assert s_direct(5).conj() == -s_direct(5)


@pytest.mark.parametrize("r", [5, 11, 17, 23, 29, 41, 47])
def test_s_value(r):
    s = s_direct(r)
    assert s == s_closed(r)
    assert s.conj() == (-s if r % 4 == 1 else s)


def test_alpha_beta_examples():
    assert alpha_beta_identity(5, 1, 2).equal
    assert alpha_beta_identity(11, 1, 3).equal
    with pytest.raises(ValueError):
        alpha_beta_identity(5, 1, 1)
    with pytest.raises(ValueError):
        alpha_beta_identity(5, 1, 3)


@pytest.mark.parametrize("r", [5, 11, 17])
def test_alpha_beta_agree_at_zero(r):
    half = (r - 1) // 2
    for i in range(1, half + 1):
        for j in range(1, half + 1):
            assert alpha(r, i, j, 0) == beta(r, i, j, 0)


@pytest.mark.parametrize("r", ODD_PRIMES)
def test_identity_suite(r):
    for name, (ok, n) in identity_suite(r).items():
        assert ok, (name, n)


@pytest.mark.parametrize("r", [5, 7, 11])
def test_degree2_branches_partition(r):
    for a in range(1, r):
        for b in range(r):
            for c in range(r):
                closed = degree2_closed(r, a, b, c)
                degenerate = (b * b - 4 * a * c) % r == 0
                assert abs(closed) == (r - 1 if degenerate else 1)


@given(st.sampled_from(ODD_PRIMES), st.lists(st.integers(0, 100), min_size=1, max_size=6))
def test_square_identity_random(r, f):
    assert square_identity(r, [c % r for c in f]).equal


@given(st.sampled_from(ODD_PRIMES), st.integers(), st.integers(), st.integers())
def test_degree2_random(r, a, b, c):
    if a % r:
        assert degree2_direct(r, a, b, c) == degree2_closed(r, a, b, c)


def test_identity_result_shows_both_sides():
    res = gauss_identity(7, 3)
    assert isinstance(res.lhs, CycNum) and isinstance(res.rhs, CycNum)
    lhs, rhs, ok = res
    assert ok and lhs == rhs
