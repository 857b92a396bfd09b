import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import cyc_triples, cycnums
from modrep.cyclotomic import (
    CycNum,
    cyclotomic_poly,
    embed,
    euler_phi,
    galois,
    gauss_sqrt,
    is_prime,
    legendre,
    root_power,
    sqrt_rational,
)

ODD_PRIMES = [p for p in range(3, 50) if is_prime(p)]


def z5(k):
    return root_power(5, k)


def test_root_power_examples():
    assert root_power(5, 0) == 1
    assert root_power(5, 7) == z5(2)
    assert sum((z5(k) for k in range(5)), CycNum(5)) == 0


def test_galois_examples():
    real = z5(1) + z5(4)
    assert galois(real, -1) == real
    assert galois(z5(1), 2) == z5(2)


def test_galois_rejects_non_units():
    with pytest.raises(ValueError):
        galois(z5(1), 5)


def test_embed_examples():
    assert complex(embed(CycNum.rational(1))) == 1 + 0j
    assert abs(complex(z5(1) + z5(-1)) - 2 * math.cos(2 * math.pi / 5)) < 1e-15
    assert abs(complex(z5(1) + z5(-1)).real - 0.6180339887) < 1e-10
    assert abs(complex(gauss_sqrt(5)) ** 2 - 5) < 1e-12
    assert abs(complex(gauss_sqrt(5)) - 2.2360679) < 1e-7


def test_gauss_sqrt_squares():
    assert gauss_sqrt(5) ** 2 == 5
    assert gauss_sqrt(7) ** 2 == -7


@pytest.mark.parametrize("r", ODD_PRIMES)
def test_gauss_sqrt_square_all_small_primes(r):
    assert gauss_sqrt(r) * gauss_sqrt(r) - legendre(-1, r) * r == 0


@pytest.mark.parametrize("bad", [1, 2, 9, 15])
def test_gauss_sqrt_rejects(bad):
    with pytest.raises(ValueError):
        gauss_sqrt(bad)


def test_cyclotomic_poly_small():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert [euler_phi(m) for m in (1, 5, 12, 120)] == [1, 4, 4, 32]


@pytest.mark.parametrize("q", [2, 3, 5, -1, -3, Fraction(1, 5), Fraction(-7, 4)])
def test_sqrt_rational(q):
    order = 24 * 35
    root = sqrt_rational(q, order)
    assert root * root == q


def test_mixed_order_arithmetic():
    i = root_power(4, 1)
    w = root_power(3, 1)
    x = i * w
    assert x.order == 12
    assert x == root_power(12, 7)


def test_to_order_and_reduced_preserve_value():
    x = CycNum(5, {0: 3, 1: -1, 4: Fraction(1, 2)})
    assert x.to_order(40) == x
    assert x.reduced() == x
    assert len(x.reduced().terms) <= euler_phi(5)


def test_inverse_exact():
    x = CycNum(15, {0: 2, 3: -1, 7: Fraction(3, 2)})
    assert x * x.inverse() == 1
    with pytest.raises(ZeroDivisionError):
        CycNum(5, {k: 1 for k in range(5)}).inverse()


def test_rational_value():
    s = sum((z5(k) for k in range(1, 5)), CycNum(5))
    assert s.rational_value() == -1
    assert z5(1).rational_value() is None


# -- property tests (100 cases each) -----------------------------------------


@given(cyc_triples())
def test_ring_laws(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(cycnums(), cycnums(), st.sampled_from([1, 7, 11, 13, 17, 19, 23]))
def test_galois_is_multiplicative(x, y, t):
    m = math.lcm(x.order, y.order)
    if math.gcd(t, m) != 1:
        t = 1
    assert galois(x * y, t) == galois(x, t) * galois(y, t)
    assert galois(x + y, t) == galois(x, t) + galois(y, t)
    assert galois(x, 1) == x


@given(cycnums(order=20))
def test_galois_composition(x):
    assert galois(galois(x, 3), 7) == galois(x, 21)
    assert galois(galois(x, 3), 7) == galois(x, 1)


@given(cycnums())
def test_conjugation_is_an_involution(x):
    assert x.conj().conj() == x
    n = x * x.conj()
    assert abs(complex(n).imag) < 1e-9


@given(cycnums())
def test_zero_test_matches_embedding(x):
    y = x - x.galois(1) + x * 0
    assert y.is_zero()
    mag = abs(embed(x, 200))
    assert x.is_zero() == (mag < mpmath.mpf(2) ** -100)


@given(cycnums())
def test_json_round_trip(x):
    assert CycNum.from_json(x.to_json()) == x
    assert CycNum.from_json(x.to_json()).terms == x.terms


@given(cycnums())
def test_inverse_property(x):
    if x.is_zero():
        return
    assert x * x.inverse() == 1
