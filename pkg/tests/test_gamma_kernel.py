import cmath
import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammatype.errors import DomainError
from gammatype.gamma_kernel import (
    as_exact,
    digamma,
    gauss_multiplication_expand,
    log_gamma,
    log_gamma_complex,
    reflection_product,
    rgamma,
    rising_factorial,
)

EULER = 0.5772156649015329


@pytest.mark.parametrize("x, expected", [(1.0, 0.0), (5.0, math.log(24.0)), (0.5, 0.5 * math.log(math.pi))])
def test_log_gamma_values(x, expected):
    assert log_gamma(x) == pytest.approx(expected, rel=1e-13, abs=1e-15)


@pytest.mark.parametrize("x", [1e-6, 3e-3, 0.7, 2.5, 17.3, 1234.5, 1e6])
def test_log_gamma_against_mpmath(x):
    ref = float(mp.loggamma(mp.mpf(x)))
    assert log_gamma(x) == pytest.approx(ref, rel=1e-13, abs=1e-15)


@pytest.mark.parametrize("x", [0.0, -1.0, -2.5])
def test_log_gamma_rejects_nonpositive(x):
    with pytest.raises(DomainError):
        log_gamma(x)


def test_log_gamma_recurrence():
    for x in np.arange(1, 501) / 10:
        assert abs(log_gamma(x + 1) - log_gamma(x) - math.log(x)) <= 1e-12


def test_reflection_identity_grid():
    for x in np.linspace(0.01, 0.99, 99):
        lhs = log_gamma(x) + log_gamma(1 - x)
        assert abs(lhs - math.log(math.pi / math.sin(math.pi * x))) <= 1e-11


def test_duplication_formula():
    for x in np.linspace(0.05, 20, 200):
        lhs = log_gamma(0.5) + log_gamma(2 * x)
        rhs = (2 * x - 1) * math.log(2) + log_gamma(x) + log_gamma(x + 0.5)
        assert abs(math.expm1(lhs - rhs)) <= 1e-11


def test_complex_log_gamma_examples():
    assert abs(log_gamma_complex(1 + 0j)) < 1e-14
    assert log_gamma_complex(0.5 + 0j) == pytest.approx(0.5 * math.log(math.pi), abs=1e-14)
    mod2 = abs(cmath.exp(log_gamma_complex(1j))) ** 2
    assert mod2 == pytest.approx(math.pi / math.sinh(math.pi), rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(-30, 30), st.floats(-60, 60))
def test_complex_log_gamma_matches_mpmath(re, im):
    z = complex(re, im)
    if abs(z - round(re)) < 1e-3 and re <= 0.5:
        return
    got = cmath.exp(log_gamma_complex(z))
    ref = complex(mp.gamma(mp.mpc(re, im)))
    assert abs(got - ref) <= 1e-10 * abs(ref)


def test_complex_log_gamma_is_principal():
    # principal branch equals mpmath's loggamma including the imaginary part
    for z in (3 + 40j, -2.5 + 0.3j, 0.1 - 7j, -8.7 - 2j):
        assert abs(log_gamma_complex(z) - complex(mp.loggamma(z))) < 1e-10


def test_complex_pole_guard():
    with pytest.raises(DomainError):
        log_gamma_complex(-3 + 0j)


@pytest.mark.parametrize("x, expected", [
    (1.0, -EULER), (2.0, 1 - EULER), (0.5, -EULER - 2 * math.log(2)),
])
def test_digamma_values(x, expected):
    assert digamma(x) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("x", [1e-4, 0.3, 3.7, 45.0, 1e5])
def test_digamma_against_mpmath(x):
    assert abs(digamma(x) - float(mp.digamma(x))) <= 1e-12 * max(1.0, abs(float(mp.digamma(x))))


def test_digamma_rejects_nonpositive():
    with pytest.raises(DomainError):
        digamma(0.0)


@pytest.mark.parametrize("s, expected", [
    (0.5, math.pi), (1 / 3, 2 * math.pi / math.sqrt(3)), (0.25, math.pi * math.sqrt(2)),
])
def test_reflection_product(s, expected):
    assert reflection_product(s) == pytest.approx(expected, rel=1e-13)


def test_reflection_product_agrees_with_log_gamma():
    s = 0.25
    assert reflection_product(s) == pytest.approx(math.exp(log_gamma(s) + log_gamma(1 - s)), rel=1e-13)


@pytest.mark.parametrize("s", [0, 1, -3, 7.0])
def test_reflection_product_rejects_integers(s):
    with pytest.raises(DomainError):
        reflection_product(s)


def test_rgamma_poles_and_values():
    assert rgamma(0.0) == 0.0
    assert rgamma(-4.0) == 0.0
    assert rgamma(-0.5) == pytest.approx(1 / float(mp.gamma(-0.5)), rel=1e-14)
    assert rgamma(6.0) == pytest.approx(1 / 120, rel=1e-15)


def test_gauss_identity_m1():
    g = gauss_multiplication_expand(1, 1)
    assert g.offsets == (Fraction(1),)
    assert g.ratio == 1
    assert g.scale == pytest.approx(1.0)


def _exact_gauss_check(m, a, n_max=10):
    """``Gamma(m n + a) / Gamma(a) = m^(m n) prod_i (o_i)_n`` in rationals."""
    g = gauss_multiplication_expand(m, a)
    for n in range(n_max + 1):
        lhs = rising_factorial(Fraction(a), m * n)
        rhs = Fraction(g.ratio) ** n
        for o in g.offsets:
            rhs *= rising_factorial(o, n)
        assert lhs == rhs


@pytest.mark.parametrize("m, a", [(2, 1), (3, 1), (4, Fraction(3, 2)), (5, Fraction(2, 7)), (6, 1)])
def test_gauss_expansion_exact(m, a):
    _exact_gauss_check(m, a)


def test_gauss_expansion_examples():
    g2 = gauss_multiplication_expand(2, 1)
    assert g2.ratio == 4 and g2.offsets == (Fraction(1, 2), Fraction(1))
    g3 = gauss_multiplication_expand(3, 1)
    assert g3.ratio == 27 and g3.offsets == (Fraction(1, 3), Fraction(2, 3), Fraction(1))


@pytest.mark.parametrize("m, a", [(2, 0.3), (3, 1.7), (7, 0.05)])
def test_gauss_recombination_real_points(m, a):
    g = gauss_multiplication_expand(m, a)
    for x in (0.1, 0.9, 2.3, 5.0, 11.7):
        assert math.exp(g.log_value(x) - math.lgamma(m * x + a)) == pytest.approx(1.0, rel=1e-10)


def test_gauss_rejects_bad_m():
    for m in (0, -2, 1.5):
        with pytest.raises(DomainError):
            gauss_multiplication_expand(m, 1)


def test_as_exact():
    assert as_exact("3/4") == Fraction(3, 4)
    assert as_exact(2) == Fraction(2)
    assert isinstance(as_exact(0.1), float)
