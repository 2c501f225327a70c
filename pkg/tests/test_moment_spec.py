import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammatype.classifier import classify_X
from gammatype.divisibility import unit_slope_normalize
from gammatype.errors import ConstructionError, DenominatorPoleWarning, DomainError
from gammatype.moment_spec import (
    PRESETS,
    GammaTypeSpec,
    JansonResult,
    char_fn_eval,
    gamma_delta,
    invert,
    janson_check,
    make_spec,
    mellin_eval,
    mellin_identity_check,
    power,
    preset,
    product,
    spec_beta,
    spec_bosch,
    spec_gamma,
    spec_half_cauchy,
    spec_X,
    strip,
    support_upper,
)

F = Fraction


def test_gamma_spec_moments():
    s = spec_gamma(F(5, 2))
    for x in (-2.0, -0.3, 0.0, 1.7, 6.0):
        assert mellin_eval(s, x) == pytest.approx(math.gamma(2.5 + x) / math.gamma(2.5), rel=1e-13)


def test_beta_spec_moments():
    a, b = 1.5, 2.25
    s = spec_beta(a, b)
    for x in (-1.0, 0.5, 3.0):
        ref = math.gamma(a + x) * math.gamma(a + b) / (math.gamma(a) * math.gamma(a + b + x))
        assert mellin_eval(s, x) == pytest.approx(ref, rel=1e-13)


def test_strips():
    assert strip(spec_gamma(3)) == (-3, math.inf)
    assert strip(spec_X(F(1, 2), F(3, 4), 2, 1)) == (F(-1, 2), F(3, 4))
    assert strip(spec_beta(2, 1)) == (-2, math.inf)


def test_normalization_examples():
    assert mellin_eval(spec_X(1, 1, 1, 1), 0.0) == 1.0
    assert mellin_eval(spec_X(1, 1, 1, 1), 0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert mellin_eval(spec_half_cauchy(2), 0.0) == pytest.approx(1.0, abs=1e-14)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.floats(0.1, 4), st.floats(0.1, 5)), min_size=1, max_size=4),
       st.lists(st.tuples(st.floats(0.1, 4), st.floats(0.1, 5)), max_size=4),
       st.floats(0.1, 10))
def test_normalization_property(num, den, D):
    s = make_spec(num, den, D=D)
    assert mellin_eval(s, 0.0) == pytest.approx(1.0, abs=1e-13)


def test_construction_errors():
    with pytest.raises(ConstructionError):
        make_spec([(0, 1)])
    with pytest.raises(ConstructionError):
        make_spec([(1, -1)])
    with pytest.raises(ConstructionError):
        make_spec([(1, 1)], D=-2)
    with pytest.raises(ConstructionError):
        make_spec([(1, 1)], C=3.0)


def test_outside_strip():
    with pytest.raises(DomainError):
        mellin_eval(spec_X(1, 1, 1, 1), 1.0)


def test_denominator_pole_returns_zero():
    s = spec_X(1, 1, 1, 2)  # Gamma(1 + 2s) has a pole at s = -1/2
    with pytest.warns(DenominatorPoleWarning):
        assert mellin_eval(s, -0.5) == 0.0


def test_gamma_delta_examples():
    assert gamma_delta(spec_X(F(1, 2), F(1, 2), 1, 2)) == type(gamma_delta(spec_gamma(1)))(F(0), F(-1, 2))
    g = gamma_delta(spec_gamma(F(7, 3)))
    assert (g.gamma, g.delta) == (1, F(7, 3) - F(1, 2))
    g = gamma_delta(spec_beta(F(2), F(5, 4)))
    assert (g.gamma, g.delta) == (0, F(-5, 4))


@settings(max_examples=200, deadline=None)
@given(*(st.fractions(F(1, 10), F(5), max_denominator=50) for _ in range(4)))
def test_gamma_delta_closed_form_for_X(a, b, c, d):
    g = gamma_delta(spec_X(a, b, c, d))
    assert g.gamma == 2 - d and g.delta == a + b - c - F(1, 2)


def test_janson_examples():
    assert janson_check(spec_X(1, 1, 1, 3)) is JansonResult.FAIL
    assert janson_check(spec_beta(2, 3)) is JansonResult.PASS
    assert janson_check(spec_X(1, 1, 1, 2)) is JansonResult.FAIL


def test_support_upper():
    assert support_upper(spec_beta(2, 3)) == 1
    assert support_upper(preset("mu1")) == 4
    assert support_upper(preset("mu2")) == 108
    assert support_upper(spec_gamma(1)) is None


def test_char_fn_basics():
    s = spec_gamma(1)
    assert char_fn_eval(s, 0.0) == pytest.approx(1 + 0j, abs=1e-13)
    for t in np.linspace(-20, 20, 81):
        assert abs(char_fn_eval(s, t)) <= 1 + 1e-13


@pytest.mark.parametrize("spec", [spec_gamma(F(3, 2)), spec_X(F(1, 2), F(3, 2), 1, F(3, 2)), spec_beta(2, 3)])
def test_char_fn_decay_ratio(spec):
    g = gamma_delta(spec)
    predicted = (50 / 40) ** float(g.delta) * math.exp(-math.pi * float(g.gamma) * 10 / 2)
    observed = abs(char_fn_eval(spec, 50.0)) / abs(char_fn_eval(spec, 40.0))
    assert observed == pytest.approx(predicted, rel=0.05)


def test_invert_X():
    a, b, c, d = F(1, 3), F(2, 5), F(3, 2), F(1, 2)
    assert invert(spec_X(a, b, c, d)) == spec_X(b, a, c, -d)


def test_power_identity_and_roundtrip():
    s = spec_X(F(1, 2), F(1, 3), 2, F(3, 4))
    assert power(s, 1) == s
    assert mellin_identity_check(power(power(s, F(7, 3)), F(3, 7)), s) <= 1e-12
    assert mellin_identity_check(power(power(s, 2.7), 1 / 2.7), s) <= 1e-12


def test_half_cauchy_as_product():
    alpha = F(5, 2)
    lhs = spec_half_cauchy(alpha)
    rhs = product(power(spec_gamma(1 / alpha), 1 / alpha), power(spec_gamma(1 - 1 / alpha), -1 / alpha))
    assert mellin_identity_check(lhs, rhs) <= 1e-10


def test_bosch_identity():
    t = F(2, 5)
    lhs = spec_bosch(F(1, 2), t)
    rhs = power(spec_X(F(1, 2), F(1, 2), t, 2 * t), 1 / (2 * t))
    assert mellin_identity_check(lhs, rhs) <= 1e-10


def test_beta_factorization_identity():
    a, b, c, d = F(3, 10), F(2, 5), F(2), F(3, 2)
    rhs = product(spec_X(a, 1 - a, c, d), invert(spec_beta(b, 1 - a - b)))
    assert mellin_identity_check(spec_X(a, b, c, d), rhs) <= 1e-10


def test_identity_check_self_and_difference():
    s = spec_X(1, 2, 3, 1)
    assert mellin_identity_check(s, s) == 0.0
    assert mellin_identity_check(s, spec_X(1, 2, 3, F(11, 10))) > 1e-3


def test_gamma_delta_invariant_under_gauss_rewriting():
    for name in PRESETS:
        s = preset(name)
        assert gamma_delta(unit_slope_normalize(s)) == gamma_delta(s)


def _second_differences(spec, grid):
    v = [math.log(mellin_eval(spec, s)) for s in grid]
    h = grid[1] - grid[0]
    return [(v[i - 1] - 2 * v[i] + v[i + 1]) / h**2 for i in range(1, len(v) - 1)]


def test_log_convex_when_existing():
    rng = np.random.default_rng(3)
    checked = 0
    while checked < 30:
        a, b, c = rng.uniform(0.2, 3, 3)
        d = rng.uniform(0.2, 2)
        if not classify_X(a, b, c, d).is_yes:
            continue
        s = spec_X(a, b, c, d)
        grid = np.linspace(-a + 0.05 * (a + b), b - 0.05 * (a + b), 41)
        assert min(_second_differences(s, grid)) >= -1e-9
        checked += 1


def test_second_derivative_negative_near_denominator_zero():
    a, b, c, d = 1.0, 1.0, 0.5, 1.0  # c < a d, so -c/d lies inside (-a, b)
    s0 = -c / d
    grid = np.array([s0 + 1e-3, s0 + 2e-3, s0 + 3e-3])
    assert _second_differences(spec_X(a, b, c, d), grid)[0] < 0


def test_json_roundtrip():
    for s in (spec_X(F(1, 2), F(1, 3), 2, F(3, 4)), preset("mu5"), spec_gamma(0.7)):
        back = GammaTypeSpec.from_json(json.loads(json.dumps(s.to_json())))
        assert back == s
