import math

import numpy as np
import pytest

from extgevrey import (
    DivergenceError,
    DomainError,
    SequenceParams,
    biconjugate,
    bmt_log_power,
    bmt_quotient,
    check_weight_axioms,
    conjugate_table,
    corollary_weight,
    custom_weight,
    integral_closed_form_check,
    lambert_weight,
    log_composition,
    phi_sigma,
    phi_weight,
    power_weight,
    young_conjugate,
)

# frozen 40-digit reference values
PHI_REFERENCE = [
    (2.0, 1.0, 1.7632228343518967102),
    (2.0, math.e, 7.3890560989306496378),
    (3.0, 10.0, 23.935174044462140715),
    (1.5, 5.0, 71.01472450390723431),
]

CONJ_REFERENCE = [
    # sigma, y, phi*, t*
    (2.0, 4.0, 3.4874871833997304736, 2.6301609750761840191),
    (2.0, 10.0, 43.019805129345871855, 10.986397638634316626),
    (3.0, 5.0, 46.582523204616983776, 35.110131286230601151),
]


@pytest.mark.parametrize("sigma,t,expected", PHI_REFERENCE)
def test_phi_sigma_reference(sigma, t, expected):
    assert phi_sigma(sigma, t) == pytest.approx(expected, rel=1e-14)


def test_phi_sigma_vanishes_continuously_at_zero():
    assert phi_sigma(2.0, 0.0) == 0.0
    t = np.logspace(-12, -6, 20)
    vals = phi_sigma(2.0, t)
    np.testing.assert_allclose(vals, t, rtol=1e-5)


def test_phi_sigma_domain():
    with pytest.raises(DomainError):
        phi_sigma(1.0, 2.0)
    with pytest.raises(DomainError):
        phi_sigma(2.0, -1.0)


@pytest.mark.parametrize("sigma,y,star,t_star", CONJ_REFERENCE)
def test_young_conjugate_reference(sigma, y, star, t_star):
    val, ts = young_conjugate(lambda t: phi_sigma(sigma, t), y)
    assert val == pytest.approx(star, rel=1e-8)
    assert ts == pytest.approx(t_star, rel=1e-4)


def test_quadratic_is_self_conjugate():
    phi = lambda t: 0.5 * t * t
    for y in (0.5, 1.0, 3.0, 10.0):
        val, ts = young_conjugate(phi, y)
        assert val == pytest.approx(0.5 * y * y, rel=1e-9)
        assert ts == pytest.approx(y, rel=1e-5)


def test_conjugate_of_linear_diverges():
    with pytest.raises(DivergenceError):
        young_conjugate(lambda t: t, 2.0, t_cap=1e6)


def test_conjugate_table_is_monotone_and_convex():
    phi = lambda t: phi_sigma(2.0, t)
    y = np.linspace(0.0, 50.0, 200)
    tab = conjugate_table(phi, y)
    assert np.all(np.diff(tab.phi_star) >= -1e-9)
    assert np.all(np.diff(tab.t_star) >= -1e-6)
    d2 = np.diff(tab.phi_star, 2)
    assert np.all(d2 >= -1e-6)
    # interpolation-free lookup at a node and a fresh evaluation off-node
    assert tab(float(y[37])) == tab.phi_star[37]
    val, _ = young_conjugate(phi, 12.34)
    assert tab(12.34) == pytest.approx(val, rel=1e-8)


@pytest.mark.parametrize("sigma", [1.5, 2.0, 3.0])
def test_fenchel_young_inequality(sigma):
    phi = lambda t: phi_sigma(sigma, t)
    t = np.linspace(0.0, 40.0, 100)
    y = np.linspace(0.0, 30.0, 100)
    tab = conjugate_table(phi, y)
    phi_t = phi_sigma(sigma, t)
    lhs = np.outer(y, t)
    rhs = phi_t[None, :] + tab.phi_star[:, None]
    assert np.all(lhs <= rhs + 1e-8)


@pytest.mark.parametrize("sigma", [1.5, 2.0, 3.0])
def test_biconjugate_recovers_phi(sigma):
    phi = lambda t: phi_sigma(sigma, t)
    for t in (0.5, 2.0, 9.0, 27.0):
        val = biconjugate(phi, t)
        assert val == pytest.approx(phi(t), rel=1e-6, abs=1e-6)


def test_weights_are_even_and_zero_at_origin():
    for w in (bmt_log_power(2.0), bmt_quotient(2.0), power_weight(0.5),
              corollary_weight(2.0), phi_weight(2.0), lambert_weight()):
        assert w(0.0) == pytest.approx(0.0, abs=1e-12)
        assert w(-5.0) == w(5.0)


def test_log_composition():
    phi = log_composition(power_weight(1.0))
    assert phi(2.0) == pytest.approx(math.exp(2.0))


def test_axiom_classification():
    assert check_weight_axioms(bmt_log_power(2.0)).passed
    assert check_weight_axioms(bmt_quotient(2.0)).passed
    rep = check_weight_axioms(lambert_weight())
    assert (rep.alpha, rep.beta, rep.gamma, rep.delta) == (True, True, False, True)
    assert check_weight_axioms(power_weight(0.5)).passed
    assert check_weight_axioms(power_weight(1.0)).passed
    rep = check_weight_axioms(power_weight(1.5))
    assert not rep.beta and not rep.passed


def test_axiom_grid_width_guard():
    with pytest.raises(DomainError):
        check_weight_axioms(bmt_log_power(2.0), grid=np.logspace(2, 4, 50))


def test_custom_weight_name():
    w = custom_weight("probe", lambda a: a)
    assert w.name == "probe"
    assert w(3.0) == 3.0


@pytest.mark.parametrize("tau,sigma", [(1.0, 2.0), (2.0, 3.0), (0.5, 1.5)])
def test_integral_closed_form(tau, sigma):
    params = SequenceParams(tau, sigma)
    for C in (1.0, math.e):
        rep = integral_closed_form_check(params, C, np.logspace(0.5, 8, 50))
        assert rep.passed
        assert np.max(rep.rel_err) <= 1e-6
