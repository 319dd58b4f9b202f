import math

import pytest

import eigenbond as eb


def test_callable_benchmark_value():
    model, sub = eb.benchmark_case("cir")
    res = eb.price_bond(model, sub, eb.BondSchedule.swiss1987(), [0.05])
    assert res.values[0] == pytest.approx(0.849823, abs=5e-6)
    assert len(res.decisions) == 10
    assert res.decisions[0].index == 20
    assert res.decisions[0].call_rate == pytest.approx(0.03388791, abs=1e-6)


def test_zero_coupon_matches_closed_form():
    model = eb.benchmark_model(eb.ModelKind.Vasicek)
    value, n = eb.zero_coupon_price(model, eb.Subordinator.none(), 5.0, 0.04, eps=1e-13)
    assert value == pytest.approx(eb.closed_form_bond(model, 5.0, 0.04), abs=1e-10)
    assert n > 0


def test_subordinated_state_round_trip():
    model, sub = eb.benchmark_case("subvasicek_pj")
    x = eb.state_for_rate(model, sub, 0.03)
    assert eb.short_rate_map(model, sub, x) == pytest.approx(0.03, abs=1e-10)


def test_oracles():
    model = eb.DiffusionModel.cir(0.14294371, 0.133976855, 0.38757496)
    mean, se = eb.mc_zero_coupon(model, eb.Subordinator.none(), 1.0, 0.05, paths=4000, seed=3)
    assert abs(mean - eb.closed_form_bond(model, 1.0, 0.05)) < 4 * se
    sched = eb.BondSchedule()
    sched.coupon = 0.0
    sched.coupon_times = [2.0]
    dp = eb.quadrature_dp_price(model, eb.Subordinator.none(), sched, 0.05, grid_size=200, n_density=60)
    assert dp == pytest.approx(eb.closed_form_bond(model, 2.0, 0.05), abs=1e-6)


def test_reproduce_table():
    rep = eb.reproduce_table("T5")
    assert rep["max_abs_diff"] < 5e-6
    assert len(rep["rows"]) == 10


def test_invalid_input_raises():
    with pytest.raises(ValueError):
        eb.DiffusionModel.cir(-1.0, 0.1, 0.2)
    with pytest.raises(ValueError):
        eb.price_bond(eb.benchmark_model(eb.ModelKind.CIR), eb.Subordinator.none(),
                      eb.BondSchedule.swiss1987(), [-0.01])
    assert math.isfinite(eb.laplace_exponent(eb.Subordinator.gamma(0.1, 1.0, 2.0), 0.5))
