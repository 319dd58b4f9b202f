"""Callable and putable bond pricing by eigenfunction expansions."""

from ._core import (
    BondSchedule,
    DecisionRecord,
    DiffusionModel,
    ModelKind,
    PricingResult,
    Subordinator,
    benchmark_case,
    benchmark_model,
    closed_form_bond,
    eigenfunctions,
    eigenvalue,
    laplace_exponent,
    mc_zero_coupon,
    price_bond,
    quadrature_dp_price,
    reproduce_table,
    short_rate_map,
    state_for_rate,
    straight_bond_price,
    zero_coupon_price,
)

__all__ = [
    "BondSchedule",
    "DecisionRecord",
    "DiffusionModel",
    "ModelKind",
    "PricingResult",
    "Subordinator",
    "benchmark_case",
    "benchmark_model",
    "closed_form_bond",
    "eigenfunctions",
    "eigenvalue",
    "laplace_exponent",
    "mc_zero_coupon",
    "price_bond",
    "quadrature_dp_price",
    "reproduce_table",
    "short_rate_map",
    "state_for_rate",
    "straight_bond_price",
    "zero_coupon_price",
]
