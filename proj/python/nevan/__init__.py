"""Nevanlinna characteristic and logarithmic-derivative bounds."""

from ._core import (
    DiffPolynomial,
    Model,
    NevanError,
    characteristic,
    check_gg,
    check_theorem_c,
    clunie_certificate,
    constant_C,
    counting,
    gg_bound,
    growth_order,
    kappa_objective,
    logderiv_bound,
    make_grid,
    mohonko_certificate,
    optimize_kappa,
    painleve_slope,
    proximity,
    proximity_at,
    proximity_derivative_ratio,
    riccati_case,
    sharpness,
    table,
)

__all__ = [name for name in dir() if not name.startswith("_")]
