"""Hierarchical risk parity and Monte-Carlo mean-variance portfolios.

Thin wrapper over the compiled ``_hrpkit`` extension. Matrices are NumPy
arrays laid out as [date x asset] for prices and returns, and [asset x
asset] for covariance and correlation.
"""

from ._hrpkit import (
    DEFAULT_ITERATIONS,
    DEFAULT_RISK_FREE_RATE,
    DEFAULT_SEED,
    DEFAULT_TRADING_DAYS,
    ConfigError,
    DataError,
    HrpkitError,
    InvalidArgument,
    NumericError,
    annualize_vol,
    closed_form_min_variance,
    cluster_variance,
    correlation,
    covariance,
    daily_returns,
    distance_from_correlation,
    evaluate,
    herfindahl_index,
    hrp_weights,
    portfolio_daily_returns,
    quasi_diagonalize,
    recursive_bisection,
    run_all,
    run_sector,
    sample_portfolios,
    sharpe_ratio,
    simplex_draw,
    ward_linkage,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
