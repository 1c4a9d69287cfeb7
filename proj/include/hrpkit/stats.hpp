#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hrpkit/marketdata.hpp"

namespace hrpkit::stats {

inline constexpr int kDefaultTradingDays = 250;
inline constexpr double kDefaultRiskFreeRate = 0.01;

struct AnnualizationConvention {
  int trading_days_per_year = kDefaultTradingDays;
};

/// Daily simple returns. Row t holds the return from calendar date t to t+1
/// of the source table, so `calendar` starts at the source's second date.
struct ReturnMatrix {
  marketdata::TradingCalendar calendar;
  std::vector<std::string> tickers;
  Eigen::MatrixXd returns;  // [date x ticker]
};

struct CovarianceMatrix {
  std::vector<std::string> tickers;
  Eigen::MatrixXd values;

  [[nodiscard]] Eigen::Index size() const { return values.rows(); }
};

struct CorrelationMatrix {
  std::vector<std::string> tickers;
  Eigen::MatrixXd values;

  [[nodiscard]] Eigen::Index size() const { return values.rows(); }
};

/// returns[t][i] = prices[t+1][i] / prices[t][i] - 1. Needs at least two dates.
ReturnMatrix daily_returns(const marketdata::PriceTable& table);

/// daily_vol * sqrt(trading_days_per_year). Negative input is an error.
double annualize_vol(double daily_vol, AnnualizationConvention conv = {});

/// Sample covariance with a T-1 denominator. The result is symmetrized
/// explicitly.
CovarianceMatrix covariance(const ReturnMatrix& rm);

/// Pearson correlation from a covariance matrix, clamped into [-1, 1] with
/// an exact unit diagonal. A zero-variance asset is a NumericError naming
/// the ticker.
CorrelationMatrix correlation(const CovarianceMatrix& cov);

/// (annual_return - risk_free_rate) / annual_vol. annual_vol must be > 0.
double sharpe_ratio(double annual_return, double annual_vol, double risk_free_rate);

/// Column means of the return matrix.
Eigen::VectorXd mean_returns(const ReturnMatrix& rm);

}  // namespace hrpkit::stats
