#pragma once

#include <span>
#include <string>
#include <vector>

#include "hrpkit/marketdata.hpp"
#include "hrpkit/stats.hpp"
#include "hrpkit/weights.hpp"

namespace hrpkit::backtest {

inline constexpr const char* kCla = "CLA";
inline constexpr const char* kHrp = "HRP";
inline constexpr const char* kTrain = "train";
inline constexpr const char* kTest = "test";
inline constexpr const char* kTie = "tie";

struct DailyReturnSeries {
  marketdata::TradingCalendar calendar;
  std::vector<double> values;
};

enum class ReturnAnnualization {
  Arithmetic,  // mean daily return * trading days
  Geometric,   // compounded growth rescaled to one year
};

struct PerformanceReport {
  std::string portfolio;
  std::string window;
  double annual_vol = 0.0;
  double sharpe = 0.0;
  double annual_return = 0.0;
  double rf = 0.0;
};

struct SectorComparison {
  std::string sector;
  std::string train_winner;
  std::string test_winner;
};

/// Daily-rebalanced portfolio: value[t] = sum_i w_i r[t][i]. Weights are
/// matched to return columns by ticker name.
DailyReturnSeries portfolio_daily_returns(const stats::ReturnMatrix& rm, const WeightVector& w);

/// Annualized volatility (T-1 stdev), annual return and Sharpe ratio.
/// Needs at least two observations and non-zero volatility.
PerformanceReport evaluate(const DailyReturnSeries& series, stats::AnnualizationConvention conv,
                           double rf, std::string portfolio, std::string window,
                           ReturnAnnualization mode = ReturnAnnualization::Arithmetic);

/// Winner per window by strictly higher Sharpe ratio, "tie" on equality.
/// Requires exactly one report for each of CLA/HRP x train/test.
SectorComparison compare(std::span<const PerformanceReport> reports, const std::string& sector);

}  // namespace hrpkit::backtest
