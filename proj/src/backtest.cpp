#include "hrpkit/backtest.hpp"

#include <cmath>
#include <map>
#include <unordered_map>

#include "hrpkit/error.hpp"

namespace hrpkit::backtest {

namespace {

// Relative floor below which a sample standard deviation is treated as zero:
// a constant series leaves only rounding noise in the deviations.
constexpr double kZeroVolRelTolerance = 1e-12;

}  // namespace

DailyReturnSeries portfolio_daily_returns(const stats::ReturnMatrix& rm, const WeightVector& w) {
  const auto n = rm.tickers.size();
  if (w.tickers.size() != n || w.weights.size() != n) {
    throw InvalidArgument("weight vector and return matrix cover different tickers");
  }
  std::unordered_map<std::string, std::size_t> column;
  for (std::size_t j = 0; j < n; ++j) column.emplace(rm.tickers[j], j);

  Eigen::VectorXd aligned = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  std::vector<bool> assigned(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    auto it = column.find(w.tickers[k]);
    if (it == column.end() || assigned[it->second]) {
      throw InvalidArgument("ticker mismatch: '" + w.tickers[k] + "' not in return matrix");
    }
    assigned[it->second] = true;
    aligned(static_cast<Eigen::Index>(it->second)) = w.weights[k];
  }

  DailyReturnSeries out;
  out.calendar = rm.calendar;
  out.values.resize(static_cast<std::size_t>(rm.returns.rows()));
  for (Eigen::Index t = 0; t < rm.returns.rows(); ++t) {
    double v = 0.0;
    for (Eigen::Index j = 0; j < rm.returns.cols(); ++j) v += aligned(j) * rm.returns(t, j);
    out.values[static_cast<std::size_t>(t)] = v;
  }
  return out;
}

PerformanceReport evaluate(const DailyReturnSeries& series, stats::AnnualizationConvention conv,
                           double rf, std::string portfolio, std::string window,
                           ReturnAnnualization mode) {
  const auto& x = series.values;
  if (x.size() < 2) throw InvalidArgument("performance evaluation needs at least two daily returns");
  if (conv.trading_days_per_year < 1) throw InvalidArgument("trading days per year must be positive");
  const double t = static_cast<double>(x.size());
  const double days = static_cast<double>(conv.trading_days_per_year);

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= t;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  double daily_sd = std::sqrt(ss / (t - 1.0));
  if (daily_sd <= kZeroVolRelTolerance * std::max(1.0, std::abs(mean))) daily_sd = 0.0;

  PerformanceReport r;
  r.portfolio = std::move(portfolio);
  r.window = std::move(window);
  r.rf = rf;
  r.annual_vol = stats::annualize_vol(daily_sd, conv);
  if (mode == ReturnAnnualization::Arithmetic) {
    r.annual_return = mean * days;
  } else {
    double log_growth = 0.0;
    for (double v : x) log_growth += std::log1p(v);
    r.annual_return = std::expm1(log_growth * days / t);
  }
  r.sharpe = stats::sharpe_ratio(r.annual_return, r.annual_vol, rf);
  return r;
}

SectorComparison compare(std::span<const PerformanceReport> reports, const std::string& sector) {
  std::map<std::pair<std::string, std::string>, const PerformanceReport*> cells;
  for (const auto& r : reports) {
    if (r.portfolio != kCla && r.portfolio != kHrp) {
      throw InvalidArgument("unknown portfolio label '" + r.portfolio + "'");
    }
    if (r.window != kTrain && r.window != kTest) {
      throw InvalidArgument("unknown window label '" + r.window + "'");
    }
    if (!cells.emplace(std::make_pair(r.portfolio, r.window), &r).second) {
      throw InvalidArgument("duplicate report for " + r.portfolio + "/" + r.window);
    }
  }
  auto winner = [&](const char* window) -> std::string {
    auto cla = cells.find({kCla, window});
    auto hrp = cells.find({kHrp, window});
    if (cla == cells.end() || hrp == cells.end()) {
      throw InvalidArgument(std::string("missing report for window '") + window + "'");
    }
    if (cla->second->sharpe > hrp->second->sharpe) return kCla;
    if (hrp->second->sharpe > cla->second->sharpe) return kHrp;
    return kTie;
  };
  return {sector, winner(kTrain), winner(kTest)};
}

}  // namespace hrpkit::backtest
