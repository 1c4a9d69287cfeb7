#include "hrpkit/stats.hpp"

#include <algorithm>
#include <cmath>

#include "hrpkit/error.hpp"

namespace hrpkit::stats {

ReturnMatrix daily_returns(const marketdata::PriceTable& table) {
  if (table.rows() < 2) throw InvalidArgument("daily returns need at least two dates");
  if (table.prices.rows() != static_cast<Eigen::Index>(table.calendar.size())) {
    throw InvalidArgument("price matrix rows do not match the calendar");
  }
  const Eigen::Index t = table.rows() - 1;
  ReturnMatrix rm;
  rm.tickers = table.tickers;
  rm.calendar.dates.assign(table.calendar.dates.begin() + 1, table.calendar.dates.end());
  rm.returns = (table.prices.bottomRows(t).array() / table.prices.topRows(t).array()) - 1.0;
  return rm;
}

double annualize_vol(double daily_vol, AnnualizationConvention conv) {
  if (!(daily_vol >= 0.0)) throw InvalidArgument("daily volatility must be non-negative");
  if (conv.trading_days_per_year < 1) throw InvalidArgument("trading days per year must be positive");
  return daily_vol * std::sqrt(static_cast<double>(conv.trading_days_per_year));
}

Eigen::VectorXd mean_returns(const ReturnMatrix& rm) {
  if (rm.returns.rows() == 0) throw InvalidArgument("empty return matrix");
  return rm.returns.colwise().mean().transpose();
}

CovarianceMatrix covariance(const ReturnMatrix& rm) {
  const Eigen::Index t = rm.returns.rows();
  if (t < 2) throw InvalidArgument("covariance needs at least two return rows");
  const Eigen::RowVectorXd means = rm.returns.colwise().mean();
  const Eigen::MatrixXd centered = rm.returns.rowwise() - means;
  Eigen::MatrixXd values = (centered.transpose() * centered) / static_cast<double>(t - 1);
  values = 0.5 * (values + values.transpose()).eval();
  return {rm.tickers, std::move(values)};
}

CorrelationMatrix correlation(const CovarianceMatrix& cov) {
  const Eigen::Index n = cov.size();
  Eigen::VectorXd var(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = cov.values(i, i);
    if (!(v > 0.0)) {
      const std::string name = i < static_cast<Eigen::Index>(cov.tickers.size())
                                   ? cov.tickers[static_cast<std::size_t>(i)]
                                   : "#" + std::to_string(i);
      throw NumericError("zero variance for asset '" + name + "'");
    }
    var(i) = v;
  }
  Eigen::MatrixXd rho(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    rho(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double r = std::clamp(cov.values(i, j) / std::sqrt(var(i) * var(j)), -1.0, 1.0);
      rho(i, j) = r;
      rho(j, i) = r;
    }
  }
  return {cov.tickers, std::move(rho)};
}

double sharpe_ratio(double annual_return, double annual_vol, double risk_free_rate) {
  if (!(annual_vol > 0.0)) throw NumericError("Sharpe ratio undefined for zero volatility");
  return (annual_return - risk_free_rate) / annual_vol;
}

}  // namespace hrpkit::stats
