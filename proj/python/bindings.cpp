#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>

#include "hrpkit/backtest.hpp"
#include "hrpkit/config.hpp"
#include "hrpkit/error.hpp"
#include "hrpkit/frontier.hpp"
#include "hrpkit/hrp.hpp"
#include "hrpkit/io.hpp"
#include "hrpkit/pipeline.hpp"
#include "hrpkit/stats.hpp"

namespace py = pybind11;
using namespace hrpkit;

namespace {

std::vector<std::string> default_tickers(Eigen::Index n, std::optional<std::vector<std::string>> tickers) {
  if (tickers) {
    if (static_cast<Eigen::Index>(tickers->size()) != n) throw InvalidArgument("tickers length does not match matrix");
    return *tickers;
  }
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

// Matrices passed from Python carry no dates; a run of consecutive days
// stands in for the calendar.
marketdata::TradingCalendar placeholder_calendar(Eigen::Index rows) {
  marketdata::TradingCalendar cal;
  const auto start = Date(2000, 1, 3).sys_days();
  for (Eigen::Index i = 0; i < rows; ++i) cal.dates.emplace_back(start + std::chrono::days{i});
  return cal;
}

stats::ReturnMatrix return_matrix(const Eigen::MatrixXd& returns, std::optional<std::vector<std::string>> tickers) {
  return {placeholder_calendar(returns.rows()), default_tickers(returns.cols(), std::move(tickers)), returns};
}

stats::CovarianceMatrix cov_matrix(const Eigen::MatrixXd& cov, std::optional<std::vector<std::string>> tickers) {
  if (cov.rows() != cov.cols()) throw InvalidArgument("covariance matrix must be square");
  return {default_tickers(cov.rows(), std::move(tickers)), cov};
}

py::list merges_to_list(const hrp::LinkageTree& tree) {
  py::list out;
  for (const auto& m : tree.merges) out.append(py::make_tuple(m.left, m.right, m.distance, m.size));
  return out;
}

hrp::LinkageTree list_to_tree(const std::vector<std::tuple<std::size_t, std::size_t, double, std::size_t>>& merges,
                              std::size_t n) {
  hrp::LinkageTree tree{n, {}};
  for (const auto& [l, r, d, s] : merges) tree.merges.push_back({l, r, d, s});
  return tree;
}

py::dict report_dict(const backtest::PerformanceReport& r) {
  py::dict d;
  d["portfolio"] = r.portfolio;
  d["window"] = r.window;
  d["annual_vol"] = r.annual_vol;
  d["sharpe"] = r.sharpe;
  d["annual_return"] = r.annual_return;
  d["rf"] = r.rf;
  return d;
}

ConfigOverrides overrides(std::optional<std::uint64_t> seed, std::optional<double> rf,
                          std::optional<std::size_t> iterations, std::optional<int> trading_days,
                          std::optional<std::filesystem::path> out, std::optional<unsigned> threads) {
  ConfigOverrides o;
  o.seed = seed;
  o.rf = rf;
  o.iterations = iterations;
  o.trading_days = trading_days;
  o.output_dir = std::move(out);
  o.threads = threads;
  return o;
}

}  // namespace

PYBIND11_MODULE(_hrpkit, m) {
  m.doc() = "Hierarchical risk parity and Monte-Carlo mean-variance portfolios";

  // Translators run newest first, so subclasses are registered after the base.
  auto base = py::register_exception<Error>(m, "HrpkitError");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<DataError>(m, "DataError", base.ptr());
  py::register_exception<NumericError>(m, "NumericError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  m.attr("DEFAULT_TRADING_DAYS") = stats::kDefaultTradingDays;
  m.attr("DEFAULT_RISK_FREE_RATE") = stats::kDefaultRiskFreeRate;
  m.attr("DEFAULT_ITERATIONS") = frontier::kDefaultIterations;
  m.attr("DEFAULT_SEED") = frontier::kDefaultSeed;

  // stats
  m.def(
      "daily_returns",
      [](const Eigen::MatrixXd& prices) {
        marketdata::PriceTable t;
        t.calendar = placeholder_calendar(prices.rows());
        t.tickers = default_tickers(prices.cols(), std::nullopt);
        t.prices = prices;
        return stats::daily_returns(t).returns;
      },
      py::arg("prices"), "Simple daily returns of a [date x asset] price matrix.");
  m.def(
      "annualize_vol",
      [](double daily_vol, int days) { return stats::annualize_vol(daily_vol, {days}); }, py::arg("daily_vol"),
      py::arg("trading_days") = stats::kDefaultTradingDays);
  m.def(
      "covariance", [](const Eigen::MatrixXd& returns) { return stats::covariance(return_matrix(returns, {})).values; },
      py::arg("returns"));
  m.def(
      "correlation", [](const Eigen::MatrixXd& cov) { return stats::correlation(cov_matrix(cov, {})).values; },
      py::arg("cov"));
  m.def("sharpe_ratio", &stats::sharpe_ratio, py::arg("annual_return"), py::arg("annual_vol"),
        py::arg("risk_free_rate") = stats::kDefaultRiskFreeRate);

  // hrp
  m.def(
      "distance_from_correlation",
      [](const Eigen::MatrixXd& corr) {
        return hrp::distance_from_correlation({default_tickers(corr.rows(), {}), corr}).values;
      },
      py::arg("corr"));
  m.def(
      "ward_linkage",
      [](const Eigen::MatrixXd& dist) {
        return merges_to_list(hrp::ward_linkage({default_tickers(dist.rows(), {}), dist}));
      },
      py::arg("dist"), "Merges as (left, right, distance, size) tuples; merge k creates node n + k.");
  m.def(
      "quasi_diagonalize",
      [](const std::vector<std::tuple<std::size_t, std::size_t, double, std::size_t>>& merges, std::size_t n) {
        return hrp::quasi_diagonalize(list_to_tree(merges, n)).permutation;
      },
      py::arg("merges"), py::arg("n"));
  m.def(
      "cluster_variance",
      [](const Eigen::MatrixXd& cov, const std::vector<std::size_t>& members) {
        return hrp::cluster_variance(cov_matrix(cov, {}), members);
      },
      py::arg("cov"), py::arg("members"));
  m.def(
      "recursive_bisection",
      [](const Eigen::MatrixXd& cov, const std::vector<std::size_t>& order) {
        return hrp::recursive_bisection(cov_matrix(cov, {}), {order}).weights;
      },
      py::arg("cov"), py::arg("order"));
  m.def(
      "hrp_weights",
      [](const Eigen::MatrixXd& cov, std::optional<std::vector<std::string>> tickers) {
        auto c = cov_matrix(cov, std::move(tickers));
        auto r = hrp::hrp_weights(c, stats::correlation(c));
        py::dict d;
        d["tickers"] = r.weights.tickers;
        d["weights"] = r.weights.weights;
        d["merges"] = merges_to_list(r.tree);
        d["order"] = r.order.permutation;
        return d;
      },
      py::arg("cov"), py::arg("tickers") = py::none(),
      "HRP allocation. Returns a dict with tickers, weights, merges and order.");

  // frontier
  m.def("simplex_draw", &frontier::simplex_draw, py::arg("seed"), py::arg("index"), py::arg("n"));
  m.def(
      "sample_portfolios",
      [](const Eigen::MatrixXd& returns, const Eigen::MatrixXd& cov, std::size_t iterations, double rf,
         std::uint64_t seed, int trading_days, unsigned threads) {
        frontier::SamplingOptions o;
        o.iterations = iterations;
        o.rf = rf;
        o.seed = seed;
        o.conv = {trading_days};
        o.threads = threads;
        frontier::FrontierCloud cloud;
        {
          py::gil_scoped_release release;
          cloud = frontier::sample_portfolios(return_matrix(returns, {}), cov_matrix(cov, {}), o);
        }
        const auto n = static_cast<Eigen::Index>(cloud.tickers.size());
        const auto k = static_cast<Eigen::Index>(cloud.samples.size());
        Eigen::MatrixXd weights(k, n);
        Eigen::VectorXd ret(k), vol(k), sharpe(k);
        for (Eigen::Index i = 0; i < k; ++i) {
          const auto& s = cloud.samples[static_cast<std::size_t>(i)];
          for (Eigen::Index j = 0; j < n; ++j) weights(i, j) = s.weights[static_cast<std::size_t>(j)];
          ret(i) = s.annual_return;
          vol(i) = s.annual_vol;
          sharpe(i) = s.sharpe;
        }
        py::dict d;
        d["weights"] = weights;
        d["annual_return"] = ret;
        d["annual_vol"] = vol;
        d["sharpe"] = sharpe;
        d["min_variance"] = frontier::min_variance_portfolio(cloud).index;
        d["max_sharpe"] = frontier::max_sharpe_portfolio(cloud).index;
        return d;
      },
      py::arg("returns"), py::arg("cov"), py::arg("iterations") = frontier::kDefaultIterations,
      py::arg("rf") = stats::kDefaultRiskFreeRate, py::arg("seed") = frontier::kDefaultSeed,
      py::arg("trading_days") = stats::kDefaultTradingDays, py::arg("threads") = 1u,
      "Monte-Carlo portfolio cloud. `min_variance` and `max_sharpe` are row indices.");
  m.def(
      "closed_form_min_variance",
      [](const Eigen::MatrixXd& cov) {
        auto s = frontier::closed_form_min_variance(cov_matrix(cov, {}));
        py::dict d;
        d["weights"] = s.weights;
        d["condition_number"] = s.condition_number;
        d["long_only"] = s.long_only;
        return d;
      },
      py::arg("cov"));

  // backtest
  m.def(
      "portfolio_daily_returns",
      [](const Eigen::MatrixXd& returns, const std::vector<double>& weights) {
        auto rm = return_matrix(returns, {});
        return backtest::portfolio_daily_returns(rm, {rm.tickers, weights}).values;
      },
      py::arg("returns"), py::arg("weights"));
  m.def(
      "evaluate",
      [](const std::vector<double>& series, double rf, int trading_days, bool geometric, std::string portfolio,
         std::string window) {
        backtest::DailyReturnSeries s{placeholder_calendar(static_cast<Eigen::Index>(series.size())), series};
        return report_dict(backtest::evaluate(
            s, {trading_days}, rf, std::move(portfolio), std::move(window),
            geometric ? backtest::ReturnAnnualization::Geometric : backtest::ReturnAnnualization::Arithmetic));
      },
      py::arg("series"), py::arg("rf") = stats::kDefaultRiskFreeRate,
      py::arg("trading_days") = stats::kDefaultTradingDays, py::arg("geometric") = false,
      py::arg("portfolio") = "", py::arg("window") = "");
  m.def("herfindahl_index", py::overload_cast<const std::vector<double>&>(&herfindahl_index), py::arg("weights"));

  // pipeline
  m.def(
      "run_sector",
      [](const std::filesystem::path& config, std::optional<std::uint64_t> seed, std::optional<double> rf,
         std::optional<std::size_t> iterations, std::optional<int> trading_days,
         std::optional<std::filesystem::path> out, std::optional<unsigned> threads) {
        auto cfg = load_run_config(config, overrides(seed, rf, iterations, trading_days, std::move(out), threads));
        pipeline::BacktestResult result;
        {
          py::gil_scoped_release release;
          result = pipeline::run_sector(cfg);
        }
        py::dict d;
        d["sector"] = cfg.sector_name;
        d["output_dir"] = cfg.sector_dir();
        py::list reports;
        for (const auto& r : result.reports) reports.append(report_dict(r));
        d["reports"] = reports;
        d["train_winner"] = result.comparison.train_winner;
        d["test_winner"] = result.comparison.test_winner;
        return d;
      },
      py::arg("config"), py::arg("seed") = py::none(), py::arg("rf") = py::none(),
      py::arg("iterations") = py::none(), py::arg("trading_days") = py::none(), py::arg("out") = py::none(),
      py::arg("threads") = py::none(), "Full pipeline for one sector config; writes every artifact.");
  m.def(
      "run_all",
      [](const std::filesystem::path& config_dir, const std::filesystem::path& out, std::optional<std::uint64_t> seed,
         std::optional<std::size_t> iterations) {
        pipeline::RunAllResult result;
        {
          py::gil_scoped_release release;
          result = pipeline::run_all(config_dir, overrides(seed, {}, iterations, {}, out, {}), out);
        }
        py::list rows;
        for (const auto& r : result.rows) {
          py::dict d;
          d["sector"] = r.sector;
          d["train_winner"] = r.train_winner;
          d["test_winner"] = r.test_winner;
          d["failed"] = r.failed;
          d["message"] = r.message;
          rows.append(d);
        }
        return rows;
      },
      py::arg("config_dir"), py::arg("out"), py::arg("seed") = py::none(), py::arg("iterations") = py::none(),
      "Runs every sector config in a directory and returns the summary rows.");
}
