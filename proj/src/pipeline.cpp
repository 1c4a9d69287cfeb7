#include "hrpkit/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hrpkit::pipeline {

namespace fs = std::filesystem;

namespace {

template <typename Fn>
auto in_stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

fs::path prepare_sector_dir(const RunConfig& cfg) {
  const fs::path dir = cfg.sector_dir();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ConfigError("output directory " + dir.string() + " is not writable");
  }
  return dir;
}

template <typename Writer>
void emit(const fs::path& path, Writer&& writer) {
  std::ostringstream out;
  writer(out);
  io::write_file(path, out.str());
}

}  // namespace

IngestResult ingest(const RunConfig& cfg) {
  return in_stage("ingest", [&] {
    IngestResult r;
    r.table = marketdata::load_csv_dir(cfg.ingestion, r.diagnostics);
    auto [train, test] = marketdata::split(r.table, cfg.window);
    r.train = std::move(train);
    r.test = std::move(test);
    return r;
  });
}

BuildResult build(const RunConfig& cfg, const IngestResult& data) {
  return in_stage("build", [&] {
    BuildResult b;
    b.train_returns = stats::daily_returns(data.train);
    b.cov = stats::covariance(b.train_returns);
    b.corr = stats::correlation(b.cov);
    b.hrp = hrp::hrp_weights(b.cov, b.corr);
    b.hrp_weights = b.hrp.weights;

    frontier::SamplingOptions opts;
    opts.iterations = cfg.mc_iterations;
    opts.rf = cfg.rf;
    opts.seed = cfg.seed;
    opts.conv.trading_days_per_year = cfg.trading_days;
    opts.threads = cfg.threads;
    b.cloud = frontier::sample_portfolios(b.train_returns, b.cov, opts);
    b.cla_weights = b.cloud.weight_vector(frontier::max_sharpe_portfolio(b.cloud));
    b.min_variance_weights = b.cloud.weight_vector(frontier::min_variance_portfolio(b.cloud));
    return b;
  });
}

BacktestResult run_backtest(const RunConfig& cfg, const IngestResult& data, const WeightVector& cla,
                            const WeightVector& hrp) {
  return in_stage("backtest", [&] {
    const stats::AnnualizationConvention conv{cfg.trading_days};
    const auto train_returns = stats::daily_returns(data.train);
    const auto test_returns = stats::daily_returns(data.test);

    BacktestResult r;
    r.cla_train = backtest::portfolio_daily_returns(train_returns, cla);
    r.hrp_train = backtest::portfolio_daily_returns(train_returns, hrp);
    r.cla_test = backtest::portfolio_daily_returns(test_returns, cla);
    r.hrp_test = backtest::portfolio_daily_returns(test_returns, hrp);

    const auto mode = cfg.return_annualization;
    r.reports.push_back(backtest::evaluate(r.cla_train, conv, cfg.rf, backtest::kCla, backtest::kTrain, mode));
    r.reports.push_back(backtest::evaluate(r.hrp_train, conv, cfg.rf, backtest::kHrp, backtest::kTrain, mode));
    r.reports.push_back(backtest::evaluate(r.cla_test, conv, cfg.rf, backtest::kCla, backtest::kTest, mode));
    r.reports.push_back(backtest::evaluate(r.hrp_test, conv, cfg.rf, backtest::kHrp, backtest::kTest, mode));
    r.comparison = backtest::compare(r.reports, cfg.sector_name);
    return r;
  });
}

void write_build_artifacts(const RunConfig& cfg, const BuildResult& built) {
  const fs::path dir = prepare_sector_dir(cfg);
  in_stage("write", [&] {
    emit(dir / kWeightsCla, [&](std::ostream& o) { io::write_weights_csv(o, built.cla_weights); });
    emit(dir / kWeightsHrp, [&](std::ostream& o) { io::write_weights_csv(o, built.hrp_weights); });
    emit(dir / kWeightsMinVariance,
         [&](std::ostream& o) { io::write_weights_csv(o, built.min_variance_weights); });
    io::write_file(dir / kDendrogram,
                   io::dendrogram_json({built.cov.tickers, built.hrp.tree, built.hrp.order}));
    emit(dir / kFrontier, [&](std::ostream& o) { io::write_frontier_csv(o, built.cloud); });
  });
}

void write_backtest_artifacts(const RunConfig& cfg, const BacktestResult& result) {
  const fs::path dir = prepare_sector_dir(cfg);
  in_stage("write", [&] {
    emit(dir / kReturnsTrain,
         [&](std::ostream& o) { io::write_daily_returns_csv(o, result.cla_train, result.hrp_train); });
    emit(dir / kReturnsTest,
         [&](std::ostream& o) { io::write_daily_returns_csv(o, result.cla_test, result.hrp_test); });
    io::write_file(dir / kReportJson, io::reports_json(result.reports));
    io::write_file(dir / kReportText, io::performance_table(cfg.sector_name, result.reports));
  });
}

std::pair<WeightVector, WeightVector> load_built_weights(const RunConfig& cfg) {
  return in_stage("backtest", [&] {
    auto read = [&](const char* name) {
      const fs::path path = cfg.sector_dir() / name;
      std::ifstream in(path);
      if (!in) throw DataError("missing " + path.string() + " (run `build` first)");
      return io::read_weights_csv(in);
    };
    return std::make_pair(read(kWeightsCla), read(kWeightsHrp));
  });
}

BacktestResult run_sector(const RunConfig& cfg) {
  const IngestResult data = ingest(cfg);
  const BuildResult built = build(cfg, data);
  write_build_artifacts(cfg, built);
  BacktestResult result = run_backtest(cfg, data, built.cla_weights, built.hrp_weights);
  write_backtest_artifacts(cfg, result);
  return result;
}

bool RunAllResult::all_ok() const {
  return std::none_of(rows.begin(), rows.end(), [](const io::SummaryRow& r) { return r.failed; });
}

std::vector<fs::path> sector_config_paths(const fs::path& config_dir) {
  if (!fs::is_directory(config_dir)) {
    throw ConfigError("config directory not found: " + config_dir.string());
  }
  std::vector<fs::path> paths;
  const fs::path index = config_dir / "index.json";
  if (fs::exists(index)) {
    try {
      const auto doc = nlohmann::json::parse(io::read_file(index));
      for (const auto& name : doc.at("sectors")) paths.push_back(config_dir / name.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("malformed " + index.string() + ": " + e.what());
    }
  } else {
    for (const auto& entry : fs::directory_iterator(config_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
  }
  if (paths.empty()) throw ConfigError("no sector configs in " + config_dir.string());
  return paths;
}

RunAllResult run_all(const fs::path& config_dir, const ConfigOverrides& overrides,
                     const fs::path& summary_dir) {
  RunAllResult result;
  for (const auto& path : sector_config_paths(config_dir)) {
    io::SummaryRow row;
    row.sector = path.stem().string();
    try {
      const RunConfig cfg = load_run_config(path, overrides);
      row.sector = cfg.sector_name;
      const auto outcome = run_sector(cfg);
      row.train_winner = outcome.comparison.train_winner;
      row.test_winner = outcome.comparison.test_winner;
    } catch (const std::exception& e) {
      row.failed = true;
      row.message = e.what();
    }
    result.rows.push_back(std::move(row));
  }

  std::error_code ec;
  fs::create_directories(summary_dir, ec);
  if (ec) throw ConfigError("output directory " + summary_dir.string() + " is not writable");
  emit(summary_dir / kSummaryCsv, [&](std::ostream& o) { io::write_summary_csv(o, result.rows); });
  io::write_file(summary_dir / kSummaryText, io::summary_table(result.rows));
  return result;
}

}  // namespace hrpkit::pipeline
