// hrpkit: build HRP and max-Sharpe portfolios per sector and backtest them.
//
//   hrpkit ingest   --config data/configs/auto.json
//   hrpkit build    --config data/configs/auto.json --seed 42
//   hrpkit backtest --config data/configs/auto.json
//   hrpkit run      --config data/configs/auto.json --out out
//   hrpkit run-all  --config data/configs --out out
//
// Exit codes: 0 success, 1 runtime failure, 2 config validation failure.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hrpkit/pipeline.hpp"

namespace {

using namespace hrpkit;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> rf;
  std::optional<std::size_t> iterations;
  std::optional<int> trading_days;
  std::optional<std::string> out;
  std::optional<unsigned> threads;

  [[nodiscard]] ConfigOverrides overrides() const {
    ConfigOverrides o;
    o.seed = seed;
    o.rf = rf;
    o.iterations = iterations;
    o.trading_days = trading_days;
    if (out) o.output_dir = std::filesystem::path(*out);
    o.threads = threads;
    return o;
  }
};

void add_common(CLI::App* cmd, CommonFlags& f, const char* config_help) {
  cmd->add_option("--config", f.config, config_help)->required();
  cmd->add_option("--seed", f.seed, "Monte-Carlo seed");
  cmd->add_option("--rf", f.rf, "Annual risk-free rate (default 0.01)");
  cmd->add_option("--iterations", f.iterations, "Monte-Carlo portfolios (default 10000)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--trading-days", f.trading_days, "Trading days per year (default 250)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--threads", f.threads, "Sampling threads; output does not depend on it")
      ->check(CLI::PositiveNumber);
}

void print_diagnostics(const pipeline::IngestResult& data) {
  for (const auto& d : data.diagnostics) std::cerr << "warning: " << d.to_string() << '\n';
}

int cmd_ingest(const CommonFlags& f) {
  const RunConfig cfg = load_run_config(f.config, f.overrides());
  const auto data = pipeline::ingest(cfg);
  print_diagnostics(data);
  std::cout << "sector:    " << cfg.sector_name << '\n'
            << "dates:     " << data.table.calendar.size() << " (" << data.table.calendar.front().iso()
            << " .. " << data.table.calendar.back().iso() << ")\n"
            << "train:     " << data.train.calendar.size() << " dates\n"
            << "test:      " << data.test.calendar.size() << " dates\n"
            << "tickers:   " << data.table.tickers.size() << '\n';
  for (const auto& e : data.table.excluded) {
    std::cout << "excluded:  " << e.ticker << " (" << e.reason << ")\n";
  }
  if (!data.diagnostics.empty()) std::cout << "rejected rows: " << data.diagnostics.size() << '\n';
  return kExitOk;
}

int cmd_build(const CommonFlags& f) {
  const RunConfig cfg = load_run_config(f.config, f.overrides());
  const auto data = pipeline::ingest(cfg);
  print_diagnostics(data);
  const auto built = pipeline::build(cfg, data);
  pipeline::write_build_artifacts(cfg, built);
  std::cout << "wrote " << cfg.sector_dir().string() << '\n'
            << "HRP Herfindahl: " << io::format_double(herfindahl_index(built.hrp_weights)) << '\n'
            << "CLA Herfindahl: " << io::format_double(herfindahl_index(built.cla_weights)) << '\n';
  return kExitOk;
}

int cmd_backtest(const CommonFlags& f) {
  const RunConfig cfg = load_run_config(f.config, f.overrides());
  const auto data = pipeline::ingest(cfg);
  print_diagnostics(data);
  const auto [cla, hrp] = pipeline::load_built_weights(cfg);
  const auto result = pipeline::run_backtest(cfg, data, cla, hrp);
  pipeline::write_backtest_artifacts(cfg, result);
  std::cout << io::performance_table(cfg.sector_name, result.reports);
  return kExitOk;
}

int cmd_run(const CommonFlags& f) {
  const RunConfig cfg = load_run_config(f.config, f.overrides());
  const auto result = pipeline::run_sector(cfg);
  std::cout << io::performance_table(cfg.sector_name, result.reports);
  return kExitOk;
}

int cmd_run_all(const CommonFlags& f) {
  const std::filesystem::path summary_dir = f.out ? std::filesystem::path(*f.out) : "out";
  const auto result = pipeline::run_all(f.config, f.overrides(), summary_dir);
  std::cout << io::summary_table(result.rows);
  for (const auto& row : result.rows) {
    if (row.failed) std::cerr << "hrpkit: " << row.sector << ": " << row.message << '\n';
  }
  return result.all_ok() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical risk parity and Monte-Carlo max-Sharpe portfolios with backtests"};
  app.require_subcommand(1);

  CommonFlags flags;
  auto* ingest = app.add_subcommand("ingest", "Validate and align price data");
  auto* build = app.add_subcommand("build", "Compute weights, dendrogram and frontier cloud");
  auto* backtest = app.add_subcommand("backtest", "Backtest previously built weights");
  auto* run = app.add_subcommand("run", "Full pipeline for one sector");
  auto* run_all = app.add_subcommand("run-all", "Full pipeline for every sector config in a directory");
  for (auto* cmd : {ingest, build, backtest, run}) add_common(cmd, flags, "Sector config (JSON)");
  add_common(run_all, flags, "Directory of sector configs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(flags);
    if (build->parsed()) return cmd_build(flags);
    if (backtest->parsed()) return cmd_backtest(flags);
    if (run->parsed()) return cmd_run(flags);
    if (run_all->parsed()) return cmd_run_all(flags);
  } catch (const ConfigError& e) {
    std::cerr << "hrpkit: config: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "hrpkit: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
