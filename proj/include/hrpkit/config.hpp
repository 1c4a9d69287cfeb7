#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "hrpkit/backtest.hpp"
#include "hrpkit/frontier.hpp"
#include "hrpkit/marketdata.hpp"
#include "hrpkit/stats.hpp"

namespace hrpkit {

/// Everything one sector run needs. Loaded from a JSON document:
///
///   {
///     "sector": "auto",
///     "data_dir": "../sectors/auto",
///     "tickers": ["MARUTI", "M&M"],
///     "date_format": "%Y-%m-%d",
///     "coverage_threshold": 0.95,
///     "train_start": "2016-01-01", "train_end": "2020-12-31",
///     "test_start": "2021-01-01",  "test_end": "2021-08-26",
///     "rf": 0.01, "trading_days": 250, "mc_iterations": 10000, "seed": 42,
///     "return_annualization": "arithmetic",
///     "output_dir": "../../out"
///   }
///
/// Relative paths resolve against the config file's directory. Only
/// `sector`, `data_dir` and the four window dates are required.
struct RunConfig {
  std::string sector_name;
  marketdata::IngestionConfig ingestion;
  marketdata::WindowSpec window;
  double rf = stats::kDefaultRiskFreeRate;
  int trading_days = stats::kDefaultTradingDays;
  std::size_t mc_iterations = frontier::kDefaultIterations;
  std::uint64_t seed = frontier::kDefaultSeed;
  backtest::ReturnAnnualization return_annualization = backtest::ReturnAnnualization::Arithmetic;
  std::filesystem::path output_dir = "out";
  unsigned threads = 1;

  /// Directory receiving this sector's artifacts: output_dir / sector_name.
  [[nodiscard]] std::filesystem::path sector_dir() const { return output_dir / sector_name; }

  /// Checks every invariant; throws ConfigError.
  void validate() const;
};

/// Command-line values that take precedence over the file.
struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> rf;
  std::optional<std::size_t> iterations;
  std::optional<int> trading_days;
  std::optional<std::filesystem::path> output_dir;
  std::optional<unsigned> threads;
};

/// Parses, applies overrides and validates. All failures are ConfigError.
RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir,
                           const ConfigOverrides& overrides = {});
RunConfig load_run_config(const std::filesystem::path& path, const ConfigOverrides& overrides = {});

}  // namespace hrpkit
