#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hrpkit/backtest.hpp"
#include "hrpkit/config.hpp"
#include "hrpkit/error.hpp"
#include "hrpkit/frontier.hpp"
#include "hrpkit/hrp.hpp"
#include "hrpkit/io.hpp"
#include "hrpkit/marketdata.hpp"
#include "hrpkit/stats.hpp"

namespace hrpkit::pipeline {

/// Wraps a failure with the name of the pipeline stage that raised it.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& message)
      : Error(stage + ": " + message), stage_(std::move(stage)) {}

  [[nodiscard]] const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Artifact file names inside <output_dir>/<sector>/.
inline constexpr const char* kWeightsCla = "weights_cla.csv";
inline constexpr const char* kWeightsHrp = "weights_hrp.csv";
inline constexpr const char* kWeightsMinVariance = "weights_min_variance.csv";
inline constexpr const char* kDendrogram = "dendrogram.json";
inline constexpr const char* kFrontier = "frontier.csv";
inline constexpr const char* kReturnsTrain = "returns_train.csv";
inline constexpr const char* kReturnsTest = "returns_test.csv";
inline constexpr const char* kReportJson = "report.json";
inline constexpr const char* kReportText = "report.txt";
inline constexpr const char* kSummaryCsv = "summary.csv";
inline constexpr const char* kSummaryText = "summary.txt";

struct IngestResult {
  marketdata::PriceTable table;
  marketdata::PriceTable train;
  marketdata::PriceTable test;
  std::vector<marketdata::Diagnostic> diagnostics;
};

struct BuildResult {
  stats::ReturnMatrix train_returns;
  stats::CovarianceMatrix cov;
  stats::CorrelationMatrix corr;
  hrp::HrpResult hrp;
  frontier::FrontierCloud cloud;
  WeightVector cla_weights;
  WeightVector hrp_weights;
  WeightVector min_variance_weights;
};

struct BacktestResult {
  std::vector<backtest::PerformanceReport> reports;
  backtest::SectorComparison comparison;
  backtest::DailyReturnSeries cla_train, hrp_train, cla_test, hrp_test;
};

IngestResult ingest(const RunConfig& cfg);
BuildResult build(const RunConfig& cfg, const IngestResult& data);
BacktestResult run_backtest(const RunConfig& cfg, const IngestResult& data,
                            const WeightVector& cla, const WeightVector& hrp);

/// Writes weights, dendrogram and frontier files.
void write_build_artifacts(const RunConfig& cfg, const BuildResult& built);
/// Writes daily-return CSVs and the JSON/text reports.
void write_backtest_artifacts(const RunConfig& cfg, const BacktestResult& result);

/// Reads weights_cla.csv / weights_hrp.csv from a previous build.
std::pair<WeightVector, WeightVector> load_built_weights(const RunConfig& cfg);

/// ingest -> build -> backtest, writing every artifact.
BacktestResult run_sector(const RunConfig& cfg);

struct RunAllResult {
  std::vector<io::SummaryRow> rows;
  [[nodiscard]] bool all_ok() const;
};

/// Sector configs come from `index.json` ({"sectors": [...]}) when present,
/// otherwise every *.json file in name order.
std::vector<std::filesystem::path> sector_config_paths(const std::filesystem::path& config_dir);

/// Runs every sector. A failing sector becomes a "failed" row; the others
/// still run. Writes summary.csv and summary.txt into `summary_dir`.
RunAllResult run_all(const std::filesystem::path& config_dir, const ConfigOverrides& overrides,
                     const std::filesystem::path& summary_dir);

}  // namespace hrpkit::pipeline
