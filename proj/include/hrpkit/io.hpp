#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hrpkit/backtest.hpp"
#include "hrpkit/frontier.hpp"
#include "hrpkit/hrp.hpp"
#include "hrpkit/weights.hpp"

// Emitters and parsers for every file the pipeline writes. Numbers are
// written in shortest round-trip form, so parse -> emit reproduces the
// original bytes.
namespace hrpkit::io {

std::string format_double(double value);
std::optional<double> parse_double(std::string_view text);

/// `ticker,weight`
void write_weights_csv(std::ostream& out, const WeightVector& w);
WeightVector read_weights_csv(std::istream& in);

/// `vol,return,sharpe`, one row per sample in sample order.
struct FrontierPoint {
  double vol = 0.0;
  double ret = 0.0;
  double sharpe = 0.0;
};
void write_frontier_csv(std::ostream& out, const frontier::FrontierCloud& cloud);
void write_frontier_csv(std::ostream& out, std::span<const FrontierPoint> points);
std::vector<FrontierPoint> read_frontier_csv(std::istream& in);

/// `date,cla_return,hrp_return`
struct DailyReturnsTable {
  std::vector<Date> dates;
  std::vector<double> cla;
  std::vector<double> hrp;
};
void write_daily_returns_csv(std::ostream& out, const backtest::DailyReturnSeries& cla,
                             const backtest::DailyReturnSeries& hrp);
void write_daily_returns_csv(std::ostream& out, const DailyReturnsTable& table);
DailyReturnsTable read_daily_returns_csv(std::istream& in);

/// Dendrogram data: merges as nodes {id, left, right, distance, size} plus
/// the leaf order.
struct Dendrogram {
  std::vector<std::string> tickers;
  hrp::LinkageTree tree;
  hrp::LeafOrder order;
};
std::string dendrogram_json(const Dendrogram& d);
Dendrogram parse_dendrogram_json(std::string_view text);

std::string reports_json(std::span<const backtest::PerformanceReport> reports);
std::vector<backtest::PerformanceReport> parse_reports_json(std::string_view text);

/// Text table with Vol / Sharpe Ratio columns for the training and test
/// windows, one row per portfolio.
std::string performance_table(const std::string& sector,
                              std::span<const backtest::PerformanceReport> reports);

struct SummaryRow {
  std::string sector;
  std::string train_winner;
  std::string test_winner;
  bool failed = false;
  std::string message;
};

/// Sector | portfolio with higher SR (train) | (test). Failed sectors show
/// "failed" in both columns.
std::string summary_table(std::span<const SummaryRow> rows);
void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace hrpkit::io
