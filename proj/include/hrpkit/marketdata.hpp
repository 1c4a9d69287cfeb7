#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hrpkit/date.hpp"

namespace hrpkit::marketdata {

/// Strictly increasing list of trading days.
struct TradingCalendar {
  std::vector<Date> dates;

  [[nodiscard]] std::size_t size() const { return dates.size(); }
  [[nodiscard]] bool empty() const { return dates.empty(); }
  [[nodiscard]] const Date& front() const { return dates.front(); }
  [[nodiscard]] const Date& back() const { return dates.back(); }

  /// Throws InvalidArgument if dates are not strictly ascending.
  void validate() const;
};

struct Exclusion {
  std::string ticker;
  std::string reason;

  friend bool operator==(const Exclusion&, const Exclusion&) = default;
};

inline constexpr const char* kInsufficientHistory = "insufficient history";
inline constexpr const char* kNoData = "no data";

/// Dense close-price matrix, one row per calendar date and one column per
/// retained ticker. Every cell is populated and strictly positive.
struct PriceTable {
  TradingCalendar calendar;
  std::vector<std::string> tickers;
  Eigen::MatrixXd prices;  // [date x ticker]
  std::vector<Exclusion> excluded;

  [[nodiscard]] Eigen::Index rows() const { return prices.rows(); }
  [[nodiscard]] Eigen::Index cols() const { return prices.cols(); }

  /// Checks the dense/positive/unique invariants; throws InvalidArgument.
  void validate() const;
};

struct WindowSpec {
  Date train_start;
  Date train_end;
  Date test_start;
  Date test_end;

  /// train_start <= train_end < test_start <= test_end, else ConfigError.
  void validate() const;
};

/// Observations for one ticker, sorted by date, no duplicate dates.
struct RawSeries {
  std::string ticker;
  std::vector<std::pair<Date, double>> observations;
};

struct MissingDataPolicy {
  /// Minimum fraction of coverage-window calendar dates a ticker must have
  /// observed to be retained.
  double coverage_threshold = 0.95;
  /// Window over which coverage is measured (typically the training window).
  /// Unset bounds fall back to the calendar ends.
  std::optional<Date> coverage_start;
  std::optional<Date> coverage_end;
};

struct IngestionConfig {
  std::filesystem::path data_dir;
  /// Requested tickers in output order. Empty means every ticker found,
  /// sorted by id.
  std::vector<std::string> tickers;
  std::string date_format = "%Y-%m-%d";
  double coverage_threshold = 0.95;
  /// Overall date range kept from the files.
  std::optional<Date> start;
  std::optional<Date> end;
  /// Coverage window; defaults to [start, end].
  std::optional<Date> coverage_start;
  std::optional<Date> coverage_end;
};

/// A rejected input row.
struct Diagnostic {
  std::filesystem::path file;
  std::size_t line = 0;
  std::string message;

  [[nodiscard]] std::string to_string() const;
};

/// Reads every *.csv under `cfg.data_dir`. A file with header `date,close`
/// holds one ticker (named by the file stem); a file with header
/// `date,ticker,close` is long format and may hold any number of tickers.
/// Rows with unparseable dates or non-positive prices are skipped and
/// reported in `diagnostics`. Duplicate (date, ticker) pairs are fatal.
std::vector<RawSeries> read_price_files(const IngestionConfig& cfg,
                                        std::vector<Diagnostic>& diagnostics);

/// read_price_files followed by align with the config's coverage policy.
PriceTable load_csv_dir(const IngestionConfig& cfg, std::vector<Diagnostic>& diagnostics);
PriceTable load_csv_dir(const IngestionConfig& cfg);

/// Builds the union calendar, drops tickers below the coverage threshold,
/// trims leading dates that some retained ticker has not reached yet, and
/// forward-fills interior gaps. Series order is preserved.
PriceTable align(const std::vector<RawSeries>& series, const MissingDataPolicy& policy);

/// Re-aligns an existing table. Existing exclusions are carried over.
PriceTable align(const PriceTable& table, const MissingDataPolicy& policy);

/// Rows of `table` whose date lies in [first, last]. May be empty.
PriceTable slice(const PriceTable& table, Date first, Date last);

/// Splits into training and test windows. Throws InvalidArgument when the
/// test window ends after the last calendar date, the training window ends
/// before the first one, or either window is empty.
std::pair<PriceTable, PriceTable> split(const PriceTable& table, const WindowSpec& spec);

}  // namespace hrpkit::marketdata
