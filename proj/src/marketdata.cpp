#include "hrpkit/marketdata.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "hrpkit/error.hpp"

namespace hrpkit::marketdata {

namespace fs = std::filesystem;

void TradingCalendar::validate() const {
  for (std::size_t i = 1; i < dates.size(); ++i) {
    if (!(dates[i - 1] < dates[i])) {
      throw InvalidArgument("calendar not strictly increasing at " + dates[i].iso());
    }
  }
}

void PriceTable::validate() const {
  calendar.validate();
  if (prices.rows() != static_cast<Eigen::Index>(calendar.size()) ||
      prices.cols() != static_cast<Eigen::Index>(tickers.size())) {
    throw InvalidArgument("price matrix shape does not match calendar x tickers");
  }
  std::unordered_set<std::string> seen;
  for (const auto& t : tickers) {
    if (!seen.insert(t).second) throw InvalidArgument("duplicate ticker '" + t + "'");
  }
  for (Eigen::Index j = 0; j < prices.cols(); ++j) {
    for (Eigen::Index i = 0; i < prices.rows(); ++i) {
      const double p = prices(i, j);
      if (!std::isfinite(p) || p <= 0.0) {
        throw InvalidArgument("non-positive price for " + tickers[j] + " on " +
                              calendar.dates[i].iso());
      }
    }
  }
}

void WindowSpec::validate() const {
  if (!(train_start <= train_end && train_end < test_start && test_start <= test_end)) {
    throw ConfigError("window dates must satisfy train_start <= train_end < test_start <= test_end (got " +
                      train_start.iso() + ", " + train_end.iso() + ", " + test_start.iso() + ", " +
                      test_end.iso() + ")");
  }
}

std::string Diagnostic::to_string() const {
  return file.string() + ":" + std::to_string(line) + ": " + message;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

enum class Layout { PerTicker, Long };

using SeriesMap = std::map<Date, double>;

void read_one_file(const fs::path& file, const IngestionConfig& cfg,
                   std::unordered_map<std::string, SeriesMap>& by_ticker,
                   std::vector<Diagnostic>& diagnostics) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open " + file.string());

  std::string line;
  if (!std::getline(in, line)) throw DataError("empty file " + file.string());
  if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line.erase(0, 3);  // BOM

  auto header = split_fields(line);
  Layout layout;
  if (header.size() == 2 && lower(header[0]) == "date" && lower(header[1]) == "close") {
    layout = Layout::PerTicker;
  } else if (header.size() == 3 && lower(header[0]) == "date" && lower(header[1]) == "ticker" &&
             lower(header[2]) == "close") {
    layout = Layout::Long;
  } else {
    throw DataError("unrecognized header '" + line + "' in " + file.string() +
                    " (expected date,close or date,ticker,close)");
  }

  const std::string stem = file.stem().string();
  const std::size_t expected_fields = layout == Layout::PerTicker ? 2 : 3;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != expected_fields) {
      diagnostics.push_back({file, line_no, "expected " + std::to_string(expected_fields) + " fields"});
      continue;
    }
    auto date = Date::parse(fields[0], cfg.date_format);
    if (!date) {
      diagnostics.push_back({file, line_no, "unparseable date '" + std::string(fields[0]) + "'"});
      continue;
    }
    std::string_view price_text = fields.back();
    double price = 0.0;
    auto [ptr, ec] = std::from_chars(price_text.data(), price_text.data() + price_text.size(), price);
    if (ec != std::errc{} || ptr != price_text.data() + price_text.size() || !std::isfinite(price)) {
      diagnostics.push_back({file, line_no, "unparseable price '" + std::string(price_text) + "'"});
      continue;
    }
    if (price <= 0.0) {
      diagnostics.push_back({file, line_no, "non-positive price " + std::string(price_text)});
      continue;
    }
    if ((cfg.start && *date < *cfg.start) || (cfg.end && *cfg.end < *date)) continue;

    std::string ticker = layout == Layout::PerTicker ? stem : std::string(fields[1]);
    if (ticker.empty()) {
      diagnostics.push_back({file, line_no, "empty ticker"});
      continue;
    }
    auto [it, inserted] = by_ticker[ticker].emplace(*date, price);
    if (!inserted) {
      throw DataError("duplicate observation for (" + date->iso() + ", " + ticker + ") in " +
                      file.string());
    }
  }
}

}  // namespace

std::vector<RawSeries> read_price_files(const IngestionConfig& cfg,
                                        std::vector<Diagnostic>& diagnostics) {
  if (!fs::is_directory(cfg.data_dir)) {
    throw DataError("data directory not found: " + cfg.data_dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(cfg.data_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw DataError("no CSV files in " + cfg.data_dir.string());

  std::unordered_map<std::string, SeriesMap> by_ticker;
  for (const auto& f : files) read_one_file(f, cfg, by_ticker, diagnostics);

  std::vector<std::string> order = cfg.tickers;
  if (order.empty()) {
    for (const auto& [ticker, _] : by_ticker) order.push_back(ticker);
    std::sort(order.begin(), order.end());
  }

  std::vector<RawSeries> out;
  out.reserve(order.size());
  std::unordered_set<std::string> seen;
  for (const auto& ticker : order) {
    if (!seen.insert(ticker).second) throw DataError("ticker '" + ticker + "' requested twice");
    RawSeries s{ticker, {}};
    if (auto it = by_ticker.find(ticker); it != by_ticker.end()) {
      s.observations.assign(it->second.begin(), it->second.end());
    }
    out.push_back(std::move(s));
  }

  const bool any = std::any_of(out.begin(), out.end(),
                               [](const RawSeries& s) { return !s.observations.empty(); });
  if (!any) throw DataError("no usable observations in " + cfg.data_dir.string());
  return out;
}

PriceTable align(const std::vector<RawSeries>& series, const MissingDataPolicy& policy) {
  if (series.empty()) throw DataError("no tickers to align");

  std::set<Date> all_dates;
  for (const auto& s : series) {
    for (std::size_t k = 0; k < s.observations.size(); ++k) {
      if (k > 0 && !(s.observations[k - 1].first < s.observations[k].first)) {
        throw InvalidArgument("observations for " + s.ticker + " are not strictly increasing");
      }
      all_dates.insert(s.observations[k].first);
    }
  }
  if (all_dates.empty()) throw DataError("no observations to align");

  const Date cov_first = policy.coverage_start.value_or(*all_dates.begin());
  const Date cov_last = policy.coverage_end.value_or(*all_dates.rbegin());
  auto window_begin = all_dates.lower_bound(cov_first);
  auto window_end = all_dates.upper_bound(cov_last);
  std::size_t window_size = static_cast<std::size_t>(std::distance(window_begin, window_end));
  if (window_size == 0) {
    window_begin = all_dates.begin();
    window_end = all_dates.end();
    window_size = all_dates.size();
  }
  const Date window_first = *window_begin;
  const Date window_last = *std::prev(window_end);

  PriceTable out;
  std::vector<const RawSeries*> kept;
  for (const auto& s : series) {
    if (s.observations.empty()) {
      out.excluded.push_back({s.ticker, kNoData});
      continue;
    }
    std::size_t covered = 0;
    for (const auto& [d, _] : s.observations) {
      if (window_first <= d && d <= window_last) ++covered;
    }
    const double coverage = static_cast<double>(covered) / static_cast<double>(window_size);
    if (coverage < policy.coverage_threshold) {
      out.excluded.push_back({s.ticker, kInsufficientHistory});
      continue;
    }
    kept.push_back(&s);
  }
  if (kept.empty()) throw DataError("no ticker meets the coverage threshold");

  // Leading gaps are never filled: start where every retained ticker has begun.
  Date first = kept.front()->observations.front().first;
  std::set<Date> calendar;
  for (const auto* s : kept) {
    first = std::max(first, s->observations.front().first);
    for (const auto& [d, _] : s->observations) calendar.insert(d);
  }
  for (const auto& d : calendar) {
    if (!(d < first)) out.calendar.dates.push_back(d);
  }

  const auto rows = static_cast<Eigen::Index>(out.calendar.size());
  out.prices.resize(rows, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) {
    const auto& obs = kept[j]->observations;
    out.tickers.push_back(kept[j]->ticker);
    std::size_t k = 0;
    double last = 0.0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      const Date d = out.calendar.dates[static_cast<std::size_t>(i)];
      while (k < obs.size() && !(d < obs[k].first)) last = obs[k++].second;
      out.prices(i, static_cast<Eigen::Index>(j)) = last;
    }
  }
  return out;
}

PriceTable align(const PriceTable& table, const MissingDataPolicy& policy) {
  std::vector<RawSeries> series;
  series.reserve(table.tickers.size());
  for (Eigen::Index j = 0; j < table.cols(); ++j) {
    RawSeries s{table.tickers[static_cast<std::size_t>(j)], {}};
    s.observations.reserve(table.calendar.size());
    for (Eigen::Index i = 0; i < table.rows(); ++i) {
      s.observations.emplace_back(table.calendar.dates[static_cast<std::size_t>(i)], table.prices(i, j));
    }
    series.push_back(std::move(s));
  }
  PriceTable out = align(series, policy);
  out.excluded.insert(out.excluded.begin(), table.excluded.begin(), table.excluded.end());
  return out;
}

PriceTable load_csv_dir(const IngestionConfig& cfg, std::vector<Diagnostic>& diagnostics) {
  auto series = read_price_files(cfg, diagnostics);
  MissingDataPolicy policy;
  policy.coverage_threshold = cfg.coverage_threshold;
  policy.coverage_start = cfg.coverage_start ? cfg.coverage_start : cfg.start;
  policy.coverage_end = cfg.coverage_end ? cfg.coverage_end : cfg.end;
  return align(series, policy);
}

PriceTable load_csv_dir(const IngestionConfig& cfg) {
  std::vector<Diagnostic> ignored;
  return load_csv_dir(cfg, ignored);
}

PriceTable slice(const PriceTable& table, Date first, Date last) {
  const auto& dates = table.calendar.dates;
  auto lo = std::lower_bound(dates.begin(), dates.end(), first);
  auto hi = std::upper_bound(dates.begin(), dates.end(), last);
  if (hi < lo) hi = lo;
  PriceTable out;
  out.tickers = table.tickers;
  out.excluded = table.excluded;
  out.calendar.dates.assign(lo, hi);
  const auto begin = static_cast<Eigen::Index>(lo - dates.begin());
  const auto count = static_cast<Eigen::Index>(hi - lo);
  out.prices = table.prices.middleRows(begin, count);
  return out;
}

std::pair<PriceTable, PriceTable> split(const PriceTable& table, const WindowSpec& spec) {
  spec.validate();
  if (table.calendar.empty()) throw InvalidArgument("cannot split an empty table");
  if (table.calendar.back() < spec.test_end) {
    throw InvalidArgument("test window ends " + spec.test_end.iso() + ", after the last date " +
                          table.calendar.back().iso());
  }
  if (spec.train_end < table.calendar.front()) {
    throw InvalidArgument("training window ends " + spec.train_end.iso() + ", before the first date " +
                          table.calendar.front().iso());
  }
  auto train = slice(table, spec.train_start, spec.train_end);
  auto test = slice(table, spec.test_start, spec.test_end);
  if (train.calendar.empty()) throw InvalidArgument("training window is empty");
  if (test.calendar.empty()) throw InvalidArgument("test window is empty");
  return {std::move(train), std::move(test)};
}

}  // namespace hrpkit::marketdata
