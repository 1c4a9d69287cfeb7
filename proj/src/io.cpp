#include "hrpkit/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hrpkit/error.hpp"

namespace hrpkit::io {

using nlohmann::json;

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw InvalidArgument("cannot format number");
  return std::string(buf, ptr);
}

std::optional<double> parse_double(std::string_view text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

namespace {

std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Reads a CSV with the exact `header`, calling `row` on each data line's fields.
template <typename RowFn>
void read_csv(std::istream& in, std::string_view header, std::size_t width, RowFn&& row) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != header) {
    throw DataError("expected CSV header '" + std::string(header) + "'");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = strip_cr(line);
    if (text.empty()) continue;
    auto f = fields(text);
    if (f.size() != width) throw DataError("line " + std::to_string(line_no) + ": wrong field count");
    row(f, line_no);
  }
}

double number(std::string_view text, std::size_t line_no) {
  auto v = parse_double(text);
  if (!v) throw DataError("line " + std::to_string(line_no) + ": bad number '" + std::string(text) + "'");
  return *v;
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

void write_weights_csv(std::ostream& out, const WeightVector& w) {
  if (w.tickers.size() != w.weights.size()) throw InvalidArgument("weight vector size mismatch");
  out << "ticker,weight\n";
  for (std::size_t i = 0; i < w.size(); ++i) {
    out << w.tickers[i] << ',' << format_double(w.weights[i]) << '\n';
  }
}

WeightVector read_weights_csv(std::istream& in) {
  WeightVector w;
  read_csv(in, "ticker,weight", 2, [&](const auto& f, std::size_t line_no) {
    w.tickers.emplace_back(f[0]);
    w.weights.push_back(number(f[1], line_no));
  });
  return w;
}

void write_frontier_csv(std::ostream& out, std::span<const FrontierPoint> points) {
  out << "vol,return,sharpe\n";
  for (const auto& p : points) {
    out << format_double(p.vol) << ',' << format_double(p.ret) << ',' << format_double(p.sharpe) << '\n';
  }
}

void write_frontier_csv(std::ostream& out, const frontier::FrontierCloud& cloud) {
  std::vector<FrontierPoint> points;
  points.reserve(cloud.samples.size());
  for (const auto& s : cloud.samples) points.push_back({s.annual_vol, s.annual_return, s.sharpe});
  write_frontier_csv(out, points);
}

std::vector<FrontierPoint> read_frontier_csv(std::istream& in) {
  std::vector<FrontierPoint> points;
  read_csv(in, "vol,return,sharpe", 3, [&](const auto& f, std::size_t line_no) {
    points.push_back({number(f[0], line_no), number(f[1], line_no), number(f[2], line_no)});
  });
  return points;
}

void write_daily_returns_csv(std::ostream& out, const DailyReturnsTable& table) {
  if (table.cla.size() != table.dates.size() || table.hrp.size() != table.dates.size()) {
    throw InvalidArgument("daily return columns have different lengths");
  }
  out << "date,cla_return,hrp_return\n";
  for (std::size_t i = 0; i < table.dates.size(); ++i) {
    out << table.dates[i].iso() << ',' << format_double(table.cla[i]) << ','
        << format_double(table.hrp[i]) << '\n';
  }
}

void write_daily_returns_csv(std::ostream& out, const backtest::DailyReturnSeries& cla,
                             const backtest::DailyReturnSeries& hrp) {
  if (cla.calendar.dates != hrp.calendar.dates) {
    throw InvalidArgument("daily return series are on different calendars");
  }
  write_daily_returns_csv(out, DailyReturnsTable{cla.calendar.dates, cla.values, hrp.values});
}

DailyReturnsTable read_daily_returns_csv(std::istream& in) {
  DailyReturnsTable t;
  read_csv(in, "date,cla_return,hrp_return", 3, [&](const auto& f, std::size_t line_no) {
    auto d = Date::parse_iso(f[0]);
    if (!d) throw DataError("line " + std::to_string(line_no) + ": bad date");
    t.dates.push_back(*d);
    t.cla.push_back(number(f[1], line_no));
    t.hrp.push_back(number(f[2], line_no));
  });
  return t;
}

std::string dendrogram_json(const Dendrogram& d) {
  json nodes = json::array();
  for (std::size_t k = 0; k < d.tree.merges.size(); ++k) {
    const auto& m = d.tree.merges[k];
    nodes.push_back({{"id", d.tree.leaf_count + k},
                     {"left", m.left},
                     {"right", m.right},
                     {"distance", m.distance},
                     {"size", m.size}});
  }
  json leaf_tickers = json::array();
  for (std::size_t i : d.order.permutation) {
    leaf_tickers.push_back(i < d.tickers.size() ? d.tickers[i] : std::to_string(i));
  }
  json doc = {{"leaf_count", d.tree.leaf_count},
              {"tickers", d.tickers},
              {"nodes", nodes},
              {"leaf_order", d.order.permutation},
              {"leaf_order_tickers", leaf_tickers}};
  return doc.dump(2) + "\n";
}

Dendrogram parse_dendrogram_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    Dendrogram d;
    d.tickers = doc.at("tickers").get<std::vector<std::string>>();
    d.tree.leaf_count = doc.at("leaf_count").get<std::size_t>();
    std::size_t k = 0;
    for (const auto& node : doc.at("nodes")) {
      if (node.at("id").get<std::size_t>() != d.tree.leaf_count + k) {
        throw DataError("dendrogram node ids must be consecutive from leaf_count");
      }
      d.tree.merges.push_back({node.at("left").get<std::size_t>(), node.at("right").get<std::size_t>(),
                               node.at("distance").get<double>(), node.at("size").get<std::size_t>()});
      ++k;
    }
    d.order.permutation = doc.at("leaf_order").get<std::vector<std::size_t>>();
    d.tree.validate();
    return d;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed dendrogram JSON: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw DataError(std::string("malformed dendrogram: ") + e.what());
  }
}

std::string reports_json(std::span<const backtest::PerformanceReport> reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back({{"portfolio", r.portfolio},
                   {"window", r.window},
                   {"annual_vol", r.annual_vol},
                   {"annual_return", r.annual_return},
                   {"sharpe", r.sharpe},
                   {"rf", r.rf}});
  }
  return arr.dump(2) + "\n";
}

std::vector<backtest::PerformanceReport> parse_reports_json(std::string_view text) {
  try {
    std::vector<backtest::PerformanceReport> out;
    for (const auto& r : json::parse(text)) {
      out.push_back({r.at("portfolio").get<std::string>(), r.at("window").get<std::string>(),
                     r.at("annual_vol").get<double>(), r.at("sharpe").get<double>(),
                     r.at("annual_return").get<double>(), r.at("rf").get<double>()});
    }
    return out;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed report JSON: ") + e.what());
  }
}

std::string performance_table(const std::string& sector,
                              std::span<const backtest::PerformanceReport> reports) {
  auto find = [&](const std::string& p, const std::string& w) -> const backtest::PerformanceReport* {
    for (const auto& r : reports) {
      if (r.portfolio == p && r.window == w) return &r;
    }
    return nullptr;
  };
  std::string title = sector;
  for (auto& c : title) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));

  std::ostringstream out;
  out << title << " PORTFOLIO PERFORMANCE\n\n";
  out << pad("Portfolio", 12) << pad("Training Performance", 24) << "Test Performance\n";
  out << pad("", 12) << pad("Vol", 10) << pad("Sharpe Ratio", 14) << pad("Vol", 10) << "Sharpe Ratio\n";
  for (const char* p : {backtest::kCla, backtest::kHrp}) {
    out << pad(p, 12);
    for (const char* w : {backtest::kTrain, backtest::kTest}) {
      const auto* r = find(p, w);
      out << pad(r ? fixed4(r->annual_vol) : "-", 10);
      std::string sr = r ? fixed4(r->sharpe) : "-";
      out << (std::string(w) == backtest::kTrain ? pad(sr, 14) : sr);
    }
    out << '\n';
  }
  return out.str();
}

std::string summary_table(std::span<const SummaryRow> rows) {
  std::ostringstream out;
  out << pad("Sector", 14) << pad("Training Performance", 28) << "Test Performance\n";
  out << pad("", 14) << pad("Portfolio with higher SR", 28) << "Portfolio with higher SR\n";
  for (const auto& r : rows) {
    out << pad(r.sector, 14) << pad(r.failed ? "failed" : r.train_winner, 28)
        << (r.failed ? "failed" : r.test_winner) << '\n';
  }
  return out.str();
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << "sector,train_winner,test_winner,status\n";
  for (const auto& r : rows) {
    out << r.sector << ',' << (r.failed ? "failed" : r.train_winner) << ','
        << (r.failed ? "failed" : r.test_winner) << ',' << (r.failed ? "failed" : "ok") << '\n';
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DataError("write failed for " + path.string());
}

}  // namespace hrpkit::io
