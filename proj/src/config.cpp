#include "hrpkit/config.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "hrpkit/error.hpp"
#include "hrpkit/io.hpp"

namespace hrpkit {

using nlohmann::json;
namespace fs = std::filesystem;

void RunConfig::validate() const {
  if (sector_name.empty()) throw ConfigError("sector name must not be empty");
  if (sector_name.find_first_of("/\\") != std::string::npos || sector_name == "." || sector_name == "..") {
    throw ConfigError("sector name '" + sector_name + "' cannot be used as a directory name");
  }
  window.validate();
  if (mc_iterations < 1) throw ConfigError("mc_iterations must be >= 1");
  if (trading_days < 1) throw ConfigError("trading_days must be >= 1");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (!(ingestion.coverage_threshold >= 0.0 && ingestion.coverage_threshold <= 1.0)) {
    throw ConfigError("coverage_threshold must lie in [0, 1]");
  }
  if (ingestion.date_format.empty()) throw ConfigError("date_format must not be empty");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

namespace {

const std::set<std::string> kKnownKeys = {
    "sector",     "data_dir",   "tickers",   "date_format", "coverage_threshold",
    "train_start", "train_end", "test_start", "test_end",   "rf",
    "trading_days", "mc_iterations", "seed", "return_annualization", "output_dir"};

const json& require(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ConfigError(std::string("missing required key '") + key + "'");
  return *it;
}

std::string string_value(const json& v, const char* key) {
  if (!v.is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

Date date_value(const json& v, const char* key) {
  auto d = Date::parse_iso(string_value(v, key));
  if (!d) throw ConfigError(std::string("'") + key + "' must be a YYYY-MM-DD date");
  return *d;
}

double number_value(const json& v, const char* key) {
  if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

long long integer_value(const json& v, const char* key) {
  if (!v.is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
  return v.get<long long>();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

RunConfig parse_run_config(std::string_view json_text, const fs::path& base_dir,
                           const ConfigOverrides& overrides) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!kKnownKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }

  RunConfig cfg;
  cfg.sector_name = string_value(require(doc, "sector"), "sector");
  cfg.ingestion.data_dir = resolve(base_dir, string_value(require(doc, "data_dir"), "data_dir"));
  cfg.window.train_start = date_value(require(doc, "train_start"), "train_start");
  cfg.window.train_end = date_value(require(doc, "train_end"), "train_end");
  cfg.window.test_start = date_value(require(doc, "test_start"), "test_start");
  cfg.window.test_end = date_value(require(doc, "test_end"), "test_end");

  if (auto it = doc.find("tickers"); it != doc.end()) {
    if (!it->is_array()) throw ConfigError("'tickers' must be an array of strings");
    for (const auto& t : *it) cfg.ingestion.tickers.push_back(string_value(t, "tickers"));
  }
  if (auto it = doc.find("date_format"); it != doc.end()) {
    cfg.ingestion.date_format = string_value(*it, "date_format");
  }
  if (auto it = doc.find("coverage_threshold"); it != doc.end()) {
    cfg.ingestion.coverage_threshold = number_value(*it, "coverage_threshold");
  }
  if (auto it = doc.find("rf"); it != doc.end()) cfg.rf = number_value(*it, "rf");
  if (auto it = doc.find("trading_days"); it != doc.end()) {
    auto v = integer_value(*it, "trading_days");
    if (v < 1 || v > 366) throw ConfigError("trading_days must lie in [1, 366]");
    cfg.trading_days = static_cast<int>(v);
  }
  if (auto it = doc.find("mc_iterations"); it != doc.end()) {
    auto v = integer_value(*it, "mc_iterations");
    if (v < 1) throw ConfigError("mc_iterations must be >= 1");
    cfg.mc_iterations = static_cast<std::size_t>(v);
  }
  if (auto it = doc.find("seed"); it != doc.end()) {
    if (!it->is_number_unsigned()) throw ConfigError("'seed' must be a non-negative integer");
    cfg.seed = it->get<std::uint64_t>();
  }
  if (auto it = doc.find("return_annualization"); it != doc.end()) {
    auto mode = string_value(*it, "return_annualization");
    if (mode == "arithmetic") {
      cfg.return_annualization = backtest::ReturnAnnualization::Arithmetic;
    } else if (mode == "geometric") {
      cfg.return_annualization = backtest::ReturnAnnualization::Geometric;
    } else {
      throw ConfigError("'return_annualization' must be \"arithmetic\" or \"geometric\"");
    }
  }
  if (auto it = doc.find("output_dir"); it != doc.end()) {
    cfg.output_dir = resolve(base_dir, string_value(*it, "output_dir"));
  }

  if (overrides.seed) cfg.seed = *overrides.seed;
  if (overrides.rf) cfg.rf = *overrides.rf;
  if (overrides.iterations) cfg.mc_iterations = *overrides.iterations;
  if (overrides.trading_days) cfg.trading_days = *overrides.trading_days;
  if (overrides.output_dir) cfg.output_dir = *overrides.output_dir;
  if (overrides.threads) cfg.threads = *overrides.threads;

  // Load the whole span once; coverage is judged on the training window.
  cfg.ingestion.start = cfg.window.train_start;
  cfg.ingestion.end = cfg.window.test_end;
  cfg.ingestion.coverage_start = cfg.window.train_start;
  cfg.ingestion.coverage_end = cfg.window.train_end;

  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const fs::path& path, const ConfigOverrides& overrides) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return parse_run_config(text, path.parent_path(), overrides);
}

}  // namespace hrpkit
