#include <gtest/gtest.h>

#include <random>

#include "hrpkit/error.hpp"
#include "hrpkit/marketdata.hpp"
#include "test_support.hpp"

using namespace hrpkit;
using namespace hrpkit::marketdata;
using testing_support::TempDir;

namespace {

std::string per_ticker_csv(const std::vector<std::pair<std::string, double>>& rows) {
  std::string out = "date,close\n";
  for (const auto& [d, p] : rows) out += d + "," + std::to_string(p) + "\n";
  return out;
}

RawSeries series(const std::string& ticker, const TradingCalendar& cal, const std::vector<double>& prices) {
  RawSeries s{ticker, {}};
  for (std::size_t i = 0; i < prices.size(); ++i) s.observations.emplace_back(cal.dates[i], prices[i]);
  return s;
}

PriceTable table_of(std::size_t rows, std::size_t cols) {
  PriceTable t;
  t.calendar = testing_support::weekdays(rows);
  t.tickers = testing_support::names(cols);
  t.prices.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < t.prices.rows(); ++i)
    for (Eigen::Index j = 0; j < t.prices.cols(); ++j) t.prices(i, j) = 100.0 + static_cast<double>(i + 10 * j);
  return t;
}

}  // namespace

TEST(Date, ParsesIsoAndRejectsImpossibleDays) {
  EXPECT_EQ(Date::parse_iso("2021-08-26")->iso(), "2021-08-26");
  EXPECT_FALSE(Date::parse_iso("2021-02-30"));
  EXPECT_FALSE(Date::parse_iso("2021-8-26"));
  EXPECT_FALSE(Date::parse_iso("not a date"));
  EXPECT_TRUE(Date::parse_iso("2020-02-29"));
  EXPECT_LT(*Date::parse_iso("2020-12-31"), *Date::parse_iso("2021-01-01"));
}

TEST(Date, AlternateFormat) {
  auto d = Date::parse("26/08/2021", "%d/%m/%Y");
  ASSERT_TRUE(d);
  EXPECT_EQ(d->iso(), "2021-08-26");
  EXPECT_FALSE(Date::parse("2021-08-26", "%d/%m/%Y"));
}

TEST(LoadCsvDir, TwoAlignedTickers) {
  TempDir dir("load");
  std::vector<std::pair<std::string, double>> rows{
      {"2020-01-01", 10}, {"2020-01-02", 11}, {"2020-01-03", 12}, {"2020-01-06", 13}, {"2020-01-07", 14}};
  dir.write("AAA.csv", per_ticker_csv(rows));
  dir.write("BBB.csv", per_ticker_csv(rows));
  IngestionConfig cfg;
  cfg.data_dir = dir.path();
  auto table = load_csv_dir(cfg);
  EXPECT_EQ(table.rows(), 5);
  EXPECT_EQ(table.cols(), 2);
  EXPECT_TRUE(table.excluded.empty());
  EXPECT_EQ(table.tickers, (std::vector<std::string>{"AAA", "BBB"}));
  EXPECT_DOUBLE_EQ(table.prices(4, 1), 14.0);
  EXPECT_NO_THROW(table.validate());
}

TEST(LoadCsvDir, LateListingIsExcludedForInsufficientHistory) {
  TempDir dir("late");
  const auto cal = testing_support::weekdays(100);
  std::string early = "date,close\n", late = "date,close\n";
  for (std::size_t i = 0; i < cal.size(); ++i) {
    early += cal.dates[i].iso() + ",100\n";
    if (i >= 40) late += cal.dates[i].iso() + ",50\n";
  }
  dir.write("EARLY.csv", early);
  dir.write("LATE.csv", late);
  IngestionConfig cfg;
  cfg.data_dir = dir.path();
  cfg.start = cal.front();
  cfg.end = cal.back();
  auto table = load_csv_dir(cfg);
  EXPECT_EQ(table.tickers, std::vector<std::string>{"EARLY"});
  ASSERT_EQ(table.excluded.size(), 1u);
  EXPECT_EQ(table.excluded[0], (Exclusion{"LATE", kInsufficientHistory}));
}

TEST(LoadCsvDir, ZeroPriceRowRejectedWithDiagnostic) {
  TempDir dir("zero");
  dir.write("AAA.csv", "date,close\n2020-01-01,10\n2020-01-02,0\n2020-01-03,12\n");
  IngestionConfig cfg;
  cfg.data_dir = dir.path();
  cfg.coverage_threshold = 0.0;
  std::vector<Diagnostic> diag;
  auto table = load_csv_dir(cfg, diag);
  ASSERT_EQ(diag.size(), 1u);
  EXPECT_EQ(diag[0].line, 3u);
  EXPECT_NE(diag[0].message.find("non-positive"), std::string::npos);
  EXPECT_EQ(table.rows(), 2);
}

TEST(LoadCsvDir, UnparseableRowsAreDiagnosed) {
  TempDir dir("garbage");
  dir.write("AAA.csv", "date,close\n2020-01-01,10\n2020-13-01,11\n2020-01-03,abc\n2020-01-06,12,7\n\n2020-01-07,13\n");
  IngestionConfig cfg;
  cfg.data_dir = dir.path();
  cfg.coverage_threshold = 0.0;
  std::vector<Diagnostic> diag;
  auto table = load_csv_dir(cfg, diag);
  EXPECT_EQ(diag.size(), 3u);
  EXPECT_EQ(table.rows(), 2);
}

TEST(LoadCsvDir, LongFormatAndRequestedOrder) {
  TempDir dir("long");
  dir.write("prices.csv",
            "date,ticker,close\n2020-01-01,ZZZ,1\n2020-01-01,AAA,2\n2020-01-02,ZZZ,3\n2020-01-02,AAA,4\n");
  IngestionConfig cfg;
  cfg.data_dir = dir.path();
  cfg.tickers = {"ZZZ", "AAA", "MISSING"};
  auto table = load_csv_dir(cfg);
  EXPECT_EQ(table.tickers, (std::vector<std::string>{"ZZZ", "AAA"}));
  EXPECT_DOUBLE_EQ(table.prices(1, 1), 4.0);
  ASSERT_EQ(table.excluded.size(), 1u);
  EXPECT_EQ(table.excluded[0], (Exclusion{"MISSING", kNoData}));
}

TEST(LoadCsvDir, DuplicatePairIsFatalAndNamed) {
  TempDir dir("dup");
  dir.write("prices.csv", "date,ticker,close\n2020-01-01,AAA,1\n2020-01-01,AAA,2\n");
  IngestionConfig cfg;
  cfg.data_dir = dir.path();
  try {
    load_csv_dir(cfg);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("2020-01-01, AAA"), std::string::npos) << e.what();
  }
}

TEST(LoadCsvDir, Errors) {
  IngestionConfig cfg;
  cfg.data_dir = "/nonexistent/hrpkit/data";
  EXPECT_THROW(load_csv_dir(cfg), DataError);

  TempDir dir("errors");
  cfg.data_dir = dir.path();
  EXPECT_THROW(load_csv_dir(cfg), DataError);  // no CSV files

  dir.write("AAA.csv", "date,close\n2019-01-01,10\n");
  cfg.start = Date(2020, 1, 1);
  EXPECT_THROW(load_csv_dir(cfg), DataError);  // empty after range filter

  dir.write("BAD.csv", "when,price\n2020-01-01,10\n");
  EXPECT_THROW(load_csv_dir(cfg), DataError);
}

TEST(Align, ForwardFillsInteriorGap) {
  const auto cal = testing_support::weekdays(5);
  RawSeries full = series("A", cal, {10, 11, 12, 13, 14});
  RawSeries gappy = series("B", cal, {20, 21, 22, 23, 24});
  gappy.observations.erase(gappy.observations.begin() + 2);
  MissingDataPolicy policy;
  policy.coverage_threshold = 0.5;
  auto table = align({full, gappy}, policy);
  ASSERT_EQ(table.rows(), 5);
  EXPECT_DOUBLE_EQ(table.prices(2, 1), 21.0);
  EXPECT_DOUBLE_EQ(table.prices(3, 1), 23.0);
}

TEST(Align, DropsHalfCoveredSeriesAtThreshold) {
  const auto cal = testing_support::weekdays(20);
  std::vector<double> p(20, 5.0);
  RawSeries full = series("FULL", cal, p);
  RawSeries half{"HALF", {}};
  for (std::size_t i = 0; i < 20; i += 2) half.observations.emplace_back(cal.dates[i], 7.0);

  MissingDataPolicy strict;
  strict.coverage_threshold = 0.95;
  auto table = align({full, half}, strict);
  EXPECT_EQ(table.tickers, std::vector<std::string>{"FULL"});
  EXPECT_EQ(table.excluded.at(0).ticker, "HALF");

  MissingDataPolicy loose;
  loose.coverage_threshold = 0.5;
  EXPECT_EQ(align({full, half}, loose).cols(), 2);
}

TEST(Align, CompleteInputIsIdentity) {
  auto t = table_of(6, 3);
  auto a = align(t, {});
  EXPECT_EQ(a.calendar.dates, t.calendar.dates);
  EXPECT_EQ(a.tickers, t.tickers);
  EXPECT_EQ(a.prices, t.prices);
}

TEST(Align, LeadingGapIsTrimmedNotFilled) {
  const auto cal = testing_support::weekdays(40);
  RawSeries a = series("A", cal, std::vector<double>(40, 1.0));
  RawSeries b{"B", {}};
  for (std::size_t i = 1; i < 40; ++i) b.observations.emplace_back(cal.dates[i], 2.0);
  auto table = align({a, b}, {});
  EXPECT_EQ(table.calendar.front(), cal.dates[1]);
  EXPECT_EQ(table.rows(), 39);
}

TEST(Align, NothingRetainedIsAnError) {
  const auto cal = testing_support::weekdays(10);
  RawSeries sparse{"S", {{cal.dates[0], 1.0}}};
  RawSeries other = series("T", cal, std::vector<double>(10, 1.0));
  MissingDataPolicy policy;
  policy.coverage_threshold = 1.0;
  policy.coverage_start = cal.dates[0];
  EXPECT_NO_THROW(align({sparse, other}, policy));
  RawSeries odd{"ODD", {}}, even{"EVEN", {}};
  for (std::size_t i = 0; i < cal.size(); ++i) (i % 2 ? odd : even).observations.emplace_back(cal.dates[i], 1.0);
  EXPECT_THROW(align({odd, even}, MissingDataPolicy{0.95, {}, {}}), DataError);
  EXPECT_THROW(align(std::vector<RawSeries>{}, policy), DataError);
}

TEST(Align, IdempotentAndDenseOnRandomInputs) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto cal = testing_support::weekdays(60);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RawSeries> raw;
    for (int k = 0; k < 4; ++k) {
      RawSeries s{"T" + std::to_string(k), {}};
      const double keep = k == 0 ? 1.0 : 0.85 + 0.15 * u(rng);
      for (const auto& d : cal.dates)
        if (u(rng) < keep) s.observations.emplace_back(d, 1.0 + u(rng));
      raw.push_back(std::move(s));
    }
    MissingDataPolicy policy;
    policy.coverage_threshold = 0.9;
    auto once = align(raw, policy);
    auto twice = align(once, policy);
    EXPECT_EQ(once.calendar.dates, twice.calendar.dates);
    EXPECT_EQ(once.tickers, twice.tickers);
    EXPECT_EQ(once.prices, twice.prices);
    EXPECT_EQ(once.excluded, twice.excluded);
    EXPECT_NO_THROW(once.validate());
  }
}

TEST(Split, CountsDates) {
  auto t = table_of(10, 2);
  const auto& d = t.calendar.dates;
  WindowSpec spec{d[0], d[6], d[7], d[9]};
  auto [train, test] = split(t, spec);
  EXPECT_EQ(train.rows(), 7);
  EXPECT_EQ(test.rows(), 3);
  EXPECT_EQ(train.tickers, test.tickers);
}

TEST(Split, TestEndBeyondTableIsAnError) {
  auto t = table_of(10, 2);
  const auto& d = t.calendar.dates;
  WindowSpec spec{d[0], d[6], d[7], Date(2030, 1, 1)};
  EXPECT_THROW(split(t, spec), InvalidArgument);
  // 2020-01-04/05 is a weekend, so this test window holds no dates.
  WindowSpec weekend{d[0], d[2], Date(2020, 1, 4), Date(2020, 1, 5)};
  EXPECT_THROW(split(t, weekend), InvalidArgument);
  WindowSpec early{Date(2019, 1, 1), Date(2019, 6, 1), d[1], d[9]};
  EXPECT_THROW(split(t, early), InvalidArgument);
  WindowSpec reversed{d[5], d[6], d[2], d[9]};
  EXPECT_THROW(split(t, reversed), ConfigError);
}

TEST(Split, StudyWindowsOnMultiYearTable) {
  PriceTable t;
  t.calendar = testing_support::weekdays(1600, Date(2015, 12, 1));
  t.tickers = {"X"};
  t.prices = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(t.calendar.size()), 1, 100.0);
  ASSERT_LT(Date(2021, 8, 26), t.calendar.back());
  WindowSpec spec{Date(2016, 1, 1), Date(2020, 12, 31), Date(2021, 1, 1), Date(2021, 8, 26)};
  auto [train, test] = split(t, spec);
  EXPECT_GT(train.rows(), 1000);
  EXPECT_GT(test.rows(), 100);
  EXPECT_EQ(train.calendar.back(), Date(2020, 12, 31));
  EXPECT_EQ(test.calendar.front(), Date(2021, 1, 1));
  EXPECT_EQ(test.calendar.back(), Date(2021, 8, 26));
}

TEST(Split, PreservesEveryTriple) {
  auto t = table_of(30, 3);
  const auto& d = t.calendar.dates;
  auto [train, test] = split(t, WindowSpec{d[2], d[14], d[17], d[29]});
  for (const auto* part : {&train, &test}) {
    for (Eigen::Index i = 0; i < part->rows(); ++i) {
      auto it = std::find(d.begin(), d.end(), part->calendar.dates[static_cast<std::size_t>(i)]);
      ASSERT_NE(it, d.end());
      const auto src = static_cast<Eigen::Index>(it - d.begin());
      for (Eigen::Index j = 0; j < part->cols(); ++j) EXPECT_EQ(part->prices(i, j), t.prices(src, j));
    }
  }
  EXPECT_EQ(train.rows() + test.rows(), 13 + 13);
}

TEST(WindowSpecTest, Validation) {
  const Date a(2016, 1, 1), b(2020, 12, 31), c(2021, 1, 1), d(2021, 8, 26);
  EXPECT_NO_THROW((WindowSpec{a, b, c, d}.validate()));
  EXPECT_NO_THROW((WindowSpec{a, a, c, c}.validate()));
  EXPECT_THROW((WindowSpec{a, c, c, d}.validate()), ConfigError);
  EXPECT_THROW((WindowSpec{c, d, a, b}.validate()), ConfigError);
}
