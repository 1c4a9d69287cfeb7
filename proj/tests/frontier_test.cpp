#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hrpkit/error.hpp"
#include "hrpkit/frontier.hpp"
#include "test_support.hpp"

using namespace hrpkit;
using namespace hrpkit::frontier;
using testing_support::cov_of;

namespace {

stats::ReturnMatrix flat_returns(std::size_t n, const std::vector<double>& means = {}) {
  stats::ReturnMatrix rm;
  rm.calendar = testing_support::weekdays(2);
  rm.tickers = testing_support::names(n);
  rm.returns = Eigen::MatrixXd::Zero(2, static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < means.size(); ++j) rm.returns.col(static_cast<Eigen::Index>(j)).setConstant(means[j]);
  return rm;
}

FrontierCloud hand_built(const std::vector<std::pair<double, double>>& vol_sharpe) {
  FrontierCloud c;
  c.tickers = {"X"};
  for (std::size_t i = 0; i < vol_sharpe.size(); ++i)
    c.samples.push_back({i, {1.0}, 0.0, vol_sharpe[i].first, vol_sharpe[i].second});
  return c;
}

SamplingOptions opts(std::size_t iterations, double rf = 0.01, std::uint64_t seed = 42, unsigned threads = 1) {
  SamplingOptions o;
  o.iterations = iterations;
  o.rf = rf;
  o.seed = seed;
  o.threads = threads;
  return o;
}

}  // namespace

TEST(SimplexDraw, DeterministicAndOnSimplex) {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    auto a = simplex_draw(7, i, 5);
    EXPECT_EQ(a, simplex_draw(7, i, 5));
    double sum = 0.0;
    for (double x : a) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
      sum += x;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
  EXPECT_NE(simplex_draw(7, 0, 5), simplex_draw(8, 0, 5));
  EXPECT_NE(simplex_draw(7, 0, 5), simplex_draw(7, 1, 5));
}

TEST(SamplePortfolios, SingleAsset) {
  Eigen::MatrixXd cov(1, 1);
  cov << 0.0004;
  auto cloud = sample_portfolios(flat_returns(1, {0.001}), cov_of(cov), opts(50));
  ASSERT_EQ(cloud.samples.size(), 50u);
  for (const auto& s : cloud.samples) {
    EXPECT_EQ(s.weights, std::vector<double>{1.0});
    EXPECT_EQ(s.annual_vol, cloud.samples.front().annual_vol);
    EXPECT_EQ(s.annual_return, cloud.samples.front().annual_return);
  }
  EXPECT_EQ(&max_sharpe_portfolio(cloud), &cloud.samples.front());
}

TEST(SamplePortfolios, BitIdenticalAcrossRunsAndThreadCounts) {
  std::mt19937_64 rng(31);
  auto rm = testing_support::random_returns(200, 6, rng);
  auto cov = stats::covariance(rm);
  auto a = sample_portfolios(rm, cov, opts(3000));
  auto b = sample_portfolios(rm, cov, opts(3000));
  auto c = sample_portfolios(rm, cov, opts(3000, 0.01, 42, 4));
  ASSERT_EQ(a.samples.size(), c.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].weights, b.samples[i].weights);
    EXPECT_EQ(a.samples[i].weights, c.samples[i].weights);
    EXPECT_EQ(a.samples[i].annual_vol, c.samples[i].annual_vol);
    EXPECT_EQ(a.samples[i].sharpe, c.samples[i].sharpe);
    EXPECT_EQ(a.samples[i].index, i);
  }
}

TEST(SamplePortfolios, TwoAssetMeanWeightIsHalf) {
  Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(2, 2);
  auto cloud = sample_portfolios(flat_returns(2), cov_of(cov), opts(100000));
  double mean = 0.0;
  for (const auto& s : cloud.samples) mean += s.weights[0];
  mean /= static_cast<double>(cloud.samples.size());
  EXPECT_NEAR(mean, 0.5, 0.01);
}

TEST(SamplePortfolios, SampleInvariants) {
  std::mt19937_64 rng(32);
  auto rm = testing_support::random_returns(150, 4, rng);
  auto cov = stats::covariance(rm);
  const double rf = 0.015;
  auto cloud = sample_portfolios(rm, cov, opts(5000, rf, 9));
  auto mu = stats::mean_returns(rm);
  const auto& best = max_sharpe_portfolio(cloud);
  const auto& safest = min_variance_portfolio(cloud);
  for (const auto& s : cloud.samples) {
    EXPECT_TRUE(cloud.weight_vector(s).on_simplex(1e-9));
    EXPECT_NEAR(s.sharpe, (s.annual_return - rf) / s.annual_vol, 1e-9);
    Eigen::Map<const Eigen::VectorXd> w(s.weights.data(), static_cast<Eigen::Index>(s.weights.size()));
    EXPECT_NEAR(s.annual_return, w.dot(mu) * 250, 1e-12);
    EXPECT_NEAR(s.annual_vol, std::sqrt(w.dot(cov.values * w) * 250), 1e-12);
    EXPECT_GE(best.sharpe, s.sharpe);
    EXPECT_LE(safest.annual_vol, s.annual_vol);
  }
  EXPECT_EQ(cloud.rf, rf);
  EXPECT_EQ(cloud.seed, 9u);
}

TEST(SamplePortfolios, MinVarianceSelectionIgnoresReturnScaleAtZeroRate) {
  std::mt19937_64 rng(33);
  auto rm = testing_support::random_returns(150, 4, rng);
  auto base = sample_portfolios(rm, stats::covariance(rm), opts(2000, 0.0));
  rm.returns *= 3.0;
  auto scaled = sample_portfolios(rm, stats::covariance(rm), opts(2000, 0.0));
  EXPECT_EQ(min_variance_portfolio(base).weights, min_variance_portfolio(scaled).weights);
}

TEST(SamplePortfolios, RejectsBadArguments) {
  Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(2, 2);
  EXPECT_THROW(sample_portfolios(flat_returns(2), cov_of(cov), opts(0)), InvalidArgument);
  EXPECT_THROW(sample_portfolios(flat_returns(3), cov_of(cov), opts(10)), InvalidArgument);
}

TEST(Selection, MinVarianceArgmin) {
  auto cloud = hand_built({{0.3, 0.1}, {0.1, 0.1}, {0.2, 0.1}});
  EXPECT_EQ(min_variance_portfolio(cloud).index, 1u);
}

TEST(Selection, MinVarianceTies) {
  EXPECT_EQ(min_variance_portfolio(hand_built({{0.2, 0.5}, {0.2, 0.5}, {0.2, 0.5}})).index, 0u);
  EXPECT_EQ(min_variance_portfolio(hand_built({{0.2, 0.5}, {0.2, 0.7}, {0.2, 0.7}})).index, 1u);
}

TEST(Selection, MaxSharpeArgmaxAndTies) {
  EXPECT_EQ(max_sharpe_portfolio(hand_built({{0.2, 0.5}, {0.2, 0.9}, {0.2, 0.7}})).index, 1u);
  EXPECT_EQ(max_sharpe_portfolio(hand_built({{0.3, 0.9}, {0.2, 0.9}, {0.2, 0.9}})).index, 1u);
  EXPECT_EQ(max_sharpe_portfolio(hand_built({{0.3, 0.4}})).index, 0u);
  EXPECT_THROW(max_sharpe_portfolio(FrontierCloud{}), InvalidArgument);
  EXPECT_THROW(min_variance_portfolio(FrontierCloud{}), InvalidArgument);
}

TEST(Selection, MinVarianceConvergesToClosedForm) {
  Eigen::MatrixXd cov = Eigen::Vector3d(1.0, 2.0, 4.0).asDiagonal();
  cov *= 1e-4;
  auto cloud = sample_portfolios(flat_returns(3, {0.0005, 0.0004, 0.0003}), cov_of(cov), opts(100000));
  auto exact = closed_form_min_variance(cov_of(cov));
  ASSERT_TRUE(exact.long_only);
  const double exact_vol = std::sqrt(exact.weights.dot(cov * exact.weights) * 250);
  const double mc_vol = min_variance_portfolio(cloud).annual_vol;
  EXPECT_GE(mc_vol, exact_vol * (1 - 1e-12));
  EXPECT_LT((mc_vol - exact_vol) / exact_vol, 0.05);
}

TEST(Selection, MaxSharpeFavoursDominantAsset) {
  Eigen::MatrixXd cov(2, 2);
  cov << 1e-4, 2e-5, 2e-5, 1e-4;
  const std::vector<double> mu{0.0008, 0.0002};
  auto cloud = sample_portfolios(flat_returns(2, mu), cov_of(cov), opts(10000, 0.01));
  const double picked = max_sharpe_portfolio(cloud).weights[0];
  EXPECT_GT(picked, 0.5);
  const double grid = oracle::grid_max_sharpe_two_assets({mu[0] * 250, mu[1] * 250},
                                                         testing_support::to_nested(cov * 250.0), 0.01);
  EXPECT_NEAR(picked, grid, 0.02);
}

TEST(ClosedForm, Examples) {
  Eigen::MatrixXd d(2, 2);
  d << 1, 0, 0, 3;
  auto s = closed_form_min_variance(cov_of(d));
  EXPECT_NEAR(s.weights(0), 0.75, 1e-12);
  EXPECT_NEAR(s.weights(1), 0.25, 1e-12);
  EXPECT_TRUE(s.long_only);

  auto eye = closed_form_min_variance(cov_of(Eigen::MatrixXd::Identity(4, 4)));
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(eye.weights(i), 0.25, 1e-12);
  EXPECT_NEAR(eye.condition_number, 1.0, 1e-12);
}

TEST(ClosedForm, OptimalAgainstRandomProbes) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    auto cov = oracle::random_spd(3, rng);
    auto s = closed_form_min_variance(cov_of(cov));
    auto ref = oracle::min_variance_gauss_jordan(cov);
    std::vector<double> w(s.weights.data(), s.weights.data() + 3);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(w[static_cast<std::size_t>(i)], ref[static_cast<std::size_t>(i)], 1e-9);
    const double best = oracle::quad_form(cov, w);
    for (std::uint64_t probe = 0; probe < 1000; ++probe) {
      EXPECT_LE(best, oracle::quad_form(cov, simplex_draw(1000 + static_cast<std::uint64_t>(trial), probe, 3)) * (1 + 1e-12));
    }
  }
}

TEST(ClosedForm, IllConditionedIsAnError) {
  Eigen::MatrixXd singular = Eigen::MatrixXd::Ones(3, 3);
  EXPECT_THROW(closed_form_min_variance(cov_of(singular)), NumericError);
  Eigen::MatrixXd near(2, 2);
  near << 1, 0, 0, 1e-14;
  EXPECT_THROW(closed_form_min_variance(cov_of(near)), NumericError);
}
