#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hrpkit/stats.hpp"
#include "hrpkit/weights.hpp"

namespace hrpkit::frontier {

inline constexpr std::size_t kDefaultIterations = 10'000;
inline constexpr std::uint64_t kDefaultSeed = 42;

struct FrontierSample {
  std::size_t index = 0;
  std::vector<double> weights;
  double annual_return = 0.0;
  double annual_vol = 0.0;
  double sharpe = 0.0;
};

/// Monte-Carlo cloud of random long-only portfolios. All samples share the
/// ticker list.
struct FrontierCloud {
  std::vector<std::string> tickers;
  std::vector<FrontierSample> samples;
  double rf = stats::kDefaultRiskFreeRate;
  std::uint64_t seed = kDefaultSeed;

  [[nodiscard]] WeightVector weight_vector(const FrontierSample& s) const {
    return {tickers, s.weights};
  }
};

struct SamplingOptions {
  std::size_t iterations = kDefaultIterations;
  double rf = stats::kDefaultRiskFreeRate;
  std::uint64_t seed = kDefaultSeed;
  stats::AnnualizationConvention conv{};
  /// Worker threads. The cloud does not depend on this value.
  unsigned threads = 1;
};

/// Draw `n` weights uniformly from the simplex (normalized unit
/// exponentials). Sample `index` of stream `seed` always gives the same draw.
std::vector<double> simplex_draw(std::uint64_t seed, std::uint64_t index, std::size_t n);

/// Samples `opts.iterations` portfolios. annual_return = (w . mu) * days,
/// annual_vol = sqrt(w' S w) * sqrt(days).
FrontierCloud sample_portfolios(const stats::ReturnMatrix& rm, const stats::CovarianceMatrix& cov,
                                const SamplingOptions& opts);

/// Lowest annual_vol; ties by higher sharpe, then lower index.
const FrontierSample& min_variance_portfolio(const FrontierCloud& cloud);

/// Highest sharpe; ties by lower annual_vol, then lower index. This is the
/// portfolio reported as "CLA".
const FrontierSample& max_sharpe_portfolio(const FrontierCloud& cloud);

struct MinVarianceSolution {
  std::vector<std::string> tickers;
  Eigen::VectorXd weights;
  double condition_number = 0.0;
  /// All entries >= 0, i.e. the unconstrained optimum is long-only.
  bool long_only = false;
};

inline constexpr double kMaxConditionNumber = 1e12;

/// Unconstrained minimum-variance weights S^-1 1 / (1' S^-1 1). Used as a
/// reference for the Monte-Carlo selection; may hold negative entries.
/// Throws NumericError when the 2-norm condition number exceeds 1e12.
MinVarianceSolution closed_form_min_variance(const stats::CovarianceMatrix& cov);

}  // namespace hrpkit::frontier
