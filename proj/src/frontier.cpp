#include "hrpkit/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "hrpkit/error.hpp"

namespace hrpkit::frontier {

namespace {

// SplitMix64: tiny, portable, and good enough to seed and drive per-sample streams.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on (0, 1].
  double next_open_unit() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

std::uint64_t stream_state(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 a(index);
  SplitMix64 b(seed ^ a.next());
  return b.next();
}

}  // namespace

std::vector<double> simplex_draw(std::uint64_t seed, std::uint64_t index, std::size_t n) {
  if (n == 0) throw InvalidArgument("cannot draw weights for zero assets");
  SplitMix64 rng(stream_state(seed, index));
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = -std::log(rng.next_open_unit());
    total += x;
  }
  if (total > 0.0) {
    for (auto& x : w) x /= total;
  } else {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(n));
  }
  return w;
}

FrontierCloud sample_portfolios(const stats::ReturnMatrix& rm, const stats::CovarianceMatrix& cov,
                                const SamplingOptions& opts) {
  if (opts.iterations == 0) throw InvalidArgument("iterations must be at least 1");
  if (opts.conv.trading_days_per_year < 1) throw InvalidArgument("trading days per year must be positive");
  const auto n = static_cast<std::size_t>(cov.size());
  if (n == 0 || rm.returns.cols() != cov.size() || rm.tickers != cov.tickers) {
    throw InvalidArgument("return matrix and covariance cover different assets");
  }

  const Eigen::VectorXd mu = stats::mean_returns(rm);
  const double days = static_cast<double>(opts.conv.trading_days_per_year);
  const double sqrt_days = std::sqrt(days);

  FrontierCloud cloud;
  cloud.tickers = cov.tickers;
  cloud.rf = opts.rf;
  cloud.seed = opts.seed;
  cloud.samples.resize(opts.iterations);

  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      FrontierSample& s = cloud.samples[i];
      s.index = i;
      s.weights = simplex_draw(opts.seed, i, n);
      const Eigen::Map<const Eigen::VectorXd> w(s.weights.data(), static_cast<Eigen::Index>(n));
      const double var = std::max(0.0, w.dot(cov.values * w));
      s.annual_return = w.dot(mu) * days;
      s.annual_vol = std::sqrt(var) * sqrt_days;
      s.sharpe = stats::sharpe_ratio(s.annual_return, s.annual_vol, opts.rf);
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(opts.threads, 1, opts.iterations);
  if (threads == 1) {
    fill(0, opts.iterations);
    return cloud;
  }

  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(threads);
  const std::size_t chunk = (opts.iterations + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(opts.iterations, begin + chunk);
    workers.emplace_back([&, t, begin, end] {
      try {
        fill(begin, end);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return cloud;
}

const FrontierSample& min_variance_portfolio(const FrontierCloud& cloud) {
  if (cloud.samples.empty()) throw InvalidArgument("empty frontier cloud");
  const FrontierSample* best = &cloud.samples.front();
  for (const auto& s : cloud.samples) {
    if (s.annual_vol < best->annual_vol ||
        (s.annual_vol == best->annual_vol && s.sharpe > best->sharpe)) {
      best = &s;
    }
  }
  return *best;
}

const FrontierSample& max_sharpe_portfolio(const FrontierCloud& cloud) {
  if (cloud.samples.empty()) throw InvalidArgument("empty frontier cloud");
  const FrontierSample* best = &cloud.samples.front();
  for (const auto& s : cloud.samples) {
    if (s.sharpe > best->sharpe || (s.sharpe == best->sharpe && s.annual_vol < best->annual_vol)) {
      best = &s;
    }
  }
  return *best;
}

MinVarianceSolution closed_form_min_variance(const stats::CovarianceMatrix& cov) {
  const Eigen::Index n = cov.size();
  if (n == 0 || cov.values.cols() != n) throw InvalidArgument("covariance matrix must be square and non-empty");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cov.values);
  const auto& sv = svd.singularValues();
  const double smallest = sv(n - 1);
  const double cond = smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
  if (!(cond <= kMaxConditionNumber)) {
    throw NumericError("covariance matrix is singular or ill-conditioned (condition number " +
                       std::to_string(cond) + ")");
  }

  const Eigen::VectorXd x = cov.values.partialPivLu().solve(Eigen::VectorXd::Ones(n));
  MinVarianceSolution out;
  out.tickers = cov.tickers;
  out.weights = x / x.sum();
  out.condition_number = cond;
  out.long_only = (out.weights.array() >= 0.0).all();
  return out;
}

}  // namespace hrpkit::frontier
