#pragma once

#include <string>
#include <vector>

namespace hrpkit {

/// Long-only portfolio weights, aligned with `tickers`.
struct WeightVector {
  std::vector<std::string> tickers;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const { return weights.size(); }

  /// Entries in [0, 1] and sum within `tolerance` of one.
  [[nodiscard]] bool on_simplex(double tolerance = 1e-9) const;

  /// Weight of `ticker`; throws InvalidArgument if absent.
  [[nodiscard]] double at(const std::string& ticker) const;
};

/// Sum of squared weights. 1/n for an equal-weight portfolio, 1 for a
/// single-asset one.
double herfindahl_index(const std::vector<double>& weights);
double herfindahl_index(const WeightVector& w);

}  // namespace hrpkit
