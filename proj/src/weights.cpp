#include "hrpkit/weights.hpp"

#include <cmath>
#include <numeric>

#include "hrpkit/error.hpp"

namespace hrpkit {

bool WeightVector::on_simplex(double tolerance) const {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0)) return false;
    sum += w;
  }
  return !weights.empty() && std::abs(sum - 1.0) <= tolerance;
}

double WeightVector::at(const std::string& ticker) const {
  for (std::size_t i = 0; i < tickers.size(); ++i) {
    if (tickers[i] == ticker) return weights.at(i);
  }
  throw InvalidArgument("no weight for ticker '" + ticker + "'");
}

double herfindahl_index(const std::vector<double>& weights) {
  return std::inner_product(weights.begin(), weights.end(), weights.begin(), 0.0);
}

double herfindahl_index(const WeightVector& w) { return herfindahl_index(w.weights); }

}  // namespace hrpkit
