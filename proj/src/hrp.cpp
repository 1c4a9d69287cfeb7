#include "hrpkit/hrp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "hrpkit/error.hpp"

namespace hrpkit::hrp {

DistanceMatrix distance_from_correlation(const stats::CorrelationMatrix& corr) {
  const Eigen::Index n = corr.size();
  if (corr.values.cols() != n) throw InvalidArgument("correlation matrix must be square");
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = std::sqrt(std::max(0.0, (1.0 - corr.values(i, j)) / 2.0));
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return {corr.tickers, std::move(d)};
}

void LinkageTree::validate() const {
  if (leaf_count < 1) throw InvalidArgument("linkage tree has no leaves");
  if (merges.size() + 1 != leaf_count) {
    throw InvalidArgument("linkage tree over " + std::to_string(leaf_count) + " leaves needs " +
                          std::to_string(leaf_count - 1) + " merges, has " +
                          std::to_string(merges.size()));
  }
  std::vector<std::size_t> sizes(2 * leaf_count - 1, 0);
  std::vector<bool> used(2 * leaf_count - 1, false);
  std::fill(sizes.begin(), sizes.begin() + static_cast<std::ptrdiff_t>(leaf_count), 1);
  for (std::size_t k = 0; k < merges.size(); ++k) {
    const Merge& m = merges[k];
    const std::size_t node = leaf_count + k;
    for (std::size_t child : {m.left, m.right}) {
      if (child >= node) {
        throw InvalidArgument("merge " + std::to_string(k) + " references undefined node " +
                              std::to_string(child));
      }
      if (used[child]) {
        throw InvalidArgument("node " + std::to_string(child) + " has more than one parent");
      }
      used[child] = true;
    }
    if (m.left == m.right) throw InvalidArgument("merge " + std::to_string(k) + " joins a node with itself");
    if (m.size != sizes[m.left] + sizes[m.right]) {
      throw InvalidArgument("merge " + std::to_string(k) + " has inconsistent cluster size");
    }
    if (!std::isfinite(m.distance) || m.distance < 0.0) {
      throw InvalidArgument("merge " + std::to_string(k) + " has an invalid distance");
    }
    sizes[node] = m.size;
  }
}

LinkageTree ward_linkage(const DistanceMatrix& dist) {
  const auto n = static_cast<std::size_t>(dist.size());
  if (n < 1) throw InvalidArgument("ward linkage needs at least one asset");
  if (dist.values.cols() != dist.values.rows()) throw InvalidArgument("distance matrix must be square");
  if (n == 1) return {1, {}};

  const std::size_t total = 2 * n - 1;
  std::vector<double> d2(total * total, 0.0);
  auto at = [&](std::size_t a, std::size_t b) -> double& { return d2[a * total + b]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = dist.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("distances must be finite and non-negative");
      if (std::abs(v - dist.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i))) > 1e-12)
        throw InvalidArgument("distance matrix must be symmetric");
      at(i, j) = v * v;
    }
  }

  std::vector<std::size_t> size(total, 1);
  std::vector<std::size_t> min_leaf(total);
  for (std::size_t i = 0; i < n; ++i) min_leaf[i] = i;
  std::vector<std::size_t> active(n);  // ascending node ids
  for (std::size_t i = 0; i < n; ++i) active[i] = i;

  LinkageTree tree;
  tree.leaf_count = n;
  tree.merges.reserve(n - 1);

  for (std::size_t step = 0; step + 1 < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    // Ascending (a, b) scan with strict '<' keeps the lexicographically
    // smallest pair among equal costs.
    for (std::size_t x = 0; x < active.size(); ++x) {
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        const double v = at(active[x], active[y]);
        if (v < best) {
          best = v;
          bi = active[x];
          bj = active[y];
        }
      }
    }

    const std::size_t node = n + step;
    const double ni = static_cast<double>(size[bi]);
    const double nj = static_cast<double>(size[bj]);
    for (std::size_t c : active) {
      if (c == bi || c == bj) continue;
      const double nc = static_cast<double>(size[c]);
      const double v =
          ((ni + nc) * at(c, bi) + (nj + nc) * at(c, bj) - nc * best) / (ni + nj + nc);
      at(c, node) = at(node, c) = std::max(0.0, v);
    }

    size[node] = size[bi] + size[bj];
    min_leaf[node] = std::min(min_leaf[bi], min_leaf[bj]);

    std::size_t left = bi, right = bj;
    if (size[right] > size[left] || (size[right] == size[left] && min_leaf[right] < min_leaf[left])) {
      std::swap(left, right);
    }
    tree.merges.push_back({left, right, std::sqrt(best), size[node]});

    std::erase_if(active, [&](std::size_t c) { return c == bi || c == bj; });
    active.push_back(node);
  }
  return tree;
}

LeafOrder quasi_diagonalize(const LinkageTree& tree) {
  tree.validate();
  const std::size_t n = tree.leaf_count;
  LeafOrder order;
  order.permutation.reserve(n);
  if (n == 1) {
    order.permutation.push_back(0);
    return order;
  }
  std::vector<std::size_t> stack{tree.root()};
  while (!stack.empty()) {
    const std::size_t node = stack.back();
    stack.pop_back();
    if (node < n) {
      order.permutation.push_back(node);
      continue;
    }
    const Merge& m = tree.merges[node - n];
    stack.push_back(m.right);
    stack.push_back(m.left);
  }
  return order;
}

double cluster_variance(const stats::CovarianceMatrix& cov, std::span<const std::size_t> members) {
  if (members.empty()) throw InvalidArgument("cluster has no members");
  const auto n = static_cast<std::size_t>(cov.size());
  Eigen::VectorXd w(static_cast<Eigen::Index>(members.size()));
  double total = 0.0;
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (members[k] >= n) throw InvalidArgument("cluster member out of range");
    const auto i = static_cast<Eigen::Index>(members[k]);
    const double v = cov.values(i, i);
    if (!(v > 0.0)) {
      const std::string name = members[k] < cov.tickers.size() ? cov.tickers[members[k]]
                                                               : "#" + std::to_string(members[k]);
      throw NumericError("zero variance for asset '" + name + "'");
    }
    w(static_cast<Eigen::Index>(k)) = 1.0 / v;
    total += 1.0 / v;
  }
  w /= total;

  double var = 0.0;
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = 0; b < members.size(); ++b) {
      var += w(static_cast<Eigen::Index>(a)) *
             cov.values(static_cast<Eigen::Index>(members[a]), static_cast<Eigen::Index>(members[b])) *
             w(static_cast<Eigen::Index>(b));
    }
  }
  return var;
}

WeightVector recursive_bisection(const stats::CovarianceMatrix& cov, const LeafOrder& order) {
  const auto n = static_cast<std::size_t>(cov.size());
  const auto& perm = order.permutation;
  if (perm.size() != n || n == 0) {
    throw InvalidArgument("leaf order length does not match the covariance matrix");
  }
  std::vector<bool> seen(n, false);
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) throw InvalidArgument("leaf order is not a permutation");
    seen[p] = true;
  }

  std::vector<double> w(n, 1.0);
  std::vector<std::pair<std::size_t, std::size_t>> pending{{0, n}};  // [begin, end) into perm
  while (!pending.empty()) {
    auto [begin, end] = pending.back();
    pending.pop_back();
    const std::size_t k = end - begin;
    if (k < 2) continue;
    const std::size_t mid = begin + (k + 1) / 2;
    std::span<const std::size_t> left(perm.data() + begin, mid - begin);
    std::span<const std::size_t> right(perm.data() + mid, end - mid);
    const double v_left = cluster_variance(cov, left);
    const double v_right = cluster_variance(cov, right);
    const double sum = v_left + v_right;
    const double alpha = sum > 0.0 ? 1.0 - v_left / sum : 0.5;
    for (std::size_t i : left) w[i] *= alpha;
    for (std::size_t i : right) w[i] *= 1.0 - alpha;
    pending.emplace_back(mid, end);
    pending.emplace_back(begin, mid);
  }

  WeightVector out;
  out.tickers = cov.tickers;
  if (out.tickers.size() != n) {
    out.tickers.clear();
    for (std::size_t i = 0; i < n; ++i) out.tickers.push_back("#" + std::to_string(i));
  }
  out.weights = std::move(w);
  return out;
}

HrpResult hrp_weights(const stats::CovarianceMatrix& cov, const stats::CorrelationMatrix& corr) {
  if (cov.size() != corr.size() || cov.tickers != corr.tickers) {
    throw InvalidArgument("covariance and correlation matrices cover different assets");
  }
  HrpResult r;
  r.distance = distance_from_correlation(corr);
  r.tree = ward_linkage(r.distance);
  r.order = quasi_diagonalize(r.tree);
  r.weights = recursive_bisection(cov, r.order);
  return r;
}

}  // namespace hrpkit::hrp
