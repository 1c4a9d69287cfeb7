#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hrpkit/stats.hpp"
#include "hrpkit/weights.hpp"

namespace hrpkit::hrp {

/// Correlation distance d = sqrt((1 - rho) / 2), in [0, 1] with zero diagonal.
struct DistanceMatrix {
  std::vector<std::string> tickers;
  Eigen::MatrixXd values;

  [[nodiscard]] Eigen::Index size() const { return values.rows(); }
};

/// One agglomeration step. Merge k creates node `leaf_count + k`.
struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  double distance = 0.0;
  std::size_t size = 0;

  friend bool operator==(const Merge&, const Merge&) = default;
};

/// Merge history over `leaf_count` leaves. Leaves are nodes 0..n-1.
///
/// Children are stored so that the left child is the larger cluster; equal
/// sizes put the child holding the smaller original leaf index first. The
/// ordering depends on cluster membership only, not on merge order.
struct LinkageTree {
  std::size_t leaf_count = 0;
  std::vector<Merge> merges;

  [[nodiscard]] std::size_t root() const { return leaf_count + merges.size() - 1; }

  /// Checks ids, sizes and the single-parent rule; throws InvalidArgument.
  void validate() const;
};

struct LeafOrder {
  std::vector<std::size_t> permutation;
};

DistanceMatrix distance_from_correlation(const stats::CorrelationMatrix& corr);

/// Agglomerative clustering with Ward's criterion. Squared distances are
/// updated with the Lance-Williams recurrence
///
///   d2(k, i+j) = ((n_i + n_k) d2(k,i) + (n_j + n_k) d2(k,j) - n_k d2(i,j))
///                / (n_i + n_j + n_k)
///
/// and the stored merge distance is sqrt(d2). Equal costs merge the pair
/// with the lexicographically smallest (min id, max id). A single asset gives
/// an empty merge list.
LinkageTree ward_linkage(const DistanceMatrix& dist);

/// Depth-first expansion of the root, left child first.
LeafOrder quasi_diagonalize(const LinkageTree& tree);

/// Inverse-variance portfolio over `members` and its variance w' S w.
double cluster_variance(const stats::CovarianceMatrix& cov, std::span<const std::size_t> members);

/// Top-down bisection of the seriated list. Each list of length k is cut
/// into a left part of ceil(k/2) items and a right part; the left share is
/// 1 - V_L / (V_L + V_R) where V is cluster_variance.
WeightVector recursive_bisection(const stats::CovarianceMatrix& cov, const LeafOrder& order);

struct HrpResult {
  WeightVector weights;
  DistanceMatrix distance;
  LinkageTree tree;
  LeafOrder order;
};

/// Tree clustering, quasi-diagonalization and recursive bisection in one call.
HrpResult hrp_weights(const stats::CovarianceMatrix& cov, const stats::CorrelationMatrix& corr);

}  // namespace hrpkit::hrp
