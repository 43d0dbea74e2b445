#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ghostlab/block_operator.hpp"
#include "ghostlab/group.hpp"

namespace ghostlab {

/// Dense eigensolvers handle matrices up to this dimension; larger spectra
/// go through the iterative path.
inline constexpr Eigen::Index kDenseEigenLimit = 4096;

/// All-pairs distance tables are cached only up to this vertex count.
inline constexpr std::size_t kDistanceTableLimit = 8192;

/// Cayley graph of a finite group with respect to a symmetric connection
/// set, with edges x ~ s*x (left multiplication). The connection set is
/// stored de-duplicated and with identity images dropped (and flagged);
/// averaging operators elsewhere keep the multiset, so degree here and
/// weight there can legitimately differ.
class CayleyGraph {
 public:
  CayleyGraph(GroupPtr group, const std::vector<std::size_t>& connection,
              std::string label);

  const GroupPtr& group() const { return group_; }
  const std::string& label() const { return label_; }
  std::size_t order() const { return group_->order(); }
  const std::vector<std::size_t>& connection() const { return connection_; }
  std::size_t degree() const { return connection_.size(); }
  bool identity_dropped() const { return identity_dropped_; }
  const std::vector<std::vector<std::uint32_t>>& adjacency() const { return adj_; }
  std::uint32_t diameter() const { return diameter_; }

  /// Distance from the identity vertex, indexed by element.
  const std::vector<std::uint32_t>& distance_from_identity() const {
    return dist0_;
  }

  /// d(x, y), using vertex transitivity: d(x, y) = |y x^{-1}|.
  std::uint32_t distance(std::size_t x, std::size_t y) const;

  /// Cached all-pairs table (uint16 entries); only available for graphs
  /// with at most kDistanceTableLimit vertices. First call builds it.
  const std::vector<std::vector<std::uint16_t>>& distance_table() const;

 private:
  GroupPtr group_;
  std::string label_;
  std::vector<std::size_t> connection_;
  bool identity_dropped_ = false;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<std::uint32_t> dist0_;
  std::uint32_t diameter_ = 0;
  mutable std::shared_ptr<const std::vector<std::vector<std::uint16_t>>> table_;
};

CayleyGraph cayley_graph(const GroupPtr& group,
                         const std::vector<std::size_t>& connection,
                         std::string label);

/// Disjoint union of Cayley graphs with a declared cross-block metric:
/// distinct blocks q != q' (1-based positions) sit at distance
/// max(q, q', diam_q, diam_q') + 1. This keeps blocks farther apart than
/// either diameter, grows along the sequence, and satisfies the triangle
/// inequality.
class CoarseSpace {
 public:
  explicit CoarseSpace(std::vector<CayleyGraph> blocks);

  std::size_t block_count() const { return blocks_.size(); }
  const CayleyGraph& block(std::size_t i) const { return blocks_[i]; }
  double cross_distance(std::size_t i, std::size_t j) const;
  double distance(std::size_t block_x, std::size_t x, std::size_t block_y,
                  std::size_t y) const;
  const std::string& cross_rule() const { return rule_; }
  std::size_t total_points() const;

 private:
  std::vector<CayleyGraph> blocks_;
  Eigen::MatrixXd cross_;
  std::string rule_;
};

CoarseSpace coarse_union(std::vector<CayleyGraph> blocks);

struct GapResult {
  double lambda1 = 0.0;          // second-smallest Laplacian eigenvalue
  double mu2 = 0.0;              // second-largest normalized adjacency eigenvalue
  double identity_defect = 0.0;  // |lambda1 - degree*(1 - mu2)|; NaN iterative
  bool dense = true;             // which solver path produced the numbers
  std::size_t degree = 0;
};

/// Spectral gap of one Cayley block, solved twice on the dense path: the
/// Laplacian eigenvalue directly and mu2 from the normalized adjacency, so
/// the identity lambda1 = degree*(1 - mu2) is a genuine cross-check rather
/// than a tautology. Beyond the dense limit mu2 comes from a deflated
/// Lanczos run and lambda1 is derived.
GapResult laplacian_gap(const CayleyGraph& graph);

/// Largest ball cardinality at radius r over the whole space: the
/// in-block ball (vertex transitivity makes it basepoint-free) plus every
/// block whose cross distance is within r.
std::size_t bounded_geometry_check(const CoarseSpace& space, double radius);

struct TriangleSample {
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst_excess = 0.0;  // max d(a,c) - d(a,b) - d(b,c) observed
};

/// Seeded random triples across the whole union, testing the triangle
/// inequality of the assembled metric exactly.
TriangleSample sample_triangle_inequality(const CoarseSpace& space,
                                          std::size_t count,
                                          std::uint64_t seed);

struct PropagationProfile {
  struct Threshold {
    double eps = 0.0;
    // Smallest R with max sub-block Frobenius norm beyond R at most eps:
    // the kernel-decay reading, the one under which ghost operators have
    // shrinking tails as blocks grow.
    double r_kernel = 0.0;
    // Smallest R with operator norm of the tail at most eps. NaN when the
    // scan was not requested (it can be far more expensive).
    double r_operator = 0.0;
  };
  struct BlockEntry {
    std::size_t row = 0;
    std::size_t col = 0;
    std::string label;
    double exact = 0.0;
    std::vector<Threshold> thresholds;
  };
  double exact = 0.0;  // largest distance carrying a sub-block above 1e-12
  std::vector<Threshold> thresholds;
  std::vector<BlockEntry> per_block;
};

/// Propagation data of a block operator over the space it acts on: the
/// exact propagation radius, and for each requested epsilon the smallest R
/// such that zeroing all sub-blocks between points farther than R leaves
/// an error of size at most epsilon. Two readings of "size" are reported:
/// the largest surviving sub-block (kernel decay) and, when
/// `operator_radii` is set, the operator norm of the whole tail. They
/// differ materially: averaging projections have tails whose entries
/// shrink with the block size while their operator-norm mass does not.
PropagationProfile propagation(const BlockOperator& op,
                               const CoarseSpace& space,
                               const std::vector<double>& thresholds,
                               bool operator_radii = true);

}  // namespace ghostlab
