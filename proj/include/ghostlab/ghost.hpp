#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ghostlab/block_operator.hpp"
#include "ghostlab/coarse.hpp"
#include "ghostlab/families.hpp"
#include "ghostlab/group.hpp"
#include "ghostlab/representation.hpp"

namespace ghostlab {

/// Eigenvalues at least 1 - cluster_tol count as the eigenvalue-1 cluster.
inline constexpr double kDefaultClusterTol = 1e-8;
/// Eigenvalues inside (1 - band, 1 - cluster_tol) make cluster membership
/// ill-determined and abort the computation rather than misreport a rank.
inline constexpr double kClusterAmbiguityBand = 1e-3;
/// Spectral ghost projections must match the averaged projection within
/// this Frobenius distance.
inline constexpr double kDefaultProjectionTol = 1e-8;
/// Quotient-gap cross-checks are skipped (and flagged) above this order;
/// the Lanczos workspace would dominate memory beyond it.
inline constexpr std::size_t kQuotientGapLimit = 100000;

/// A finite rectangle of the level sequence: the chosen levels, one
/// verified irreducible representation per level, and for every ordered
/// level pair the subgroup the pair block averages over (the level group
/// itself on the diagonal, the generator-pair closure inside G_A x G_B off
/// it) together with its coordinate maps.
struct Window {
  std::shared_ptr<const QuotientFamily> family;
  std::vector<std::size_t> levels;
  std::vector<Representation> irreps;
  std::vector<GroupPtr> groups;
  std::vector<Eigen::Index> dims;
  bool dims_strictly_increasing = true;
  std::vector<bool> identity_collapsed;

  std::vector<std::vector<GroupPtr>> pair_source;
  std::vector<std::vector<Pairing>> pairings;

  std::size_t size() const { return levels.size(); }
  const std::string& label(std::size_t slot) const;

  /// The representation the (i, j) block of every window operator factors
  /// through: regular of G_i tensored with the level-j irrep, over the
  /// pair source group.
  Representation block_representation(std::size_t i, std::size_t j) const;

  /// Generator multiset of the (i, j) pair source, in symbol order.
  const std::vector<std::size_t>& block_genset(std::size_t i,
                                               std::size_t j) const;
};

/// Builds a window over `levels` (positions into the family). The policy
/// overload picks irreps per level; the explicit overload takes them as
/// given and verifies irreducibility, group identity and unitarity spot
/// checks. An empty level list yields an empty window (operators over it
/// are vacuous but well-formed).
Window make_window(std::shared_ptr<const QuotientFamily> family,
                   std::vector<std::size_t> levels, IrrepPolicy policy,
                   std::size_t cap = kDefaultClosureCap);
Window make_window(std::shared_ptr<const QuotientFamily> family,
                   std::vector<std::size_t> levels,
                   std::vector<Representation> irreps,
                   std::size_t cap = kDefaultClosureCap);

/// The averaged generator operator: block (i, j) is the mean of
/// (λ ⊗ π)(g) over the generator multiset of the (i, j) pair source.
/// Hermitian with spectrum in [-1, 1].
BlockOperator build_T(const Window& w);

/// Block image of a single generator symbol, (λ ⊗ π)(g_s) per block.
/// Propagation exactly 1 over the window's Cayley space.
BlockOperator generator_block_operator(const Window& w, std::size_t symbol);

/// The window's coarse space: one Cayley block per level, on the level's
/// generator image set.
CoarseSpace window_space(const Window& w);

struct BlockSpectra {
  std::vector<std::vector<Eigen::VectorXd>> values;   // ascending per block
  std::vector<std::vector<Eigen::MatrixXcd>> vectors;
};

/// Dense eigendecomposition of every block, optionally fanned out over a
/// thread pool. Results are independent of `parallelism`.
BlockSpectra eigensolve_blocks(const BlockOperator& t, int parallelism = 1);

struct GapInfo {
  double gap = 0.0;
  bool whole_spectrum_at_one = false;  // gap reported as 2 by convention
};

/// 1 minus the largest eigenvalue strictly below the 1-cluster. When the
/// whole spectrum sits in the cluster the gap is reported as 2 and
/// flagged.
GapInfo gap_at_one(const Eigen::VectorXd& evals_ascending,
                   double cluster_tol = kDefaultClusterTol);
double gap_at_one(const Eigen::MatrixXcd& block,
                  double cluster_tol = kDefaultClusterTol);

/// Size of the 1-cluster. Throws ClusterAmbiguous when an eigenvalue falls
/// inside the ambiguity band below the cluster threshold.
Eigen::Index one_cluster_multiplicity(const Eigen::VectorXd& evals_ascending,
                                      double cluster_tol,
                                      const std::string& context);

/// Spectral projection onto the eigenvalue-1 cluster of every block of T,
/// cross-checked per block against the group-averaged invariant projection
/// (Frobenius distance at most projection_tol). The convenience overload
/// eigensolves internally with default tolerances.
BlockOperator ghost_projection(const Window& w, const BlockOperator& t,
                               const BlockSpectra& spectra,
                               double cluster_tol = kDefaultClusterTol,
                               double projection_tol = kDefaultProjectionTol,
                               double* worst_defect = nullptr);
BlockOperator ghost_projection(const Window& w, const BlockOperator& t);

struct RankSequence {
  // ranks[i][j]: rank of the (i, j) block of the ghost projection.
  std::vector<std::vector<Eigen::Index>> numeric;
  std::vector<std::vector<Eigen::Index>> oracle;
  std::vector<Eigen::Index> diagonal;
};

/// Block ranks of the ghost projection, twice: numerically (1-cluster
/// multiplicity, or rounded trace when spectra are not supplied) and via
/// the character oracle (|G_N| / |Q|) Σ over the kernel fiber of χ_π.
/// Any disagreement is a hard OracleMismatch.
RankSequence rank_sequence(const Window& w, const BlockOperator& e,
                           const BlockSpectra* spectra = nullptr,
                           double cluster_tol = kDefaultClusterTol);

struct GapReport {
  std::size_t window_size = 0;
  Eigen::MatrixXd pair_gap;       // gap at 1 per block of T
  std::vector<std::vector<bool>> degenerate;
  double min_gap = 0.0;
  Eigen::MatrixXd quotient_gap;   // Cayley gap of the pair source (NaN if skipped)
  std::vector<std::vector<bool>> quotient_available;
  std::vector<std::vector<bool>> consistent;  // pair_gap >= quotient_gap - 1e-8
  bool all_consistent = true;
  double min_quotient_gap = 0.0;  // over available entries
  bool uniform_gap_flag = false;  // all available quotient gaps strictly positive
  std::vector<bool> identity_collapsed;
};

/// Uniform spectral gap across the window: the per-block gap of T at 1,
/// cross-checked against the Cayley gap of the pair-source group the block
/// factors through (the block spectrum is a sub-multiset of that regular
/// spectrum, so its gap can only be at least the quotient gap).
GapReport verify_claim1(const Window& w, const BlockSpectra& spectra,
                        double cluster_tol = kDefaultClusterTol);
GapReport verify_claim1(const Window& w);

struct Claim2Report {
  std::size_t row = 0;
  std::vector<Eigen::Index> ranks;   // rank e_{N M} for fixed N across M
  std::vector<bool> bound_applies;   // dim H_M > |G_N|
  std::vector<bool> vanishes;
  bool bound_respected = true;       // rank 0 whenever the bound applies
  std::optional<std::size_t> last_nonvanishing;
  bool eventually_vanishes = false;  // zero tail inside this window
  bool dims_strictly_increasing = false;
};

/// Row-wise vanishing: with strictly growing irrep dimensions, a fixed N
/// admits invariant vectors against only finitely many M (dim H_M > |G_N|
/// forces rank 0). When the dimension hypothesis fails the report says so
/// and claims no vanishing.
Claim2Report verify_claim2(const Window& w, const RankSequence& ranks,
                           std::size_t row);

struct Claim3Report {
  bool vacuous = false;  // empty window
  std::vector<Eigen::Index> diagonal;
  bool diagonal_all_positive = false;
  struct Truncation {
    std::size_t keep = 0;          // number of leading M-positions kept
    bool truncated_tail_zero = false;
    bool full_tail_nonzero = false;
  };
  std::vector<Truncation> truncations;
  bool escapes_every_truncation = false;
};

/// The ghost projection never falls into a finite truncation ideal: every
/// diagonal block is nonzero, so cutting the window after any k leading
/// M-positions leaves a nonzero tail.
Claim3Report verify_claim3(const Window& w, const BlockOperator& e,
                           const RankSequence& ranks);

/// Closed-form ghost projection for trivial-irrep windows: every (i, j)
/// block is the rank-one averaging projection (1/|G_i|) J on ℓ²(G_i).
/// Requires every window irrep to be the trivial one.
BlockOperator classical_ghost(const Window& w);

/// Zeroes every block whose M-position (1-based column level) exceeds k.
/// k = 0 yields the zero operator; k >= window size is the identity map.
BlockOperator truncate_to_J(const BlockOperator& op, std::size_t k);

/// 1 - mu2 of the averaging operator of a group over its generator
/// multiset; dense below kDenseEigenLimit, deflated Lanczos above.
double quotient_cayley_gap(const GroupPtr& q);

}  // namespace ghostlab
