#include "ghostlab/coarse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <set>

#include "ghostlab/linalg.hpp"

namespace ghostlab {

CayleyGraph::CayleyGraph(GroupPtr group,
                         const std::vector<std::size_t>& connection,
                         std::string label)
    : group_(std::move(group)), label_(std::move(label)) {
  if (!group_) fail(ErrorCode::InvalidArgument, "null group");
  // De-duplicate, preserving first-seen order; drop identity images.
  std::set<std::size_t> seen;
  for (std::size_t s : connection) {
    if (s >= group_->order()) {
      fail(ErrorCode::InvalidArgument, "connection index out of range");
    }
    if (s == FiniteGroup::kIdentity) {
      identity_dropped_ = true;
      continue;
    }
    if (seen.insert(s).second) connection_.push_back(s);
  }
  if (connection_.empty() && group_->order() > 1) {
    fail(ErrorCode::IdentityInGenset,
         "connection set is empty after dropping identity images");
  }
  for (std::size_t s : connection_) {
    if (!seen.count(group_->inverse(s))) {
      fail(ErrorCode::NotSymmetricSet,
           "connection set is not closed under inversion at element " +
               std::to_string(s));
    }
  }

  const std::size_t n = group_->order();
  adj_.assign(n, {});
  for (std::size_t s : connection_) {
    const auto lt = group_->left_translation(s);
    for (std::size_t x = 0; x < n; ++x) {
      adj_[x].push_back(lt[x]);
    }
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());

  constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();
  dist0_.assign(n, kUnreached);
  std::queue<std::size_t> bfs;
  dist0_[FiniteGroup::kIdentity] = 0;
  bfs.push(FiniteGroup::kIdentity);
  while (!bfs.empty()) {
    const std::size_t x = bfs.front();
    bfs.pop();
    for (std::uint32_t y : adj_[x]) {
      if (dist0_[y] == kUnreached) {
        dist0_[y] = dist0_[x] + 1;
        bfs.push(y);
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (dist0_[x] == kUnreached) {
      fail(ErrorCode::Disconnected,
           "Cayley graph " + label_ + " is disconnected");
    }
    diameter_ = std::max(diameter_, dist0_[x]);
  }
}

std::uint32_t CayleyGraph::distance(std::size_t x, std::size_t y) const {
  // Left-multiplication edges make right translation an automorphism, so
  // d(x, y) = d(e, y x^{-1}).
  return dist0_[group_->mult(y, group_->inverse(x))];
}

const std::vector<std::vector<std::uint16_t>>& CayleyGraph::distance_table()
    const {
  if (table_) return *table_;
  const std::size_t n = order();
  if (n > kDistanceTableLimit) {
    fail(ErrorCode::CapExceeded,
         "distance table for " + std::to_string(n) + " vertices exceeds the cache limit");
  }
  auto table = std::make_shared<std::vector<std::vector<std::uint16_t>>>(
      n, std::vector<std::uint16_t>(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      (*table)[x][y] = static_cast<std::uint16_t>(distance(x, y));
    }
  }
  table_ = std::move(table);
  return *table_;
}

CayleyGraph cayley_graph(const GroupPtr& group,
                         const std::vector<std::size_t>& connection,
                         std::string label) {
  return CayleyGraph(group, connection, std::move(label));
}

// ---------------------------------------------------------------------------
// CoarseSpace

CoarseSpace::CoarseSpace(std::vector<CayleyGraph> blocks)
    : blocks_(std::move(blocks)),
      rule_("max(q, q', diam_q, diam_q') + 1") {
  if (blocks_.empty()) {
    fail(ErrorCode::InvalidArgument, "coarse union of zero blocks");
  }
  const std::size_t n = blocks_.size();
  cross_ = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::max({double(i + 1), double(j + 1),
                                 double(blocks_[i].diameter()),
                                 double(blocks_[j].diameter())}) +
                       1.0;
      cross_(i, j) = d;
      cross_(j, i) = d;
    }
  }
}

double CoarseSpace::cross_distance(std::size_t i, std::size_t j) const {
  if (i >= blocks_.size() || j >= blocks_.size()) {
    fail(ErrorCode::InvalidArgument, "block index out of range");
  }
  return cross_(i, j);
}

double CoarseSpace::distance(std::size_t block_x, std::size_t x,
                             std::size_t block_y, std::size_t y) const {
  if (block_x == block_y) {
    return double(blocks_[block_x].distance(x, y));
  }
  return cross_distance(block_x, block_y);
}

std::size_t CoarseSpace::total_points() const {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += b.order();
  return n;
}

CoarseSpace coarse_union(std::vector<CayleyGraph> blocks) {
  return CoarseSpace(std::move(blocks));
}

// ---------------------------------------------------------------------------
// Spectra

GapResult laplacian_gap(const CayleyGraph& graph) {
  const std::size_t n = graph.order();
  if (n < 2) {
    fail(ErrorCode::InvalidArgument, "spectral gap of a single-vertex graph");
  }
  const double k = double(graph.degree());
  GapResult out;
  out.degree = graph.degree();

  if (Eigen::Index(n) <= kDenseEigenLimit) {
    Eigen::MatrixXd adjacency = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::uint32_t y : graph.adjacency()[x]) adjacency(y, x) += 1.0;
    }
    Eigen::MatrixXd laplacian =
        k * Eigen::MatrixXd::Identity(n, n) - adjacency;
    // Two independent dense solves; the regularity identity between them
    // is reported, not assumed.
    Eigen::VectorXd lap_evals = linalg::symmetric_eigenvalues(laplacian);
    Eigen::VectorXd adj_evals = linalg::symmetric_eigenvalues(adjacency / k);
    if (std::abs(lap_evals[0]) > 1e-8) {
      fail(ErrorCode::Disconnected,
           "Laplacian kernel missing; graph " + graph.label() + " is not connected");
    }
    out.lambda1 = lap_evals[1];
    out.mu2 = adj_evals[n - 2];
    out.identity_defect = std::abs(out.lambda1 - k * (1.0 - out.mu2));
    out.dense = true;
    return out;
  }

  const auto& adj = graph.adjacency();
  auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    y.setZero();
    for (std::size_t v = 0; v < adj.size(); ++v) {
      double acc = 0.0;
      for (std::uint32_t w : adj[v]) acc += x[w];
      y[v] = acc / k;
    }
  };
  out.mu2 = linalg::top_eigenvalue_ones_deflated(apply, Eigen::Index(n));
  out.lambda1 = k * (1.0 - out.mu2);
  out.identity_defect = std::numeric_limits<double>::quiet_NaN();
  out.dense = false;
  return out;
}

std::size_t bounded_geometry_check(const CoarseSpace& space, double radius) {
  if (radius < 0) fail(ErrorCode::InvalidArgument, "negative radius");
  std::size_t worst = 0;
  for (std::size_t q = 0; q < space.block_count(); ++q) {
    const CayleyGraph& b = space.block(q);
    // Vertex transitivity: the ball size around any point equals the ball
    // around the identity.
    std::size_t ball = 0;
    for (std::uint32_t d : b.distance_from_identity()) {
      if (double(d) <= radius) ++ball;
    }
    for (std::size_t p = 0; p < space.block_count(); ++p) {
      if (p != q && space.cross_distance(q, p) <= radius) {
        ball += space.block(p).order();
      }
    }
    worst = std::max(worst, ball);
  }
  return worst;
}

TriangleSample sample_triangle_inequality(const CoarseSpace& space,
                                          std::size_t count,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_block(
      0, space.block_count() - 1);
  auto pick_point = [&](std::size_t b) {
    std::uniform_int_distribution<std::size_t> pick(0, space.block(b).order() - 1);
    return pick(rng);
  };
  TriangleSample out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t ba = pick_block(rng), bb = pick_block(rng),
                      bc = pick_block(rng);
    const std::size_t a = pick_point(ba), b = pick_point(bb), c = pick_point(bc);
    const double ac = space.distance(ba, a, bc, c);
    const double ab = space.distance(ba, a, bb, b);
    const double bc_d = space.distance(bb, b, bc, c);
    const double excess = ac - ab - bc_d;
    out.worst_excess = std::max(out.worst_excess, excess);
    if (excess > 0) ++out.violations;
    ++out.checked;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Propagation

namespace {

struct DistanceBuckets {
  // Indexed by in-block distance d = 0..diameter.
  std::vector<double> frob_sq;       // total squared Frobenius mass at d
  std::vector<double> max_sub_frob;  // largest sub-block Frobenius norm at d
};

DistanceBuckets bucketize(const Eigen::MatrixXcd& m, const CayleyGraph& g,
                          Eigen::Index db) {
  const std::size_t n = g.order();
  DistanceBuckets out;
  out.frob_sq.assign(g.diameter() + 1, 0.0);
  out.max_sub_frob.assign(g.diameter() + 1, 0.0);
  const auto& dist0 = g.distance_from_identity();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const std::uint32_t d =
          dist0[g.group()->mult(y, g.group()->inverse(x))];
      double fs = 0.0;
      for (Eigen::Index i = 0; i < db; ++i) {
        for (Eigen::Index j = 0; j < db; ++j) {
          const double a = std::abs(m(Eigen::Index(x) * db + i,
                                      Eigen::Index(y) * db + j));
          fs += a * a;
        }
      }
      out.frob_sq[d] += fs;
      out.max_sub_frob[d] = std::max(out.max_sub_frob[d], std::sqrt(fs));
    }
  }
  return out;
}

Eigen::MatrixXcd masked_tail(const Eigen::MatrixXcd& m, const CayleyGraph& g,
                             Eigen::Index db, std::uint32_t radius) {
  const std::size_t n = g.order();
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(m.rows(), m.cols());
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (g.distance(x, y) > radius) {
        e.block(Eigen::Index(x) * db, Eigen::Index(y) * db, db, db) =
            m.block(Eigen::Index(x) * db, Eigen::Index(y) * db, db, db);
      }
    }
  }
  return e;
}

}  // namespace

PropagationProfile propagation(const BlockOperator& op,
                               const CoarseSpace& space,
                               const std::vector<double>& thresholds,
                               bool operator_radii) {
  op.validate();
  if (space.block_count() != op.levels()) {
    fail(ErrorCode::InvalidArgument,
         "operator level count does not match the space");
  }
  for (std::size_t i = 0; i < op.levels(); ++i) {
    if (Eigen::Index(space.block(i).order()) != op.group_sizes[i]) {
      fail(ErrorCode::InvalidArgument,
           "block " + std::to_string(i) + " size does not match its graph");
    }
  }
  for (double eps : thresholds) {
    if (!(eps > 0)) fail(ErrorCode::InvalidArgument, "thresholds must be positive");
  }

  PropagationProfile profile;
  profile.thresholds.resize(thresholds.size());
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    profile.thresholds[t].eps = thresholds[t];
  }

  for (std::size_t i = 0; i < op.levels(); ++i) {
    for (std::size_t j = 0; j < op.levels(); ++j) {
      if (op.is_zero_block(i, j)) continue;
      const CayleyGraph& g = space.block(i);
      const Eigen::Index db = op.rep_dims[j];
      const Eigen::MatrixXcd& m = op.block(i, j);
      const DistanceBuckets buckets = bucketize(m, g, db);
      const std::uint32_t diam = g.diameter();

      PropagationProfile::BlockEntry entry;
      entry.row = i;
      entry.col = j;
      entry.label = g.label();

      entry.exact = 0.0;
      for (std::uint32_t d = 0; d <= diam; ++d) {
        if (buckets.max_sub_frob[d] > 1e-12) entry.exact = double(d);
      }

      // Suffix aggregates: tail mass strictly beyond radius R.
      std::vector<double> tail_frob_sq(diam + 2, 0.0);
      std::vector<double> tail_max_sub(diam + 2, 0.0);
      for (std::int64_t d = diam; d >= 0; --d) {
        tail_frob_sq[d] = tail_frob_sq[d + 1] + buckets.frob_sq[d];
        tail_max_sub[d] = std::max(tail_max_sub[d + 1], buckets.max_sub_frob[d]);
      }

      entry.thresholds.resize(thresholds.size());
      for (std::size_t t = 0; t < thresholds.size(); ++t) {
        const double eps = thresholds[t];
        entry.thresholds[t].eps = eps;

        std::uint32_t r_kernel = diam;
        for (std::uint32_t r = 0; r <= diam; ++r) {
          if (tail_max_sub[r + 1] <= eps) {
            r_kernel = r;
            break;
          }
        }
        entry.thresholds[t].r_kernel = double(r_kernel);

        if (!operator_radii) {
          entry.thresholds[t].r_operator =
              std::numeric_limits<double>::quiet_NaN();
          continue;
        }
        // Operator norm of the tail: bracket with the largest surviving
        // sub-block (lower bound, up to sqrt(db)) and the total Frobenius
        // mass (upper bound) before paying for a norm computation.
        std::uint32_t r_op = diam;
        for (std::uint32_t r = 0; r <= diam; ++r) {
          if (std::sqrt(tail_frob_sq[r + 1]) <= eps) {
            r_op = r;
            break;
          }
          if (tail_max_sub[r + 1] / std::sqrt(double(db)) > eps) continue;
          const double nrm = linalg::operator_norm(masked_tail(m, g, db, r));
          if (nrm <= eps) {
            r_op = r;
            break;
          }
        }
        entry.thresholds[t].r_operator = double(r_op);
      }

      profile.exact = std::max(profile.exact, entry.exact);
      for (std::size_t t = 0; t < thresholds.size(); ++t) {
        profile.thresholds[t].r_kernel = std::max(
            profile.thresholds[t].r_kernel, entry.thresholds[t].r_kernel);
        if (operator_radii) {
          profile.thresholds[t].r_operator =
              std::max(profile.thresholds[t].r_operator,
                       entry.thresholds[t].r_operator);
        } else {
          profile.thresholds[t].r_operator =
              std::numeric_limits<double>::quiet_NaN();
        }
      }
      profile.per_block.push_back(std::move(entry));
    }
  }
  return profile;
}

}  // namespace ghostlab
