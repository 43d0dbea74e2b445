#include "ghostlab/ghost.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "ghostlab/linalg.hpp"

namespace ghostlab {

namespace {

std::string block_context(const Window& w, std::size_t i, std::size_t j) {
  return "block (" + w.label(i) + ", " + w.label(j) + ")";
}

void require_slot(const Window& w, std::size_t slot) {
  if (slot >= w.size()) {
    fail(ErrorCode::InvalidArgument, "window slot out of range");
  }
}

}  // namespace

const std::string& Window::label(std::size_t slot) const {
  return family->level(levels.at(slot)).label;
}

Representation Window::block_representation(std::size_t i,
                                            std::size_t j) const {
  return tensor(regular_representation(groups[i]), irreps[j], pairings[i][j]);
}

const std::vector<std::size_t>& Window::block_genset(std::size_t i,
                                                     std::size_t j) const {
  return pair_source[i][j]->generator_indices();
}

Window make_window(std::shared_ptr<const QuotientFamily> family,
                   std::vector<std::size_t> levels,
                   std::vector<Representation> irreps, std::size_t cap) {
  if (!family) fail(ErrorCode::InvalidArgument, "null family");
  if (irreps.size() != levels.size()) {
    fail(ErrorCode::InvalidArgument, "one representation per level required");
  }

  Window w;
  w.family = std::move(family);
  w.levels = std::move(levels);
  w.irreps = std::move(irreps);

  const std::size_t n = w.levels.size();
  for (std::size_t k = 0; k < n; ++k) {
    const FamilyLevel& lv = w.family->level(w.levels[k]);
    if (w.irreps[k].group() != lv.group) {
      fail(ErrorCode::GroupMismatch,
           "representation for slot " + std::to_string(k) +
               " does not live on " + lv.label);
    }
    if (!is_irreducible(w.irreps[k])) {
      fail(ErrorCode::NotIrreducible,
           lv.label + ": window representation fails the character test");
    }
    const double ud = unitarity_defect(w.irreps[k]);
    if (ud > 1e-10) {
      fail(ErrorCode::InvalidArgument,
           lv.label + ": representation not unitary (defect " +
               std::to_string(ud) + ")");
    }
    const double hd = homomorphism_defect(w.irreps[k]);
    if (hd > 1e-9) {
      fail(ErrorCode::InvalidArgument,
           lv.label + ": representation not multiplicative (defect " +
               std::to_string(hd) + ")");
    }
    w.groups.push_back(lv.group);
    w.dims.push_back(w.irreps[k].dim());
    bool collapsed = false;
    for (std::size_t idx : lv.image_indices) {
      collapsed = collapsed || idx == FiniteGroup::kIdentity;
    }
    w.identity_collapsed.push_back(collapsed);
  }
  for (std::size_t k = 1; k < n; ++k) {
    if (w.dims[k] <= w.dims[k - 1]) w.dims_strictly_increasing = false;
  }
  if (n < 2) w.dims_strictly_increasing = n == 1;

  w.pair_source.assign(n, std::vector<GroupPtr>(n));
  w.pairings.assign(n, std::vector<Pairing>(n));
  for (std::size_t i = 0; i < n; ++i) {
    w.pair_source[i][i] = w.groups[i];
    w.pairings[i][i] = identity_pairing(w.groups[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      GroupPtr q = product_image(*w.family, w.levels[i], w.levels[j], cap);
      w.pair_source[i][j] = q;
      w.pair_source[j][i] = q;
      w.pairings[i][j] = product_pairing(q, w.groups[i], w.groups[j]);
      w.pairings[j][i] = swap_pairing(w.pairings[i][j]);
    }
  }
  return w;
}

Window make_window(std::shared_ptr<const QuotientFamily> family,
                   std::vector<std::size_t> levels, IrrepPolicy policy,
                   std::size_t cap) {
  if (!family) fail(ErrorCode::InvalidArgument, "null family");
  std::vector<Representation> irreps;
  irreps.reserve(levels.size());
  for (std::size_t lv : levels) {
    irreps.push_back(choose_irrep(*family, lv, policy));
  }
  return make_window(std::move(family), std::move(levels), std::move(irreps),
                     cap);
}

// ---------------------------------------------------------------------------
// Window operators

BlockOperator build_T(const Window& w) {
  const std::size_t n = w.size();
  BlockOperator t;
  t.blocks.assign(n, std::vector<Eigen::MatrixXcd>(n));
  for (std::size_t i = 0; i < n; ++i) {
    t.group_sizes.push_back(static_cast<Eigen::Index>(w.groups[i]->order()));
    t.rep_dims.push_back(w.dims[i]);
    t.level_labels.push_back(w.label(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      t.blocks[i][j] =
          markov_operator(w.block_representation(i, j), w.block_genset(i, j));
    }
  }
  t.validate();
  return t;
}

BlockOperator generator_block_operator(const Window& w, std::size_t symbol) {
  if (symbol >= w.family->symbols().size()) {
    fail(ErrorCode::InvalidArgument, "generator symbol out of range");
  }
  const std::size_t n = w.size();
  BlockOperator op;
  op.blocks.assign(n, std::vector<Eigen::MatrixXcd>(n));
  for (std::size_t i = 0; i < n; ++i) {
    op.group_sizes.push_back(static_cast<Eigen::Index>(w.groups[i]->order()));
    op.rep_dims.push_back(w.dims[i]);
    op.level_labels.push_back(w.label(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Representation rep = w.block_representation(i, j);
      op.blocks[i][j] = rep.image(w.block_genset(i, j)[symbol]);
    }
  }
  op.validate();
  return op;
}

CoarseSpace window_space(const Window& w) {
  std::vector<CayleyGraph> blocks;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const FamilyLevel& lv = w.family->level(w.levels[i]);
    blocks.push_back(cayley_graph(w.groups[i], lv.image_indices, lv.label));
  }
  return coarse_union(std::move(blocks));
}

BlockSpectra eigensolve_blocks(const BlockOperator& t, int parallelism) {
  if (parallelism < 1) {
    fail(ErrorCode::InvalidArgument, "parallelism must be at least 1");
  }
  t.validate();
  const std::size_t n = t.levels();
  BlockSpectra out;
  out.values.assign(n, std::vector<Eigen::VectorXd>(n));
  out.vectors.assign(n, std::vector<Eigen::MatrixXcd>(n));

  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!t.is_zero_block(i, j)) tasks.emplace_back(i, j);
    }
  }

  std::atomic<std::size_t> cursor{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = cursor.fetch_add(1);
      if (k >= tasks.size()) return;
      const auto [i, j] = tasks[k];
      try {
        linalg::HermitianEig eig = linalg::hermitian_eig(t.block(i, j));
        out.values[i][j] = std::move(eig.values);
        out.vectors[i][j] = std::move(eig.vectors);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(parallelism),
                            std::max<std::size_t>(tasks.size(), 1));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < workers; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

// ---------------------------------------------------------------------------
// Clusters and gaps

GapInfo gap_at_one(const Eigen::VectorXd& evals_ascending, double cluster_tol) {
  const Eigen::Index n = evals_ascending.size();
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    if (evals_ascending[k] < 1.0 - cluster_tol) {
      return {1.0 - evals_ascending[k], false};
    }
  }
  return {2.0, true};
}

double gap_at_one(const Eigen::MatrixXcd& block, double cluster_tol) {
  return gap_at_one(linalg::hermitian_eigenvalues(block), cluster_tol).gap;
}

Eigen::Index one_cluster_multiplicity(const Eigen::VectorXd& evals_ascending,
                                      double cluster_tol,
                                      const std::string& context) {
  const Eigen::Index n = evals_ascending.size();
  if (n > 0 && evals_ascending[n - 1] > 1.0 + 1e-6) {
    fail(ErrorCode::InvalidArgument,
         context + ": eigenvalue " + std::to_string(evals_ascending[n - 1]) +
             " above 1; not an averaging operator");
  }
  Eigen::Index count = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double v = evals_ascending[k];
    if (v >= 1.0 - cluster_tol) {
      ++count;
    } else if (v > 1.0 - kClusterAmbiguityBand) {
      fail(ErrorCode::ClusterAmbiguous,
           context + ": eigenvalue " + std::to_string(v) +
               " falls between the cluster threshold and the ambiguity band");
    }
  }
  return count;
}

// ---------------------------------------------------------------------------
// Ghost projection

BlockOperator ghost_projection(const Window& w, const BlockOperator& t,
                               const BlockSpectra& spectra, double cluster_tol,
                               double projection_tol, double* worst_defect) {
  t.validate();
  const std::size_t n = t.levels();
  if (n != w.size()) {
    fail(ErrorCode::InvalidArgument, "window and operator disagree on levels");
  }
  BlockOperator e = BlockOperator::zero_like(t);
  double worst = 0.0;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (t.is_zero_block(i, j)) continue;
      const std::string context = block_context(w, i, j);
      const Eigen::VectorXd& evals = spectra.values[i][j];
      const Eigen::MatrixXcd& vecs = spectra.vectors[i][j];
      if (evals.size() != t.block_dim(i, j) || vecs.cols() != evals.size()) {
        fail(ErrorCode::InvalidArgument, context + ": spectra shape mismatch");
      }
      const Eigen::Index m =
          one_cluster_multiplicity(evals, cluster_tol, context);

      // Group-averaged invariant projection: the independent algebraic
      // route the spectral cluster must reproduce.
      const Eigen::MatrixXcd averaged =
          invariant_projection(w.block_representation(i, j));

      if (m == 0) {
        const double defect = averaged.norm();
        if (defect > projection_tol) {
          fail(ErrorCode::OracleMismatch,
               context + ": empty 1-cluster but averaged projection has norm " +
                   std::to_string(defect));
        }
        worst = std::max(worst, defect);
        continue;  // zero block stays empty
      }

      const Eigen::MatrixXcd cluster = vecs.rightCols(m);
      const double ortho = (cluster.adjoint() * cluster -
                            Eigen::MatrixXcd::Identity(m, m))
                               .cwiseAbs()
                               .maxCoeff();
      if (ortho > 1e-9) {
        fail(ErrorCode::InvalidArgument,
             context + ": cluster eigenvectors lost orthonormality");
      }
      Eigen::MatrixXcd proj = cluster * cluster.adjoint();
      const double defect = (proj - averaged).norm();
      if (defect > projection_tol) {
        fail(ErrorCode::OracleMismatch,
             context + ": spectral and averaged projections differ by " +
                 std::to_string(defect) + " (Frobenius)");
      }
      worst = std::max(worst, defect);
      e.blocks[i][j] = std::move(proj);
    }
  }
  if (worst_defect) *worst_defect = worst;
  return e;
}

BlockOperator ghost_projection(const Window& w, const BlockOperator& t) {
  const BlockSpectra spectra = eigensolve_blocks(t, 1);
  return ghost_projection(w, t, spectra);
}

// ---------------------------------------------------------------------------
// Ranks

RankSequence rank_sequence(const Window& w, const BlockOperator& e,
                           const BlockSpectra* spectra, double cluster_tol) {
  e.validate();
  const std::size_t n = e.levels();
  if (n != w.size()) {
    fail(ErrorCode::InvalidArgument, "window and operator disagree on levels");
  }
  RankSequence out;
  out.numeric.assign(n, std::vector<Eigen::Index>(n, 0));
  out.oracle.assign(n, std::vector<Eigen::Index>(n, 0));

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::string context = block_context(w, i, j);

      // Numeric rank: 1-cluster multiplicity when spectra are available,
      // cross-checked against the trace of the projection block (a
      // projection's trace is its rank).
      Eigen::Index numeric = 0;
      std::optional<Eigen::Index> trace_rank;
      if (!e.is_zero_block(i, j)) {
        const Complex tr = e.block(i, j).trace();
        const double rounded = std::round(tr.real());
        if (std::abs(tr.imag()) > 1e-8 || std::abs(tr.real() - rounded) > 1e-6) {
          fail(ErrorCode::OracleMismatch,
               context + ": projection trace " + std::to_string(tr.real()) +
                   " is not near an integer");
        }
        trace_rank = static_cast<Eigen::Index>(rounded);
      } else {
        trace_rank = 0;
      }
      if (spectra) {
        numeric = one_cluster_multiplicity(spectra->values[i][j], cluster_tol,
                                           context);
        if (trace_rank && *trace_rank != numeric) {
          fail(ErrorCode::OracleMismatch,
               context + ": cluster multiplicity " + std::to_string(numeric) +
                   " disagrees with projection trace " +
                   std::to_string(*trace_rank));
        }
      } else {
        numeric = *trace_rank;
      }
      out.numeric[i][j] = numeric;

      // Character oracle: (|G_i| / |Q|) Σ over the kernel fiber of χ_π.
      const GroupPtr& q = w.pair_source[i][j];
      const Pairing& pairing = w.pairings[i][j];
      Complex acc(0.0, 0.0);
      for (std::size_t x = 0; x < q->order(); ++x) {
        if (pairing.into_a[x] == FiniteGroup::kIdentity) {
          acc += w.irreps[j].character(pairing.into_b[x]);
        }
      }
      const double value =
          acc.real() * double(w.groups[i]->order()) / double(q->order());
      const double rounded = std::round(value);
      if (std::abs(acc.imag()) > 1e-9 || std::abs(value - rounded) > 1e-6 ||
          rounded < 0) {
        fail(ErrorCode::OracleMismatch,
             context + ": character sum " + std::to_string(value) +
                 " is not a nonnegative integer");
      }
      out.oracle[i][j] = static_cast<Eigen::Index>(rounded);

      if (out.oracle[i][j] != out.numeric[i][j]) {
        fail(ErrorCode::OracleMismatch,
             context + ": numeric rank " + std::to_string(out.numeric[i][j]) +
                 " disagrees with character oracle " +
                 std::to_string(out.oracle[i][j]));
      }
    }
  }
  out.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = out.numeric[i][i];
  return out;
}

// ---------------------------------------------------------------------------
// Quotient gaps

double quotient_cayley_gap(const GroupPtr& q) {
  if (!q) fail(ErrorCode::InvalidArgument, "null group");
  const std::size_t n = q->order();
  if (n < 2) return 2.0;  // no nontrivial spectrum to speak of
  const auto& genset = q->generator_indices();
  const double weight = 1.0 / double(genset.size());

  if (Eigen::Index(n) <= kDenseEigenLimit) {
    Eigen::MatrixXd markov = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t s : genset) {
      const auto lt = q->left_translation(s);
      for (std::size_t x = 0; x < n; ++x) markov(lt[x], x) += weight;
    }
    const Eigen::VectorXd evals = linalg::symmetric_eigenvalues(markov);
    if (std::abs(evals[n - 1] - 1.0) > 1e-8) {
      fail(ErrorCode::Disconnected,
           "averaging operator top eigenvalue " + std::to_string(evals[n - 1]) +
               " differs from 1");
    }
    return 1.0 - evals[n - 2];
  }

  std::vector<std::vector<std::uint32_t>> tables;
  tables.reserve(genset.size());
  for (std::size_t s : genset) tables.push_back(q->left_translation(s));
  auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    y.setZero();
    for (const auto& lt : tables) {
      for (std::size_t v = 0; v < lt.size(); ++v) y[lt[v]] += weight * x[v];
    }
  };
  const double mu2 =
      linalg::top_eigenvalue_ones_deflated(apply, Eigen::Index(n));
  return 1.0 - mu2;
}

// ---------------------------------------------------------------------------
// Claims

GapReport verify_claim1(const Window& w, const BlockSpectra& spectra,
                        double cluster_tol) {
  const std::size_t n = w.size();
  GapReport report;
  report.window_size = n;
  report.identity_collapsed = w.identity_collapsed;
  report.pair_gap = Eigen::MatrixXd::Zero(n, n);
  report.quotient_gap = Eigen::MatrixXd::Constant(
      n, n, std::numeric_limits<double>::quiet_NaN());
  report.degenerate.assign(n, std::vector<bool>(n, false));
  report.quotient_available.assign(n, std::vector<bool>(n, false));
  report.consistent.assign(n, std::vector<bool>(n, true));
  report.min_gap = n == 0 ? 2.0 : std::numeric_limits<double>::infinity();
  report.min_quotient_gap =
      n == 0 ? 2.0 : std::numeric_limits<double>::infinity();

  bool all_available = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const GapInfo info = gap_at_one(spectra.values[i][j], cluster_tol);
      report.pair_gap(i, j) = info.gap;
      report.degenerate[i][j] = info.whole_spectrum_at_one;
      report.min_gap = std::min(report.min_gap, info.gap);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const GroupPtr& q = w.pair_source[i][j];
      if (q->order() > kQuotientGapLimit) {
        all_available = false;
        continue;
      }
      const double gap = quotient_cayley_gap(q);
      report.quotient_gap(i, j) = gap;
      report.quotient_gap(j, i) = gap;
      report.quotient_available[i][j] = true;
      report.quotient_available[j][i] = true;
      report.min_quotient_gap = std::min(report.min_quotient_gap, gap);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!report.quotient_available[i][j]) continue;
      // The block representation factors through the pair-source group, so
      // its spectrum is a sub-multiset of the full regular spectrum and
      // the block gap can only be at least the quotient gap.
      report.consistent[i][j] =
          report.pair_gap(i, j) >= report.quotient_gap(i, j) - 1e-8;
      report.all_consistent =
          report.all_consistent && report.consistent[i][j];
    }
  }
  report.uniform_gap_flag =
      n > 0 && all_available && report.min_quotient_gap > 0.0;
  return report;
}

GapReport verify_claim1(const Window& w) {
  const BlockOperator t = build_T(w);
  const BlockSpectra spectra = eigensolve_blocks(t, 1);
  return verify_claim1(w, spectra);
}

Claim2Report verify_claim2(const Window& w, const RankSequence& ranks,
                           std::size_t row) {
  require_slot(w, row);
  const std::size_t n = w.size();
  Claim2Report report;
  report.row = row;
  report.dims_strictly_increasing = w.dims_strictly_increasing;
  const Eigen::Index group_order =
      static_cast<Eigen::Index>(w.groups[row]->order());

  for (std::size_t j = 0; j < n; ++j) {
    const Eigen::Index rank = ranks.numeric[row][j];
    report.ranks.push_back(rank);
    report.bound_applies.push_back(w.dims[j] > group_order);
    report.vanishes.push_back(rank == 0);
    if (report.bound_applies.back() && rank != 0) {
      report.bound_respected = false;
    }
    if (rank > 0) report.last_nonvanishing = j;
  }
  report.eventually_vanishes =
      !report.last_nonvanishing || *report.last_nonvanishing + 1 < n;
  return report;
}

Claim3Report verify_claim3(const Window& w, const BlockOperator& e,
                           const RankSequence& ranks) {
  Claim3Report report;
  const std::size_t n = w.size();
  if (n == 0) {
    report.vacuous = true;
    return report;
  }
  report.diagonal = ranks.diagonal;
  report.diagonal_all_positive =
      std::all_of(report.diagonal.begin(), report.diagonal.end(),
                  [](Eigen::Index r) { return r > 0; });

  report.escapes_every_truncation = true;
  for (std::size_t keep = 0; keep <= n; ++keep) {
    Claim3Report::Truncation row;
    row.keep = keep;
    const BlockOperator truncated = truncate_to_J(e, keep);
    row.truncated_tail_zero = true;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = keep; j < n; ++j) {
        if (!truncated.is_zero_block(i, j) &&
            truncated.block(i, j).norm() > 0.0) {
          row.truncated_tail_zero = false;
        }
      }
    }
    row.full_tail_nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = keep; j < n; ++j) {
        if (ranks.numeric[i][j] > 0) row.full_tail_nonzero = true;
      }
    }
    if (keep < n && !row.full_tail_nonzero) {
      report.escapes_every_truncation = false;
    }
    report.truncations.push_back(row);
  }
  return report;
}

BlockOperator classical_ghost(const Window& w) {
  const std::size_t n = w.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (w.dims[k] != 1) {
      fail(ErrorCode::PolicyUnsupported,
           "classical ghost form needs trivial window representations");
    }
    for (std::size_t g = 0; g < w.groups[k]->order(); ++g) {
      if (std::abs(w.irreps[k].character(g) - Complex(1.0, 0.0)) > 0.0) {
        fail(ErrorCode::PolicyUnsupported,
             w.label(k) + ": window representation is not the trivial one");
      }
    }
  }
  BlockOperator e;
  e.blocks.assign(n, std::vector<Eigen::MatrixXcd>(n));
  for (std::size_t i = 0; i < n; ++i) {
    e.group_sizes.push_back(static_cast<Eigen::Index>(w.groups[i]->order()));
    e.rep_dims.push_back(1);
    e.level_labels.push_back(w.label(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Index m = e.group_sizes[i];
    for (std::size_t j = 0; j < n; ++j) {
      e.blocks[i][j] = Eigen::MatrixXcd::Constant(m, m, 1.0 / double(m));
    }
  }
  return e;
}

BlockOperator truncate_to_J(const BlockOperator& op, std::size_t k) {
  op.validate();
  BlockOperator out = op;
  for (std::size_t i = 0; i < op.levels(); ++i) {
    for (std::size_t j = k; j < op.levels(); ++j) {
      out.blocks[i][j] = Eigen::MatrixXcd();
    }
  }
  return out;
}

}  // namespace ghostlab
