#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "ghostlab/families.hpp"
#include "ghostlab/ghost.hpp"
#include "ghostlab/linalg.hpp"

using namespace ghostlab;

namespace {

std::shared_ptr<const QuotientFamily> shared_sl2(
    std::vector<std::uint64_t> primes) {
  return std::make_shared<const QuotientFamily>(sl2_family(primes));
}

Window steinberg_window(std::vector<std::uint64_t> primes) {
  auto family = shared_sl2(std::move(primes));
  std::vector<std::size_t> levels(family->level_count());
  for (std::size_t i = 0; i < levels.size(); ++i) levels[i] = i;
  return make_window(family, levels, IrrepPolicy::Steinberg);
}

}  // namespace

TEST_CASE("window assembly records dims and pair sources") {
  const Window w = steinberg_window({3, 5});
  REQUIRE(w.size() == 2);
  CHECK(w.dims == std::vector<Eigen::Index>{3, 5});
  CHECK(w.dims_strictly_increasing);
  CHECK(w.label(0) == "SL(2,3)");
  CHECK(w.label(1) == "SL(2,5)");

  // diagonal pair sources are the level groups themselves
  CHECK(w.pair_source[0][0]->order() == 24);
  CHECK(w.pair_source[1][1]->order() == 120);
  // the cross source is the generator-pair closure
  CHECK(w.pair_source[0][1]->order() == 2880);
  CHECK(w.pair_source[1][0]->order() == 2880);

  // block representations have the tensor dimensions
  CHECK(w.block_representation(0, 1).dim() == 24 * 5);
  CHECK(w.block_representation(1, 0).dim() == 120 * 3);
}

TEST_CASE("T blocks are hermitian contractions") {
  const Window w = steinberg_window({3, 5});
  const BlockOperator t = build_T(w);
  REQUIRE(t.levels() == 2);

  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const Eigen::MatrixXcd& block = t.block(i, j);
      REQUIRE(block.rows() == t.block_dim(i, j));
      CHECK((block - block.adjoint()).norm() < 1e-12);
      const Eigen::VectorXd evals = linalg::hermitian_eigenvalues(block);
      CHECK(evals(0) >= -1.0 - 1e-10);
      CHECK(evals(evals.size() - 1) <= 1.0 + 1e-10);
    }
  }
}

TEST_CASE("single trivial level collapses to the cayley averaging operator") {
  auto family = shared_sl2({5});
  const Window w = make_window(family, {0}, IrrepPolicy::Trivial);
  const BlockOperator t = build_T(w);

  // with a trivial irrep the tensor factor drops out and the block is the
  // normalized adjacency of the quotient Cayley graph
  const GroupPtr g = family->level(0).group;
  const Representation reg = regular_representation(g);
  const Eigen::MatrixXcd expect = markov_operator(reg, g->generator_indices());
  CHECK((t.block(0, 0) - expect).norm() < 1e-12);
}

TEST_CASE("ghost projection matches the averaged projection blockwise") {
  const Window w = steinberg_window({3, 5});
  const BlockOperator t = build_T(w);
  const BlockSpectra spectra = eigensolve_blocks(t);

  double worst = 0.0;
  const BlockOperator e = ghost_projection(w, t, spectra, kDefaultClusterTol,
                                           kDefaultProjectionTol, &worst);
  CHECK(worst < 1e-8);

  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const Eigen::MatrixXcd avg = invariant_projection(
          w.block_representation(i, j));
      if (e.is_zero_block(i, j)) {
        CHECK(avg.norm() < 1e-8);
      } else {
        CHECK((e.block(i, j) - avg).norm() < 1e-8);
        // idempotent and self-adjoint
        const Eigen::MatrixXcd& p = e.block(i, j);
        CHECK((p * p - p).norm() < 1e-9);
        CHECK((p - p.adjoint()).norm() < 1e-12);
      }
    }
  }
}

TEST_CASE("eigensolve is independent of the parallelism degree") {
  const Window w = steinberg_window({3, 5});
  const BlockOperator t = build_T(w);
  const BlockSpectra serial = eigensolve_blocks(t, 1);
  const BlockSpectra pooled = eigensolve_blocks(t, 8);

  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK((serial.values[i][j] - pooled.values[i][j]).norm() == 0.0);
      CHECK((serial.vectors[i][j] - pooled.vectors[i][j]).norm() == 0.0);
    }
  }
}

TEST_CASE("rank sequence: diagonal dims, zero crosses, both routes agree") {
  const Window w = steinberg_window({3, 5});
  const BlockOperator t = build_T(w);
  const BlockSpectra spectra = eigensolve_blocks(t);
  const BlockOperator e = ghost_projection(w, t, spectra);
  const RankSequence ranks = rank_sequence(w, e, &spectra);

  CHECK(ranks.diagonal == std::vector<Eigen::Index>{3, 5});
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(ranks.numeric[i][j] == ranks.oracle[i][j]);
      if (i == j) {
        CHECK(ranks.numeric[i][j] == w.dims[i]);
      } else {
        CHECK(ranks.numeric[i][j] == 0);
      }
    }
  }

  // the trace route (no spectra) must agree as well
  const RankSequence traced = rank_sequence(w, e, nullptr);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(traced.numeric[i][j] == ranks.numeric[i][j]);
    }
  }
}

TEST_CASE("gap report: diagonal equality and cross-block domination") {
  const Window w = steinberg_window({3, 5});
  const BlockOperator t = build_T(w);
  const BlockSpectra spectra = eigensolve_blocks(t);
  const GapReport gaps = verify_claim1(w, spectra);

  CHECK(gaps.window_size == 2);
  CHECK(gaps.all_consistent);
  CHECK(gaps.min_gap > 1e-3);
  CHECK(gaps.uniform_gap_flag);

  // diagonal block gap equals the quotient Cayley gap: the tensor with
  // the regular factor is a multiple of the regular representation
  for (std::size_t i = 0; i < 2; ++i) {
    const double direct = quotient_cayley_gap(w.pair_source[i][i]);
    CHECK(gaps.pair_gap(i, i) ==
          doctest::Approx(direct).epsilon(1e-8));
    CHECK(gaps.pair_gap(i, i) ==
          doctest::Approx(gaps.quotient_gap(i, i)).epsilon(1e-8));
  }
  // off-diagonal gaps dominate their quotient gaps
  CHECK(gaps.pair_gap(0, 1) >= gaps.quotient_gap(0, 1) - 1e-8);
  CHECK(gaps.pair_gap(1, 0) >= gaps.quotient_gap(1, 0) - 1e-8);
}

TEST_CASE("gap at one handles degenerate spectra") {
  Eigen::VectorXd flat(3);
  flat << 1.0, 1.0, 1.0;
  const GapInfo info = gap_at_one(flat);
  CHECK(info.whole_spectrum_at_one);
  CHECK(info.gap == 2.0);

  Eigen::VectorXd mixed(4);
  mixed << -0.5, 0.25, 0.25, 1.0;
  const GapInfo plain = gap_at_one(mixed);
  CHECK_FALSE(plain.whole_spectrum_at_one);
  CHECK(plain.gap == doctest::Approx(0.75));
}

TEST_CASE("ambiguous clusters abort instead of guessing") {
  Eigen::VectorXd evals(3);
  evals << 0.0, 1.0 - 1e-5, 1.0;  // inside the ambiguity band
  CHECK_THROWS_AS(one_cluster_multiplicity(evals, kDefaultClusterTol, "test"),
                  Error);
  try {
    one_cluster_multiplicity(evals, kDefaultClusterTol, "test");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ClusterAmbiguous);
  }

  Eigen::VectorXd clean(3);
  clean << 0.0, 0.5, 1.0;
  CHECK(one_cluster_multiplicity(clean, kDefaultClusterTol, "test") == 1);
}

TEST_CASE("claim 2 rows on the steinberg window") {
  const Window w = steinberg_window({3, 5});
  const BlockOperator t = build_T(w);
  const BlockSpectra spectra = eigensolve_blocks(t);
  const BlockOperator e = ghost_projection(w, t, spectra);
  const RankSequence ranks = rank_sequence(w, e, &spectra);

  const Claim2Report row0 = verify_claim2(w, ranks, 0);
  CHECK(row0.ranks == std::vector<Eigen::Index>{3, 0});
  CHECK(row0.bound_respected);
  CHECK(row0.eventually_vanishes);
  REQUIRE(row0.last_nonvanishing.has_value());
  CHECK(*row0.last_nonvanishing == 0);
  CHECK(row0.dims_strictly_increasing);

  // dim H_M <= |G_N| everywhere in this small window
  CHECK(row0.bound_applies == std::vector<bool>{false, false});

  const Claim2Report row1 = verify_claim2(w, ranks, 1);
  CHECK(row1.ranks == std::vector<Eigen::Index>{0, 5});
  // the last level cannot vanish inside its own window
  CHECK_FALSE(row1.eventually_vanishes);
}

TEST_CASE("claim 3 separates e from every truncation") {
  const Window w = steinberg_window({3, 5});
  const BlockOperator t = build_T(w);
  const BlockSpectra spectra = eigensolve_blocks(t);
  const BlockOperator e = ghost_projection(w, t, spectra);
  const RankSequence ranks = rank_sequence(w, e, &spectra);

  const Claim3Report report = verify_claim3(w, e, ranks);
  CHECK_FALSE(report.vacuous);
  CHECK(report.diagonal_all_positive);
  CHECK(report.escapes_every_truncation);
  REQUIRE(report.truncations.size() == 3);  // keep = 0, 1, 2
  for (const auto& row : report.truncations) {
    CHECK(row.truncated_tail_zero);
    if (row.keep < w.size()) CHECK(row.full_tail_nonzero);
  }
}

TEST_CASE("truncation zeroes exactly the tail columns") {
  const Window w = steinberg_window({3, 5});
  const BlockOperator t = build_T(w);
  const BlockSpectra spectra = eigensolve_blocks(t);
  const BlockOperator e = ghost_projection(w, t, spectra);

  const BlockOperator cut = truncate_to_J(e, 1);
  // column level 0 survives, column level 1 is gone
  CHECK_FALSE(cut.is_zero_block(0, 0));
  CHECK(cut.is_zero_block(0, 1));
  CHECK(cut.is_zero_block(1, 1));
  CHECK((cut.block(0, 0) - e.block(0, 0)).norm() == 0.0);

  const BlockOperator zero = truncate_to_J(e, 0);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(zero.is_zero_block(i, j));
    }
  }

  const BlockOperator all = truncate_to_J(e, 2);
  CHECK((all.block(1, 1) - e.block(1, 1)).norm() == 0.0);
}

TEST_CASE("classical ghost equals the trivial-irrep spectral projection") {
  auto family = shared_sl2({3, 5});
  const Window w = make_window(family, {0, 1}, IrrepPolicy::Trivial);
  const BlockOperator closed = classical_ghost(w);
  const BlockOperator e = ghost_projection(w, build_T(w));

  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      REQUIRE_FALSE(e.is_zero_block(i, j));
      CHECK((closed.block(i, j) - e.block(i, j)).norm() < 1e-10);
      // closed form: every entry is 1/|G_i|
      const double expect = 1.0 / double(w.groups[i]->order());
      CHECK(std::abs(closed.block(i, j)(0, 0).real() - expect) < 1e-14);
    }
  }
}

TEST_CASE("classical ghost refuses non-trivial windows") {
  const Window w = steinberg_window({3, 5});
  CHECK_THROWS_AS(classical_ghost(w), Error);
}

TEST_CASE("degenerate copied-level window stays consistent") {
  // two levels carrying identical generator images: dims are (5, 5), not
  // strictly increasing, and the pair closure is the diagonal copy of
  // SL(2,5); the pipeline must still verify projection and rank bookkeeping
  const QuotientFamily reference = sl2_family({5});
  std::vector<CustomLevel> copies;
  for (int i = 0; i < 2; ++i) {
    CustomLevel lv;
    lv.label = "copy-" + std::to_string(i);
    lv.param = 5;
    lv.images = reference.level(0).images;
    lv.expected_order = 120;
    copies.push_back(std::move(lv));
  }
  auto family = std::make_shared<const QuotientFamily>(product_subgroup_family(
      GeneratorSymbolSet({1, 0, 3, 2}), std::move(copies)));
  const Window w = make_window(family, {0, 1}, IrrepPolicy::Steinberg);
  CHECK_FALSE(w.dims_strictly_increasing);

  const BlockOperator t = build_T(w);
  const BlockSpectra spectra = eigensolve_blocks(t);
  const BlockOperator e = ghost_projection(w, t, spectra);
  const RankSequence ranks = rank_sequence(w, e, &spectra);

  // the cross pair source is the diagonal copy of SL(2,5), so the cross
  // blocks carry the full invariant rank of lambda tensor pi = 5
  CHECK(ranks.diagonal == std::vector<Eigen::Index>{5, 5});
  CHECK(ranks.numeric[0][1] == 5);
  CHECK(ranks.numeric[1][0] == 5);
  CHECK(w.pair_source[0][1]->order() == 120);

  const Claim2Report row = verify_claim2(w, ranks, 0);
  CHECK_FALSE(row.dims_strictly_increasing);
  CHECK_FALSE(row.eventually_vanishes);
}

TEST_CASE("empty window is vacuous everywhere") {
  auto family = shared_sl2({3});
  const Window w = make_window(family, {}, IrrepPolicy::Steinberg);
  CHECK(w.size() == 0);

  const BlockOperator t = build_T(w);
  CHECK(t.levels() == 0);
  const BlockSpectra spectra = eigensolve_blocks(t);
  const BlockOperator e = ghost_projection(w, t, spectra);
  const RankSequence ranks = rank_sequence(w, e, &spectra);
  CHECK(ranks.diagonal.empty());

  const Claim3Report report = verify_claim3(w, e, ranks);
  CHECK(report.vacuous);

  const GapReport gaps = verify_claim1(w, spectra);
  CHECK(gaps.window_size == 0);
  CHECK_FALSE(gaps.uniform_gap_flag);
}

TEST_CASE("quotient cayley gap matches the regular-block computation") {
  auto family = shared_sl2({5});
  const GroupPtr g = family->level(0).group;
  const double gap = quotient_cayley_gap(g);

  const Representation reg = regular_representation(g);
  const Eigen::MatrixXcd t = markov_operator(reg, g->generator_indices());
  const Eigen::VectorXd evals = linalg::hermitian_eigenvalues(t);
  CHECK(gap == doctest::Approx(1.0 - evals(evals.size() - 2)).epsilon(1e-10));
}

TEST_CASE("window construction rejects foreign irreps") {
  auto family35 = shared_sl2({3, 5});
  auto family57 = shared_sl2({5, 7});
  std::vector<Representation> wrong{steinberg_rep(*family57, 0),
                                    steinberg_rep(*family57, 1)};
  CHECK_THROWS_AS(make_window(family35, {0, 1}, std::move(wrong)), Error);
}
