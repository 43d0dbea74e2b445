#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ghostlab/families.hpp"
#include "ghostlab/group.hpp"
#include "ghostlab/linalg.hpp"
#include "ghostlab/representation.hpp"

using namespace ghostlab;

namespace {

GroupPtr small_cyclic(std::uint32_t n) {
  std::vector<std::uint32_t> shift(n);
  for (std::uint32_t i = 0; i < n; ++i) shift[i] = (i + 1) % n;
  const GroupElement c = GroupElement::permutation(shift);
  return generate_closure({c, c.inverse()});
}

// natural point action act[g][x] = g(x) for a permutation-element group
std::vector<std::vector<std::uint32_t>> natural_action(const GroupPtr& g) {
  std::vector<std::vector<std::uint32_t>> act(g->order());
  for (std::size_t i = 0; i < g->order(); ++i) act[i] = g->element(i).perm();
  return act;
}

}  // namespace

TEST_CASE("regular representation has |G| dimensions and permutation images") {
  const GroupPtr g = small_cyclic(6);
  const Representation reg = regular_representation(g);
  CHECK(reg.dim() == 6);

  // images are genuine permutation matrices satisfying the homomorphism
  for (std::size_t a = 0; a < g->order(); ++a) {
    const Eigen::MatrixXcd m = reg.image(a);
    CHECK((m * m.adjoint() - Eigen::MatrixXcd::Identity(6, 6)).norm() ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
  const std::size_t x = 2, y = 4;
  CHECK((reg.image(g->mult(x, y)) - reg.image(x) * reg.image(y)).norm() ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("regular character is order at identity and zero elsewhere") {
  const GroupPtr g = small_cyclic(8);
  const Representation reg = regular_representation(g);
  CHECK(reg.character(FiniteGroup::kIdentity).real() == doctest::Approx(8.0));
  for (std::size_t a = 1; a < g->order(); ++a) {
    CHECK(std::abs(reg.character(a)) == doctest::Approx(0.0));
  }
}

TEST_CASE("deleted permutation representation of Alt(5)") {
  const QuotientFamily family = alt_family({5});
  const GroupPtr g = family.level(0).group;
  const Representation rep = deleted_permutation_rep(g, natural_action(g));

  CHECK(rep.dim() == 4);
  CHECK(unitarity_defect(rep) < 1e-10);
  CHECK(homomorphism_defect(rep) < 1e-10);
  CHECK(is_irreducible(rep));
  CHECK(character_inner(rep, rep) == doctest::Approx(1.0).epsilon(1e-9));

  // character = fixed points - 1, exactly integral
  for (std::size_t a = 0; a < g->order(); ++a) {
    const auto& perm = g->element(a).perm();
    int fixed = 0;
    for (std::uint32_t x = 0; x < perm.size(); ++x) fixed += perm[x] == x;
    CHECK(rep.character(a).real() == doctest::Approx(double(fixed - 1)));
    CHECK(rep.character(a).imag() == doctest::Approx(0.0));
  }
}

TEST_CASE("steinberg representation is the p-dimensional irreducible") {
  const QuotientFamily family = sl2_family({3, 5});
  for (std::size_t level = 0; level < 2; ++level) {
    const Representation rep = steinberg_rep(family, level);
    CHECK(rep.dim() == Eigen::Index(family.level(level).param));
    CHECK(is_irreducible(rep));
    CHECK(rep.character(FiniteGroup::kIdentity).real() ==
          doctest::Approx(double(family.level(level).param)));
  }
}

TEST_CASE("full reducible permutation action is not irreducible") {
  const QuotientFamily family = alt_family({5});
  const GroupPtr g = family.level(0).group;
  const Representation perm = permutation_representation(g, natural_action(g));
  CHECK(perm.dim() == 5);
  CHECK_FALSE(is_irreducible(perm));
  // contains trivial + standard: <chi, chi> = 2
  CHECK(character_inner(perm, perm) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(invariant_rank(perm) == 1);
}

TEST_CASE("invariant projection is an orthogonal projection of oracle rank") {
  const QuotientFamily family = sl2_family({3});
  const GroupPtr g = family.level(0).group;

  const Representation reg = regular_representation(g);
  const Eigen::MatrixXcd p = invariant_projection(reg);
  CHECK((p * p - p).norm() < 1e-10);
  CHECK((p - p.adjoint()).norm() < 1e-12);
  const double trace = p.real().trace();
  CHECK(trace == doctest::Approx(double(invariant_rank(reg))).epsilon(1e-9));
  CHECK(invariant_rank(reg) == 1);
}

TEST_CASE("tensor blocks: fiberwise average equals the streamed average") {
  const QuotientFamily family = sl2_family({3, 5});
  const GroupPtr q = product_image(family, 0, 1);
  const GroupPtr ga = family.level(0).group;
  const GroupPtr gb = family.level(1).group;

  const Pairing pairing = product_pairing(q, ga, gb);
  const Representation lambda = regular_representation(ga);
  const Representation pi = steinberg_rep(family, 1);
  const Representation block = tensor(lambda, pi, pairing);
  CHECK(block.dim() == 24 * 5);

  // fast path (regular first factor)
  const Eigen::MatrixXcd fast = invariant_projection(block);

  // slow reference: stream the full sum of Kronecker images
  Eigen::MatrixXcd slow = Eigen::MatrixXcd::Zero(block.dim(), block.dim());
  for (std::size_t x = 0; x < q->order(); ++x) slow += block.image(x);
  slow /= double(q->order());

  CHECK((fast - slow).norm() < 1e-9);
  CHECK((fast * fast - fast).norm() < 1e-10);
}

TEST_CASE("tensor character multiplies factor characters") {
  const QuotientFamily family = sl2_family({3, 5});
  const GroupPtr q = product_image(family, 0, 1);
  const GroupPtr ga = family.level(0).group;
  const GroupPtr gb = family.level(1).group;
  const Pairing pairing = product_pairing(q, ga, gb);
  const Representation block =
      tensor(regular_representation(ga), steinberg_rep(family, 1), pairing);

  for (std::size_t x = 0; x < q->order(); x += 97) {
    const Complex lhs = block.character(x);
    const Complex rhs = block.tensor_factor_a().character(pairing.into_a[x]) *
                        block.tensor_factor_b().character(pairing.into_b[x]);
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("markov operator is hermitian with spectrum in [-1, 1]") {
  const QuotientFamily family = sl2_family({5});
  const GroupPtr g = family.level(0).group;
  const Representation reg = regular_representation(g);
  const Eigen::MatrixXcd t = markov_operator(reg, g->generator_indices());

  CHECK((t - t.adjoint()).norm() < 1e-12);
  const Eigen::VectorXd evals = linalg::hermitian_eigenvalues(t);
  CHECK(evals(0) >= -1.0 - 1e-10);
  CHECK(evals(evals.size() - 1) <= 1.0 + 1e-10);
  // connected Cayley graph: simple top eigenvalue 1
  CHECK(evals(evals.size() - 1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(evals(evals.size() - 2) < 1.0 - 1e-3);
}

TEST_CASE("markov operator rejects a multiset not closed under inverses") {
  const QuotientFamily family = sl2_family({5});
  const GroupPtr g = family.level(0).group;
  const Representation reg = regular_representation(g);

  // drop one of the four paired generators
  std::vector<std::size_t> lopsided(g->generator_indices().begin(),
                                    g->generator_indices().end() - 1);
  CHECK_THROWS_AS(markov_operator(reg, lopsided), Error);
  try {
    markov_operator(reg, lopsided);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSymmetricSet);
  }
}

TEST_CASE("action tables are validated") {
  const GroupPtr g = small_cyclic(4);

  SUBCASE("non-bijective row") {
    auto act = natural_action(g);
    act[1][0] = act[1][1];
    CHECK_THROWS_AS(permutation_representation(g, act), Error);
  }
  SUBCASE("identity row must fix every point") {
    auto act = natural_action(g);
    act[FiniteGroup::kIdentity] = {1, 0, 2, 3};
    CHECK_THROWS_AS(permutation_representation(g, act), Error);
  }
  SUBCASE("non-homomorphic table") {
    auto act = natural_action(g);
    std::swap(act[1], act[3]);  // rows no longer follow the group law
    CHECK_THROWS_AS(permutation_representation(g, act), Error);
  }
  SUBCASE("wrong row count") {
    auto act = natural_action(g);
    act.pop_back();
    CHECK_THROWS_AS(permutation_representation(g, act), Error);
  }
}

TEST_CASE("deleted representation requires a transitive action") {
  const GroupPtr g = small_cyclic(3);
  // let the 3-cycle act trivially on 2 extra points: orbit of 0 misses them
  std::vector<std::vector<std::uint32_t>> act(g->order());
  for (std::size_t i = 0; i < g->order(); ++i) {
    const auto& p = g->element(i).perm();
    act[i] = {p[0], p[1], p[2], 3, 4};
  }
  CHECK_THROWS_AS(deleted_permutation_rep(g, act), Error);
  try {
    deleted_permutation_rep(g, act);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotTransitive);
  }
}

TEST_CASE("pairings are validated against their targets") {
  const QuotientFamily family = sl2_family({3, 5});
  const GroupPtr q = product_image(family, 0, 1);
  const GroupPtr ga = family.level(0).group;
  const GroupPtr gb = family.level(1).group;

  const Representation ra = regular_representation(ga);
  const Representation rb = regular_representation(gb);

  SUBCASE("swapped targets are incompatible") {
    const Pairing pairing = product_pairing(q, ga, gb);
    CHECK_THROWS_AS(tensor(rb, ra, pairing), Error);
    try {
      tensor(rb, ra, pairing);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::IncompatiblePairing);
    }
  }
  SUBCASE("swap_pairing restores compatibility") {
    const Pairing pairing = swap_pairing(product_pairing(q, ga, gb));
    const Representation block = tensor(rb, ra, pairing);
    CHECK(block.dim() == 120 * 24);
  }
  SUBCASE("product pairing demands a matching pair group") {
    CHECK_THROWS_AS(product_pairing(ga, ga, gb), Error);
  }
}

TEST_CASE("dense representation factory validates unitarity") {
  const GroupPtr g = small_cyclic(2);
  std::vector<Eigen::MatrixXcd> images(2);
  images[0] = Eigen::MatrixXcd::Identity(2, 2);
  images[1] = Eigen::MatrixXcd::Identity(2, 2) * 2.0;  // not unitary
  CHECK_THROWS_AS(dense_representation(g, images), Error);

  images[1] = -Eigen::MatrixXcd::Identity(2, 2);
  CHECK_NOTHROW(dense_representation(g, images));
}

TEST_CASE("character inner product detects disjoint irreducibles") {
  const QuotientFamily family = sl2_family({5});
  const Representation pi = steinberg_rep(family, 0);
  const Representation triv = trivial_representation(family.level(0).group);
  CHECK(character_inner(pi, triv) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(character_inner(triv, triv) == doctest::Approx(1.0).epsilon(1e-9));
}
