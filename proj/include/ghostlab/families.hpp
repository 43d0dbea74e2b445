#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghostlab/group.hpp"
#include "ghostlab/representation.hpp"

namespace ghostlab {

/// How to pick the distinguished irreducible representation at each level.
enum class IrrepPolicy : std::uint8_t {
  Steinberg,        // SL(2,p) acting on the projective line, constants deleted
  DeletedNatural,   // point action of a permutation group, constants deleted
  Trivial,          // one-dimensional trivial representation
};

const char* irrep_policy_name(IrrepPolicy policy);
IrrepPolicy irrep_policy_from_name(const std::string& name);

/// SL(2,p) for an ascending list of primes, generated by the elementary
/// matrices [[1,1],[0,1]], [[1,0],[1,1]] and their inverses. Four symbols,
/// paired (0<->1, 2<->3). Each closure is checked against the exact order
/// p(p^2-1).
QuotientFamily sl2_family(const std::vector<std::uint64_t>& primes,
                          std::size_t cap = kDefaultClosureCap);

/// Alternating groups for an ascending list of degrees, generated by the
/// 3-cycle (0 1 2) and a long cycle: the full n-cycle for odd n, the
/// (n-1)-cycle fixing 0 for even n (both even permutations, and together
/// they generate Alt(n)). Orders are checked against n!/2. No expansion
/// promise is attached to this generating convention.
QuotientFamily alt_family(const std::vector<std::uint64_t>& degrees,
                          std::size_t cap = kDefaultClosureCap);

struct CustomLevel {
  std::string label;
  std::uint64_t param = 0;
  std::vector<GroupElement> images;
  /// When set, the closure must hit exactly this order; a mismatch means
  /// the images do not generate the intended group and raises
  /// NotGenerating.
  std::optional<std::size_t> expected_order;
};

/// Arbitrary family from explicit generator images, used both for product
/// constructions and for deliberately broken inputs in tests. Validates
/// arity against the symbol set, the expected orders, and symmetry of the
/// image multisets.
QuotientFamily product_subgroup_family(GeneratorSymbolSet symbols,
                                       std::vector<CustomLevel> levels,
                                       std::size_t cap = kDefaultClosureCap);

/// The Steinberg representation of an SL(2,p) level: the permutation
/// action on the p+1 points of the projective line with the constant
/// vector removed. Dimension p, irreducible (verified).
Representation steinberg_rep(const QuotientFamily& family, std::size_t level);

/// Applies an irrep policy to one level. Raises PolicyUnsupported when the
/// level's element kind does not fit the policy and NotIrreducible when
/// the resulting representation fails the character test.
Representation choose_irrep(const QuotientFamily& family, std::size_t level,
                            IrrepPolicy policy);

}  // namespace ghostlab
