#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ghostlab/errors.hpp"

namespace ghostlab {

/// Default ceiling for closure enumeration. Groups beyond this size need an
/// explicit opt-in from the caller.
inline constexpr std::size_t kDefaultClosureCap = 250000;

bool is_prime_u64(std::uint64_t n);

/// A concrete group element. Three flavours share one value type so that
/// generating sets, closures and homomorphic images can be handled
/// uniformly:
///   * permutation of {0, ..., n-1}, stored as the image vector;
///   * invertible d x d matrix over Z/pZ for a prime p, stored row-major;
///   * ordered pair of elements (used for subgroups of direct products).
class GroupElement {
 public:
  enum class Kind : std::uint8_t { Permutation, Matrix, Pair };

  static GroupElement permutation(std::vector<std::uint32_t> images);
  static GroupElement cycle(std::uint32_t degree,
                            const std::vector<std::uint32_t>& points);
  static GroupElement matrix_mod_p(std::uint32_t dim, std::uint64_t mod,
                                   std::vector<std::uint32_t> entries);
  static GroupElement pair(GroupElement first, GroupElement second);

  Kind kind() const { return kind_; }

  /// Group operation: for permutations (a*b)(x) = a(b(x)), for matrices the
  /// usual product mod p, for pairs componentwise. Throws MixedKinds when
  /// the operands do not live in a common ambient group.
  GroupElement operator*(const GroupElement& other) const;
  GroupElement inverse() const;
  GroupElement identity_like() const;
  bool is_identity() const;

  bool operator==(const GroupElement& other) const;
  bool operator!=(const GroupElement& other) const { return !(*this == other); }

  std::size_t hash() const;

  /// True when `other` could be composed with *this (same kind, same degree
  /// or dimension and modulus, recursively for pairs).
  bool compatible(const GroupElement& other) const;

  // Permutation access.
  std::uint32_t degree() const;
  const std::vector<std::uint32_t>& perm() const;
  bool is_even_permutation() const;

  // Matrix access.
  std::uint32_t matrix_dim() const;
  std::uint64_t modulus() const;
  const std::vector<std::uint32_t>& entries() const;

  // Pair access.
  const GroupElement& first() const;
  const GroupElement& second() const;

  std::string describe() const;

 private:
  struct PermPayload {
    std::vector<std::uint32_t> map;
  };
  struct MatrixPayload {
    std::uint32_t dim;
    std::uint64_t mod;
    std::vector<std::uint32_t> a;  // row-major, entries reduced mod `mod`
  };
  struct PairPayload {
    std::vector<GroupElement> ab;  // exactly two entries
  };

  GroupElement() = default;

  Kind kind_ = Kind::Permutation;
  std::variant<PermPayload, MatrixPayload, PairPayload> payload_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const { return g.hash(); }
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite group enumerated from a generating set. Element indices are
/// stable and deterministic: breadth-first by word length over the
/// generators, ties broken by generator order, with the identity at
/// index 0. All downstream spectra and reports inherit their determinism
/// from this ordering.
class FiniteGroup {
 public:
  static constexpr std::size_t kIdentity = 0;

  /// Enumerates the subgroup generated by `generators` (which must be
  /// nonempty and pairwise compatible). Throws CapExceeded as soon as the
  /// closure would exceed `cap` elements.
  static GroupPtr generate(std::vector<GroupElement> generators,
                           std::size_t cap = kDefaultClosureCap);

  std::size_t order() const { return elements_.size(); }
  const GroupElement& element(std::size_t i) const { return elements_[i]; }

  std::size_t index_of(const GroupElement& g) const;
  std::optional<std::size_t> find(const GroupElement& g) const;

  std::size_t mult(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }

  /// Image of left multiplication by element `a`: out[x] = a * x.
  std::vector<std::uint32_t> left_translation(std::size_t a) const;

  const std::vector<GroupElement>& generators() const { return generators_; }
  /// Indices of the generators, in the order they were supplied (duplicates
  /// kept; averaging operators weight by this multiset).
  const std::vector<std::size_t>& generator_indices() const {
    return generator_indices_;
  }

  bool is_pair_group() const;

 private:
  FiniteGroup() = default;

  std::deque<GroupElement> elements_;
  std::vector<std::size_t> inverse_;
  std::vector<GroupElement> generators_;
  std::vector<std::size_t> generator_indices_;

  struct DerefHash {
    std::size_t operator()(const GroupElement* p) const { return p->hash(); }
  };
  struct DerefEq {
    bool operator()(const GroupElement* a, const GroupElement* b) const {
      return *a == *b;
    }
  };
  std::unordered_map<const GroupElement*, std::size_t, DerefHash, DerefEq>
      index_;
};

/// Free-function alias for FiniteGroup::generate.
GroupPtr generate_closure(std::vector<GroupElement> generators,
                          std::size_t cap = kDefaultClosureCap);

/// Abstract generator alphabet shared by every level of a quotient family.
/// `pairing[s]` names the symbol acting as the formal inverse of `s`; the
/// pairing must be an involution (fixed points allowed, for involutive
/// generators).
struct GeneratorSymbolSet {
  std::vector<std::uint32_t> pairing;

  explicit GeneratorSymbolSet(std::vector<std::uint32_t> pairing_in);
  std::size_t size() const { return pairing.size(); }
};

/// One level of a quotient family: the images of the generator symbols and
/// the finite group they generate.
struct FamilyLevel {
  std::string label;
  std::uint64_t param = 0;  // prime for SL(2,p) levels, degree for Alt(n)
  std::vector<GroupElement> images;
  GroupPtr group;
  std::vector<std::size_t> image_indices;  // index of images[s] inside group
};

/// A sequence of finite quotients of one finitely generated group,
/// presented by where the generator symbols go at each level.
class QuotientFamily {
 public:
  QuotientFamily(GeneratorSymbolSet symbols, std::vector<FamilyLevel> levels);

  const GeneratorSymbolSet& symbols() const { return symbols_; }
  std::size_t level_count() const { return levels_.size(); }
  const FamilyLevel& level(std::size_t i) const;

 private:
  GeneratorSymbolSet symbols_;
  std::vector<FamilyLevel> levels_;
};

/// Evaluates a word in generator symbols inside one level. The empty word
/// gives the identity.
GroupElement word_image(const QuotientFamily& family, std::size_t level,
                        const std::vector<std::uint32_t>& word);

/// The subgroup of G_a x G_b generated by the paired generator images
/// (g_s^(a), g_s^(b)). Elements are genuine pairs; coordinate projections
/// stay O(1). This is the diagonal-image group the pair operators of a
/// window live over.
GroupPtr product_image(const QuotientFamily& family, std::size_t level_a,
                       std::size_t level_b,
                       std::size_t cap = kDefaultClosureCap);

/// Elements of a pair group whose given coordinate (0 or 1) is the
/// identity. For a product_image group this is the fiber over the identity
/// of one factor, i.e. the piece that controls invariant vectors of the
/// other factor.
std::vector<GroupElement> kernel_fiber(const FiniteGroup& product,
                                       int coordinate);

struct SymmetryReport {
  struct LevelEntry {
    std::string label;
    bool symmetric = true;
  };
  std::vector<LevelEntry> levels;
  bool symmetric = true;
};

/// Confirms, level by level, that the image multiset is closed under
/// inversion via the symbol pairing: image[pairing[s]] == image[s]^{-1}.
/// Throws NotSymmetric naming the offending level and symbol.
SymmetryReport check_symmetric(const QuotientFamily& family);

}  // namespace ghostlab
