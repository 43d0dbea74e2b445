#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "ghostlab/group.hpp"

namespace ghostlab {

using Complex = std::complex<double>;

/// Entry budget for eagerly materialized image tables: |G| * dim^2 must
/// stay at or below this. Structured forms (regular, permutation-backed,
/// tensor) never materialize and are exempt.
inline constexpr std::size_t kMaterializationLimit = 200000000;

/// Identifies which generator image in each factor a tensor product should
/// use for a given source element. `into_a[q]` / `into_b[q]` are element
/// indices in the two target groups. For pair groups these are coordinate
/// projections; for a plain diagonal block both maps are the identity.
struct Pairing {
  GroupPtr source;
  GroupPtr target_a;
  GroupPtr target_b;
  std::vector<std::uint32_t> into_a;
  std::vector<std::uint32_t> into_b;
};

Pairing identity_pairing(const GroupPtr& g);
/// Coordinate projections of a pair group built by product_image.
Pairing product_pairing(const GroupPtr& product, const GroupPtr& a,
                        const GroupPtr& b);
/// Same source, factors exchanged.
Pairing swap_pairing(const Pairing& p);

/// A finite-dimensional unitary representation. Storage is structural:
/// images are produced on demand from permutation data, translation
/// tables or tensor factors rather than held as dense per-element tables,
/// which is what keeps regular representations of groups with tens of
/// thousands of elements affordable. Copies are cheap (shared payload).
class Representation {
 public:
  enum class Form : std::uint8_t {
    Regular,
    Permutation,
    ProjectedPermutation,
    Dense,
    Tensor,
  };

  const GroupPtr& group() const { return group_; }
  Eigen::Index dim() const { return dim_; }
  Form form() const { return form_; }

  /// Dense image of element index g. For structured forms this builds the
  /// matrix on the fly.
  Eigen::MatrixXcd image(std::size_t g) const;

  /// Exact character where the storage permits it (regular, permutation
  /// counts), trace of the image otherwise.
  Complex character(std::size_t g) const;

  // Internal storage kinds; public so the averaging specializations in
  // this module can dispatch without friend gymnastics.
  struct RegularData {};
  struct PermData {
    std::vector<std::vector<std::uint32_t>> act;  // act[g][point]
  };
  struct ProjectedPermData {
    std::vector<std::vector<std::uint32_t>> act;
    Eigen::MatrixXd basis;  // points x (points-1), orthonormal, ⟂ all-ones
  };
  struct DenseData {
    std::vector<Eigen::MatrixXcd> images;
  };
  struct TensorData {
    std::shared_ptr<const Representation> a;
    std::shared_ptr<const Representation> b;
    Pairing pairing;
  };
  using Storage = std::variant<RegularData, PermData, ProjectedPermData,
                               DenseData, TensorData>;

  const Storage& storage() const { return *storage_; }
  const Representation& tensor_factor_a() const;
  const Representation& tensor_factor_b() const;

  Representation(GroupPtr group, Eigen::Index dim, Form form, Storage storage);

 private:
  GroupPtr group_;
  Eigen::Index dim_ = 0;
  Form form_ = Form::Dense;
  std::shared_ptr<const Storage> storage_;
};

/// Left regular representation; images are permutation matrices built from
/// translation tables on demand, never stored densely.
Representation regular_representation(const GroupPtr& g);

/// Permutation representation from a per-element action table
/// (act[g][point] = image point). The homomorphism property is
/// spot-checked on the generators and on seeded random pairs.
Representation permutation_representation(const GroupPtr& g,
                                          std::vector<std::vector<std::uint32_t>> act);

/// The (points-1)-dimensional complement of the constant vector inside a
/// transitive permutation representation, expressed in an orthonormal
/// basis. Requires at least 2 points and a transitive action.
Representation deleted_permutation_rep(const GroupPtr& g,
                                       std::vector<std::vector<std::uint32_t>> act);

Representation trivial_representation(const GroupPtr& g);

/// Dense per-element images. Validates unitarity on generators and the
/// materialization budget.
Representation dense_representation(const GroupPtr& g,
                                    std::vector<Eigen::MatrixXcd> images);

/// Tensor product a ⊗ b along a pairing: the image of source element q is
/// a.image(into_a[q]) ⊗ b.image(into_b[q]). The result is a representation
/// of the pairing's source group.
Representation tensor(const Representation& a, const Representation& b,
                      const Pairing& pairing);

/// (1/|G|) Σ_g χ_a(g) conj(χ_b(g)). Real part returned; for genuine
/// representations of the same group this is within 1e-9 of a nonnegative
/// integer (the dimension of the intertwiner space).
double character_inner(const Representation& a, const Representation& b);

bool is_irreducible(const Representation& rep);

/// Multiplicity of the trivial representation, i.e. the dimension of the
/// invariant subspace, computed from characters and rounded with a guard.
Eigen::Index invariant_rank(const Representation& rep);

/// P = (1/|G|) Σ_g rep(g), the orthogonal projection onto invariant
/// vectors. Specialized per storage form; tensor-with-regular-factor input
/// is averaged fiberwise so the big Kronecker products are never formed.
Eigen::MatrixXcd invariant_projection(const Representation& rep);

/// (1/|S|) Σ_{s in genset} rep(s) over a symmetric multiset of element
/// indices (multiplicities respected). Hermitian by construction; throws
/// NotSymmetricSet when the multiset is not closed under inversion.
Eigen::MatrixXcd markov_operator(const Representation& rep,
                                 const std::vector<std::size_t>& genset);

/// max_g ||rep(g)*rep(g) - I|| over the sample (seeded selection of
/// `samples` elements plus the generators when available).
double unitarity_defect(const Representation& rep, int samples = 12);

/// max ||rep(g h) - rep(g) rep(h)|| over seeded random pairs.
double homomorphism_defect(const Representation& rep, int samples = 12);

}  // namespace ghostlab
