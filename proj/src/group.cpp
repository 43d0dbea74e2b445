#include "ghostlab/group.hpp"

#include <algorithm>
#include <sstream>

namespace ghostlab {

namespace {

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t acc = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) acc = (acc * base) % mod;
    base = (base * base) % mod;
    exp >>= 1;
  }
  return acc;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  // p prime, a != 0 mod p.
  return mod_pow(a, p - 2, p);
}

std::size_t hash_combine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
    if (n == d) return true;
    if (n % d == 0) return false;
  }
  for (std::uint64_t d = 11; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// GroupElement

GroupElement GroupElement::permutation(std::vector<std::uint32_t> images) {
  const std::size_t n = images.size();
  if (n == 0) fail(ErrorCode::InvalidArgument, "empty permutation");
  std::vector<bool> seen(n, false);
  for (std::uint32_t v : images) {
    if (v >= n || seen[v]) {
      fail(ErrorCode::InvalidArgument, "image vector is not a permutation");
    }
    seen[v] = true;
  }
  GroupElement g;
  g.kind_ = Kind::Permutation;
  g.payload_ = PermPayload{std::move(images)};
  return g;
}

GroupElement GroupElement::cycle(std::uint32_t degree,
                                 const std::vector<std::uint32_t>& points) {
  std::vector<std::uint32_t> images(degree);
  for (std::uint32_t i = 0; i < degree; ++i) images[i] = i;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] >= degree) {
      fail(ErrorCode::InvalidArgument, "cycle point out of range");
    }
    images[points[i]] = points[(i + 1) % points.size()];
  }
  return permutation(std::move(images));  // rejects repeated points
}

GroupElement GroupElement::matrix_mod_p(std::uint32_t dim, std::uint64_t mod,
                                        std::vector<std::uint32_t> entries) {
  if (dim == 0) fail(ErrorCode::InvalidArgument, "matrix dimension 0");
  if (!is_prime_u64(mod)) {
    fail(ErrorCode::NotPrime,
         "matrix modulus " + std::to_string(mod) + " is not prime");
  }
  if (entries.size() != std::size_t(dim) * dim) {
    fail(ErrorCode::InvalidArgument, "matrix entry count does not match dim^2");
  }
  for (auto& e : entries) e = static_cast<std::uint32_t>(e % mod);

  // Determinant via Gaussian elimination over the field; reject singular
  // matrices up front so products and inverses are total afterwards.
  std::vector<std::uint64_t> a(entries.begin(), entries.end());
  std::uint64_t det = 1;
  for (std::uint32_t col = 0; col < dim; ++col) {
    std::uint32_t pivot = col;
    while (pivot < dim && a[std::size_t(pivot) * dim + col] == 0) ++pivot;
    if (pivot == dim) {
      fail(ErrorCode::InvalidArgument, "matrix is singular mod p");
    }
    if (pivot != col) {
      for (std::uint32_t j = 0; j < dim; ++j) {
        std::swap(a[std::size_t(pivot) * dim + j], a[std::size_t(col) * dim + j]);
      }
      det = mod - det % mod;
    }
    const std::uint64_t pv = a[std::size_t(col) * dim + col];
    det = (det * pv) % mod;
    const std::uint64_t inv = mod_inverse(pv, mod);
    for (std::uint32_t row = col + 1; row < dim; ++row) {
      const std::uint64_t factor =
          (a[std::size_t(row) * dim + col] * inv) % mod;
      if (factor == 0) continue;
      for (std::uint32_t j = col; j < dim; ++j) {
        const std::uint64_t sub =
            (factor * a[std::size_t(col) * dim + j]) % mod;
        a[std::size_t(row) * dim + j] =
            (a[std::size_t(row) * dim + j] + mod - sub) % mod;
      }
    }
  }
  if (det % mod == 0) fail(ErrorCode::InvalidArgument, "matrix is singular mod p");

  GroupElement g;
  g.kind_ = Kind::Matrix;
  g.payload_ = MatrixPayload{dim, mod, std::move(entries)};
  return g;
}

GroupElement GroupElement::pair(GroupElement first, GroupElement second) {
  GroupElement g;
  g.kind_ = Kind::Pair;
  PairPayload p;
  p.ab.reserve(2);
  p.ab.push_back(std::move(first));
  p.ab.push_back(std::move(second));
  g.payload_ = std::move(p);
  return g;
}

bool GroupElement::compatible(const GroupElement& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Permutation:
      return perm().size() == other.perm().size();
    case Kind::Matrix: {
      const auto& a = std::get<MatrixPayload>(payload_);
      const auto& b = std::get<MatrixPayload>(other.payload_);
      return a.dim == b.dim && a.mod == b.mod;
    }
    case Kind::Pair:
      return first().compatible(other.first()) &&
             second().compatible(other.second());
  }
  return false;
}

GroupElement GroupElement::operator*(const GroupElement& other) const {
  if (!compatible(other)) {
    fail(ErrorCode::MixedKinds,
         "cannot compose " + describe() + " with " + other.describe());
  }
  switch (kind_) {
    case Kind::Permutation: {
      const auto& a = std::get<PermPayload>(payload_).map;
      const auto& b = std::get<PermPayload>(other.payload_).map;
      std::vector<std::uint32_t> out(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
      GroupElement g;
      g.kind_ = Kind::Permutation;
      g.payload_ = PermPayload{std::move(out)};
      return g;
    }
    case Kind::Matrix: {
      const auto& a = std::get<MatrixPayload>(payload_);
      const auto& b = std::get<MatrixPayload>(other.payload_);
      const std::uint32_t d = a.dim;
      const std::uint64_t m = a.mod;
      std::vector<std::uint32_t> out(std::size_t(d) * d);
      for (std::uint32_t i = 0; i < d; ++i) {
        for (std::uint32_t j = 0; j < d; ++j) {
          std::uint64_t acc = 0;
          for (std::uint32_t k = 0; k < d; ++k) {
            acc += std::uint64_t(a.a[std::size_t(i) * d + k]) *
                   b.a[std::size_t(k) * d + j];
          }
          out[std::size_t(i) * d + j] = static_cast<std::uint32_t>(acc % m);
        }
      }
      GroupElement g;
      g.kind_ = Kind::Matrix;
      g.payload_ = MatrixPayload{d, m, std::move(out)};
      return g;
    }
    case Kind::Pair:
      return pair(first() * other.first(), second() * other.second());
  }
  fail(ErrorCode::InvalidArgument, "corrupt element");
}

GroupElement GroupElement::inverse() const {
  switch (kind_) {
    case Kind::Permutation: {
      const auto& a = std::get<PermPayload>(payload_).map;
      std::vector<std::uint32_t> out(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) out[a[i]] = static_cast<std::uint32_t>(i);
      GroupElement g;
      g.kind_ = Kind::Permutation;
      g.payload_ = PermPayload{std::move(out)};
      return g;
    }
    case Kind::Matrix: {
      const auto& p = std::get<MatrixPayload>(payload_);
      const std::uint32_t d = p.dim;
      const std::uint64_t m = p.mod;
      // Gauss-Jordan on [A | I] over Z/pZ.
      std::vector<std::uint64_t> a(p.a.begin(), p.a.end());
      std::vector<std::uint64_t> inv(std::size_t(d) * d, 0);
      for (std::uint32_t i = 0; i < d; ++i) inv[std::size_t(i) * d + i] = 1;
      for (std::uint32_t col = 0; col < d; ++col) {
        std::uint32_t pivot = col;
        while (pivot < d && a[std::size_t(pivot) * d + col] == 0) ++pivot;
        if (pivot == d) fail(ErrorCode::InvalidArgument, "matrix is singular mod p");
        if (pivot != col) {
          for (std::uint32_t j = 0; j < d; ++j) {
            std::swap(a[std::size_t(pivot) * d + j], a[std::size_t(col) * d + j]);
            std::swap(inv[std::size_t(pivot) * d + j], inv[std::size_t(col) * d + j]);
          }
        }
        const std::uint64_t s = mod_inverse(a[std::size_t(col) * d + col], m);
        for (std::uint32_t j = 0; j < d; ++j) {
          a[std::size_t(col) * d + j] = (a[std::size_t(col) * d + j] * s) % m;
          inv[std::size_t(col) * d + j] = (inv[std::size_t(col) * d + j] * s) % m;
        }
        for (std::uint32_t row = 0; row < d; ++row) {
          if (row == col) continue;
          const std::uint64_t f = a[std::size_t(row) * d + col];
          if (f == 0) continue;
          for (std::uint32_t j = 0; j < d; ++j) {
            a[std::size_t(row) * d + j] =
                (a[std::size_t(row) * d + j] + m - (f * a[std::size_t(col) * d + j]) % m) % m;
            inv[std::size_t(row) * d + j] =
                (inv[std::size_t(row) * d + j] + m - (f * inv[std::size_t(col) * d + j]) % m) % m;
          }
        }
      }
      std::vector<std::uint32_t> out(inv.size());
      for (std::size_t i = 0; i < inv.size(); ++i) out[i] = static_cast<std::uint32_t>(inv[i]);
      GroupElement g;
      g.kind_ = Kind::Matrix;
      g.payload_ = MatrixPayload{d, m, std::move(out)};
      return g;
    }
    case Kind::Pair:
      return pair(first().inverse(), second().inverse());
  }
  fail(ErrorCode::InvalidArgument, "corrupt element");
}

GroupElement GroupElement::identity_like() const {
  switch (kind_) {
    case Kind::Permutation: {
      std::vector<std::uint32_t> out(perm().size());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint32_t>(i);
      GroupElement g;
      g.kind_ = Kind::Permutation;
      g.payload_ = PermPayload{std::move(out)};
      return g;
    }
    case Kind::Matrix: {
      const auto& p = std::get<MatrixPayload>(payload_);
      std::vector<std::uint32_t> out(std::size_t(p.dim) * p.dim, 0);
      for (std::uint32_t i = 0; i < p.dim; ++i) out[std::size_t(i) * p.dim + i] = 1;
      GroupElement g;
      g.kind_ = Kind::Matrix;
      g.payload_ = MatrixPayload{p.dim, p.mod, std::move(out)};
      return g;
    }
    case Kind::Pair:
      return pair(first().identity_like(), second().identity_like());
  }
  fail(ErrorCode::InvalidArgument, "corrupt element");
}

bool GroupElement::is_identity() const {
  switch (kind_) {
    case Kind::Permutation: {
      const auto& a = std::get<PermPayload>(payload_).map;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != i) return false;
      }
      return true;
    }
    case Kind::Matrix: {
      const auto& p = std::get<MatrixPayload>(payload_);
      for (std::uint32_t i = 0; i < p.dim; ++i) {
        for (std::uint32_t j = 0; j < p.dim; ++j) {
          if (p.a[std::size_t(i) * p.dim + j] != (i == j ? 1u : 0u)) return false;
        }
      }
      return true;
    }
    case Kind::Pair:
      return first().is_identity() && second().is_identity();
  }
  return false;
}

bool GroupElement::operator==(const GroupElement& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Permutation:
      return std::get<PermPayload>(payload_).map ==
             std::get<PermPayload>(other.payload_).map;
    case Kind::Matrix: {
      const auto& a = std::get<MatrixPayload>(payload_);
      const auto& b = std::get<MatrixPayload>(other.payload_);
      return a.dim == b.dim && a.mod == b.mod && a.a == b.a;
    }
    case Kind::Pair:
      return first() == other.first() && second() == other.second();
  }
  return false;
}

std::size_t GroupElement::hash() const {
  std::size_t h = static_cast<std::size_t>(kind_) + 0x51ed270b;
  switch (kind_) {
    case Kind::Permutation:
      for (std::uint32_t v : std::get<PermPayload>(payload_).map) {
        h = hash_combine(h, v);
      }
      return h;
    case Kind::Matrix: {
      const auto& p = std::get<MatrixPayload>(payload_);
      h = hash_combine(h, p.dim);
      h = hash_combine(h, static_cast<std::size_t>(p.mod));
      for (std::uint32_t v : p.a) h = hash_combine(h, v);
      return h;
    }
    case Kind::Pair:
      h = hash_combine(h, first().hash());
      h = hash_combine(h, second().hash());
      return h;
  }
  return h;
}

std::uint32_t GroupElement::degree() const {
  if (kind_ != Kind::Permutation) {
    fail(ErrorCode::InvalidArgument, "degree() on non-permutation");
  }
  return static_cast<std::uint32_t>(std::get<PermPayload>(payload_).map.size());
}

const std::vector<std::uint32_t>& GroupElement::perm() const {
  if (kind_ != Kind::Permutation) {
    fail(ErrorCode::InvalidArgument, "perm() on non-permutation");
  }
  return std::get<PermPayload>(payload_).map;
}

bool GroupElement::is_even_permutation() const {
  const auto& a = perm();
  std::vector<bool> seen(a.size(), false);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = a[j];
    }
  }
  return ((a.size() - cycles) % 2) == 0;
}

std::uint32_t GroupElement::matrix_dim() const {
  if (kind_ != Kind::Matrix) fail(ErrorCode::InvalidArgument, "matrix_dim() on non-matrix");
  return std::get<MatrixPayload>(payload_).dim;
}

std::uint64_t GroupElement::modulus() const {
  if (kind_ != Kind::Matrix) fail(ErrorCode::InvalidArgument, "modulus() on non-matrix");
  return std::get<MatrixPayload>(payload_).mod;
}

const std::vector<std::uint32_t>& GroupElement::entries() const {
  if (kind_ != Kind::Matrix) fail(ErrorCode::InvalidArgument, "entries() on non-matrix");
  return std::get<MatrixPayload>(payload_).a;
}

const GroupElement& GroupElement::first() const {
  if (kind_ != Kind::Pair) fail(ErrorCode::InvalidArgument, "first() on non-pair");
  return std::get<PairPayload>(payload_).ab[0];
}

const GroupElement& GroupElement::second() const {
  if (kind_ != Kind::Pair) fail(ErrorCode::InvalidArgument, "second() on non-pair");
  return std::get<PairPayload>(payload_).ab[1];
}

std::string GroupElement::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Permutation: {
      const auto& a = std::get<PermPayload>(payload_).map;
      os << "perm[";
      for (std::size_t i = 0; i < a.size() && i < 12; ++i) {
        if (i) os << ' ';
        os << a[i];
      }
      if (a.size() > 12) os << " ...";
      os << ']';
      return os.str();
    }
    case Kind::Matrix: {
      const auto& p = std::get<MatrixPayload>(payload_);
      os << "mat" << p.dim << " mod " << p.mod << " [";
      for (std::size_t i = 0; i < p.a.size() && i < 9; ++i) {
        if (i) os << ' ';
        os << p.a[i];
      }
      if (p.a.size() > 9) os << " ...";
      os << ']';
      return os.str();
    }
    case Kind::Pair:
      os << '(' << first().describe() << ", " << second().describe() << ')';
      return os.str();
  }
  return "?";
}

// ---------------------------------------------------------------------------
// FiniteGroup

GroupPtr FiniteGroup::generate(std::vector<GroupElement> generators,
                               std::size_t cap) {
  if (generators.empty()) {
    fail(ErrorCode::InvalidArgument, "empty generating set");
  }
  for (std::size_t i = 1; i < generators.size(); ++i) {
    if (!generators[0].compatible(generators[i])) {
      fail(ErrorCode::MixedKinds,
           "generators " + generators[0].describe() + " and " +
               generators[i].describe() + " are incompatible");
    }
  }

  auto group = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  group->generators_ = std::move(generators);

  // Breadth-first closure, ordered by word length over the generators and
  // then by discovery order (parent first, then generator position). The
  // identity sits at index 0 whether or not it is a generator. A finite
  // group is closed under products of generators alone, so inverses need
  // no separate pass.
  group->elements_.push_back(group->generators_[0].identity_like());
  group->index_.emplace(&group->elements_.back(), 0);

  for (std::size_t next = 0; next < group->elements_.size(); ++next) {
    for (const GroupElement& s : group->generators_) {
      GroupElement w = s * group->elements_[next];
      if (group->index_.find(&w) != group->index_.end()) continue;
      if (group->elements_.size() >= cap) {
        fail(ErrorCode::CapExceeded,
             "closure exceeds cap of " + std::to_string(cap) + " elements");
      }
      group->elements_.push_back(std::move(w));
      group->index_.emplace(&group->elements_.back(),
                            group->elements_.size() - 1);
    }
  }

  group->inverse_.resize(group->order());
  for (std::size_t i = 0; i < group->order(); ++i) {
    GroupElement inv = group->elements_[i].inverse();
    auto it = group->index_.find(&inv);
    if (it == group->index_.end()) {
      fail(ErrorCode::InvalidArgument, "closure is not inverse-closed");
    }
    group->inverse_[i] = it->second;
  }

  group->generator_indices_.reserve(group->generators_.size());
  for (const GroupElement& s : group->generators_) {
    group->generator_indices_.push_back(group->index_of(s));
  }
  return group;
}

std::size_t FiniteGroup::index_of(const GroupElement& g) const {
  auto it = index_.find(&g);
  if (it == index_.end()) {
    fail(ErrorCode::InvalidArgument,
         "element " + g.describe() + " is not in the group");
  }
  return it->second;
}

std::optional<std::size_t> FiniteGroup::find(const GroupElement& g) const {
  auto it = index_.find(&g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteGroup::mult(std::size_t a, std::size_t b) const {
  GroupElement w = elements_[a] * elements_[b];
  return index_of(w);
}

std::vector<std::uint32_t> FiniteGroup::left_translation(std::size_t a) const {
  std::vector<std::uint32_t> out(order());
  for (std::size_t x = 0; x < order(); ++x) {
    out[x] = static_cast<std::uint32_t>(mult(a, x));
  }
  return out;
}

bool FiniteGroup::is_pair_group() const {
  return order() > 0 && elements_[0].kind() == GroupElement::Kind::Pair;
}

GroupPtr generate_closure(std::vector<GroupElement> generators,
                          std::size_t cap) {
  return FiniteGroup::generate(std::move(generators), cap);
}

// ---------------------------------------------------------------------------
// Quotient families

GeneratorSymbolSet::GeneratorSymbolSet(std::vector<std::uint32_t> pairing_in)
    : pairing(std::move(pairing_in)) {
  if (pairing.empty()) {
    fail(ErrorCode::InvalidArgument, "empty generator symbol set");
  }
  for (std::size_t s = 0; s < pairing.size(); ++s) {
    if (pairing[s] >= pairing.size() || pairing[pairing[s]] != s) {
      fail(ErrorCode::InvalidArgument,
           "symbol pairing is not an involution at symbol " + std::to_string(s));
    }
  }
}

QuotientFamily::QuotientFamily(GeneratorSymbolSet symbols,
                               std::vector<FamilyLevel> levels)
    : symbols_(std::move(symbols)), levels_(std::move(levels)) {
  if (levels_.empty()) {
    fail(ErrorCode::InvalidArgument, "family needs at least one level");
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    FamilyLevel& lv = levels_[i];
    if (lv.images.size() != symbols_.size()) {
      fail(ErrorCode::InconsistentArity,
           "level " + std::to_string(i) + " (" + lv.label + ") has " +
               std::to_string(lv.images.size()) + " images for " +
               std::to_string(symbols_.size()) + " symbols");
    }
    if (!lv.group) {
      fail(ErrorCode::InvalidArgument,
           "level " + std::to_string(i) + " has no group");
    }
    lv.image_indices.clear();
    lv.image_indices.reserve(lv.images.size());
    for (const GroupElement& g : lv.images) {
      lv.image_indices.push_back(lv.group->index_of(g));
    }
  }
}

const FamilyLevel& QuotientFamily::level(std::size_t i) const {
  if (i >= levels_.size()) {
    fail(ErrorCode::InvalidArgument, "level index out of range");
  }
  return levels_[i];
}

GroupElement word_image(const QuotientFamily& family, std::size_t level,
                        const std::vector<std::uint32_t>& word) {
  const FamilyLevel& lv = family.level(level);
  GroupElement acc = lv.images[0].identity_like();
  for (std::uint32_t s : word) {
    if (s >= family.symbols().size()) {
      fail(ErrorCode::InvalidArgument,
           "word uses symbol " + std::to_string(s) + " outside the alphabet");
    }
    acc = acc * lv.images[s];
  }
  return acc;
}

GroupPtr product_image(const QuotientFamily& family, std::size_t level_a,
                       std::size_t level_b, std::size_t cap) {
  if (level_a == level_b) {
    fail(ErrorCode::InvalidArgument,
         "product_image needs two distinct level positions");
  }
  const FamilyLevel& la = family.level(level_a);
  const FamilyLevel& lb = family.level(level_b);
  std::vector<GroupElement> gens;
  gens.reserve(family.symbols().size());
  for (std::size_t s = 0; s < family.symbols().size(); ++s) {
    gens.push_back(GroupElement::pair(la.images[s], lb.images[s]));
  }
  return generate_closure(std::move(gens), cap);
}

std::vector<GroupElement> kernel_fiber(const FiniteGroup& product,
                                       int coordinate) {
  if (coordinate != 0 && coordinate != 1) {
    fail(ErrorCode::InvalidArgument, "coordinate must be 0 or 1");
  }
  if (!product.is_pair_group()) {
    fail(ErrorCode::InvalidArgument,
         "kernel_fiber needs a group of pair elements");
  }
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < product.order(); ++i) {
    const GroupElement& g = product.element(i);
    const GroupElement& coord = coordinate == 0 ? g.first() : g.second();
    if (coord.is_identity()) out.push_back(g);
  }
  return out;
}

SymmetryReport check_symmetric(const QuotientFamily& family) {
  SymmetryReport report;
  for (std::size_t i = 0; i < family.level_count(); ++i) {
    const FamilyLevel& lv = family.level(i);
    for (std::size_t s = 0; s < family.symbols().size(); ++s) {
      const std::uint32_t t = family.symbols().pairing[s];
      if (lv.images[t] != lv.images[s].inverse()) {
        fail(ErrorCode::NotSymmetric,
             "level " + std::to_string(i) + " (" + lv.label + "): image of symbol " +
                 std::to_string(t) + " is not the inverse of symbol " +
                 std::to_string(s));
      }
    }
    report.levels.push_back({lv.label, true});
  }
  report.symmetric = true;
  return report;
}

}  // namespace ghostlab
