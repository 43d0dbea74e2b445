#include "ghostlab/families.hpp"

#include <algorithm>

namespace ghostlab {

namespace {

std::uint64_t sl2_order(std::uint64_t p) { return p * (p * p - 1); }

std::uint64_t alt_order(std::uint64_t n) {
  std::uint64_t acc = 1;
  for (std::uint64_t k = 3; k <= n; ++k) acc *= k;
  return acc;
}

void require_ascending(const std::vector<std::uint64_t>& xs,
                       const char* what) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] <= xs[i - 1]) {
      fail(ErrorCode::InvalidArgument,
           std::string(what) + " must be strictly ascending");
    }
  }
}

}  // namespace

const char* irrep_policy_name(IrrepPolicy policy) {
  switch (policy) {
    case IrrepPolicy::Steinberg:      return "steinberg";
    case IrrepPolicy::DeletedNatural: return "deleted-natural";
    case IrrepPolicy::Trivial:        return "trivial";
  }
  return "?";
}

IrrepPolicy irrep_policy_from_name(const std::string& name) {
  if (name == "steinberg") return IrrepPolicy::Steinberg;
  if (name == "deleted-natural") return IrrepPolicy::DeletedNatural;
  if (name == "trivial") return IrrepPolicy::Trivial;
  fail(ErrorCode::InvalidArgument, "unknown irrep policy '" + name + "'");
}

QuotientFamily sl2_family(const std::vector<std::uint64_t>& primes,
                          std::size_t cap) {
  if (primes.empty()) fail(ErrorCode::InvalidArgument, "empty prime list");
  require_ascending(primes, "primes");
  for (std::uint64_t p : primes) {
    if (!is_prime_u64(p)) {
      fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    }
    if (p < 3) {
      fail(ErrorCode::NotPrime,
           "primes must be odd (got " + std::to_string(p) + ")");
    }
  }

  GeneratorSymbolSet symbols({1, 0, 3, 2});
  std::vector<FamilyLevel> levels;
  for (std::uint64_t p : primes) {
    const std::uint32_t m1 = static_cast<std::uint32_t>(p - 1);
    FamilyLevel lv;
    lv.label = "SL(2," + std::to_string(p) + ")";
    lv.param = p;
    lv.images = {
        GroupElement::matrix_mod_p(2, p, {1, 1, 0, 1}),
        GroupElement::matrix_mod_p(2, p, {1, m1, 0, 1}),
        GroupElement::matrix_mod_p(2, p, {1, 0, 1, 1}),
        GroupElement::matrix_mod_p(2, p, {1, 0, m1, 1}),
    };
    lv.group = generate_closure(lv.images, cap);
    if (lv.group->order() != sl2_order(p)) {
      fail(ErrorCode::NotGenerating,
           lv.label + " closure has order " + std::to_string(lv.group->order()) +
               ", expected " + std::to_string(sl2_order(p)));
    }
    levels.push_back(std::move(lv));
  }
  QuotientFamily family(std::move(symbols), std::move(levels));
  check_symmetric(family);
  return family;
}

QuotientFamily alt_family(const std::vector<std::uint64_t>& degrees,
                          std::size_t cap) {
  if (degrees.empty()) fail(ErrorCode::InvalidArgument, "empty degree list");
  require_ascending(degrees, "degrees");
  for (std::uint64_t n : degrees) {
    if (n < 4) {
      fail(ErrorCode::InvalidArgument,
           "alternating degree must be at least 4, got " + std::to_string(n));
    }
  }

  GeneratorSymbolSet symbols({1, 0, 3, 2});
  std::vector<FamilyLevel> levels;
  for (std::uint64_t n : degrees) {
    const std::uint32_t deg = static_cast<std::uint32_t>(n);
    std::vector<std::uint32_t> long_cycle;
    for (std::uint32_t i = (n % 2 == 1) ? 0 : 1; i < deg; ++i) {
      long_cycle.push_back(i);
    }
    GroupElement a = GroupElement::cycle(deg, {0, 1, 2});
    GroupElement c = GroupElement::cycle(deg, long_cycle);

    FamilyLevel lv;
    lv.label = "Alt(" + std::to_string(n) + ")";
    lv.param = n;
    lv.images = {a, a.inverse(), c, c.inverse()};
    for (const GroupElement& g : lv.images) {
      if (!g.is_even_permutation()) {
        fail(ErrorCode::NotGenerating,
             lv.label + ": generator " + g.describe() + " is odd");
      }
    }
    lv.group = generate_closure(lv.images, cap);
    if (lv.group->order() != alt_order(n)) {
      fail(ErrorCode::NotGenerating,
           lv.label + " closure has order " + std::to_string(lv.group->order()) +
               ", expected " + std::to_string(alt_order(n)));
    }
    levels.push_back(std::move(lv));
  }
  QuotientFamily family(std::move(symbols), std::move(levels));
  check_symmetric(family);
  return family;
}

QuotientFamily product_subgroup_family(GeneratorSymbolSet symbols,
                                       std::vector<CustomLevel> levels,
                                       std::size_t cap) {
  if (levels.empty()) fail(ErrorCode::InvalidArgument, "no levels given");
  std::vector<FamilyLevel> built;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    CustomLevel& in = levels[i];
    if (in.images.size() != symbols.size()) {
      fail(ErrorCode::InconsistentArity,
           "level " + std::to_string(i) + " supplies " +
               std::to_string(in.images.size()) + " images for " +
               std::to_string(symbols.size()) + " symbols");
    }
    FamilyLevel lv;
    lv.label = in.label.empty() ? "L" + std::to_string(i + 1) : in.label;
    lv.param = in.param;
    lv.images = std::move(in.images);
    lv.group = generate_closure(lv.images, cap);
    if (in.expected_order && lv.group->order() != *in.expected_order) {
      fail(ErrorCode::NotGenerating,
           lv.label + " closure has order " + std::to_string(lv.group->order()) +
               ", expected " + std::to_string(*in.expected_order));
    }
    built.push_back(std::move(lv));
  }
  QuotientFamily family(std::move(symbols), std::move(built));
  check_symmetric(family);
  return family;
}

Representation steinberg_rep(const QuotientFamily& family, std::size_t level) {
  const FamilyLevel& lv = family.level(level);
  const GroupElement& sample = lv.group->element(0);
  if (sample.kind() != GroupElement::Kind::Matrix || sample.matrix_dim() != 2) {
    fail(ErrorCode::PolicyUnsupported,
         lv.label + ": Steinberg construction needs 2x2 matrix levels");
  }
  const std::uint64_t p = sample.modulus();
  if (lv.group->order() != sl2_order(p)) {
    fail(ErrorCode::PolicyUnsupported,
         lv.label + " is not all of SL(2," + std::to_string(p) + ")");
  }

  // Action on the projective line: points 0..p-1 are the lines through
  // (x, 1), point p is the line through (1, 0).
  const std::size_t points = static_cast<std::size_t>(p) + 1;
  auto line_index = [&](std::uint64_t v0, std::uint64_t v1) -> std::uint32_t {
    if (v1 % p == 0) return static_cast<std::uint32_t>(p);
    std::uint64_t inv = 1, base = v1 % p, e = p - 2;
    while (e > 0) {
      if (e & 1) inv = (inv * base) % p;
      base = (base * base) % p;
      e >>= 1;
    }
    return static_cast<std::uint32_t>((v0 % p) * inv % p);
  };

  std::vector<std::vector<std::uint32_t>> act(lv.group->order());
  for (std::size_t g = 0; g < lv.group->order(); ++g) {
    const auto& e = lv.group->element(g).entries();
    const std::uint64_t a = e[0], b = e[1], c = e[2], d = e[3];
    std::vector<std::uint32_t> row(points);
    for (std::uint64_t x = 0; x < p; ++x) {
      row[x] = line_index(a * x + b, c * x + d);
    }
    row[p] = line_index(a, c);
    act[g] = std::move(row);
  }

  Representation rep = deleted_permutation_rep(lv.group, std::move(act));
  if (!is_irreducible(rep)) {
    fail(ErrorCode::NotIrreducible,
         lv.label + ": projective-line representation failed the character test");
  }
  return rep;
}

Representation choose_irrep(const QuotientFamily& family, std::size_t level,
                            IrrepPolicy policy) {
  const FamilyLevel& lv = family.level(level);
  switch (policy) {
    case IrrepPolicy::Steinberg:
      return steinberg_rep(family, level);
    case IrrepPolicy::DeletedNatural: {
      if (lv.group->element(0).kind() != GroupElement::Kind::Permutation) {
        fail(ErrorCode::PolicyUnsupported,
             lv.label + ": deleted-natural policy needs permutation levels");
      }
      std::vector<std::vector<std::uint32_t>> act(lv.group->order());
      for (std::size_t g = 0; g < lv.group->order(); ++g) {
        act[g] = lv.group->element(g).perm();
      }
      Representation rep = deleted_permutation_rep(lv.group, std::move(act));
      if (!is_irreducible(rep)) {
        fail(ErrorCode::NotIrreducible,
             lv.label + ": deleted point representation is reducible");
      }
      return rep;
    }
    case IrrepPolicy::Trivial:
      return trivial_representation(lv.group);
  }
  fail(ErrorCode::PolicyUnsupported, "unknown policy");
}

}  // namespace ghostlab
