#include "ghostlab/representation.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

namespace ghostlab {

namespace {

constexpr std::uint64_t kSpotCheckSeed = 0x5c0ffee123456789ULL;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::MatrixXcd perm_matrix(const std::vector<std::uint32_t>& p) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(p.size(), p.size());
  for (std::size_t x = 0; x < p.size(); ++x) m(p[x], x) = 1.0;
  return m;
}

void validate_action_rows(const GroupPtr& g,
                          const std::vector<std::vector<std::uint32_t>>& act) {
  if (act.size() != g->order()) {
    fail(ErrorCode::NotAnAction, "action table has " + std::to_string(act.size()) +
                                     " rows for a group of order " +
                                     std::to_string(g->order()));
  }
  if (act.empty() || act[0].empty()) {
    fail(ErrorCode::NotAnAction, "action on an empty point set");
  }
  const std::size_t points = act[0].size();
  std::vector<bool> seen(points);
  for (std::size_t i = 0; i < act.size(); ++i) {
    if (act[i].size() != points) {
      fail(ErrorCode::NotAnAction, "ragged action table at element " + std::to_string(i));
    }
    std::fill(seen.begin(), seen.end(), false);
    for (std::uint32_t v : act[i]) {
      if (v >= points || seen[v]) {
        fail(ErrorCode::NotAnAction,
             "row " + std::to_string(i) + " is not a permutation of the points");
      }
      seen[v] = true;
    }
  }
  for (std::size_t x = 0; x < points; ++x) {
    if (act[FiniteGroup::kIdentity][x] != x) {
      fail(ErrorCode::NotAnAction, "identity does not act trivially");
    }
  }
  // Homomorphism spot check: all generator pairs plus seeded random pairs.
  auto check_pair = [&](std::size_t a, std::size_t b) {
    const std::size_t ab = g->mult(a, b);
    for (std::size_t x = 0; x < points; ++x) {
      if (act[ab][x] != act[a][act[b][x]]) {
        fail(ErrorCode::NotAnAction,
             "action is not multiplicative on elements " + std::to_string(a) +
                 ", " + std::to_string(b));
      }
    }
  };
  for (std::size_t a : g->generator_indices()) {
    for (std::size_t b : g->generator_indices()) check_pair(a, b);
  }
  std::mt19937_64 rng(kSpotCheckSeed);
  std::uniform_int_distribution<std::size_t> pick(0, g->order() - 1);
  for (int i = 0; i < 24; ++i) check_pair(pick(rng), pick(rng));
}

}  // namespace

// ---------------------------------------------------------------------------
// Pairings

Pairing identity_pairing(const GroupPtr& g) {
  if (!g) fail(ErrorCode::InvalidArgument, "null group");
  Pairing p;
  p.source = g;
  p.target_a = g;
  p.target_b = g;
  p.into_a.resize(g->order());
  for (std::size_t i = 0; i < g->order(); ++i) {
    p.into_a[i] = static_cast<std::uint32_t>(i);
  }
  p.into_b = p.into_a;
  return p;
}

Pairing product_pairing(const GroupPtr& product, const GroupPtr& a,
                        const GroupPtr& b) {
  if (!product || !a || !b) fail(ErrorCode::InvalidArgument, "null group");
  if (!product->is_pair_group()) {
    fail(ErrorCode::IncompatiblePairing, "source group does not consist of pairs");
  }
  Pairing p;
  p.source = product;
  p.target_a = a;
  p.target_b = b;
  p.into_a.resize(product->order());
  p.into_b.resize(product->order());
  for (std::size_t q = 0; q < product->order(); ++q) {
    const GroupElement& e = product->element(q);
    auto ia = a->find(e.first());
    auto ib = b->find(e.second());
    if (!ia || !ib) {
      fail(ErrorCode::IncompatiblePairing,
           "pair coordinate falls outside the stated factor group");
    }
    p.into_a[q] = static_cast<std::uint32_t>(*ia);
    p.into_b[q] = static_cast<std::uint32_t>(*ib);
  }
  return p;
}

Pairing swap_pairing(const Pairing& p) {
  Pairing out;
  out.source = p.source;
  out.target_a = p.target_b;
  out.target_b = p.target_a;
  out.into_a = p.into_b;
  out.into_b = p.into_a;
  return out;
}

// ---------------------------------------------------------------------------
// Representation core

Representation::Representation(GroupPtr group, Eigen::Index dim, Form form,
                               Storage storage)
    : group_(std::move(group)),
      dim_(dim),
      form_(form),
      storage_(std::make_shared<const Storage>(std::move(storage))) {
  if (!group_) fail(ErrorCode::InvalidArgument, "null group");
  if (dim_ <= 0) fail(ErrorCode::InvalidArgument, "representation dimension must be positive");
}

const Representation& Representation::tensor_factor_a() const {
  return *std::get<TensorData>(*storage_).a;
}

const Representation& Representation::tensor_factor_b() const {
  return *std::get<TensorData>(*storage_).b;
}

Eigen::MatrixXcd Representation::image(std::size_t g) const {
  if (g >= group_->order()) {
    fail(ErrorCode::InvalidArgument, "element index out of range");
  }
  const std::size_t entries = std::size_t(dim_) * std::size_t(dim_);
  if (entries > kMaterializationLimit) {
    fail(ErrorCode::CapExceeded, "image would hold " +
                                     std::to_string(entries) +
                                     " dense entries");
  }
  switch (form_) {
    case Form::Regular:
      return perm_matrix(group_->left_translation(g));
    case Form::Permutation:
      return perm_matrix(std::get<PermData>(*storage_).act[g]);
    case Form::ProjectedPermutation: {
      const auto& d = std::get<ProjectedPermData>(*storage_);
      const auto& row = d.act[g];
      // B^T P(g) B without forming P(g): permute the rows of B.
      Eigen::MatrixXd pb(d.basis.rows(), d.basis.cols());
      for (std::size_t x = 0; x < row.size(); ++x) {
        pb.row(row[x]) = d.basis.row(x);
      }
      Eigen::MatrixXd out = d.basis.transpose() * pb;
      return out.cast<Complex>();
    }
    case Form::Dense:
      return std::get<DenseData>(*storage_).images[g];
    case Form::Tensor: {
      const auto& d = std::get<TensorData>(*storage_);
      return kron(d.a->image(d.pairing.into_a[g]), d.b->image(d.pairing.into_b[g]));
    }
  }
  fail(ErrorCode::InvalidArgument, "corrupt representation");
}

Complex Representation::character(std::size_t g) const {
  if (g >= group_->order()) {
    fail(ErrorCode::InvalidArgument, "element index out of range");
  }
  switch (form_) {
    case Form::Regular:
      return g == FiniteGroup::kIdentity ? Complex(double(group_->order()), 0.0)
                                         : Complex(0.0, 0.0);
    case Form::Permutation: {
      const auto& row = std::get<PermData>(*storage_).act[g];
      std::size_t fixed = 0;
      for (std::size_t x = 0; x < row.size(); ++x) fixed += row[x] == x;
      return Complex(double(fixed), 0.0);
    }
    case Form::ProjectedPermutation: {
      const auto& row = std::get<ProjectedPermData>(*storage_).act[g];
      std::size_t fixed = 0;
      for (std::size_t x = 0; x < row.size(); ++x) fixed += row[x] == x;
      return Complex(double(fixed) - 1.0, 0.0);
    }
    case Form::Dense:
      return std::get<DenseData>(*storage_).images[g].trace();
    case Form::Tensor: {
      const auto& d = std::get<TensorData>(*storage_);
      return d.a->character(d.pairing.into_a[g]) *
             d.b->character(d.pairing.into_b[g]);
    }
  }
  fail(ErrorCode::InvalidArgument, "corrupt representation");
}

// ---------------------------------------------------------------------------
// Factories

Representation regular_representation(const GroupPtr& g) {
  if (!g) fail(ErrorCode::InvalidArgument, "null group");
  return Representation(g, static_cast<Eigen::Index>(g->order()),
                        Representation::Form::Regular,
                        Representation::RegularData{});
}

Representation permutation_representation(
    const GroupPtr& g, std::vector<std::vector<std::uint32_t>> act) {
  if (!g) fail(ErrorCode::InvalidArgument, "null group");
  validate_action_rows(g, act);
  const Eigen::Index dim = static_cast<Eigen::Index>(act[0].size());
  return Representation(g, dim, Representation::Form::Permutation,
                        Representation::PermData{std::move(act)});
}

Representation deleted_permutation_rep(
    const GroupPtr& g, std::vector<std::vector<std::uint32_t>> act) {
  if (!g) fail(ErrorCode::InvalidArgument, "null group");
  validate_action_rows(g, act);
  const std::size_t points = act[0].size();
  if (points < 2) {
    fail(ErrorCode::InvalidArgument, "deleted permutation rep needs at least 2 points");
  }
  // Transitivity: orbit of point 0 under the generators must be everything.
  std::vector<bool> reached(points, false);
  std::vector<std::size_t> queue{0};
  reached[0] = true;
  while (!queue.empty()) {
    const std::size_t x = queue.back();
    queue.pop_back();
    for (std::size_t s : g->generator_indices()) {
      const std::uint32_t y = act[s][x];
      if (!reached[y]) {
        reached[y] = true;
        queue.push_back(y);
      }
    }
  }
  if (!std::all_of(reached.begin(), reached.end(), [](bool b) { return b; })) {
    fail(ErrorCode::NotTransitive, "action is not transitive on the points");
  }

  // Orthonormal basis of the complement of the all-ones vector: columns
  // 1..points-1 of the Householder reflection swapping e_0 and the
  // normalized constant vector.
  const Eigen::Index m = static_cast<Eigen::Index>(points);
  Eigen::VectorXd u = Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(double(m)));
  Eigen::VectorXd v = Eigen::VectorXd::Unit(m, 0) - u;
  Eigen::MatrixXd h =
      Eigen::MatrixXd::Identity(m, m) - (2.0 / v.squaredNorm()) * (v * v.transpose());
  Eigen::MatrixXd basis = h.rightCols(m - 1);

  return Representation(
      g, m - 1, Representation::Form::ProjectedPermutation,
      Representation::ProjectedPermData{std::move(act), std::move(basis)});
}

Representation trivial_representation(const GroupPtr& g) {
  if (!g) fail(ErrorCode::InvalidArgument, "null group");
  std::vector<Eigen::MatrixXcd> images(g->order(), Eigen::MatrixXcd::Ones(1, 1));
  return Representation(g, 1, Representation::Form::Dense,
                        Representation::DenseData{std::move(images)});
}

Representation dense_representation(const GroupPtr& g,
                                    std::vector<Eigen::MatrixXcd> images) {
  if (!g) fail(ErrorCode::InvalidArgument, "null group");
  if (images.size() != g->order()) {
    fail(ErrorCode::InvalidArgument, "one image per group element required");
  }
  const Eigen::Index dim = images[0].rows();
  if (dim <= 0 || images[0].cols() != dim) {
    fail(ErrorCode::InvalidArgument, "images must be square");
  }
  const std::size_t budget = g->order() * std::size_t(dim) * std::size_t(dim);
  if (budget > kMaterializationLimit) {
    fail(ErrorCode::CapExceeded,
         "dense image table would hold " + std::to_string(budget) +
             " entries; use a structured representation instead");
  }
  for (const auto& m : images) {
    if (m.rows() != dim || m.cols() != dim) {
      fail(ErrorCode::InvalidArgument, "image dimensions disagree");
    }
  }
  if ((images[FiniteGroup::kIdentity] -
       Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-12) {
    fail(ErrorCode::InvalidArgument, "identity element must map to the identity matrix");
  }
  for (std::size_t s : g->generator_indices()) {
    const double defect = (images[s].adjoint() * images[s] -
                           Eigen::MatrixXcd::Identity(dim, dim))
                              .cwiseAbs()
                              .maxCoeff();
    if (defect > 1e-10) {
      fail(ErrorCode::InvalidArgument,
           "generator image is not unitary (defect " + std::to_string(defect) + ")");
    }
  }
  return Representation(g, dim, Representation::Form::Dense,
                        Representation::DenseData{std::move(images)});
}

Representation tensor(const Representation& a, const Representation& b,
                      const Pairing& pairing) {
  if (!pairing.source) fail(ErrorCode::IncompatiblePairing, "pairing has no source group");
  if (pairing.target_a != a.group() || pairing.target_b != b.group()) {
    fail(ErrorCode::IncompatiblePairing,
         "pairing targets do not match the tensor factors");
  }
  const std::size_t n = pairing.source->order();
  if (pairing.into_a.size() != n || pairing.into_b.size() != n) {
    fail(ErrorCode::IncompatiblePairing, "pairing maps must cover the source group");
  }
  for (std::uint32_t v : pairing.into_a) {
    if (v >= a.group()->order()) {
      fail(ErrorCode::IncompatiblePairing, "into_a index out of range");
    }
  }
  for (std::uint32_t v : pairing.into_b) {
    if (v >= b.group()->order()) {
      fail(ErrorCode::IncompatiblePairing, "into_b index out of range");
    }
  }
  // The maps must be homomorphisms; spot-check generator and random pairs.
  std::mt19937_64 rng(kSpotCheckSeed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  auto check_pair = [&](std::size_t x, std::size_t y) {
    const std::size_t xy = pairing.source->mult(x, y);
    if (pairing.into_a[xy] !=
            a.group()->mult(pairing.into_a[x], pairing.into_a[y]) ||
        pairing.into_b[xy] !=
            b.group()->mult(pairing.into_b[x], pairing.into_b[y])) {
      fail(ErrorCode::IncompatiblePairing,
           "pairing maps are not multiplicative on elements " +
               std::to_string(x) + ", " + std::to_string(y));
    }
  };
  for (std::size_t s : pairing.source->generator_indices()) {
    for (std::size_t t : pairing.source->generator_indices()) check_pair(s, t);
  }
  for (int i = 0; i < 16; ++i) check_pair(pick(rng), pick(rng));

  auto pa = std::make_shared<const Representation>(a);
  auto pb = std::make_shared<const Representation>(b);
  return Representation(pairing.source, a.dim() * b.dim(),
                        Representation::Form::Tensor,
                        Representation::TensorData{pa, pb, pairing});
}

// ---------------------------------------------------------------------------
// Character arithmetic

double character_inner(const Representation& a, const Representation& b) {
  if (a.group() != b.group()) {
    fail(ErrorCode::GroupMismatch,
         "character_inner needs two representations of the same group");
  }
  const std::size_t n = a.group()->order();
  Complex acc(0.0, 0.0);
  for (std::size_t g = 0; g < n; ++g) {
    acc += a.character(g) * std::conj(b.character(g));
  }
  return acc.real() / double(n);
}

bool is_irreducible(const Representation& rep) {
  return std::abs(character_inner(rep, rep) - 1.0) <= 1e-6;
}

Eigen::Index invariant_rank(const Representation& rep) {
  const double raw = character_inner(rep, trivial_representation(rep.group()));
  const double rounded = std::round(raw);
  if (std::abs(raw - rounded) > 1e-6 || rounded < 0) {
    fail(ErrorCode::OracleMismatch,
         "character average " + std::to_string(raw) + " is not a nonnegative integer");
  }
  return static_cast<Eigen::Index>(rounded);
}

// ---------------------------------------------------------------------------
// Averaging operators

namespace {

// Fiberwise average for tensor representations whose first factor is the
// regular representation of A: the (r, c) block of (1/|Q|) Σ_q L(a_q) ⊗
// π(b_q) is (1/|Q|) Σ over the fiber {q : a_q = r c^{-1}} of π(b_q). One
// pass over Q accumulates every fiber sum; the Kronecker products are
// never formed. Permutation-backed second factors accumulate exact
// integer point counts and convert to the projected basis once per fiber.
Eigen::MatrixXcd fiber_average(const Representation& rep) {
  const auto& td = std::get<Representation::TensorData>(rep.storage());
  const Representation& a = *td.a;
  const Representation& b = *td.b;
  const FiniteGroup& ga = *a.group();
  const std::size_t na = ga.order();
  const std::size_t nq = td.pairing.source->order();
  const Eigen::Index db = b.dim();

  std::vector<Eigen::MatrixXcd> fiber(na);

  if (b.form() == Representation::Form::Permutation ||
      b.form() == Representation::Form::ProjectedPermutation) {
    const auto& act =
        b.form() == Representation::Form::Permutation
            ? std::get<Representation::PermData>(b.storage()).act
            : std::get<Representation::ProjectedPermData>(b.storage()).act;
    const std::size_t points = act[0].size();
    std::vector<Eigen::MatrixXd> counts(na,
                                        Eigen::MatrixXd::Zero(points, points));
    for (std::size_t q = 0; q < nq; ++q) {
      Eigen::MatrixXd& c = counts[td.pairing.into_a[q]];
      const auto& row = act[td.pairing.into_b[q]];
      for (std::size_t x = 0; x < points; ++x) c(row[x], x) += 1.0;
    }
    if (b.form() == Representation::Form::Permutation) {
      for (std::size_t i = 0; i < na; ++i) fiber[i] = counts[i].cast<Complex>();
    } else {
      const Eigen::MatrixXd& basis =
          std::get<Representation::ProjectedPermData>(b.storage()).basis;
      for (std::size_t i = 0; i < na; ++i) {
        Eigen::MatrixXd s = basis.transpose() * counts[i] * basis;
        fiber[i] = s.cast<Complex>();
      }
    }
  } else {
    for (std::size_t i = 0; i < na; ++i) {
      fiber[i] = Eigen::MatrixXcd::Zero(db, db);
    }
    for (std::size_t q = 0; q < nq; ++q) {
      fiber[td.pairing.into_a[q]] += b.image(td.pairing.into_b[q]);
    }
  }

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rep.dim(), rep.dim());
  const double scale = 1.0 / double(nq);
  for (std::size_t r = 0; r < na; ++r) {
    for (std::size_t c = 0; c < na; ++c) {
      const std::size_t idx = ga.mult(r, ga.inverse(c));
      out.block(Eigen::Index(r) * db, Eigen::Index(c) * db, db, db) =
          fiber[idx] * scale;
    }
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd invariant_projection(const Representation& rep) {
  const std::size_t n = rep.group()->order();
  const std::size_t entries = std::size_t(rep.dim()) * std::size_t(rep.dim());
  if (entries > kMaterializationLimit) {
    fail(ErrorCode::CapExceeded,
         "invariant projection would hold " + std::to_string(entries) +
             " dense entries");
  }
  switch (rep.form()) {
    case Representation::Form::Regular: {
      Eigen::MatrixXd p = Eigen::MatrixXd::Zero(rep.dim(), rep.dim());
      const double w = 1.0 / double(n);
      for (std::size_t g = 0; g < n; ++g) {
        const auto lt = rep.group()->left_translation(g);
        for (std::size_t x = 0; x < n; ++x) p(lt[x], x) += w;
      }
      return p.cast<Complex>();
    }
    case Representation::Form::Permutation: {
      const auto& act = std::get<Representation::PermData>(rep.storage()).act;
      Eigen::MatrixXd p = Eigen::MatrixXd::Zero(rep.dim(), rep.dim());
      const double w = 1.0 / double(n);
      for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t x = 0; x < act[g].size(); ++x) p(act[g][x], x) += w;
      }
      return p.cast<Complex>();
    }
    case Representation::Form::ProjectedPermutation: {
      const auto& d = std::get<Representation::ProjectedPermData>(rep.storage());
      const std::size_t points = d.act[0].size();
      Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(points, points);
      for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t x = 0; x < points; ++x) counts(d.act[g][x], x) += 1.0;
      }
      Eigen::MatrixXd p =
          d.basis.transpose() * counts * d.basis / double(n);
      return p.cast<Complex>();
    }
    case Representation::Form::Dense: {
      const auto& images = std::get<Representation::DenseData>(rep.storage()).images;
      Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(rep.dim(), rep.dim());
      for (const auto& m : images) p += m;
      return p / double(n);
    }
    case Representation::Form::Tensor: {
      if (rep.tensor_factor_a().form() == Representation::Form::Regular) {
        return fiber_average(rep);
      }
      Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(rep.dim(), rep.dim());
      for (std::size_t g = 0; g < n; ++g) p += rep.image(g);
      return p / double(n);
    }
  }
  fail(ErrorCode::InvalidArgument, "corrupt representation");
}

Eigen::MatrixXcd markov_operator(const Representation& rep,
                                 const std::vector<std::size_t>& genset) {
  if (genset.empty()) {
    fail(ErrorCode::InvalidArgument, "empty generating multiset");
  }
  const FiniteGroup& g = *rep.group();
  std::unordered_map<std::size_t, int> count;
  for (std::size_t s : genset) {
    if (s >= g.order()) fail(ErrorCode::InvalidArgument, "genset index out of range");
    ++count[s];
  }
  for (const auto& [s, c] : count) {
    auto it = count.find(g.inverse(s));
    if (it == count.end() || it->second != c) {
      fail(ErrorCode::NotSymmetricSet,
           "generating multiset is not closed under inversion at element " +
               std::to_string(s));
    }
  }

  const std::size_t entries = std::size_t(rep.dim()) * std::size_t(rep.dim());
  if (entries > kMaterializationLimit) {
    fail(ErrorCode::CapExceeded,
         "averaging operator would hold " + std::to_string(entries) +
             " dense entries");
  }
  const double w = 1.0 / double(genset.size());
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(rep.dim(), rep.dim());

  if (rep.form() == Representation::Form::Regular) {
    for (std::size_t s : genset) {
      const auto lt = g.left_translation(s);
      for (std::size_t x = 0; x < lt.size(); ++x) t(lt[x], x) += w;
    }
  } else if (rep.form() == Representation::Form::Tensor &&
             rep.tensor_factor_a().form() == Representation::Form::Regular) {
    const auto& td = std::get<Representation::TensorData>(rep.storage());
    const FiniteGroup& ga = *td.a->group();
    const Eigen::Index db = td.b->dim();
    for (std::size_t s : genset) {
      const Eigen::MatrixXcd bs = td.b->image(td.pairing.into_b[s]);
      const auto lt = ga.left_translation(td.pairing.into_a[s]);
      for (std::size_t c = 0; c < ga.order(); ++c) {
        t.block(Eigen::Index(lt[c]) * db, Eigen::Index(c) * db, db, db) +=
            w * bs;
      }
    }
  } else {
    for (std::size_t s : genset) t += w * rep.image(s);
  }

  const double asym = (t - t.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) {
    fail(ErrorCode::InvalidArgument,
         "averaging operator failed the Hermiticity check (defect " +
             std::to_string(asym) + ")");
  }
  return 0.5 * (t + t.adjoint()).eval();
}

double unitarity_defect(const Representation& rep, int samples) {
  const std::size_t n = rep.group()->order();
  std::vector<std::size_t> picks(rep.group()->generator_indices());
  std::mt19937_64 rng(kSpotCheckSeed ^ 0xa5a5a5a5ULL);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (int i = 0; i < samples; ++i) picks.push_back(pick(rng));
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(rep.dim(), rep.dim());
  double worst = 0.0;
  for (std::size_t s : picks) {
    const Eigen::MatrixXcd m = rep.image(s);
    worst = std::max(worst, (m.adjoint() * m - eye).cwiseAbs().maxCoeff());
  }
  return worst;
}

double homomorphism_defect(const Representation& rep, int samples) {
  const std::size_t n = rep.group()->order();
  std::mt19937_64 rng(kSpotCheckSeed ^ 0x3c3c3c3cULL);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const std::size_t a = pick(rng);
    const std::size_t b = pick(rng);
    const Eigen::MatrixXcd lhs = rep.image(rep.group()->mult(a, b));
    const Eigen::MatrixXcd rhs = rep.image(a) * rep.image(b);
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace ghostlab
