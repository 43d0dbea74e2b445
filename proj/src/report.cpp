#include "ghostlab/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ghostlab/coarse.hpp"

namespace ghostlab {

namespace {

using nlohmann::json;

class PhaseClock {
 public:
  PhaseClock() : start_(std::chrono::steady_clock::now()) {}
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

json jfloat(double value) { return json(format_float(value)); }

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string token;
  for (char c : value) {
    if (c == ' ' || c == ',' || c == '\t') {
      if (!token.empty()) out.push_back(std::move(token));
      token.clear();
    } else {
      token.push_back(c);
    }
  }
  if (!token.empty()) out.push_back(std::move(token));
  return out;
}

std::uint64_t parse_u64(const std::string& text, const std::string& key) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument,
         "config key '" + key + "': cannot parse '" + text + "' as an integer");
  }
}

double parse_double(const std::string& text, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument,
         "config key '" + key + "': cannot parse '" + text + "' as a number");
  }
}

QuotientFamily build_family(const RunConfig& config) {
  if (config.kind == FamilyKind::Sl2) {
    return sl2_family(config.params, config.cap);
  }
  return alt_family(config.params, config.cap);
}

std::vector<std::size_t> window_positions(const RunConfig& config,
                                          std::size_t level_count) {
  std::vector<std::size_t> positions;
  if (config.window.empty()) {
    for (std::size_t i = 0; i < level_count; ++i) positions.push_back(i);
    return positions;
  }
  for (std::size_t i = 0; i < config.window.size(); ++i) {
    const std::size_t p = config.window[i];
    if (p < 1 || p > level_count) {
      fail(ErrorCode::InvalidArgument,
           "window position " + std::to_string(p) + " outside 1.." +
               std::to_string(level_count));
    }
    if (i > 0 && p <= config.window[i - 1]) {
      fail(ErrorCode::InvalidArgument, "window positions must be ascending");
    }
    positions.push_back(p - 1);
  }
  return positions;
}

json family_json(const RunConfig& config, const QuotientFamily& family) {
  json levels = json::array();
  for (std::size_t i = 0; i < family.level_count(); ++i) {
    const FamilyLevel& lv = family.level(i);
    bool identity_image = false;
    for (std::size_t idx : lv.image_indices) {
      identity_image = identity_image || idx == FiniteGroup::kIdentity;
    }
    levels.push_back({
        {"label", lv.label},
        {"param", lv.param},
        {"order", lv.group->order()},
        {"generator_count", lv.images.size()},
        {"identity_image", identity_image},
    });
  }
  return json{{"kind", family_kind_name(config.kind)},
              {"symmetric", true},  // check_symmetric ran during construction
              {"levels", std::move(levels)}};
}

struct LevelCertificate {
  std::string label;
  std::size_t order = 0;
  std::size_t degree = 0;
  std::uint32_t diameter = 0;
  GapResult gap;
  bool identity_dropped = false;
};

LevelCertificate certify_level(const GroupPtr& group,
                               const std::vector<std::size_t>& connection,
                               const std::string& label) {
  const CayleyGraph graph = cayley_graph(group, connection, label);
  LevelCertificate cert;
  cert.label = label;
  cert.order = graph.order();
  cert.degree = graph.degree();
  cert.diameter = graph.diameter();
  cert.identity_dropped = graph.identity_dropped();
  cert.gap = laplacian_gap(graph);
  return cert;
}

json certificate_json(const LevelCertificate& cert) {
  json row{{"label", cert.label},
           {"order", cert.order},
           {"degree", cert.degree},
           {"diameter", cert.diameter},
           {"lambda1", jfloat(cert.gap.lambda1)},
           {"mu2", jfloat(cert.gap.mu2)},
           {"dense_solver", cert.gap.dense},
           {"identity_dropped", cert.identity_dropped}};
  if (std::isnan(cert.gap.identity_defect)) {
    row["identity_defect"] = nullptr;
  } else {
    row["identity_defect"] = jfloat(cert.gap.identity_defect);
  }
  return row;
}

void write_certificate_csv(const std::vector<LevelCertificate>& rows,
                           const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    fail(ErrorCode::InvalidArgument, "cannot open CSV path '" + path + "'");
  }
  out << "block_label,dim,degree,diameter,lambda1,mu2\n";
  for (const auto& r : rows) {
    // labels like SL(2,3) embed commas, so the field is always quoted
    out << '"' << r.label << '"' << ',' << r.order << ',' << r.degree << ','
        << r.diameter << ',' << format_float(r.gap.lambda1) << ','
        << format_float(r.gap.mu2) << '\n';
  }
}

std::string trend_of(const std::vector<double>& values) {
  if (values.size() < 2) return "single";
  bool decreasing = true;
  bool increasing = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    decreasing = decreasing && values[i] < values[i - 1];
    increasing = increasing && values[i] > values[i - 1];
  }
  if (decreasing) return "decreasing";
  if (increasing) return "increasing";
  return "mixed";
}

}  // namespace

const char* family_kind_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Sl2: return "sl2";
    case FamilyKind::Alt: return "alt";
  }
  return "?";
}

std::string format_float(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value) {
  if (key == "kind") {
    if (value == "sl2") {
      config.kind = FamilyKind::Sl2;
    } else if (value == "alt") {
      config.kind = FamilyKind::Alt;
    } else {
      fail(ErrorCode::InvalidArgument, "unknown family kind '" + value + "'");
    }
  } else if (key == "primes" || key == "degrees") {
    config.params.clear();
    for (const std::string& item : split_list(value)) {
      config.params.push_back(parse_u64(item, key));
    }
  } else if (key == "policy") {
    config.policy = irrep_policy_from_name(value);
  } else if (key == "window") {
    config.window.clear();
    for (const std::string& item : split_list(value)) {
      config.window.push_back(
          static_cast<std::size_t>(parse_u64(item, key)));
    }
  } else if (key == "tolerances.cluster") {
    config.tolerances.cluster = parse_double(value, key);
  } else if (key == "tolerances.projection") {
    config.tolerances.projection = parse_double(value, key);
  } else if (key == "parallelism") {
    config.parallelism = static_cast<int>(parse_u64(value, key));
  } else if (key == "cap") {
    config.cap = static_cast<std::size_t>(parse_u64(value, key));
  } else if (key == "out") {
    config.out_path = value;
  } else if (key == "csv") {
    config.csv_path = value;
  } else {
    fail(ErrorCode::InvalidArgument, "unknown config key '" + key + "'");
  }
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::InvalidArgument, "cannot open config file '" + path + "'");
  }
  RunConfig config;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      const auto b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    const std::string stripped = strip(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::InvalidArgument,
           path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    apply_config_entry(config, strip(stripped.substr(0, eq)),
                       strip(stripped.substr(eq + 1)));
  }
  return config;
}

void validate_config(const RunConfig& config) {
  if (config.params.empty()) {
    fail(ErrorCode::InvalidArgument,
         std::string("no ") +
             (config.kind == FamilyKind::Sl2 ? "primes" : "degrees") +
             " configured");
  }
  if (config.parallelism < 1 || config.parallelism > 64) {
    fail(ErrorCode::InvalidArgument, "parallelism must be in 1..64");
  }
  if (!(config.tolerances.cluster > 0) || config.tolerances.cluster >= 1e-2) {
    fail(ErrorCode::InvalidArgument,
         "cluster tolerance must lie in (0, 1e-2)");
  }
  if (!(config.tolerances.projection > 0)) {
    fail(ErrorCode::InvalidArgument, "projection tolerance must be positive");
  }
  if (config.cap < 2) {
    fail(ErrorCode::InvalidArgument, "cap must be at least 2");
  }
}

json report_shell(const RunConfig& config, const std::string& command) {
  json params = json::array();
  for (std::uint64_t p : config.params) params.push_back(p);
  json window = json::array();
  for (std::size_t p : config.window) window.push_back(p);
  return json{
      {"schema", kReportSchema},
      {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
      {"command", command},
      {"config",
       {{"kind", family_kind_name(config.kind)},
        {"params", std::move(params)},
        {"policy", irrep_policy_name(config.policy)},
        {"window", std::move(window)},
        {"cap", config.cap},
        {"tolerances",
         {{"cluster", jfloat(config.tolerances.cluster)},
          {"projection", jfloat(config.tolerances.projection)}}}}},
  };
}

void write_report(const json& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    fail(ErrorCode::InvalidArgument, "cannot open report path '" + path + "'");
  }
  out << report.dump(2) << '\n';
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::NotPrime:
    case ErrorCode::InconsistentArity:
    case ErrorCode::PolicyUnsupported:
      return 2;
    default:
      return 1;
  }
}

// ---------------------------------------------------------------------------
// family

int run_family(const RunConfig& config, std::ostream& console) {
  validate_config(config);
  PhaseClock clock;
  const QuotientFamily family = build_family(config);
  const double build_s = clock.lap();

  for (std::size_t i = 0; i < family.level_count(); ++i) {
    const FamilyLevel& lv = family.level(i);
    console << lv.label << ": order " << lv.group->order() << ", "
            << lv.images.size() << " generator images\n";
  }
  console << "symmetric generator images: yes\n";

  if (!config.out_path.empty()) {
    json report = report_shell(config, "family");
    report["family"] = family_json(config, family);
    report["timing"] = {{"build_s", jfloat(build_s)}};
    write_report(report, config.out_path);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// certify

int run_certify(const RunConfig& config, std::ostream& console) {
  validate_config(config);
  PhaseClock clock;
  const QuotientFamily family = build_family(config);

  std::vector<LevelCertificate> rows;
  std::vector<CayleyGraph> graphs;
  std::vector<double> lambdas;
  for (std::size_t i = 0; i < family.level_count(); ++i) {
    const FamilyLevel& lv = family.level(i);
    graphs.push_back(cayley_graph(lv.group, lv.image_indices, lv.label));
    rows.push_back(certify_level(lv.group, lv.image_indices, lv.label));
    lambdas.push_back(rows.back().gap.lambda1);
  }
  const CoarseSpace space = coarse_union(std::move(graphs));
  const TriangleSample triangles =
      sample_triangle_inequality(space, 2000, 0x7261646975736573ULL);
  const double certify_s = clock.lap();

  double min_lambda1 = lambdas.empty() ? 0.0 : lambdas[0];
  for (double v : lambdas) min_lambda1 = std::min(min_lambda1, v);

  for (const auto& r : rows) {
    console << r.label << ": degree " << r.degree << ", diameter "
            << r.diameter << ", lambda1 ";
    char human[32];
    std::snprintf(human, sizeof(human), "%.6g", r.gap.lambda1);
    console << human << '\n';
  }
  console << "lambda1 trend: " << trend_of(lambdas) << '\n';
  if (config.kind == FamilyKind::Alt) {
    console << "note: the default alternating generators carry no expansion "
               "promise; gaps may decay\n";
  }

  const bool certified = min_lambda1 > 0.0 && triangles.violations == 0;
  console << (certified ? "certificate: PASS" : "certificate: REFUSED")
          << " (min lambda1 " << format_float(min_lambda1) << ")\n";

  if (!config.csv_path.empty()) write_certificate_csv(rows, config.csv_path);
  if (!config.out_path.empty()) {
    json report = report_shell(config, "certify");
    report["family"] = family_json(config, family);
    json blocks = json::array();
    for (const auto& r : rows) blocks.push_back(certificate_json(r));
    report["certificate"] = {
        {"blocks", std::move(blocks)},
        {"min_lambda1", jfloat(min_lambda1)},
        {"lambda1_trend", trend_of(lambdas)},
        {"expansion_promised", config.kind == FamilyKind::Sl2},
        {"certified", certified},
        {"metric",
         {{"cross_rule", space.cross_rule()},
          {"triangle_checked", triangles.checked},
          {"triangle_violations", triangles.violations},
          {"ball_r1", bounded_geometry_check(space, 1.0)},
          {"ball_r2", bounded_geometry_check(space, 2.0)}}},
    };
    report["timing"] = {{"certify_s", jfloat(certify_s)}};
    write_report(report, config.out_path);
  }
  return certified ? 0 : 1;
}

// ---------------------------------------------------------------------------
// ghost

int run_ghost(const RunConfig& config, std::ostream& console) {
  validate_config(config);
  PhaseClock clock;
  PhaseClock total;

  auto family = std::make_shared<const QuotientFamily>(build_family(config));
  const std::vector<std::size_t> positions =
      window_positions(config, family->level_count());
  const Window window = make_window(family, positions, config.policy, config.cap);
  const double window_s = clock.lap();

  const CoarseSpace space = window_space(window);

  // Propagation of a single generator image: exactly 1 by construction;
  // verified over the assembled metric. Scoped so the dense images are
  // released before the heavy spectral work.
  double generator_propagation = 0.0;
  {
    const BlockOperator gen = generator_block_operator(window, 0);
    generator_propagation = propagation(gen, space, {0.5}, false).exact;
  }

  BlockOperator t = build_T(window);
  const double build_s = clock.lap();
  const BlockSpectra spectra = eigensolve_blocks(t, config.parallelism);
  const double eigensolve_s = clock.lap();

  const GapReport gaps = verify_claim1(window, spectra, config.tolerances.cluster);
  double projection_defect = 0.0;
  const BlockOperator e =
      ghost_projection(window, t, spectra, config.tolerances.cluster,
                       config.tolerances.projection, &projection_defect);
  t = BlockOperator();  // local scratch no longer needed
  const RankSequence ranks =
      rank_sequence(window, e, &spectra, config.tolerances.cluster);

  std::vector<Claim2Report> vanishing;
  for (std::size_t row = 0; row < window.size(); ++row) {
    vanishing.push_back(verify_claim2(window, ranks, row));
  }
  const Claim3Report truncation = verify_claim3(window, e, ranks);

  const PropagationProfile ghost_profile =
      propagation(e, space, {1e-1, 1e-2, 1e-3}, false);
  const double verify_s = clock.lap();

  // Console summary.
  console << "window:";
  for (std::size_t i = 0; i < window.size(); ++i) console << ' ' << window.label(i);
  console << "\nmin gap at 1: " << format_float(gaps.min_gap)
          << (gaps.all_consistent ? " (consistent with quotient gaps)"
                                  : " (INCONSISTENT with quotient gaps)")
          << "\ndiagonal ranks:";
  for (Eigen::Index r : ranks.diagonal) console << ' ' << r;
  console << "\nprojection defect: " << format_float(projection_defect) << '\n';

  bool verified = gaps.all_consistent;
  for (const auto& row : vanishing) verified = verified && row.bound_respected;
  if (window.size() > 0) {
    verified = verified && truncation.diagonal_all_positive &&
               truncation.escapes_every_truncation;
  }
  console << (verified ? "claims: VERIFIED" : "claims: FAILED") << '\n';

  if (!config.out_path.empty() || !config.csv_path.empty()) {
    // Per-level Cayley rows (shared CSV schema with certify).
    std::vector<LevelCertificate> rows;
    for (std::size_t i = 0; i < window.size(); ++i) {
      const FamilyLevel& lv = family->level(window.levels[i]);
      rows.push_back(certify_level(lv.group, lv.image_indices, lv.label));
    }
    if (!config.csv_path.empty()) write_certificate_csv(rows, config.csv_path);

    if (!config.out_path.empty()) {
      json report = report_shell(config, "ghost");
      report["family"] = family_json(config, *family);

      json window_json{
          {"size", window.size()},
          {"dims_strictly_increasing", window.dims_strictly_increasing}};
      json labels = json::array();
      json dims = json::array();
      json wpos = json::array();
      for (std::size_t i = 0; i < window.size(); ++i) {
        labels.push_back(window.label(i));
        dims.push_back(window.dims[i]);
        wpos.push_back(window.levels[i] + 1);
      }
      window_json["levels"] = std::move(labels);
      window_json["dims"] = std::move(dims);
      window_json["positions"] = std::move(wpos);
      json pair_sources = json::array();
      for (std::size_t i = 0; i < window.size(); ++i) {
        for (std::size_t j = i; j < window.size(); ++j) {
          pair_sources.push_back({{"row", window.label(i)},
                                  {"col", window.label(j)},
                                  {"order", window.pair_source[i][j]->order()}});
        }
      }
      window_json["pair_sources"] = std::move(pair_sources);
      report["window"] = std::move(window_json);

      json gap_blocks = json::array();
      for (std::size_t i = 0; i < window.size(); ++i) {
        for (std::size_t j = 0; j < window.size(); ++j) {
          const Eigen::VectorXd& evals = spectra.values[i][j];
          json row{{"row", window.label(i)},
                   {"col", window.label(j)},
                   {"dim", e.block_dim(i, j)},
                   {"eval_min", jfloat(evals(0))},
                   {"eval_max", jfloat(evals(evals.size() - 1))},
                   {"rank", ranks.numeric[i][j]},
                   {"gap", jfloat(gaps.pair_gap(i, j))},
                   {"degenerate", bool(gaps.degenerate[i][j])},
                   {"consistent", bool(gaps.consistent[i][j])}};
          if (gaps.quotient_available[i][j]) {
            row["quotient_gap"] = jfloat(gaps.quotient_gap(i, j));
          } else {
            row["quotient_gap"] = nullptr;
          }
          gap_blocks.push_back(std::move(row));
        }
      }
      const bool claim1_pass = gaps.all_consistent && gaps.min_gap > 0.0;
      json claims{
          {"gap",
           {{"min_gap", jfloat(gaps.min_gap)},
            {"min_quotient_gap", jfloat(gaps.min_quotient_gap)},
            {"all_consistent", gaps.all_consistent},
            {"uniform_gap_flag", gaps.uniform_gap_flag},
            {"verdict", claim1_pass ? "pass (finite scale)"
                                    : "fail (finite scale)"},
            {"blocks", std::move(gap_blocks)}}}};

      json vanishing_rows = json::array();
      for (const auto& row : vanishing) {
        json ranks_row = json::array();
        json bounds_row = json::array();
        json vanish_row = json::array();
        for (std::size_t j = 0; j < row.ranks.size(); ++j) {
          ranks_row.push_back(row.ranks[j]);
          bounds_row.push_back(bool(row.bound_applies[j]));
          vanish_row.push_back(bool(row.vanishes[j]));
        }
        json entry{{"row", window.label(row.row)},
                   {"ranks", std::move(ranks_row)},
                   {"bound_applies", std::move(bounds_row)},
                   {"vanishes", std::move(vanish_row)},
                   {"bound_respected", row.bound_respected},
                   {"eventually_vanishes", row.eventually_vanishes},
                   {"dims_strictly_increasing", row.dims_strictly_increasing}};
        if (row.last_nonvanishing) {
          entry["last_nonvanishing"] = *row.last_nonvanishing + 1;
        } else {
          entry["last_nonvanishing"] = nullptr;
        }
        vanishing_rows.push_back(std::move(entry));
      }
      bool rows_respected = true;
      for (const auto& row : vanishing) {
        rows_respected = rows_respected && row.bound_respected;
      }
      std::string claim2_verdict;
      if (!window.dims_strictly_increasing) {
        claim2_verdict =
            "fail: dimension growth hypothesis not satisfied by this policy";
      } else if (rows_respected) {
        claim2_verdict = "pass (finite scale)";
      } else {
        claim2_verdict = "fail (finite scale)";
      }
      claims["vanishing"] = {{"verdict", std::move(claim2_verdict)},
                             {"rows", std::move(vanishing_rows)}};

      json trunc_rows = json::array();
      for (const auto& row : truncation.truncations) {
        trunc_rows.push_back({{"keep", row.keep},
                              {"truncated_tail_zero", row.truncated_tail_zero},
                              {"full_tail_nonzero", row.full_tail_nonzero}});
      }
      json diag = json::array();
      for (Eigen::Index r : truncation.diagonal) diag.push_back(r);
      std::string claim3_verdict;
      if (truncation.vacuous) {
        claim3_verdict = "vacuous (empty window)";
      } else if (truncation.diagonal_all_positive &&
                 truncation.escapes_every_truncation) {
        claim3_verdict = "pass (finite scale)";
      } else {
        claim3_verdict = "fail (finite scale)";
      }
      claims["truncation"] = {
          {"vacuous", truncation.vacuous},
          {"diagonal_ranks", std::move(diag)},
          {"diagonal_all_positive", truncation.diagonal_all_positive},
          {"escapes_every_truncation", truncation.escapes_every_truncation},
          {"verdict", std::move(claim3_verdict)},
          {"rows", std::move(trunc_rows)}};

      if (config.truncate >= 0) {
        const auto keep = static_cast<std::size_t>(config.truncate);
        const BlockOperator truncated = truncate_to_J(e, keep);
        json tail = json::array();
        json full_tail = json::array();
        for (std::size_t i = keep; i < window.size(); ++i) {
          const Eigen::MatrixXcd& block = truncated.block(i, i);
          const double trace =
              truncated.is_zero_block(i, i) ? 0.0 : block.real().trace();
          tail.push_back(static_cast<Eigen::Index>(std::llround(trace)));
          full_tail.push_back(truncation.diagonal[i]);
        }
        claims["truncation_request"] = {{"keep", keep},
                                        {"tail_diagonal_ranks", std::move(tail)},
                                        {"full_tail_diagonal_ranks",
                                         std::move(full_tail)}};
      }
      report["claims"] = std::move(claims);
      report["flags"] = {
          {"uniform_quotient_gap", gaps.uniform_gap_flag},
          {"irrep_dims_increasing", window.dims_strictly_increasing}};

      json numeric = json::array();
      json oracle = json::array();
      for (std::size_t i = 0; i < window.size(); ++i) {
        json nrow = json::array();
        json orow = json::array();
        for (std::size_t j = 0; j < window.size(); ++j) {
          nrow.push_back(ranks.numeric[i][j]);
          orow.push_back(ranks.oracle[i][j]);
        }
        numeric.push_back(std::move(nrow));
        oracle.push_back(std::move(orow));
      }
      json profile_rows = json::array();
      for (const auto& th : ghost_profile.thresholds) {
        profile_rows.push_back(
            {{"eps", jfloat(th.eps)}, {"r_kernel", jfloat(th.r_kernel)}});
      }
      report["ghost"] = {
          {"projection_defect", jfloat(projection_defect)},
          {"ranks_numeric", std::move(numeric)},
          {"ranks_oracle", std::move(oracle)},
          {"generator_propagation", jfloat(generator_propagation)},
          {"tail_profile", std::move(profile_rows)},
      };

      if (config.policy == IrrepPolicy::Trivial) {
        const BlockOperator classical = classical_ghost(window);
        double deviation = 0.0;
        for (std::size_t i = 0; i < window.size(); ++i) {
          for (std::size_t j = 0; j < window.size(); ++j) {
            const Eigen::MatrixXcd& closed = classical.block(i, j);
            if (e.is_zero_block(i, j)) {
              deviation = std::max(deviation, closed.norm());
            } else {
              deviation = std::max(deviation, (closed - e.block(i, j)).norm());
            }
          }
        }
        const PropagationProfile classical_profile =
            propagation(classical, space, {1e-2}, true);
        json per_block = json::array();
        for (const auto& b : classical_profile.per_block) {
          if (b.row != b.col) continue;
          per_block.push_back({{"label", b.label},
                               {"r_kernel", jfloat(b.thresholds[0].r_kernel)},
                               {"r_operator", jfloat(b.thresholds[0].r_operator)}});
        }
        report["classical"] = {{"max_deviation_from_ghost", jfloat(deviation)},
                               {"diagonal_tail_radii", std::move(per_block)}};
      }

      report["timing"] = {{"window_s", jfloat(window_s)},
                          {"build_s", jfloat(build_s)},
                          {"eigensolve_s", jfloat(eigensolve_s)},
                          {"verify_s", jfloat(verify_s)},
                          {"total_s", jfloat(total.lap())}};
      write_report(report, config.out_path);
    }
  }
  return verified ? 0 : 1;
}

}  // namespace ghostlab
