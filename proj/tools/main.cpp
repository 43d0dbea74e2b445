#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ghostlab/report.hpp"

namespace {

struct CommandOptions {
  std::string config_path;
  std::string kind;
  std::vector<std::uint64_t> primes;
  std::vector<std::uint64_t> degrees;
  std::string policy;
  std::vector<std::size_t> window;
  double cluster_tol = 0.0;
  double projection_tol = 0.0;
  std::uint64_t cap = 0;
  int parallelism = 0;
  int truncate = -1;
  std::string out_path;
  std::string csv_path;
};

void add_options(CLI::App* cmd, CommandOptions& opts, bool with_csv,
                 bool with_truncate) {
  cmd->add_option("-c,--config", opts.config_path,
                  "key = value config file; inline flags override it")
      ->check(CLI::ExistingFile);
  cmd->add_option("--kind", opts.kind, "family kind: sl2 or alt")
      ->check(CLI::IsMember({"sl2", "alt"}));
  cmd->add_option("--primes", opts.primes, "sl2 prime levels, ascending")
      ->delimiter(',');
  cmd->add_option("--degrees", opts.degrees, "alt degree levels, ascending")
      ->delimiter(',');
  cmd->add_option("--policy", opts.policy,
                  "irrep policy: steinberg, deleted-natural, trivial");
  cmd->add_option("--window", opts.window,
                  "1-based level positions (default: all levels)")
      ->delimiter(',');
  cmd->add_option("--cluster-tol", opts.cluster_tol,
                  "eigenvalue-1 cluster tolerance");
  cmd->add_option("--projection-tol", opts.projection_tol,
                  "spectral vs averaged projection tolerance");
  cmd->add_option("--cap", opts.cap, "closure enumeration cap");
  cmd->add_option("-j,--parallelism", opts.parallelism,
                  "worker threads for block eigensolves")
      ->check(CLI::Range(1, 64));
  if (with_truncate) {
    cmd->add_option("--truncate", opts.truncate,
                    "also report the diagonal rank tail after truncating the "
                    "ghost projection past this many leading levels")
        ->check(CLI::NonNegativeNumber);
  }
  cmd->add_option("-o,--out", opts.out_path, "JSON report path");
  if (with_csv) {
    cmd->add_option("--csv", opts.csv_path, "per-level CSV path");
  }
}

ghostlab::RunConfig load(const CommandOptions& opts) {
  ghostlab::RunConfig config;
  if (!opts.config_path.empty()) {
    config = ghostlab::parse_config_file(opts.config_path);
  }
  if (!opts.primes.empty() && !opts.degrees.empty()) {
    ghostlab::fail(ghostlab::ErrorCode::InvalidArgument,
                   "--primes and --degrees are mutually exclusive");
  }
  if (!opts.kind.empty()) {
    ghostlab::apply_config_entry(config, "kind", opts.kind);
  }
  if (!opts.primes.empty()) {
    if (opts.kind == "alt") {
      ghostlab::fail(ghostlab::ErrorCode::InvalidArgument,
                     "--primes requires an sl2 family");
    }
    config.kind = ghostlab::FamilyKind::Sl2;
    config.params = opts.primes;
  }
  if (!opts.degrees.empty()) {
    if (opts.kind == "sl2") {
      ghostlab::fail(ghostlab::ErrorCode::InvalidArgument,
                     "--degrees requires an alt family");
    }
    config.kind = ghostlab::FamilyKind::Alt;
    config.params = opts.degrees;
  }
  if (!opts.policy.empty()) {
    ghostlab::apply_config_entry(config, "policy", opts.policy);
  }
  if (!opts.window.empty()) config.window = opts.window;
  if (opts.cluster_tol > 0.0) config.tolerances.cluster = opts.cluster_tol;
  if (opts.projection_tol > 0.0) {
    config.tolerances.projection = opts.projection_tol;
  }
  if (opts.cap > 0) config.cap = static_cast<std::size_t>(opts.cap);
  if (opts.parallelism > 0) config.parallelism = opts.parallelism;
  if (opts.truncate >= 0) config.truncate = opts.truncate;
  if (!opts.out_path.empty()) config.out_path = opts.out_path;
  if (!opts.csv_path.empty()) config.csv_path = opts.csv_path;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  // The eigensolves are already fanned out at block granularity; nested
  // BLAS threading would only perturb run-to-run reproducibility.
  setenv("OPENBLAS_NUM_THREADS", "1", 0);
  setenv("OMP_NUM_THREADS", "1", 0);

  CLI::App app{"ghost projections over expander windows"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ghostlab::kToolName) + " " +
                                        ghostlab::kToolVersion);

  CommandOptions family_opts;
  CLI::App* family = app.add_subcommand(
      "family", "enumerate the quotient family and its generator images");
  add_options(family, family_opts, false, false);

  CommandOptions certify_opts;
  CLI::App* certify = app.add_subcommand(
      "certify", "spectral gap and coarse-metric certificate per level");
  add_options(certify, certify_opts, true, false);

  CommandOptions ghost_opts;
  CLI::App* ghost = app.add_subcommand(
      "ghost", "build the window, the ghost projection, and verify the claims");
  add_options(ghost, ghost_opts, true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (family->parsed()) {
      return ghostlab::run_family(load(family_opts), std::cout);
    }
    if (certify->parsed()) {
      return ghostlab::run_certify(load(certify_opts), std::cout);
    }
    return ghostlab::run_ghost(load(ghost_opts), std::cout);
  } catch (const ghostlab::Error& e) {
    std::cerr << "error [" << ghostlab::error_code_name(e.code())
              << "]: " << e.what() << '\n';
    return ghostlab::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
