#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghostlab/families.hpp"
#include "ghostlab/ghost.hpp"

namespace ghostlab {

inline constexpr const char* kReportSchema = "ghost-lab/1";
inline constexpr const char* kToolName = "ghostlab";
inline constexpr const char* kToolVersion = "0.1.0";

enum class FamilyKind : std::uint8_t { Sl2, Alt };

const char* family_kind_name(FamilyKind kind);

struct ToleranceConfig {
  double cluster = kDefaultClusterTol;
  double projection = kDefaultProjectionTol;
};

/// Effective settings of one run. Parsed from a plain key = value file;
/// command-line flags layer on top. `window` holds 1-based positions into
/// the level list (empty = all levels).
struct RunConfig {
  FamilyKind kind = FamilyKind::Sl2;
  std::vector<std::uint64_t> params;  // primes (sl2) or degrees (alt)
  IrrepPolicy policy = IrrepPolicy::Steinberg;
  std::vector<std::size_t> window;
  ToleranceConfig tolerances;
  int parallelism = 1;
  std::size_t cap = kDefaultClosureCap;
  int truncate = -1;  // >= 0: report the rank tail of truncate_to_J(e, k)
  std::string out_path;
  std::string csv_path;
};

RunConfig parse_config_file(const std::string& path);
void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value);
void validate_config(const RunConfig& config);

/// Fixed 12-significant-digit rendering; every floating value in reports
/// and CSV goes through here so emitted files re-serialize byte-for-byte.
std::string format_float(double value);

/// Report skeleton shared by all commands: schema, tool, config echo.
/// The echo deliberately leaves out parallelism and output paths, which
/// must not influence report bytes.
nlohmann::json report_shell(const RunConfig& config, const std::string& command);

void write_report(const nlohmann::json& report, const std::string& path);

/// Enumerate the configured family levels and report their orders.
int run_family(const RunConfig& config, std::ostream& console);

/// Per-level Cayley certificates: connectivity, Laplacian gap, the
/// regularity identity, plus the assembled union's metric checks. Writes
/// the CSV when requested. Returns 1 (certificate refused) when a gap
/// fails to be positive.
int run_certify(const RunConfig& config, std::ostream& console);

/// Full pipeline: window, averaged operator, spectra, ghost projection,
/// rank oracles, the three claim reports, propagation profiles. Returns 1
/// when a verified claim fails.
int run_ghost(const RunConfig& config, std::ostream& console);

/// Exit status for a thrown Error: 2 for configuration and usage
/// problems, 1 for verification failures.
int exit_code_for(ErrorCode code);

}  // namespace ghostlab
