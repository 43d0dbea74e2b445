#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ghostlab/report.hpp"

using namespace ghostlab;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("ghostlab-test-" + std::to_string(::getpid()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

std::string write_temp(const TempDir& dir, const std::string& name,
                       const std::string& text) {
  const std::string path = dir.file(name);
  std::ofstream out(path);
  out << text;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("config files parse keys, lists and comments") {
  TempDir dir;
  const std::string path = write_temp(dir, "a.conf",
                                      "# header comment\n"
                                      "kind = sl2\n"
                                      "primes = 3, 5, 7  # inline comment\n"
                                      "policy = steinberg\n"
                                      "window = 1, 3\n"
                                      "tolerances.cluster = 1e-9\n"
                                      "tolerances.projection = 1e-7\n"
                                      "parallelism = 4\n"
                                      "cap = 500000\n"
                                      "\n");
  const RunConfig config = parse_config_file(path);
  CHECK(config.kind == FamilyKind::Sl2);
  CHECK(config.params == std::vector<std::uint64_t>{3, 5, 7});
  CHECK(config.policy == IrrepPolicy::Steinberg);
  CHECK(config.window == std::vector<std::size_t>{1, 3});
  CHECK(config.tolerances.cluster == 1e-9);
  CHECK(config.tolerances.projection == 1e-7);
  CHECK(config.parallelism == 4);
  CHECK(config.cap == 500000);
  CHECK_NOTHROW(validate_config(config));
}

TEST_CASE("config rejections") {
  TempDir dir;

  SUBCASE("unknown key") {
    const std::string path = write_temp(dir, "b.conf", "frobnicate = 9\n");
    CHECK_THROWS_AS(parse_config_file(path), Error);
  }
  SUBCASE("missing equals sign") {
    const std::string path = write_temp(dir, "c.conf", "kind sl2\n");
    CHECK_THROWS_AS(parse_config_file(path), Error);
  }
  SUBCASE("unparsable number") {
    const std::string path = write_temp(dir, "d.conf", "primes = 3, five\n");
    CHECK_THROWS_AS(parse_config_file(path), Error);
  }
  SUBCASE("unknown policy") {
    const std::string path = write_temp(dir, "e.conf", "policy = fancy\n");
    CHECK_THROWS_AS(parse_config_file(path), Error);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(parse_config_file(dir.file("nope.conf")), Error);
  }
}

TEST_CASE("config validation bounds") {
  RunConfig config;
  config.params = {3, 5};

  SUBCASE("valid defaults pass") { CHECK_NOTHROW(validate_config(config)); }
  SUBCASE("empty params") {
    config.params.clear();
    CHECK_THROWS_AS(validate_config(config), Error);
  }
  SUBCASE("parallelism range") {
    config.parallelism = 0;
    CHECK_THROWS_AS(validate_config(config), Error);
    config.parallelism = 65;
    CHECK_THROWS_AS(validate_config(config), Error);
  }
  SUBCASE("cluster tolerance must sit below the ambiguity band") {
    config.tolerances.cluster = 1e-2;
    CHECK_THROWS_AS(validate_config(config), Error);
    config.tolerances.cluster = 0.0;
    CHECK_THROWS_AS(validate_config(config), Error);
  }
  SUBCASE("cap floor") {
    config.cap = 1;
    CHECK_THROWS_AS(validate_config(config), Error);
  }
}

TEST_CASE("float formatting is fixed at 12 significant digits") {
  CHECK(format_float(0.0) == "0");
  CHECK(format_float(1.0) == "1");
  CHECK(format_float(0.5) == "0.5");
  CHECK(format_float(1e-8) == "1e-08");
  CHECK(format_float(1.0 / 3.0) == "0.333333333333");
  CHECK(format_float(-2.25) == "-2.25");
  // round trip through the formatter is idempotent
  const double v = 0.06085043653541;
  CHECK(format_float(std::stod(format_float(v))) == format_float(v));
}

TEST_CASE("report shell echoes config but not parallelism or paths") {
  RunConfig config;
  config.params = {3, 5};
  config.parallelism = 8;
  config.out_path = "/tmp/somewhere.json";
  const nlohmann::json shell = report_shell(config, "ghost");

  CHECK(shell["schema"] == "ghost-lab/1");
  CHECK(shell["tool"]["name"] == "ghostlab");
  CHECK(shell["command"] == "ghost");
  CHECK(shell["config"]["kind"] == "sl2");
  CHECK_FALSE(shell["config"].contains("parallelism"));
  CHECK_FALSE(shell["config"].contains("out"));
  const std::string dumped = shell.dump();
  CHECK(dumped.find("somewhere") == std::string::npos);
}

TEST_CASE("family run emits a report with level orders") {
  TempDir dir;
  RunConfig config;
  config.params = {3, 5};
  config.out_path = dir.file("family.json");

  std::ostringstream console;
  CHECK(run_family(config, console) == 0);
  CHECK(console.str().find("SL(2,3): order 24") != std::string::npos);

  const nlohmann::json report = nlohmann::json::parse(slurp(config.out_path));
  CHECK(report["family"]["levels"].size() == 2);
  CHECK(report["family"]["levels"][1]["order"] == 120);
}

TEST_CASE("certify run writes the per-level CSV") {
  TempDir dir;
  RunConfig config;
  config.params = {3, 5};
  config.csv_path = dir.file("gaps.csv");
  config.out_path = dir.file("certify.json");

  std::ostringstream console;
  CHECK(run_certify(config, console) == 0);

  std::ifstream csv(config.csv_path);
  std::string header;
  REQUIRE(std::getline(csv, header));
  CHECK(header == "block_label,dim,degree,diameter,lambda1,mu2");
  std::string row;
  int rows = 0;
  while (std::getline(csv, row)) {
    if (row.empty()) continue;
    ++rows;
    // quoted label field followed by five numeric fields
    REQUIRE(row.front() == '"');
    const std::size_t close = row.find('"', 1);
    REQUIRE(close != std::string::npos);
    const std::string tail = row.substr(close + 1);
    CHECK(std::count(tail.begin(), tail.end(), ',') == 5);
  }
  CHECK(rows == 2);

  const nlohmann::json report = nlohmann::json::parse(slurp(config.out_path));
  CHECK(report["certificate"]["certified"] == true);
  CHECK(report["certificate"]["metric"]["triangle_violations"] == 0);
}

TEST_CASE("ghost run reports round-trip byte for byte") {
  TempDir dir;
  RunConfig config;
  config.params = {3, 5};
  config.out_path = dir.file("ghost.json");

  std::ostringstream console;
  REQUIRE(run_ghost(config, console) == 0);

  const std::string raw = slurp(config.out_path);
  const nlohmann::json parsed = nlohmann::json::parse(raw);
  CHECK(parsed.dump(2) + "\n" == raw);

  // determinism modulo timing across two in-process runs
  RunConfig second = config;
  second.out_path = dir.file("ghost2.json");
  std::ostringstream console2;
  REQUIRE(run_ghost(second, console2) == 0);

  nlohmann::json a = nlohmann::json::parse(raw);
  nlohmann::json b = nlohmann::json::parse(slurp(second.out_path));
  a.erase("timing");
  b.erase("timing");
  CHECK(a.dump() == b.dump());
}

TEST_CASE("ghost run surfaces the vanishing verdicts") {
  TempDir dir;
  RunConfig config;
  config.params = {3, 5};
  config.policy = IrrepPolicy::Trivial;
  config.out_path = dir.file("trivial.json");

  std::ostringstream console;
  CHECK(run_ghost(config, console) == 0);
  const nlohmann::json report = nlohmann::json::parse(slurp(config.out_path));

  CHECK(report["flags"]["irrep_dims_increasing"] == false);
  const std::string verdict = report["claims"]["vanishing"]["verdict"];
  CHECK(verdict.find("fail") == 0);
  for (const auto& row : report["claims"]["vanishing"]["rows"]) {
    CHECK(row["eventually_vanishes"] == false);
    for (const auto& r : row["ranks"]) CHECK(r.get<int>() == 1);
  }
  CHECK(report.contains("classical"));
}

TEST_CASE("exit codes split usage errors from verification failures") {
  CHECK(exit_code_for(ErrorCode::InvalidArgument) == 2);
  CHECK(exit_code_for(ErrorCode::NotPrime) == 2);
  CHECK(exit_code_for(ErrorCode::InconsistentArity) == 2);
  CHECK(exit_code_for(ErrorCode::PolicyUnsupported) == 2);

  CHECK(exit_code_for(ErrorCode::OracleMismatch) == 1);
  CHECK(exit_code_for(ErrorCode::ClusterAmbiguous) == 1);
  CHECK(exit_code_for(ErrorCode::CapExceeded) == 1);
  CHECK(exit_code_for(ErrorCode::Disconnected) == 1);
  CHECK(exit_code_for(ErrorCode::NotSymmetric) == 1);
}

TEST_CASE("window positions validate against the level count") {
  TempDir dir;
  RunConfig config;
  config.params = {3, 5};
  config.window = {1, 5};  // position 5 does not exist
  config.out_path = dir.file("oops.json");
  std::ostringstream console;
  CHECK_THROWS_AS(run_ghost(config, console), Error);

  config.window = {2, 1};  // descending
  CHECK_THROWS_AS(run_ghost(config, console), Error);
}
