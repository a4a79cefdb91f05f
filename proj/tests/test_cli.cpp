#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "gch/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GCH_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gch_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

json load_json(const fs::path& p) { return json::parse(gch::io::read_text(p.string())); }

}  // namespace

TEST_CASE("peakon: novikov roots and exit codes") {
  const auto dir = fresh_dir("peakon_ok");
  REQUIRE(run_cli("peakon --k1 1 --k2 0 --c 4 --domain line --out-dir " + dir.string()) ==
          0);
  const json report = load_json(dir / "amplitude_report.json");
  CHECK(report["exists"] == true);
  REQUIRE(report["roots"].size() == 2);
  CHECK(std::abs(report["roots"][0].get<double>() + 2.0) <= 1e-13);
  CHECK(std::abs(report["roots"][1].get<double>() - 2.0) <= 1e-13);
  CHECK(fs::exists(dir / "profile.csv"));
  CHECK(fs::exists(dir / "manifest.json"));

  const auto dir2 = fresh_dir("peakon_ch");
  REQUIRE(run_cli("peakon --k1 0 --k2 1 --c 3 --domain line --out-dir " + dir2.string()) ==
          0);
  const json r2 = load_json(dir2 / "amplitude_report.json");
  REQUIRE(r2["roots"].size() == 1);
  CHECK(r2["roots"][0].get<double>() == 3.0);
}

TEST_CASE("peakon: nonexistence exits 2 with the discriminant recorded") {
  const auto dir = fresh_dir("peakon_bad");
  CHECK(run_cli("peakon --k1 -1 --k2 0 --c 1 --domain line --out-dir " + dir.string()) ==
        2);
  const json report = load_json(dir / "amplitude_report.json");
  CHECK(report["exists"] == false);
  CHECK(std::abs(report["discriminant"].get<double>() + 4.0) <= 1e-13);
}

TEST_CASE("convolve: identity suite passes at the oracle threshold") {
  const auto dir = fresh_dir("convolve");
  REQUIRE(run_cli("convolve --identity circle_sh2 --samples 11 --out-dir " + dir.string()) ==
          0);
  std::ifstream csv(dir / "convolve_circle_sh2.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "s,closed_form,quadrature,abs_diff");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  CHECK(rows == 11);
}

TEST_CASE("certify: perturbed amplitude is rejected as expected") {
  const auto dir = fresh_dir("certify");
  REQUIRE(run_cli("certify --k1 1 --k2 1 --c 2 --domain circle --perturb 0.1 --phis 1 "
                  "--out-dir " +
                  dir.string()) == 0);
  const json report = load_json(dir / "residual_report.json");
  CHECK(report["verdict"] == "Rejected");
  // defect value of the perturbed amplitude is recorded
  CHECK(std::abs(report["defect_value"].get<double>()) > 1e-3);
}

TEST_CASE("evolve: t_end 0 emits the initial snapshot only; rerun reproduces bytes") {
  const auto dir = fresh_dir("evolve0");
  REQUIRE(run_cli("evolve --k1 1 --k2 1 --c 2 --N 128 --dt 1e-4 --t-end 0 --out-dir " +
                  dir.string()) == 0);
  CHECK(fs::exists(dir / "snapshots.csv"));
  CHECK(fs::exists(dir / "diagnostics.csv"));

  std::ifstream diag(dir / "diagnostics.csv");
  std::string line;
  int rows = 0;
  while (std::getline(diag, line)) ++rows;
  CHECK(rows == 2);  // header + initial record

  const auto dir_short = fresh_dir("evolve_short");
  REQUIRE(run_cli("evolve --k1 1 --k2 1 --c 2 --N 128 --dt 5e-4 --t-end 0.01 "
                  "--record-every 10 --out-dir " +
                  dir_short.string()) == 0);

  const auto dir_rerun = fresh_dir("evolve_rerun");
  REQUIRE(run_cli("rerun --manifest " + (dir_short / "manifest.json").string() +
                  " --out-dir " + dir_rerun.string()) == 0);
  CHECK(gch::io::read_text((dir_short / "snapshots.csv").string()) ==
        gch::io::read_text((dir_rerun / "snapshots.csv").string()));
  CHECK(gch::io::read_text((dir_short / "diagnostics.csv").string()) ==
        gch::io::read_text((dir_rerun / "diagnostics.csv").string()));
}

TEST_CASE("sweep: deterministic rows with the documented columns") {
  const auto dir = fresh_dir("sweep");
  REQUIRE(run_cli("sweep --k1-min -1 --k1-max 1 --k1-steps 3 --k2-min 0 --k2-max 1 "
                  "--k2-steps 2 --c-min -1 --c-max 4 --c-steps 3 --out-dir " +
                  dir.string()) == 0);
  std::ifstream csv(dir / "existence_map.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "k1,k2,c,disc_line,disc_circle,n_roots_line,n_roots_circle");

  int rows = 0;
  bool found_novikov = false;
  for (std::string line; std::getline(csv, line);) {
    ++rows;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 7);
    // (k1, k2, c) = (1, 0, -1): disc_line = -4, no roots
    if (cells[0] == "1" && cells[1] == "0" && cells[2] == "-1") {
      found_novikov = true;
      CHECK(std::stod(cells[3]) == doctest::Approx(-4.0));
      CHECK(cells[5] == "0");
    }
    // (0, 1, c): single line root for every c
    if (cells[0] == "0" && cells[1] == "1") CHECK(cells[5] == "1");
  }
  CHECK(rows == 18);
  CHECK(found_novikov);

  // seeded random sweeps reproduce bit-for-bit
  const auto dir_a = fresh_dir("sweep_a");
  const auto dir_b = fresh_dir("sweep_b");
  REQUIRE(run_cli("sweep --random 20 --seed 7 --out-dir " + dir_a.string()) == 0);
  REQUIRE(run_cli("sweep --random 20 --seed 7 --out-dir " + dir_b.string()) == 0);
  CHECK(gch::io::read_text((dir_a / "existence_map.csv").string()) ==
        gch::io::read_text((dir_b / "existence_map.csv").string()));
}

TEST_CASE("manifest round trip") {
  gch::io::RunManifest m;
  m.command = "peakon";
  m.argv = {"peakon", "--k1", "1"};
  m.params = gch::ModelParams{1.0, 0.5, 2.0};
  m.seed = 42;
  m.outputs = {"a.csv"};
  m.input_hash = gch::io::git_blob_sha1(std::string("hello"));
  const auto parsed = gch::io::parse_manifest(gch::io::manifest_json(m));
  CHECK(parsed.command == m.command);
  CHECK(parsed.argv == m.argv);
  CHECK(parsed.params.k2 == 0.5);
  CHECK(parsed.seed == 42);
  CHECK(parsed.input_hash == m.input_hash);

  // git hashes a blob as "blob <len>\0<data>"
  CHECK(gch::io::git_blob_sha1(std::string("hello")) ==
        "b6fc4c620b67d95f953a5c1c1230aaab5db5a1b0");
}
