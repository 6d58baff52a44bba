#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char *kCli = PLASMOSCAN_CLI_PATH;
const fs::path kWork = fs::path("cli_test_work");

int run_cli(const std::string &args) {
  const std::string cmd =
      std::string(kCli) + " " + args + " > " + (kWork / "stdout.txt").string() + " 2> " +
      (kWork / "stderr.txt").string();
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string read_file(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path &p, const std::string &content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

struct WorkDir {
  WorkDir() {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
  }
};
const WorkDir kWorkDir;

// Small, fast scan configuration derived from the fig3 preset.
json small_scan_config() {
  json j;
  j["scan"] = {{"pixels_x", 24}, {"pixels_y", 24}, {"pitch_nm", 83.0}};
  j["seed"] = 12345;
  return j;
}

}  // namespace

TEST_CASE("cli: spectrum preset writes the dataset files") {
  const fs::path out = kWork / "spectrum";
  REQUIRE(run_cli("spectrum --preset fig2b --out " + out.string()) == 0);
  CHECK(fs::exists(out / "spectrum.csv"));
  CHECK(fs::exists(out / "spectrum_summary.json"));
  CHECK(fs::exists(out / "manifest.json"));

  const json summary = json::parse(read_file(out / "spectrum_summary.json"));
  CHECK(std::abs(summary["peak_wavelength_nm"].get<double>() - 589.0) < 20.0);
  CHECK(summary["source_over_peak"].get<double>() >= 0.95);

  const json manifest = json::parse(read_file(out / "manifest.json"));
  CHECK(manifest["dataset_label"] == "Ag-JohnsonChristy1972");
  CHECK(manifest["config"]["beam"]["fill_factor"].get<double>() == 0.60);
}

TEST_CASE("cli: print-defaults emits parseable config JSON") {
  REQUIRE(run_cli("scan --preset fig3 --print-defaults") == 0);
  const json j = json::parse(read_file(kWork / "stdout.txt"));
  CHECK(j["beam"]["wavelength_nm"].get<double>() == 589.0);
  CHECK(j["detection"]["transmission"]["na_collect"].get<double>() == 1.1);
}

TEST_CASE("cli: config errors exit with code 2") {
  write_file(kWork / "bad.json", "{ not json");
  CHECK(run_cli("scan --config " + (kWork / "bad.json").string()) == 2);

  // Empty sweep range.
  write_file(kWork / "empty_sweep.json",
             R"({"spectrum_sweep": {"lambda_min_nm": 600.0, "lambda_max_nm": 600.0}})");
  CHECK(run_cli("spectrum --config " + (kWork / "empty_sweep.json").string()) == 2);

  CHECK(run_cli("scan --preset nope") == 2);
  CHECK(run_cli("scan --config " + (kWork / "missing.json").string()) == 2);
}

TEST_CASE("cli: numerical failures exit with code 3") {
  // Focal map too small to bracket the half maximum.
  write_file(kWork / "tiny_focus.json",
             R"({"focus_map": {"pixels_x": 5, "pixels_y": 5, "pitch_nm": 40.0}})");
  CHECK(run_cli("focus --config " + (kWork / "tiny_focus.json").string() + " --out " +
                (kWork / "tiny_focus_out").string()) == 3);
}

TEST_CASE("cli: scan outputs with a near-vanishing particle are flat") {
  json j = small_scan_config();
  j["particle"] = {{"semi_axis_long_nm", 1.0}, {"semi_axis_short_nm", 1.0}};
  write_file(kWork / "flat.json", j.dump());
  const fs::path out = kWork / "flat_scan";
  REQUIRE(run_cli("scan --config " + (kWork / "flat.json").string() + " --out " +
                  out.string()) == 0);
  const json summary = json::parse(read_file(out / "scan_summary.json"));
  CHECK(summary["transmission"]["contrast"].get<double>() < 1e-4);
}

TEST_CASE("cli: rerun with the same seed is byte-identical, any thread count") {
  write_file(kWork / "scan.json", small_scan_config().dump());
  const fs::path out1 = kWork / "scan_run1";
  const fs::path out2 = kWork / "scan_run2";
  const std::string cfg = " --config " + (kWork / "scan.json").string();
  REQUIRE(run_cli("scan" + cfg + " --threads 1 --out " + out1.string()) == 0);
  REQUIRE(run_cli("scan" + cfg + " --threads 4 --out " + out2.string()) == 0);
  for (const char *name :
       {"scan_transmission.csv", "scan_reflection.csv", "decomposition_transmission.csv",
        "cross_section_transmission_y.csv"}) {
    CAPTURE(name);
    CHECK(read_file(out1 / name) == read_file(out2 / name));
    CHECK(!read_file(out1 / name).empty());
  }

  // Photon counting uses per-pixel substreams, so counts are thread-stable too.
  json jp = small_scan_config();
  jp["counting"] = {{"dwell_ms", 1.0}, {"rate_per_s", 1.0e6}, {"loss_eta", 0.5},
                    {"source", "triggered"}, {"frames", 2}};
  write_file(kWork / "photon.json", jp.dump());
  const fs::path pout1 = kWork / "photon_run1";
  const fs::path pout2 = kWork / "photon_run2";
  const std::string pcfg = " --config " + (kWork / "photon.json").string();
  REQUIRE(run_cli("scan-photon" + pcfg + " --threads 1 --out " + pout1.string()) == 0);
  REQUIRE(run_cli("scan-photon" + pcfg + " --threads 4 --out " + pout2.string()) == 0);
  for (const char *name : {"counts_transmission_00.csv", "counts_transmission_01.csv",
                           "counts_reflection_00.csv", "counts_transmission_average.csv"}) {
    CAPTURE(name);
    CHECK(read_file(pout1 / name) == read_file(pout2 / name));
    CHECK(!read_file(pout1 / name).empty());
  }
  // Different seed changes the counts.
  const fs::path pout3 = kWork / "photon_run3";
  REQUIRE(run_cli("scan-photon" + pcfg + " --seed 999 --out " + pout3.string()) == 0);
  CHECK(read_file(pout1 / "counts_transmission_00.csv") !=
        read_file(pout3 / "counts_transmission_00.csv"));
}

TEST_CASE("cli: g2 run produces histogram with antibunched first bin") {
  json j;
  j["g2run"] = {{"duration_ns", 2.0e6}, {"bin_width_ns", 1.0}, {"max_tau_ns", 60.0}};
  write_file(kWork / "g2.json", j.dump());
  const fs::path out = kWork / "g2_out";
  REQUIRE(run_cli("g2 --config " + (kWork / "g2.json").string() + " --out " + out.string()) ==
          0);
  CHECK(fs::exists(out / "g2.csv"));
  CHECK(fs::exists(out / "stream.csv"));
  const json summary = json::parse(read_file(out / "g2_summary.json"));
  CHECK(summary["g2_first_bin"].get<double>() < 0.3);
  CHECK(summary["events"].get<long long>() > 10000);
}

TEST_CASE("cli: hidden verify subcommand reports passing oracles") {
  REQUIRE(run_cli("verify") == 0);
  std::istringstream lines(read_file(kWork / "stdout.txt"));
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    const json r = json::parse(line);
    CHECK(r["pass"].get<bool>());
    ++count;
  }
  CHECK(count >= 5);
}
