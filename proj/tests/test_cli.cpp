#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

fs::path scratch() {
  static fs::path root = [] {
    fs::path p = fs::temp_directory_path() / ("asym_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return root;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_config(const std::string& name, const std::string& text) {
  fs::path p = scratch() / (name + ".json");
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

int cli(const std::string& command, const fs::path& config, const fs::path& out, const std::string& extra = "") {
  fs::create_directories(out);
  std::string line = std::string(ASYM_CLI_PATH) + " " + command + " --config '" + config.string() + "' --out '" +
                     out.string() + "' " + extra + " > '" + (out / "stdout.txt").string() + "' 2> '" +
                     (out / "stderr.txt").string() + "'";
  int status = std::system(line.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string command_of(const std::string& stem) {
  std::string head = stem.substr(0, stem.find('_'));
  if (head == "classify") return "classify-line";
  return head;
}

}  // namespace

TEST_CASE("every sample config runs, passes its assertion and is byte-for-byte reproducible") {
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(ASYM_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    std::string stem = entry.path().stem().string();
    CAPTURE(stem);
    fs::path a = scratch() / (stem + "_a"), b = scratch() / (stem + "_b");
    CHECK(cli(command_of(stem), entry.path(), a, "--assert") == 0);
    CHECK(cli(command_of(stem), entry.path(), b, "--assert") == 0);
    int files = 0;
    for (const auto& f : fs::directory_iterator(a)) {
      ++files;
      CHECK(slurp(f.path()) == slurp(b / f.path().filename()));
    }
    CHECK(files >= 3);
    ++seen;
  }
  CHECK(seen >= 7);
}

TEST_CASE("porosity summary and trace") {
  fs::path out = scratch() / "porosity";
  CHECK(cli("porosity", fs::path(ASYM_CONFIG_DIR) / "porosity_geometric_points.json", out) == 0);
  Json j = Json::parse(slurp(out / "porosity.json"));
  CHECK(j["value"] == "1/2");
  CHECK(j["kind"] == "exact");
  std::string csv = slurp(out / "porosity_trace.csv");
  CHECK(csv.rfind("h,h_decimal,gap_length,gap_length_decimal,ratio,ratio_decimal\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);

  fs::path cfg = write_config("blocks", R"({"model": {"kind": "geometric_blocks", "q": "4", "a": "1", "b": "2"}})");
  fs::path gb = scratch() / "porosity_blocks";
  CHECK(cli("porosity", cfg, gb) == 0);
  std::istringstream lines(slurp(gb / "porosity_trace.csv"));
  std::string line;
  std::getline(lines, line);
  bool half = false;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    REQUIRE(cells.size() == 6);
    CHECK(cells[4] != "1");
    half = half || cells[4] == "1/2";
  }
  CHECK(half);
}

TEST_CASE("equivalence verdict json") {
  fs::path out = scratch() / "equiv";
  CHECK(cli("equiv", fs::path(ASYM_CONFIG_DIR) / "equiv_line_lattice.json", out) == 0);
  Json j = Json::parse(slurp(out / "verdict.json"));
  CHECK(j["status"] == "equivalent_exact");
  CHECK(j["bound"] == "1/2");
}

TEST_CASE("pseudo quotient has two points") {
  fs::path out = scratch() / "pseudo";
  CHECK(cli("pseudo", fs::path(ASYM_CONFIG_DIR) / "pseudo_three_points.json", out) == 0);
  Json j = Json::parse(slurp(out / "pseudo.json"));
  CHECK(j["quotient"]["labels"].size() == 2);
  CHECK(j["valid"] == true);
}

TEST_CASE("curves") {
  fs::path one = write_config("single", R"({"Y": {"kind": "full_line"}, "Z": {"kind": "full_line"}, "t_grid": ["5"]})");
  fs::path out = scratch() / "single";
  CHECK(cli("epsilon", one, out, "--assert") == 0);
  std::string csv = slurp(out / "epsilon_curve.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(csv.substr(csv.find('\n') + 1) == "5,5,0,0,0,0,0,0,0,0\n");
}

TEST_CASE("negative verdicts exit 1 only under --assert") {
  fs::path cfg = write_config("neg", R"({
    "Y": {"kind": "geometric_points", "q": "2", "c": "1", "n0": 0},
    "Z": {"kind": "ray", "origin": "0", "direction": 1}})");
  CHECK(cli("equiv", cfg, scratch() / "neg_plain") == 0);
  CHECK(cli("equiv", cfg, scratch() / "neg_assert", "--assert") == 1);
  fs::path por = write_config("neg_por", R"({"model": {"kind": "ray", "origin": "0", "direction": 1}, "expect": "porous"})");
  CHECK(cli("porosity", por, scratch() / "neg_por", "--assert") == 1);
  fs::path cls = write_config("neg_cls", R"({"model": {"kind": "lattice", "step": "1", "offset": "0"}})");
  CHECK(cli("classify-line", cls, scratch() / "neg_cls", "--assert") == 1);
}

TEST_CASE("bad input exits 2") {
  fs::path out = scratch() / "bad";
  CHECK(cli("equiv", write_config("broken", "{ not json"), out) == 2);
  CHECK(cli("equiv", write_config("missing", R"({"Y": {"kind": "full_line"}})"), out) == 2);
  CHECK(slurp(out / "stderr.txt").find("Z") != std::string::npos);
  CHECK(cli("porosity", write_config("badq", R"({"model": {"kind": "geometric_points", "q": 2, "c": "1", "n0": 0}})"),
            out) == 2);
  CHECK(slurp(out / "stderr.txt").find("/model/q") != std::string::npos);
  CHECK(cli("porosity", write_config("badkind", R"({"model": {"kind": "spiral"}})"), out) == 2);
  CHECK(cli("porosity", scratch() / "does_not_exist.json", out) == 2);
  CHECK(cli("teleport", write_config("any", "{}"), out) == 2);
  CHECK(cli("pseudo", write_config("asym", R"({"space": {"labels": ["a", "b"], "dist": [["0", "1"], ["2", "0"]]}})"),
            out, "--assert") == 1);
}

TEST_CASE("horizon and seed flags") {
  fs::path cfg = fs::path(ASYM_CONFIG_DIR) / "pseudo_fuzz.json";
  fs::path a = scratch() / "seed_a", b = scratch() / "seed_b";
  CHECK(cli("pseudo", cfg, a, "--seed 17") == 0);
  CHECK(cli("pseudo", cfg, b, "--seed 18") == 0);
  CHECK(slurp(a / "pseudo_fuzz.csv") != slurp(b / "pseudo_fuzz.csv"));
  Json j = Json::parse(slurp(a / "pseudo_fuzz.json"));
  CHECK(j["agree"] == j["pairs"]);

  fs::path h = scratch() / "horizon";
  CHECK(cli("spectrum", fs::path(ASYM_CONFIG_DIR) / "spectrum_lattice.json", h, "--horizon 30") == 0);
  std::string csv = slurp(h / "spectrum.csv");
  CHECK(csv.find("present") != std::string::npos);
}
