#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vps/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run(std::initializer_list<std::string> args) {
  const std::vector<std::string> hold(args);
  std::vector<const char*> argv;
  argv.reserve(hold.size());
  for (const auto& s : hold) argv.push_back(s.c_str());
  return vps::cli::dispatch(static_cast<int>(argv.size()), argv.data());
}

std::string write_scenario(const std::string& name, const json& j) {
  fs::create_directories("cli_work");
  const std::string path = "cli_work/" + name + ".json";
  std::ofstream out(path);
  out << j.dump(2) << '\n';
  return path;
}

json box_scenario(double charge) {
  json j;
  j["profile"] = {{"beta", 0.25}, {"c_beta", 0.02}};
  j["grid"] = {{"L", 20.0}, {"n", 100}};
  if (charge != 0.0)
    j["charges"] = {{"points", {{{"pos", {10.1, 10.0, 10.0}}, {"q", charge}}}}};
  return j;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  json j;
  in >> j;
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string first_line(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  return line;
}

}  // namespace

TEST_CASE("solve without background: trivial run, full report set") {
  const std::string sc = write_scenario("free", box_scenario(0.0));
  CHECK(run({"vps", "solve", "-s", sc, "-o", "cli_out/free"}) == 0);
  const json sol = load_json("cli_out/free/solution.json");
  CHECK(sol["iterations"] == 1);
  CHECK(sol["final_update_norm"] == 0.0);
  CHECK(sol["pde_residual"] == 0.0);
  CHECK(sol["min_q"] == 0.0);
  CHECK(sol["max_q"] == 0.0);
  CHECK(sol["cap_was_active"] == false);
  CHECK(sol["conditions"]["all_pass"] == true);
  CHECK(sol["provenance"]["scenario"]["grid"]["n"] == 100);
  CHECK(fs::exists("cli_out/free/Q.csv"));
  CHECK(fs::exists("cli_out/free/R.csv"));
  CHECK(fs::exists("cli_out/free/S.csv"));
}

TEST_CASE("gcheck: table, conditions, exit code for a bad amplitude") {
  const std::string sc = write_scenario("gok", box_scenario(0.0));
  CHECK(run({"vps", "gcheck", "-s", sc, "-o", "cli_out/gok"}) == 0);
  const json g = load_json("cli_out/gok/gcheck.json");
  CHECK(g["conditions"]["all_pass"] == true);
  CHECK(g["profile_validation"]["pass"] == true);
  CHECK(std::abs(g["conditions"]["sigma"].get<double>() - 1.0) < 1e-6);
  CHECK(first_line("cli_out/gok/gtable.csv") == "r,g,gprime");

  CHECK(run({"vps", "gcheck", "-s", sc, "-o", "cli_out/gbad", "--c-beta", "1e-6"}) == 1);
  const json bad = load_json("cli_out/gbad/gcheck.json");
  CHECK(bad["conditions"]["all_pass"] == false);
  CHECK(bad["conditions"]["subdifferential"]["pass"] == false);
}

TEST_CASE("radial command on an attractive origin charge") {
  json j;
  j["profile"] = {{"beta", 0.25}, {"c_beta", 0.02}};
  j["radial"] = {{"r_max", 30.0}, {"n", 600}};
  j["charges"] = {{"points", {{{"pos", {0.0, 0.0, 0.0}}, {"q", -1.0}}}}};
  const std::string sc = write_scenario("radial", j);
  CHECK(run({"vps", "radial", "-s", sc, "-o", "cli_out/radial"}) == 0);
  const json r = load_json("cli_out/radial/radial.json");
  CHECK(r["final_update_norm"].get<double>() <= 1e-9);
  CHECK(r["min_q"].get<double>() < -0.5);
  CHECK(r["charge_neutrality_defect"].get<double>() <= 1e-4);
  CHECK(r["cap_was_active"] == false);
  CHECK(fs::exists("cli_out/radial/radial.csv"));

  // same scenario through the box solver lacks a grid section
  CHECK(run({"vps", "solve", "-s", sc, "-o", "cli_out/radial_miss"}) == 2);
}

TEST_CASE("non-convergence exits 3 and leaves the history behind") {
  const std::string sc = write_scenario("hard", box_scenario(1.0));
  CHECK(run({"vps", "solve", "-s", sc, "-o", "cli_out/hard", "--max-iter", "1"}) == 3);
  const json h = load_json("cli_out/hard/history.json");
  CHECK(h.contains("error"));
  CHECK(h["history"].size() == 1);
  CHECK_FALSE(fs::exists("cli_out/hard/solution.json"));
}

TEST_CASE("usage and parameter errors exit 2") {
  const std::string sc = write_scenario("args", box_scenario(1.0));
  CHECK(run({"vps"}) == 2);
  CHECK(run({"vps", "explode", "-s", sc}) == 2);
  CHECK(run({"vps", "solve"}) == 2);
  CHECK(run({"vps", "solve", "-s", "cli_work/absent.json"}) == 2);
  CHECK(run({"vps", "solve", "-s", sc, "--tol", "-1.0"}) == 2);
  CHECK(run({"vps", "solve", "-s", sc, "--beta", "0.9"}) == 2);
  CHECK(run({"vps", "solve", "-s", sc, "--c-beta", "soon"}) == 2);
  CHECK(run({"vps", "compare", "-s", sc, "--beta1", "0.6", "--beta2", "0.1"}) == 2);
  // attractive-charge precondition of the comparison
  CHECK(run({"vps", "compare", "-s", sc, "--beta1", "0.1", "--beta2", "0.4"}) == 2);
}

TEST_CASE("help exits 0") {
  CHECK(run({"vps", "--help"}) == 0);
}

TEST_CASE("phase-space and density slices on the free problem") {
  const std::string sc = write_scenario("slice", box_scenario(0.0));
  CHECK(run({"vps", "sample", "-s", sc, "-o", "cli_out/slice", "--vx", "0.6", "--z",
             "7.3"}) == 0);
  CHECK(first_line("cli_out/slice/f_slice.csv") == "x,y,f");
  const json s = load_json("cli_out/slice/sample.json");
  CHECK(s["v"][0] == 0.6);
  CHECK(s["z"] == 7.3);
  CHECK(s["tail_estimate"].get<double>() <= 1e-10);

  CHECK(run({"vps", "density", "-s", sc, "-o", "cli_out/slice"}) == 0);
  CHECK(first_line("cli_out/slice/density_slice.csv") == "x,y,rho");
}

TEST_CASE("identical invocations produce byte-identical reports") {
  // the report echoes the output directory, so rerun into the same one and
  // keep the first pass in memory
  const std::string sc = write_scenario("det", box_scenario(-0.5));
  CHECK(run({"vps", "solve", "-s", sc, "-o", "cli_out/det"}) == 0);
  const std::string report = slurp("cli_out/det/solution.json");
  const std::string table = slurp("cli_out/det/Q.csv");
  CHECK(run({"vps", "solve", "-s", sc, "-o", "cli_out/det"}) == 0);
  CHECK(report == slurp("cli_out/det/solution.json"));
  CHECK(table == slurp("cli_out/det/Q.csv"));
}

TEST_CASE("comparison command writes the distinctness report") {
  // leave the amplitude unpinned: the compare path calibrates a shared c
  // large enough for both extension exponents
  json j = box_scenario(-1.0);
  j["profile"].erase("c_beta");
  const std::string sc = write_scenario("cmp", j);
  CHECK(run({"vps", "compare", "-s", sc, "-o", "cli_out/cmp", "--beta1", "0.1", "--beta2",
             "0.4", "--tol", "1e-10"}) == 0);
  const json c = load_json("cli_out/cmp/comparison.json");
  CHECK(c["distinct"] == true);
  CHECK(c["degenerate"] == false);
  CHECK(c["g_ordering_ok"] == true);
  CHECK(c["q_diff_l2"].get<double>() > c["distinctness_scale"].get<double>());
  CHECK(c["f_diff_lower_bound"].get<double>() > 0.0);
  CHECK(fs::exists("cli_out/cmp/qdiff.csv"));
}
