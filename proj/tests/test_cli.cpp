// Runs the hermite-sc binary end to end: exit codes, CSV headers, manifests
// and byte-identical reruns.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "hermite_sc_cli_test";

int run(const std::string& args) {
  const std::string cmd = std::string(HERMITE_SC_PATH) + " " + args + " > " +
                          (kRoot / "stdout.txt").string() + " 2> " + (kRoot / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string first_line(const fs::path& p) {
  const std::string s = slurp(p);
  return s.substr(0, s.find('\n'));
}

std::size_t line_count(const fs::path& p) {
  const std::string s = slurp(p);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

struct Fixture {
  Fixture() {
    fs::remove_all(kRoot);
    fs::create_directories(kRoot);
  }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "psi-norms reproduces the constants and writes a manifest") {
  const fs::path out = kRoot / "a";
  REQUIRE(run("--out-dir " + out.string() + " psi-norms --n 1:3") == 0);
  CHECK(first_line(out / "psi_norms.csv") == "n,k,sup_norm,scaled");
  CHECK(line_count(out / "psi_norms.csv") == 1 + 3 * 4);
  const std::string body = slurp(out / "psi_norms.csv");
  CHECK(body.find("2,0,") != std::string::npos);
  CHECK(body.find(",0.64487457685996") != std::string::npos);
  CHECK(body.find(",1.0622519320271") != std::string::npos);
  CHECK(body.find(",3.1867557960815") != std::string::npos);

  const auto m = nlohmann::json::parse(slurp(out / "psi_norms.manifest.json"));
  CHECK(m["command"] == "psi-norms");
  CHECK(m["parameters"]["n_range"][1] == 3);
  CHECK(m["parameters"]["grid_points"] == 4000);
  CHECK(m["outputs"].size() == 1);
  CHECK(m.contains("wall_seconds"));
  CHECK(m.contains("version"));
}

TEST_CASE_FIXTURE(Fixture, "supercon marks and reruns are byte identical") {
  const fs::path a = kRoot / "a";
  const fs::path b = kRoot / "b";
  REQUIRE(run("--out-dir " + a.string() + " supercon --function pole --n 55 --m 1") == 0);
  REQUIRE(run("--out-dir " + b.string() + " supercon --function pole --n 55 --m 1") == 0);
  const std::string stem = "supercon_pole_n55_m1";
  CHECK(first_line(a / (stem + "_curve.csv")) == "x,error");
  CHECK(first_line(a / (stem + "_marks.csv")) == "point,kind,error");
  CHECK(line_count(a / (stem + "_marks.csv")) == 1 + 57);
  CHECK(line_count(a / (stem + "_curve.csv")) == 1 + 4000);
  CHECK(slurp(a / (stem + "_curve.csv")) == slurp(b / (stem + "_curve.csv")));
  CHECK(slurp(a / (stem + "_marks.csv")) == slurp(b / (stem + "_marks.csv")));
  const auto m = nlohmann::json::parse(slurp(a / (stem + ".manifest.json")));
  CHECK(m["parameters"]["function"] == "pole");
  CHECK(m["parameters"]["n"] == 55);
  CHECK(m["parameters"]["m"] == 1);
  CHECK(m["results"]["max_marked_error"].get<double>() < m["results"]["sup_error"].get<double>());

  REQUIRE(run("--out-dir " + a.string() + " supercon --function wavepacket --n 62 --m 2") == 0);
  CHECK(line_count(a / "supercon_wavepacket_n62_m2_marks.csv") == 1 + 65);
}

TEST_CASE_FIXTURE(Fixture, "supercon ratios") {
  const fs::path out = kRoot / "r";
  REQUIRE(run("--out-dir " + out.string() + " --grid-points 1500 supercon --n 10 --ratios 5:12") == 0);
  const fs::path csv = out / "ratios_pole_5_12.csv";
  CHECK(first_line(csv) == "n,R1,R2,sqrt_n_R1,sqrt_n_R2,degenerate");
  CHECK(line_count(csv) == 1 + 8);
}

TEST_CASE_FIXTURE(Fixture, "collocate writes curves, marks and diagnostics") {
  const fs::path out = kRoot / "c";
  REQUIRE(run("--out-dir " + out.string() +
              " collocate --model model1 --alpha 0.5 --function gauss-rational2 --n 45") == 0);
  const std::string stem = "collocate_model1_a0p5_gauss-rational2_n45";
  CHECK(line_count(out / (stem + "_m0_marks.csv")) == 1 + 46);
  CHECK(line_count(out / (stem + "_m1_marks.csv")) == 1 + 47);
  const auto m = nlohmann::json::parse(slurp(out / (stem + ".manifest.json")));
  CHECK(m["parameters"]["alpha"] == 0.5);
  CHECK(m["parameters"]["model"] == "model1");
  CHECK(m["results"]["node_ratio"].get<double>() < 1.0);
  CHECK(m["results"]["residual_norm"].get<double>() <= 1e-9);
  CHECK(m["results"].contains("condition_estimate"));

  REQUIRE(run("--out-dir " + out.string() +
              " collocate --model model2 --alpha 2 --function gauss-log --n 45") == 0);
}

TEST_CASE_FIXTURE(Fixture, "exit codes for bad input and numerical failure") {
  const std::string out = "--out-dir " + (kRoot / "e").string();
  CHECK(run(out + " collocate --model model1 --alpha 3 --n 10") == 2);
  CHECK(slurp(kRoot / "stderr.txt").find("alpha") != std::string::npos);
  CHECK(run(out + " supercon --function nope") == 2);
  CHECK(run(out + " supercon --m 3") == 2);
  CHECK(run(out + " psi-norms --k 4") == 2);
  CHECK(run(out + " frobnicate") == 2);
  CHECK(run(out + " postprocess --n 10") == 2);
  CHECK(run(out + " postprocess --n 10 --m 30") == 2);
  CHECK(run(out + " verify --suite nope") == 2);
  // For n = 1, D has eigenvalue -1/2, so Model2 with alpha = -1/2 is singular.
  CHECK(run(out + " collocate --model model2 --alpha -0.5 --function pole --n 1") == 3);
  CHECK(slurp(kRoot / "stderr.txt").find("condition") != std::string::npos);
}

TEST_CASE_FIXTURE(Fixture, "postprocess emits aligned columns and the hull summary") {
  const fs::path out = kRoot / "p";
  REQUIRE(run("--out-dir " + out.string() + " postprocess --n 40 --m 41") == 0);
  const std::string stem = "postprocess_a1_twin-gauss_n40_m41";
  CHECK(first_line(out / (stem + ".csv")) == "x,err_u_n,err_u_n1,err_phi");
  CHECK(first_line(out / (stem + "_summary.csv")) == "region,err_u_n,err_u_n1,err_phi");
  const auto m = nlohmann::json::parse(slurp(out / (stem + ".manifest.json")));
  CHECK(m["results"]["improves_inside_hull"] == true);
  CHECK(m["parameters"]["m"] == 41);

  REQUIRE(run("--out-dir " + out.string() + " postprocess --n 40 --m 51") == 0);
  const auto m2 =
      nlohmann::json::parse(slurp(out / "postprocess_a1_twin-gauss_n40_m51.manifest.json"));
  CHECK(m2["results"]["deteriorates_outside_hull"] == true);
  CHECK(slurp(kRoot / "stdout.txt").find("deteriorates outside hull") != std::string::npos);
}

TEST_CASE_FIXTURE(Fixture, "verify emits a machine-readable report") {
  const fs::path out = kRoot / "v";
  REQUIRE(run("--out-dir " + out.string() + " verify --suite nodes") == 0);
  const auto rep = nlohmann::json::parse(slurp(out / "verify_nodes.json"));
  CHECK(rep["passed"] == true);
  CHECK(rep["checks"].size() >= 5);
  for (const auto& c : rep["checks"]) CHECK(c["passed"] == true);
  CHECK(fs::exists(out / "verify_nodes.manifest.json"));
}
