#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plateau/cli.hpp"
#include "plateau/closed_form.hpp"
#include "plateau/solution_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace plateau;

namespace {

fs::path workdir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "plateau_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "plateau");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string stem(const std::string& name) { return (workdir() / name).string(); }

json load(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("lambda lists") {
  CHECK(cli::parse_lambda_list("2:5:1") == std::vector<double>{2, 3, 4, 5});
  CHECK(cli::parse_lambda_list("2,3.5") == std::vector<double>{2, 3.5});
  CHECK(cli::parse_lambda_list("4") == std::vector<double>{4});
  CHECK(cli::parse_lambda_list("2:20:1").size() == 19);
  CHECK_THROWS(cli::parse_lambda_list("2:1:1"));
  CHECK_THROWS(cli::parse_lambda_list("2:5:0"));
  CHECK_THROWS(cli::parse_lambda_list("abc"));
}

TEST_CASE("solve writes the solution, flux, metadata and report") {
  const auto s = stem("solve1");
  const auto r = call({"solve", "--dim", "1", "--lambda", "4", "--mesh", "1000", "--output", s});
  REQUIRE(r.code == cli::kOk);
  CHECK(fs::exists(s + ".csv"));
  CHECK(fs::exists(s + "_flux.csv"));
  const auto report = json::parse(r.out);
  CHECK(report["verdict"]["all"].get<bool>());
  CHECK(report == load(s + ".report.json"));

  const auto meta = load(s + ".meta.json");
  CHECK(meta["dim"] == 1);
  CHECK(meta["mesh"] == 1000);
  CHECK(meta["schedule"]["name"] == "default");
  const auto rungs = meta["schedule"]["rungs"].get<std::string>();
  CHECK(std::count(rungs.begin(), rungs.end(), ',') == 8);
  CHECK(meta["rungs"].size() == 9);
  CHECK_FALSE(meta.contains("failure"));

  const auto t = io::read_solution_csv(s + ".csv");
  REQUIRE(t.r.size() == 1001);
  for (std::size_t i = 0; i < t.r.size(); ++i) {
    REQUIRE(std::abs(t.u[i] - oracle_u(1, 4.0, t.r[i])) <= 1e-2);
  }
}

TEST_CASE("solve with json output") {
  const auto s = stem("solve_json");
  const auto r = call({"solve", "--dim", "3", "--lambda", "2", "--mesh", "200", "--schedule", "fast",
                       "--format", "json", "--output", s});
  REQUIRE(r.code == cli::kOk);
  const auto j = load(s + ".json");
  CHECK(j["r"].size() == 201);
  CHECK(j["flux"]["z"].size() == 200);
  for (double u : j["u"].get<std::vector<double>>()) {
    CHECK(std::abs(u) <= 1e-6);
  }
}

TEST_CASE("subcritical source gives the zero solution") {
  const auto s = stem("zero");
  const auto r = call({"solve", "--dim", "2", "--lambda", "1.5", "--mesh", "1000", "--output", s});
  REQUIRE(r.code == cli::kOk);
  const auto t = io::read_solution_csv(s + ".csv");
  for (double u : t.u) {
    REQUIRE(std::abs(u) <= 1e-6);
  }
}

TEST_CASE("invalid input exits with code 1") {
  auto r = call({"solve", "--dim", "2", "--lambda", "-1", "--output", stem("neg")});
  CHECK(r.code == cli::kInvalidInput);
  CHECK(r.err.find("source must be nonnegative") != std::string::npos);

  r = call({"solve", "--dim", "2", "--lambda", "4", "--gamma", "0", "--output", stem("g0")});
  CHECK(r.code == cli::kInvalidInput);

  r = call({"solve", "--dim", "2", "--lambda", "4", "--mesh", "2", "--output", stem("m2")});
  CHECK(r.code == cli::kInvalidInput);

  r = call({"sweep", "--mode", "oracle", "--lambdas", "1", "--output", stem("sw1")});
  CHECK(r.code == cli::kInvalidInput);
  CHECK_FALSE(r.err.empty());

  r = call({"bogus"});
  CHECK(r.code == cli::kInvalidInput);
}

TEST_CASE("schedule that stops short reports non-convergence") {
  // a single rung far from p = 1 cannot reach the requested tolerance
  const auto s = stem("short");
  const auto r = call({"solve", "--dim", "2", "--lambda", "4", "--mesh", "400", "--rungs", "1.9:10:1e-2",
                       "--output", s});
  CHECK((r.code == cli::kNonConvergence || r.code == cli::kVerificationFailed));
  CHECK(fs::exists(s + ".csv"));
  CHECK(fs::exists(s + ".meta.json"));
}

TEST_CASE("oracle sweep writes one column per lambda") {
  const auto s = stem("sweep_oracle");
  const auto r = call({"sweep", "--mode", "oracle", "--lambdas", "2:20:1", "--samples", "401", "--output", s});
  REQUIRE(r.code == cli::kOk);
  const auto t = io::read_table_csv(s + ".csv");
  REQUIRE(t.header.size() == 20);
  CHECK(t.header[0] == "x");
  CHECK(t.header[1] == "u_2");
  CHECK(t.header[19] == "u_20");
  REQUIRE(t.columns[0].size() == 401);
  CHECK(t.columns[0].front() == -1.0);
  CHECK(t.columns[0].back() == 1.0);
  for (std::size_t c = 1; c < t.columns.size(); ++c) {
    CHECK(t.columns[c].front() == 0.0);
    CHECK(t.columns[c].back() == 0.0);
  }
}

TEST_CASE("solver sweep tracks the oracle and is thread-count independent") {
  const auto a = stem("sweep_a");
  const auto b = stem("sweep_b");
  auto r = call({"sweep", "--mode", "solver", "--lambdas", "2,4", "--mesh", "1000", "--threads", "1",
                 "--output", a});
  REQUIRE(r.code == cli::kOk);
  r = call({"sweep", "--mode", "solver", "--lambdas", "2,4", "--mesh", "1000", "--threads", "2",
            "--output", b});
  REQUIRE(r.code == cli::kOk);
  CHECK(slurp(a + ".csv") == slurp(b + ".csv"));

  const auto t = io::read_table_csv(a + ".csv");
  REQUIRE(t.columns[0].size() == 2001);
  const auto col = [&](const std::string& name) {
    for (std::size_t c = 0; c < t.header.size(); ++c) {
      if (t.header[c] == name) {
        return t.columns[c];
      }
    }
    FAIL("missing column " << name);
    return std::vector<double>{};
  };
  const auto u4 = col("u_4");
  const auto x = t.columns[0];
  for (std::size_t i = 0; i < x.size(); ++i) {
    REQUIRE(std::abs(u4[i] - oracle_u(1, 4.0, std::min(1.0, std::abs(x[i])))) <= 1e-2);
    REQUIRE(u4[i] == u4[x.size() - 1 - i]);
  }
  CHECK(fs::exists(a + ".meta.json"));
}

TEST_CASE("cheeger and smallness") {
  auto r = call({"cheeger", "--domain", "ball", "--dim", "3", "--radius", "1", "--output", stem("ch")});
  REQUIRE(r.code == cli::kOk);
  auto j = json::parse(r.out);
  CHECK(j["lower"].get<double>() == doctest::Approx(3.0));
  CHECK(j["upper"].get<double>() == doctest::Approx(3.0));
  CHECK(j["exact"].get<double>() == doctest::Approx(3.0));

  r = call({"cheeger", "--domain", "interval", "--dim", "1", "--radius", "1", "--output", stem("ch1")});
  REQUIRE(r.code == cli::kOk);
  CHECK(json::parse(r.out)["exact"].get<double>() == 1.0);

  r = call({"smallness", "--dim", "2", "--lambda", "1", "--fnorm", "1", "--output", stem("sm")});
  REQUIRE(r.code == cli::kOk);
  j = json::parse(r.out);
  CHECK(j["holds"].get<bool>());
  CHECK(j["product"].get<double>() == doctest::Approx(0.28209479177387814));
  r = call({"smallness", "--dim", "2", "--lambda", "4", "--fnorm", "1", "--output", stem("sm2")});
  CHECK_FALSE(json::parse(r.out)["holds"].get<bool>());
}

TEST_CASE("oracle then verify round-trips") {
  const auto s = stem("orc");
  auto r = call({"oracle", "--dim", "2", "--lambda", "4", "--mesh", "2000", "--output", s});
  REQUIRE(r.code == cli::kOk);
  r = call({"verify", "--dim", "2", "--lambda", "4", "--input", s + ".csv", "--output", stem("orc_v")});
  REQUIRE(r.code == cli::kOk);
  const auto j = json::parse(r.out);
  CHECK(j.contains("logsub_cheeger"));
  CHECK(j.contains("rigidity"));

  // corrupt the solution: verification must fail
  auto t = io::read_solution_csv(s + ".csv");
  const auto f = io::read_flux_csv(s + "_flux.csv");
  for (auto& u : t.u) {
    u *= 1.5;
  }
  io::write_table_csv(stem("bad") + ".csv", {"r", "u", "z", "residual"}, {t.r, t.u, t.z, t.residual});
  io::write_table_csv(stem("bad") + "_flux.csv", {"r_mid", "z"}, {f.r_mid, f.z});
  r = call({"verify", "--dim", "2", "--lambda", "4", "--input", stem("bad"), "--output", stem("bad_v")});
  CHECK(r.code == cli::kVerificationFailed);
}

TEST_CASE("config file merges under command-line flags") {
  const auto cfg = workdir() / "cfg.json";
  std::ofstream(cfg) << R"({"dim": 1, "lambda": 2, "mesh": 300, "schedule": "fast"})";
  const std::vector<std::string> merged =
      cli::merge_config({"plateau", "solve", "--config", cfg.string(), "--lambda", "4"});
  CHECK(std::count(merged.begin(), merged.end(), "--lambda") == 1);
  CHECK(std::find(merged.begin(), merged.end(), "--config") == merged.end());
  CHECK(std::find(merged.begin(), merged.end(), "--mesh") != merged.end());

  const auto s = stem("cfg");
  const auto r = call({"solve", "--config", cfg.string(), "--lambda", "4", "--output", s});
  REQUIRE(r.code == cli::kOk);
  const auto meta = load(s + ".meta.json");
  CHECK(meta["lambda_or_g"].get<double>() == 4.0);
  CHECK(meta["mesh"] == 300);
  CHECK(meta["schedule"]["name"] == "fast");
}

TEST_CASE("default output goes to the environment directory") {
  const auto dir = workdir() / "envout";
  ::setenv(cli::kOutputDirEnv, dir.c_str(), 1);
  const auto r = call({"oracle", "--dim", "2", "--lambda", "4", "--mesh", "100"});
  ::unsetenv(cli::kOutputDirEnv);
  REQUIRE(r.code == cli::kOk);
  CHECK(fs::exists(dir / "oracle.csv"));
  CHECK(fs::exists(dir / "oracle_flux.csv"));
}

TEST_CASE("installed binary behaves like the library entry point") {
  const auto s = stem("bin");
  const std::string cmd = std::string(PLATEAU_CLI_PATH) + " cheeger --domain ball --dim 2 --radius 2 --output " +
                          s + " > " + s + ".stdout";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(json::parse(slurp(s + ".stdout"))["exact"].get<double>() == doctest::Approx(1.0));
  const std::string bad = std::string(PLATEAU_CLI_PATH) + " solve --lambda -1 --output " + s + " 2>/dev/null";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == 1);
}
