#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string output;
};

// Runs the CLI through the shell; stderr is merged into output.
Run sta(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" + STA_CLI_PATH + "' " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string scenario(const std::string& name) { return std::string(STA_SCENARIO_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("sta_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return path / name;
  }
};

}  // namespace

TEST_CASE("table prints the Cayley table") {
  const Run r = sta("table");
  CHECK(r.code == 0);
  std::istringstream in(r.output);
  std::string first;
  std::getline(in, first);
  CHECK(first.rfind("+e0 +e1 +e2 +e3", 0) == 0);
  int lines = 1;
  for (std::string l; std::getline(in, l);) ++lines;
  CHECK(lines == 16);
}

TEST_CASE("phases writes CSV to stdout and files") {
  TempDir tmp;
  const Run r = sta("phases --scenario '" + scenario("rest_electron.json") + "' --steps 100");
  CHECK(r.code == 0);
  CHECK(r.output.rfind("t,delta_dot_L,gamma_dot_L,delta_hat_dot_L,gamma_hat_dot_L,beta,v0,consistency_residual\n", 0) ==
        0);
  CHECK(r.output.find("# total,-1\n") != std::string::npos);

  const Run j = sta("phases --scenario '" + scenario("precession_loop.json") + "' --out '" +
                    (tmp.path / "loop.json").string() + "'");
  CHECK(j.code == 0);
  const auto doc = nlohmann::json::parse(slurp(tmp.path / "loop.json"));
  CHECK(std::abs(doc["finals"]["gamma_hat_G"].get<double>() - 1.5707963267948966) < 1e-6);
  CHECK(doc["meta"]["steps"] == 10000);

  const Run rel = sta("phases --scenario '" + scenario("constant.json") + "' --out out.csv --steps 10",
                      "STA_OUTPUT_DIR='" + tmp.path.string() + "'");
  CHECK(rel.code == 0);
  CHECK(fs::exists(tmp.path / "out.csv"));
}

TEST_CASE("phases output is byte-identical across runs") {
  TempDir tmp;
  const std::string base = "phases --scenario '" + scenario("custom_euler.json") + "' --steps 2000 --out '";
  CHECK(sta(base + (tmp.path / "a.csv").string() + "'").code == 0);
  CHECK(sta(base + (tmp.path / "b.csv").string() + "'").code == 0);
  CHECK(sta(base + (tmp.path / "c.csv").string() + "' --serial").code == 0);
  const std::string a = slurp(tmp.path / "a.csv");
  CHECK(!a.empty());
  CHECK(a == slurp(tmp.path / "b.csv"));
  CHECK(a == slurp(tmp.path / "c.csv"));
}

TEST_CASE("input errors exit with 2") {
  TempDir tmp;
  CHECK(sta("phases --scenario /nonexistent.json").code == 2);
  CHECK(sta("phases --scenario '" + scenario("constant.json") + "' --formula fancy").code == 2);
  CHECK(sta("bogus").code == 2);
  CHECK(sta("").code == 2);

  const auto bad = tmp.write("bad.json", "{\n  \"kind\": \"rest_plane_wave\",\n  \"duration\": 1,,\n}\n");
  const Run syntax = sta("phases --scenario '" + bad.string() + "'");
  CHECK(syntax.code == 2);
  CHECK(syntax.output.find("bad.json:3") != std::string::npos);

  const auto unknown = tmp.write(
      "unknown.json", R"({"kind": "precession_loop", "params": {"theta0": 1, "spin": 2}, "duration": 1})");
  const Run field = sta("phases --scenario '" + unknown.string() + "'");
  CHECK(field.code == 2);
  CHECK(field.output.find("/params/spin") != std::string::npos);

  CHECK(sta("phases --scenario '" + scenario("constant.json") + "' --steps 1").code == 2);
}

TEST_CASE("numeric failures exit with 3 and name the time") {
  TempDir tmp;
  const auto f = tmp.write(
      "vanish.json", R"({"kind": "custom_euler", "params": {"rho": {"poly": [1, -1]}}, "duration": 2, "steps": 10})");
  const Run r = sta("phases --scenario '" + f.string() + "'");
  CHECK(r.code == 3);
  CHECK(r.output.find("t = 1") != std::string::npos);
}

TEST_CASE("verify exit codes") {
  TempDir tmp;
  const Run ok = sta("verify --json '" + (tmp.path / "ok.json").string() + "'");
  CHECK(ok.code == 0);
  CHECK(ok.output.find("[FAIL]") == std::string::npos);
  CHECK(nlohmann::json::parse(slurp(tmp.path / "ok.json"))["passed"] == true);

  const Run fault = sta("verify --inject-fault --json '" + (tmp.path / "fault.json").string() + "'");
  CHECK(fault.code == 4);
  const auto doc = nlohmann::json::parse(slurp(tmp.path / "fault.json"));
  CHECK(doc["passed"] == false);
  REQUIRE(!doc["failures"].empty());
  CHECK(doc["failures"][0]["group"] == 1);

  const Run zero = sta("verify --tol 0 --serial");
  CHECK(zero.code == 4);
  CHECK(zero.output.find("[FAIL]") != std::string::npos);

  CHECK(sta("verify --tol -1").code == 2);
}
