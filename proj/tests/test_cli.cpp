#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("hypercon_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// Runs the CLI with stdout captured to a file and stderr discarded.
Run run_cli(const std::string& args) {
  const fs::path out = scratch_dir() / "stdout.txt";
  const std::string cmd = std::string("\"") + HYPERCON_CLI_PATH + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  return r;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("cli gen writes K_10 minus an edge") {
  const auto r = run_cli("gen complete-minus --n 10 --k 3");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("3 10 119\n", 0) == 0);
}

TEST_CASE("cli compute on a disconnected file") {
  const auto p = write_file("disc.hg", "3 6 2\n1 2 3\n4 5 6\n");
  const auto r = run_cli("compute -i " + p.string());
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("alpha").get<double>() == 0.0);
  CHECK(j.at("connected").get<bool>() == false);
}

TEST_CASE("cli compute writes a report file") {
  const auto p = write_file("k5.hg", "3 5 10\n1 2 3\n1 2 4\n1 2 5\n1 3 4\n1 3 5\n1 4 5\n2 3 4\n2 3 5\n2 4 5\n3 4 5\n");
  const auto json = scratch_dir() / "k5.json";
  const auto r = run_cli("compute -i " + p.string() + " --restarts 3 --threads 1 --strategy all -o " + json.string());
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(json));
  CHECK(std::abs(j.at("alpha").get<double>() - 3.0) <= 1e-6);
  CHECK(j.at("per_vertex").size() == 5);
  CHECK(j.at("config").at("restarts").get<int>() == 3);
}

TEST_CASE("cli exit codes for bad input") {
  const auto bad = write_file("bad.hg", "3 4 1\n1 2 9\n");
  CHECK(run_cli("compute -i " + bad.string()).code == 2);
  CHECK(run_cli("compute -i " + (scratch_dir() / "missing.hg").string()).code == 2);
  CHECK(run_cli("compute").code == 2);
  const auto p = write_file("one.hg", "3 3 1\n1 2 3\n");
  CHECK(run_cli("compute -i " + p.string() + " --sigma 0.9,0.5,0.75").code == 2);
}

TEST_CASE("cli bench produces CSV") {
  const auto r = run_cli("bench kn-minus --n-list 6,7 --restarts 2 --threads 1");
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "n,alpha,ratio,iter,time_s,upper_bound");
  int rows = 0;
  while (std::getline(lines, line)) rows += line.empty() ? 0 : 1;
  CHECK(rows == 2);
}

TEST_CASE("cli oracles") {
  const auto beta = run_cli("oracle beta --l 4 --restarts 5");
  CHECK(beta.code == 0);
  CHECK(beta.out.find("PASS") != std::string::npos);

  const auto p = write_file("sun.hg", "3 7 3\n1 2 3\n1 4 5\n1 6 7\n");
  const auto cut = run_cli("oracle edge-cut -i " + p.string() + " --restarts 5 --threads 1");
  CHECK(cut.code == 0);
  CHECK(cut.out.find("PASS") != std::string::npos);

  const auto grid = run_cli("oracle grid -i " + p.string() + " --depth 20 --refine 3 --tol 2e-3 --restarts 10 --threads 1");
  CHECK(grid.code == 0);
  CHECK(grid.out.find("PASS") != std::string::npos);
}
