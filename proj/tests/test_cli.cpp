// End-to-end checks of the psmanip binary: spawns the real executable and
// inspects exit codes and output. The binary path arrives via --bin.

#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "psmanip/json_io.hpp"
#include "psmanip/rational.hpp"

namespace {

std::string g_bin;

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args, const std::string& stdin_text = "") {
  std::string command;
  if (!stdin_text.empty()) {
    const std::string path = "cli_stdin_tmp.json";
    std::ofstream out(path);
    out << stdin_text;
    out.close();
    command = g_bin + " " + args + " < " + path + " 2>&1";
  } else {
    command = g_bin + " " + args + " 2>&1";
  }
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buffer[4096];
  while (std::size_t got = std::fread(buffer, 1, sizeof(buffer), pipe)) {
    result.output.append(buffer, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string strip_timestamp_lines(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# generated_at=", 0) == 0 ||
        line.find("\"generated_at\"") != std::string::npos) {
      continue;
    }
    out << line << "\n";
  }
  return out.str();
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("run on the worked example prints the known matrix") {
  const CliResult result = run_cli("run --worked-example --timeline");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("3/4") != std::string::npos);
  CHECK(result.output.find("1/2") != std::string::npos);
  CHECK(result.output.find("timeline:") != std::string::npos);
  CHECK(result.output.find("utility of agent 0: 3/4") != std::string::npos);
}

TEST_CASE("run with the manipulator paused forever") {
  const CliResult result = run_cli("run --worked-example --pause 0:0..inf");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("3/2") != std::string::npos);  // b and c finish late
  CHECK(result.output.find("utility of agent 0: 0") != std::string::npos);
}

TEST_CASE("run emits a parseable trace json") {
  const CliResult result = run_cli("run --tight 10 --json");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("\"depletion\"") != std::string::npos);
  CHECK(result.output.find("\"1/2\"") != std::string::npos);
}

TEST_CASE("run reads instances from stdin and rejects garbage") {
  const CliResult ok = run_cli("run --input -", R"({"n":1,"m":1,"prefs":[[0]]})");
  CHECK(ok.exit_code == 0);
  const CliResult bad = run_cli("run --input -", "{broken");
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("error") != std::string::npos);
}

TEST_CASE("manipulate reproduces the worked-example gain") {
  const CliResult result = run_cli("manipulate --worked-example --space full");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("16/15") != std::string::npos);
  CHECK(result.output.find("best report: 0 1 2") != std::string::npos);
}

TEST_CASE("manipulate on the small tight instance") {
  const CliResult result = run_cli("manipulate --tight 6 --json");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("\"6/5\"") != std::string::npos);
  CHECK(result.output.find("\"reports_evaluated\": 2") != std::string::npos);
}

TEST_CASE("gen rejects bad tight sizes with a usage error") {
  CHECK(run_cli("gen --tight 9").exit_code == 2);
  CHECK(run_cli("gen --tight 4").exit_code == 2);
  CHECK(run_cli("gen --random 4 4 --seed 1").exit_code == 2);  // missing --k
}

TEST_CASE("gen output round-trips through the library parser") {
  const CliResult result = run_cli("gen --random 5 4 --k 2 --seed 9");
  CHECK(result.exit_code == 0);
  const psmanip::Instance instance = psmanip::instance_from_json(result.output);
  CHECK(instance.profile.n == 5);
  CHECK(instance.profile.m == 4);
  REQUIRE(instance.valuation.has_value());
}

TEST_CASE("gen worked-example and piping into run") {
  const CliResult gen = run_cli("gen --worked-example");
  CHECK(gen.exit_code == 0);
  const CliResult run = run_cli("run --input -", gen.output);
  CHECK(run.exit_code == 0);
  CHECK(run.output.find("3/4") != std::string::npos);
}

TEST_CASE("verify passes on a small budget") {
  const CliResult result = run_cli("verify --lemma2 --seeds 5 --seed 3");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("pause_monotonicity: 5 checked") != std::string::npos);
}

TEST_CASE("experiment writes a csv artifact with the reproducibility header") {
  const std::string path = "cli_experiment_tmp.csv";
  const CliResult result = run_cli(
      "experiment --n-range 4..5 --k-range 1..2 --per-cell 5 --seed 7 --out " + path);
  CHECK(result.exit_code == 0);
  const std::string csv = slurp(path);
  CHECK(csv.find("# psmanip 0.1.0 experiment") != std::string::npos);
  CHECK(csv.find("# seed=7") != std::string::npos);
  CHECK(csv.find("n,k,count,mean_ratio,std_ratio,max_ratio,fraction_manipulable,seed")
        != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);  // 3 header + 1 column + 4 cells
}

TEST_CASE("experiment artifacts are identical across worker counts") {
  const std::string base =
      "experiment --n-range 4..5 --k-range 1..2 --per-cell 5 --seed 7 --format json --out ";
  CHECK(run_cli(base + "cli_det_1.json --jobs 1").exit_code == 0);
  CHECK(run_cli(base + "cli_det_4.json --jobs 4").exit_code == 0);
  CHECK(strip_timestamp_lines(slurp("cli_det_1.json")) ==
        strip_timestamp_lines(slurp("cli_det_4.json")));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("run").exit_code == 2);                    // no instance source
  CHECK(run_cli("frobnicate").exit_code == 2);             // unknown subcommand
  CHECK(run_cli("manipulate --tight 10 --space nope").exit_code == 2);
}

TEST_SUITE_END();

int main(int argc, char** argv) {
  std::vector<char*> forwarded;
  for (int i = 0; i < argc; ++i) {
    if (std::string(argv[i]) == "--bin" && i + 1 < argc) {
      g_bin = argv[++i];
      continue;
    }
    forwarded.push_back(argv[i]);
  }
  if (g_bin.empty()) {
    if (const char* env = std::getenv("PSMANIP_BIN")) {
      g_bin = env;
    }
  }
  if (g_bin.empty()) {
    std::fprintf(stderr, "cli_tests: pass --bin <path-to-psmanip>\n");
    return 1;
  }
  doctest::Context context;
  context.applyCommandLine(static_cast<int>(forwarded.size()), forwarded.data());
  return context.run();
}
