// Copyright 2026 The corrwitness authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end tests driving the installed CLI binary.  The binary path is
// passed as the first program argument (see CMakeLists.txt).

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

std::string g_cli;     // path to the corrwitness binary
fs::path g_dir;        // scratch directory with fixture files

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs `<env> cli <args>` through the shell, capturing both streams.
RunResult run(const std::string& args, const std::string& env_prefix = "") {
  const fs::path out = g_dir / "stdout.txt";
  const fs::path err = g_dir / "stderr.txt";
  std::ostringstream cmd;
  cmd << env_prefix << (env_prefix.empty() ? "" : " ") << "'" << g_cli << "' " << args
      << " > '" << out.string() << "' 2> '" << err.string() << "'";
  const int raw = std::system(cmd.str().c_str());
  RunResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

fs::path fixture(const std::string& name) { return g_dir / name; }

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

void make_fixtures() {
  write_file(fixture("bell.json"), R"({"dims": [2, 2],
 "re": [[0.5, 0, 0, 0.5], [0, 0, 0, 0], [0, 0, 0, 0], [0.5, 0, 0, 0.5]]})");
  write_file(fixture("product.json"), R"({"dims": [2, 2],
 "re": [[0.25, 0, 0, 0], [0, 0.25, 0, 0], [0, 0, 0.25, 0], [0, 0, 0, 0.25]]})");
  write_file(fixture("bad_trace.json"), R"({"dims": [2, 2],
 "re": [[0.4, 0, 0, 0.5], [0, 0, 0, 0], [0, 0, 0, 0], [0.5, 0, 0, 0.5]]})");
  write_file(fixture("h.json"), R"({"dims": [2, 2],
 "re": [[0.3, 0.1, 0.0, 0.2], [0.1, -0.4, 0.5, 0.0],
        [0.0, 0.5, 0.9, -0.3], [0.2, 0.0, -0.3, 0.1]],
 "im": [[0.0, 0.2, -0.1, 0.0], [-0.2, 0.0, 0.3, 0.1],
        [0.1, -0.3, 0.0, 0.4], [0.0, -0.1, -0.4, 0.0]]})");
}

}  // namespace

TEST_CASE("witness: correlated input reports and exits zero") {
  const RunResult r = run("witness --input " + q(fixture("bell.json")));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"achieved\": 0.5") != std::string::npos);
  CHECK(r.out.find("\"detectable\": true") != std::string::npos);
  CHECK(r.out.find("\"n\": 3") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("witness: reruns are byte-identical") {
  const RunResult a = run("witness --input " + q(fixture("bell.json")));
  const RunResult b = run("witness --input " + q(fixture("bell.json")));
  CHECK(a.out == b.out);
  CHECK(a.exit_code == b.exit_code);
}

TEST_CASE("witness: uncorrelated input refuses with exit 3") {
  const RunResult r = run("witness --input " + q(fixture("product.json")));
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("\"code\":3") != std::string::npos);
  CHECK(r.err.find("uncorrelated") != std::string::npos);
}

TEST_CASE("input errors exit 2 with a json body") {
  const RunResult missing = run("witness --input /nonexistent.json");
  CHECK(missing.exit_code == 2);
  CHECK(missing.err.find("\"code\":2") != std::string::npos);

  const RunResult bad_flag = run("witness --input x --format xml");
  CHECK(bad_flag.exit_code == 2);

  const RunResult no_sub = run("");
  CHECK(no_sub.exit_code == 2);
}

TEST_CASE("validate: names the violated invariant") {
  const RunResult ok = run("validate --input " + q(fixture("bell.json")));
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("\"valid\": true") != std::string::npos);

  const RunResult bad = run("validate --input " + q(fixture("bad_trace.json")));
  CHECK(bad.exit_code == 2);
  CHECK(bad.err.find("trace") != std::string::npos);

  const RunResult unitary = run("validate --kind unitary --input " +
                                q(fixture("bad_trace.json")));
  CHECK(unitary.exit_code == 2);
}

TEST_CASE("saturate: pure orthogonal pair reaches distance one") {
  write_file(fixture("p00.json"), R"({"dims": [2, 2],
 "re": [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]})");
  write_file(fixture("p10.json"), R"({"dims": [2, 2],
 "re": [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]]})");
  const RunResult r = run("saturate --input " + q(fixture("p00.json")) + " --sigma " +
                          q(fixture("p10.json")));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"saturable\": true") != std::string::npos);
  CHECK(r.out.find("\"achieved\": 1.0") != std::string::npos);
}

TEST_CASE("sweep: csv table plus summary, and t_max validation") {
  const fs::path csv = fixture("sweep.csv");
  const RunResult r =
      run("sweep --input " + q(fixture("bell.json")) + " --hamiltonian " +
          q(fixture("h.json")) + " --steps 20 --format csv --out " + q(csv));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"detected_fraction\"") != std::string::npos);
  const std::string table = slurp(csv);
  CHECK(table.rfind("t,witness_norm,trace_distance,td_rate\n", 0) == 0);
  // Header plus 21 grid rows.
  CHECK(std::count(table.begin(), table.end(), '\n') == 22);
  CHECK(table.find("e+00") != std::string::npos);  // 17-digit scientific cells

  const RunResult zero =
      run("sweep --input " + q(fixture("bell.json")) + " --hamiltonian " +
          q(fixture("h.json")) + " --t-max 0");
  CHECK(zero.exit_code == 2);

  const RunResult no_out =
      run("sweep --input " + q(fixture("bell.json")) + " --hamiltonian " +
          q(fixture("h.json")) + " --format csv");
  CHECK(no_out.exit_code == 2);
}

TEST_CASE("sweep: detects the bell state at almost all times") {
  const RunResult r = run("sweep --input " + q(fixture("bell.json")) +
                          " --hamiltonian " + q(fixture("h.json")) + " --steps 100");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"detected_fraction\": 1.0") != std::string::npos);
}

TEST_CASE("chain-demo: deterministic and thread-count independent") {
  const std::string args = "chain-demo --n-spins 3 --split-spin 2 --trials 3 "
                           "--steps 25 --seed 7";
  const RunResult one = run(args, "CORRWITNESS_THREADS=1");
  const RunResult two = run(args, "CORRWITNESS_THREADS=2");
  CHECK(one.exit_code == 0);
  CHECK(one.out == two.out);  // byte-identical regardless of worker count
  CHECK(one.out.find("\"undetectable\": true") != std::string::npos);

  const RunResult ctl = run(args + " --control z-correlated");
  CHECK(ctl.out.find("\"undetectable\": false") != std::string::npos);

  const RunResult bad = run("chain-demo --n-spins 13");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("config files fill defaults but flags win") {
  write_file(fixture("cfg.json"), R"({"steps": 30, "t_max": 4.0})");
  const RunResult r =
      run("sweep --input " + q(fixture("bell.json")) + " --hamiltonian " +
          q(fixture("h.json")) + " --config " + q(fixture("cfg.json")) + " --steps 10");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"steps\": 10") != std::string::npos);   // flag wins
  CHECK(r.out.find("\"t_max\": 4.0") != std::string::npos);  // config fills

  write_file(fixture("bad_cfg.json"), R"({"stepz": 30})");
  const RunResult bad =
      run("sweep --input " + q(fixture("bell.json")) + " --hamiltonian " +
          q(fixture("h.json")) + " --config " + q(fixture("bad_cfg.json")));
  CHECK(bad.exit_code == 2);
  CHECK(bad.err.find("unknown key") != std::string::npos);
}

TEST_CASE("env-corr: correlated environment halves are reported") {
  // rho_S (x) Phi+_BC as an 8x8 operator, system-major ordering.
  std::ostringstream body;
  body << R"({"dims": [2, 4], "re": [)";
  const double bell[4][4] = {
      {0.5, 0, 0, 0.5}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0.5, 0, 0, 0.5}};
  for (int i = 0; i < 8; ++i) {
    body << (i == 0 ? "[" : ",[");
    for (int j = 0; j < 8; ++j) {
      const double v = (i / 4 == j / 4) ? 0.5 * bell[i % 4][j % 4] : 0.0;
      body << (j == 0 ? "" : ",") << v;
    }
    body << "]";
  }
  body << "]}";
  write_file(fixture("sbc.json"), body.str());
  const RunResult r = run("env-corr --input " + q(fixture("sbc.json")) +
                          " --d-s 2 --d-b 2 --d-c 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"detectable\": true") != std::string::npos);
  CHECK(r.out.find("\"bound\": 0.7") != std::string::npos);

  const RunResult mismatch = run("env-corr --input " + q(fixture("sbc.json")) +
                                 " --d-s 2 --d-b 2 --d-c 3");
  CHECK(mismatch.exit_code == 2);
}

TEST_CASE("tomography-demo: linear on products, nonlinear on the bell state") {
  const RunResult corr = run("tomography-demo --input " + q(fixture("bell.json")));
  CHECK(corr.exit_code == 0);
  CHECK(corr.out.find("\"linear\": false") != std::string::npos);
  CHECK(corr.out.find("\"query_y_norm\": 0.5") != std::string::npos);

  const RunResult prod = run("tomography-demo --input " + q(fixture("product.json")));
  CHECK(prod.exit_code == 0);
  CHECK(prod.out.find("\"linear\": true") != std::string::npos);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_tests <path-to-corrwitness-binary> [doctest args]\n");
    return 1;
  }
  g_cli = argv[1];

  std::error_code ec;
  g_dir = fs::temp_directory_path() / "corrwitness_cli_tests";
  fs::remove_all(g_dir, ec);
  fs::create_directories(g_dir);
  make_fixtures();

  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv + 1);
  const int rc = ctx.run();
  fs::remove_all(g_dir, ec);
  return rc;
}
