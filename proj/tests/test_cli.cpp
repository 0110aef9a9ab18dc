// End-to-end checks of the command-line surface: exact flags, formats and
// exit codes. Drives the real binary (path injected by the build) through
// std::system with scratch files.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "grank_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
  fs::path p = scratch_dir() / name;
  std::ofstream f(p);
  f << content;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args) {
  const fs::path out = scratch_dir() / "stdout.txt";
  const fs::path err = scratch_dir() / "stderr.txt";
  const std::string cmd =
      std::string(GRANK_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

}  // namespace

TEST_CASE("rank: 2-cycle with defaults emits tied CSV scores and exits 0") {
  const fs::path g = write_file("two_cycle.txt", "0 1\n1 0\n");
  RunResult r = run("rank --input " + g.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0,0.5\n1,0.5\n");
}

TEST_CASE("rank: alpha outside (0,1) is a usage error, exit 1") {
  const fs::path g = write_file("two_cycle.txt", "0 1\n1 0\n");
  CHECK(run("rank --input " + g.string() + " --alpha 1.0").exit_code == 1);
  CHECK(run("rank --input " + g.string() + " --alpha 0").exit_code == 1);
}

TEST_CASE("rank: exhausted iteration budget exits 2 and reports converged:false") {
  const fs::path g = write_file("chain.txt", "0 1\n1 2\n2 3\n3 4\n");
  RunResult r = run("rank --input " + g.string() + " --max-iters 1 --format json");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("\"converged\":false") != std::string::npos);
}

TEST_CASE("rank: missing input file exits 1") {
  CHECK(run("rank --input /nonexistent/graph.txt").exit_code == 1);
  const fs::path bad = write_file("bad.txt", "0 x\n");
  RunResult r = run("rank --input " + bad.string());
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("line 1") != std::string::npos);
}

TEST_CASE("rank: json format and --output file") {
  const fs::path g = write_file("two_cycle.txt", "0 1\n1 0\n");
  const fs::path out = scratch_dir() / "result.json";
  RunResult r = run("rank --input " + g.string() + " --format json --output " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  const std::string body = slurp(out);
  CHECK(body.find("\"scores\":[0.5,0.5]") != std::string::npos);
  CHECK(body.find("\"converged\":true") != std::string::npos);
}

TEST_CASE("rank: personalization vector must sum to 1") {
  const fs::path g = write_file("two_cycle.txt", "0 1\n1 0\n");
  const fs::path v_bad = write_file("v_bad.txt", "0.9\n0.3\n");
  CHECK(run("rank --input " + g.string() + " --v-file " + v_bad.string()).exit_code == 1);
  const fs::path v_ok = write_file("v_ok.txt", "0.9\n0.1\n");
  RunResult r = run("rank --input " + g.string() + " --v-file " + v_ok.string() + " --format json");
  CHECK(r.exit_code == 0);
}

TEST_CASE("rank: tsv format") {
  const fs::path g = write_file("two_cycle.txt", "0 1\n1 0\n");
  RunResult r = run("rank --input " + g.string() + " --format tsv");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0\t0.5\n1\t0.5\n");
}

TEST_CASE("verify: random trials pass and exit 0") {
  RunResult r = run("verify --n 10 --trials 20 --alpha 0.85 --seed 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("summary: 20/20 passed") != std::string::npos);
}

TEST_CASE("verify: identity fixture reports lambda2 modulus equal to alpha") {
  const fs::path g = write_file("identity2.txt", "0 0\n1 1\n");
  RunResult r = run("verify --input " + g.string() + " --alpha 0.5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("lambda2_modulus=0.5") != std::string::npos);
  CHECK(r.out.find("summary: 1/1 passed") != std::string::npos);
}

TEST_CASE("verify: dimension above the dense cap is refused with exit 1") {
  CHECK(run("verify --n 5000 --trials 1").exit_code == 1);
}

TEST_CASE("sweep: identity fixture rates equal alpha on every row") {
  const fs::path g = write_file("identity3.txt", "0 0\n1 1\n2 2\n");
  RunResult r = run("sweep --input " + g.string() +
                    " --alpha-min 0.5 --alpha-max 0.9 --steps 3 --tol 1e-5");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "alpha,iterations,estimated_rate,predicted_rate");
  std::string row;
  int rows = 0;
  while (std::getline(lines, row)) {
    const double alpha = std::stod(row.substr(0, row.find(',')));
    std::size_t p1 = row.find(',');
    std::size_t p2 = row.find(',', p1 + 1);
    std::size_t p3 = row.find(',', p2 + 1);
    const double estimated = std::stod(row.substr(p2 + 1, p3 - p2 - 1));
    const double predicted = std::stod(row.substr(p3 + 1));
    CHECK(std::abs(estimated - alpha) <= 1e-10);   // identity: exact contraction by alpha
    CHECK(std::abs(predicted - alpha) <= 1e-10);   // |lambda2(P)| = 1
    ++rows;
  }
  CHECK(rows == 3);
}

TEST_CASE("sweep: 10-cycle estimated rates land within 5% of alpha") {
  std::string edges;
  for (int i = 0; i < 10; ++i)
    edges += std::to_string(i) + " " + std::to_string((i + 1) % 10) + "\n";
  const fs::path g = write_file("cycle10.txt", edges);
  RunResult r = run("sweep --input " + g.string() +
                    " --alpha-min 0.5 --alpha-max 0.9 --steps 3 --tol 1e-8");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string row;
  std::getline(lines, row);  // header
  while (std::getline(lines, row)) {
    const double alpha = std::stod(row.substr(0, row.find(',')));
    std::size_t p2 = row.find(',', row.find(',') + 1);
    std::size_t p3 = row.find(',', p2 + 1);
    const double estimated = std::stod(row.substr(p2 + 1, p3 - p2 - 1));
    CHECK(std::abs(estimated - alpha) / alpha <= 0.05);
  }
}

TEST_CASE("sweep: an empty alpha grid is a usage error") {
  const fs::path g = write_file("two_cycle.txt", "0 1\n1 0\n");
  CHECK(run("sweep --input " + g.string() + " --alpha-min 0.5 --alpha-max 0.9 --steps 0")
            .exit_code == 1);
  CHECK(run("sweep --input " + g.string() + " --alpha-min 0.5 --alpha-max 0.9").exit_code == 1);
  CHECK(run("sweep --input " + g.string() + " --alpha-min 0.9 --alpha-max 0.5 --steps 2")
            .exit_code == 1);
}

TEST_CASE("help exits 0; unknown subcommand exits 1") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("nonsense").exit_code == 1);
  CHECK(run("").exit_code == 1);  // a subcommand is required
}
