// End-to-end tests driving the installed binary through a shell. The binary
// path is injected by the build as CERTANN_CLI_PATH.
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "certann/rng.hpp"
#include "doctest.h"
#include "test_support.hpp"

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args, const std::string& env = "CERTANN_LOG=info") {
  static testutil::TempDir tmp;
  static int counter = 0;
  const std::string out_path = tmp.file("out" + std::to_string(counter));
  const std::string err_path = tmp.file("err" + std::to_string(counter));
  ++counter;
  const std::string command = env + " \"" + CERTANN_CLI_PATH + "\" " + args + " >" + out_path +
                              " 2>" + err_path;
  const int status = std::system(command.c_str());
  CliResult result;
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = testutil::read_file(out_path);
  result.err = testutil::read_file(err_path);
  return result;
}

std::string make_gaussian_csv(testutil::TempDir& tmp, const std::string& name, Eigen::Index d,
                              Eigen::Index n, double scale, certann::Seed seed) {
  certann::RngStream rng(seed);
  const std::string path = tmp.file(name);
  testutil::write_text(path, testutil::csv_of(testutil::gaussian_points(d, n, rng, scale)));
  return path;
}

}  // namespace

TEST_CASE("cli build reports derived quantities and writes the index") {
  testutil::TempDir tmp;
  const std::string data = make_gaussian_csv(tmp, "pts.csv", 2, 12, 1.0, 1);
  const std::string index = tmp.file("idx.bin");
  const CliResult r = run_cli("build --input " + data + " --output " + index +
                              " --p 2 --radius 1 --c 12 --k 2 --seed 5");
  CAPTURE(r.err);
  CHECK(r.code == 0);
  CHECK(r.out.find("k: 2") != std::string::npos);
  CHECK(r.out.find("tau: 4") != std::string::npos);  // sqrt(8)*sqrt(2) for d=2, p=2
  CHECK(r.out.find("p_fp:") != std::string::npos);
  CHECK(r.out.find("gamma:") != std::string::npos);
  CHECK(r.out.find("wrote " + index) != std::string::npos);
  CHECK(std::filesystem::exists(index));
}

TEST_CASE("cli build rejects an approximation factor below tau") {
  testutil::TempDir tmp;
  const std::string data = make_gaussian_csv(tmp, "pts.csv", 2, 8, 1.0, 2);
  const CliResult r = run_cli("build --input " + data + " --output " + tmp.file("idx.bin") +
                              " --p 2 --radius 1 --c 3");
  CHECK(r.code == 2);
  CHECK(r.err.find("approximation factor below admissible threshold") != std::string::npos);
  CHECK(r.err.find("4") != std::string::npos);  // the computed tau
}

TEST_CASE("cli query returns the planted neighbor and nothing else") {
  testutil::TempDir tmp;
  const std::string data = tmp.file("two.csv");
  testutil::write_text(data, "0,0\n10,10\n");
  const std::string index = tmp.file("idx.bin");
  REQUIRE(run_cli("build --input " + data + " --output " + index +
                  " --p 2 --radius 1 --c 5 --k 1 --seed 3").code == 0);

  const CliResult r = run_cli("query --index " + index + " --vector 0.1,0");
  CHECK(r.code == 0);
  // Point 0 is near (0.1 < r); point 1 is far beyond c*r = 5 and must be
  // filtered out even if it shared a bucket.
  CHECK(r.out.find("0 0.1\n") != std::string::npos);
  CHECK(r.out.find("\n1 ") == std::string::npos);
  CHECK(r.out.find("1 results") != std::string::npos);

  const CliResult rq = run_cli("query --index " + index + " --vector 0.1,0", "CERTANN_LOG=quiet");
  CHECK(rq.code == 0);
  CHECK(rq.out == "0 0.1\n");  // no comment line at quiet level
}

TEST_CASE("cli query rejects mismatched dimensions and ambiguous sources") {
  testutil::TempDir tmp;
  const std::string data = make_gaussian_csv(tmp, "pts.csv", 2, 8, 1.0, 4);
  const std::string index = tmp.file("idx.bin");
  REQUIRE(run_cli("build --input " + data + " --output " + index +
                  " --p 2 --radius 1 --c 9 --k 1").code == 0);

  const CliResult wrong_dim = run_cli("query --index " + index + " --vector 1,2,3");
  CHECK(wrong_dim.code == 3);
  CHECK(wrong_dim.err.find("dimension mismatch") != std::string::npos);

  CHECK(run_cli("query --index " + index).code == 2);
  const std::string queries = make_gaussian_csv(tmp, "q.csv", 2, 3, 1.0, 5);
  CHECK(run_cli("query --index " + index + " --vector 1,2 --queries " + queries).code == 2);
}

TEST_CASE("cli bench verifies results against the oracle") {
  testutil::TempDir tmp;
  const std::string data = make_gaussian_csv(tmp, "pts.csv", 4, 80, 2.0, 6);
  const std::string queries = make_gaussian_csv(tmp, "q.csv", 4, 20, 2.0, 7);
  const std::string index = tmp.file("idx.bin");
  REQUIRE(run_cli("build --input " + data + " --output " + index +
                  " --p 2 --radius 1 --c 8 --k 2 --seed 8").code == 0);

  const CliResult r = run_cli("bench --index " + index + " --queries " + queries +
                              " --oracle --threads 1");
  CAPTURE(r.err);
  CHECK(r.code == 0);
  CHECK(r.out.find("queries: 20") != std::string::npos);
  CHECK(r.out.find("sandwich: 20/20 pass") != std::string::npos);
  CHECK(r.out.find("throughput:") != std::string::npos);
}

TEST_CASE("cli validate bounds suite passes and writes csv") {
  testutil::TempDir tmp;
  const std::string csv = tmp.file("bounds.csv");
  const CliResult r = run_cli("validate --suite bounds --trials 2000 --pairs 2 --csv " + csv);
  CAPTURE(r.err);
  CHECK(r.code == 0);
  CHECK(r.out.find("far-pair collision bound check") != std::string::npos);
  CHECK(r.out.find("NO") == std::string::npos);
  const std::string report = testutil::read_file(csv);
  CHECK(report.find("# workers=") == 0);
  CHECK(report.find("d,p,c_over_tau,distribution,trials,rate,wilson_upper,bound,pass\n") !=
        std::string::npos);
  CHECK(report.find("false") == std::string::npos);
}

TEST_CASE("cli validate tightness suite passes") {
  const CliResult r = run_cli("validate --suite tightness --trials 3000");
  CAPTURE(r.err);
  CHECK(r.code == 0);
  CHECK(r.out.find("tightness check") != std::string::npos);
  CHECK(r.out.find("NO") == std::string::npos);
}

TEST_CASE("cli validate sandwich suite passes on synthetic data") {
  const CliResult r = run_cli(
      "validate --suite sandwich --n 300 --d 8 --num-queries 20 --radius 0.5 --seed 11");
  CAPTURE(r.err);
  CHECK(r.code == 0);
  CHECK(r.out.find("sandwich: 20/20 pass") != std::string::npos);
}

TEST_CASE("cli log level quiet suppresses progress output") {
  testutil::TempDir tmp;
  const std::string data = make_gaussian_csv(tmp, "pts.csv", 2, 8, 1.0, 9);
  const std::string index = tmp.file("idx.bin");
  const CliResult r = run_cli("build --input " + data + " --output " + index +
                              " --p 2 --radius 1 --c 9 --k 1", "CERTANN_LOG=quiet");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(std::filesystem::exists(index));
}

TEST_CASE("cli usage errors exit with code 2") {
  CHECK(run_cli("build --bogus-flag 1").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("validate --suite nonsense").code == 2);
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("--help").out.find("build") != std::string::npos);
}

TEST_CASE("cli missing input file exits with code 3") {
  testutil::TempDir tmp;
  const CliResult r = run_cli("build --input " + tmp.file("absent.csv") + " --output " +
                              tmp.file("idx.bin") + " --p 2 --radius 1 --c 9");
  CHECK(r.code == 3);
  CHECK(r.err.find("cannot open dataset file") != std::string::npos);
}

TEST_CASE("cli builds are reproducible for a fixed seed") {
  testutil::TempDir tmp;
  const std::string data = make_gaussian_csv(tmp, "pts.csv", 3, 30, 1.0, 10);
  const std::string a = tmp.file("a.bin");
  const std::string b = tmp.file("b.bin");
  const std::string c = tmp.file("c.bin");
  const std::string flags = " --p 1 --radius 1 --c 20 --k 2";
  REQUIRE(run_cli("build --input " + data + " --output " + a + flags + " --seed 12").code == 0);
  REQUIRE(run_cli("build --input " + data + " --output " + b + flags + " --seed 12").code == 0);
  REQUIRE(run_cli("build --input " + data + " --output " + c + flags + " --seed 13").code == 0);
  CHECK(testutil::read_file(a) == testutil::read_file(b));
  CHECK(testutil::read_file(a) != testutil::read_file(c));
}
