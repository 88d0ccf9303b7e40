#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "nls/cli.hpp"
#include "nls/io.hpp"

using namespace nls;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("empty invocation is a usage error") {
  CHECK(run_cli({}) == 1);
  CHECK(run_cli({"frobnicate"}) == 1);
  CHECK(run_cli({"criteria", "family=gaussian", "p=1", "bogus_key=3"}) == 1);
  CHECK(run_cli({"table"}) == 1);
  CHECK(run_cli({"table", "T9:unknown"}) == 1);
  CHECK(run_cli({"scan", "--vary", "p"}) == 1);
}

TEST_CASE("domain errors exit with 2") {
  CHECK(run_cli({"diag", "family=gaussian", "p=-1"}) == 2);
  CHECK(run_cli({"ground", "rmax=9", "n=4000"}) == 2);
}

TEST_CASE("table artifacts are deterministic and compare against references") {
  std::string out1 = "/tmp/nls_t4h12_a.csv", out2 = "/tmp/nls_t4h12_b.csv";
  CHECK(run_cli({"table", "T4:H12", "--out", out1}) == 0);
  CHECK(run_cli({"table", "T4:H12", "--out", out2}) == 0);
  std::string a = slurp(out1), b = slurp(out2);
  CHECK(a == b);  // byte-identical reruns
  CHECK(a.find("hhalf_over_p2") != std::string::npos);
  CHECK(a.find("p_half") != std::string::npos);
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

TEST_CASE("criteria subcommand emits the expected verdicts") {
  std::string out = "/tmp/nls_criteria.csv";
  CHECK(run_cli({"criteria", "family=gaussian", "p=2.5", "alpha=1", "gamma=0", "n=2048",
                 "--csv", out}) == 0);
  std::string csv = slurp(out);
  CHECK(csv.find("lushnikov,BlowUp") != std::string::npos);
  CHECK(csv.find("adapted,BlowUp") != std::string::npos);
  CHECK(csv.find("dhr,NoConclusion") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("simulate writes a run record and series") {
  CHECK(run_cli({"simulate", "family=gaussian", "p=3", "alpha=1", "gamma=0", "n=2048",
                 "t_max=2", "order=2", "--out", "/tmp/nls_run"}) == 0);
  std::string j = slurp("/tmp/nls_run.json");
  CHECK(j.find("\"classification\": \"BlowUp\"") != std::string::npos);
  std::string csv = slurp("/tmp/nls_run.csv");
  CHECK(csv.rfind("t,mass,energy,grad_sq,l4_fourth,variance,amp_max,eta\n", 0) == 0);
  std::remove("/tmp/nls_run.json");
  std::remove("/tmp/nls_run.csv");
}

TEST_CASE("config file expansion") {
  {
    std::ofstream cfg("/tmp/nls_cfg.txt");
    cfg << "# comment line\nfamily=gaussian p=1 alpha=1 gamma=0\n";
  }
  CHECK(run_cli({"diag", "--config", "/tmp/nls_cfg.txt"}) == 0);
  CHECK(run_cli({"diag", "--config", "/tmp/nls_missing.txt"}) == 1);
  std::remove("/tmp/nls_cfg.txt");
}

TEST_CASE("field csv round-trips through diag") {
  {
    std::ofstream f("/tmp/nls_field.csv");
    f << "r,re,im\n";
    for (int k = 0; k <= 2048; ++k) {
      double r = 20.0 * k / 2048.0;
      f << fmt12(r) << "," << fmt12(std::exp(-r * r / 2.0)) << ",0\n";
    }
  }
  CHECK(run_cli({"diag", "--field", "/tmp/nls_field.csv"}) == 0);
  std::remove("/tmp/nls_field.csv");
}
