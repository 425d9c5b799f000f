// Run configurations, CSV rendering and the command line front end.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "wsq/runs.hpp"

using namespace wsq;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream out;
  out << f.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0 / 3.0, 12345.6789, -2.5e300, 1e-17, 0.0}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
    CHECK(s.find(',') == std::string::npos);
  }
}

TEST_CASE("fit_order recovers an exact power law") {
  const std::vector<int> ns{8, 16, 32, 64};
  std::vector<double> errs;
  for (int n : ns) errs.push_back(7.0 * std::pow(n, -1.5));
  CHECK(fit_order(ns, errs) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("constants command shape") {
  RunConfig cfg;
  cfg.command = Command::Constants;
  const RunOutput out = run(cfg);
  const auto rows = lines_of(out.csv);
  REQUIRE(rows.size() == 20);  // header + 5 favard + 8 least dev + 6 kernel
  CHECK(rows[0] == "name,param,value");
  // the series value of K_0, printed as computed (a couple ulp off 1)
  CHECK(rows[1].substr(0, 9) == "favard,0,");
  CHECK(std::strtod(rows[1].c_str() + 9, nullptr) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rows[6].substr(0, 13) == "least_dev_L1,");
  CHECK(out.notes.empty());
}

TEST_CASE("weights command dumps the table with its clamp note") {
  RunConfig cfg;
  cfg.command = Command::Weights;
  cfg.family = Family::Periodic;
  cfg.n_list = {4};
  cfg.lambda = 0.5;
  cfg.alpha = 0.5;
  cfg.i = 0;
  cfg.j = 0;
  const RunOutput out = run(cfg);
  const auto rows = lines_of(out.csv);
  REQUIRE(rows.size() == 17);  // header + 16 cells
  CHECK(rows[0] == "k,l,weight");
  REQUIRE(out.notes.size() == 1);
  CHECK(out.notes[0] == "diagonal Gauss order clamped to 64");

  // the CSV body reproduces the library table exactly
  const PeriodicWeightTable t = periodic_weights(4, 0.5, 0.5, 0, 0);
  int row = 1;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l, ++row) {
      const std::string want = std::to_string(k) + "," + std::to_string(l) +
                               "," + format_double(t.at(k, l));
      CHECK(rows[row] == want);
    }

  cfg.n_list = {4, 8};
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);
  cfg.n_list = {4};
  cfg.family = Family::PlanarSmooth;
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);
}

TEST_CASE("capacitance CSV layout and determinism") {
  RunConfig cfg;
  cfg.command = Command::Capacitance;
  cfg.n_list = {12};
  cfg.m_list = {8};
  cfg.c_list = {1.0, 0.5};
  cfg.iters = 1;

  const RunOutput timed = run(cfg);
  const auto trows = lines_of(timed.csv);
  REQUIRE(trows.size() == 3);
  CHECK(trows[0] ==
        "c,n,m,N,computed_C,exact_C,error,relative_error,wall_seconds");

  cfg.no_timing = true;
  const RunOutput a = run(cfg);
  CHECK(lines_of(a.csv)[0] == "c,n,m,N,computed_C,exact_C,error,relative_error");
  CHECK(lines_of(a.csv)[1].substr(0, 10) == "1,12,8,168");

  // identical configs give identical bytes; threads must not matter
  const RunOutput b = run(cfg);
  CHECK(a.csv == b.csv);
  cfg.threads = 4;
  const RunOutput c = run(cfg);
  CHECK(a.csv == c.csv);

  cfg.m_list = {8, 10};
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);
}

TEST_CASE("convergence CSV reports points and a slope") {
  RunConfig cfg;
  cfg.command = Command::Convergence;
  cfg.family = Family::PlanarSmooth;
  cfg.n_list = {4, 8};
  cfg.lambda = 0.5;
  cfg.r = 1;
  cfg.oracle_tol = 1e-5;
  const RunOutput out = run(cfg);
  const auto rows = lines_of(out.csv);
  REQUIRE(rows.size() == 4);  // header + 2 points + slope row
  CHECK(rows[0] ==
        "family,lambda,param,n,computed,oracle,abs_error,predicted_bound,"
        "slope,note");
  CHECK(rows[1].substr(0, 18) == "planar-smooth,0.5,");
  CHECK(rows[3].find("insufficient") == std::string::npos);

  cfg.n_list.clear();
  const RunOutput empty = run(cfg);
  const auto erows = lines_of(empty.csv);
  REQUIRE(erows.size() == 2);
  CHECK(erows[1].find("insufficient points") != std::string::npos);

  cfg.n_list = {4};
  cfg.lambda = 1.5;
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);
}

#ifdef WSQ_CLI_PATH
TEST_CASE("command line front end") {
  const std::string cli = WSQ_CLI_PATH;
  const std::string dir = "/tmp/wsq_cli_test";
  REQUIRE(std::system(("mkdir -p " + dir).c_str()) == 0);

  auto sh = [&](const std::string& args) {
    const std::string cmd =
        cli + " " + args + " >" + dir + "/out.txt 2>" + dir + "/err.txt";
    const int st = std::system(cmd.c_str());
    return WEXITSTATUS(st);
  };

  CHECK(sh("constants --out " + dir + "/const.csv") == 0);
  CHECK(slurp(dir + "/const.csv").substr(0, 16) == "name,param,value");

  // config errors exit with 2
  CHECK(sh("") == 2);                                   // missing subcommand
  CHECK(sh("capacitance --bogus 1") == 2);              // unknown flag
  CHECK(sh("weights --family periodic --n 4,8") == 2);  // bad n list
  CHECK(sh("convergence --family planar-smooth --n 4,8 --r 7") == 2);

  // a weight dump round trips through the CSV writer
  CHECK(sh("weights --family periodic --n 4 --lambda 0.5 --alpha 0.5 "
           "--i 0 --j 0 --out " + dir + "/w.csv") == 0);
  const std::string w = slurp(dir + "/w.csv");
  CHECK(w.substr(0, 11) == "k,l,weight\n");
  CHECK(lines_of(w).size() == 17);
  // the clamp note goes to stderr, not into the CSV
  CHECK(slurp(dir + "/err.txt").find("clamped") != std::string::npos);

  // determinism across runs and thread counts, timing column off
  const std::string base =
      "capacitance --a 1 --b 1 --c 0.5 --n 12 --m 8 --iters 1 --no-timing ";
  CHECK(sh(base + "--out " + dir + "/c1.csv") == 0);
  CHECK(sh(base + "--threads 4 --out " + dir + "/c2.csv") == 0);
  CHECK(slurp(dir + "/c1.csv") == slurp(dir + "/c2.csv"));
}
#endif
