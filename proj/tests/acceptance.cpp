// Acceptance harness: one verdict line per criterion.  Run with no
// arguments for the full battery or with criterion numbers (1..9) for a
// subset; the exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include "reference_values.hpp"
#include "wsq/capacitance.hpp"
#include "wsq/periodic.hpp"
#include "wsq/runs.hpp"
#include "wsq/surface.hpp"
#include "wsq/theory.hpp"

using namespace wsq;

namespace {

constexpr double pi = std::numbers::pi;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

bool verdict(int k, const char* name, bool pass, const std::string& detail) {
  std::printf("[%d] %-24s %s  %s\n", k, name, pass ? "PASS" : "FAIL",
              detail.c_str());
  return pass;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// 1: flattened spheroid sweep at (40, 30), one iteration
bool crit1() {
  bool pass = true;
  double worst_near = 0.0, worst_far = 0.0, slowest = 0.0;
  for (double c : {0.9, 0.5, 0.1, 0.01, 0.001, 0.0001}) {
    const CapacitanceResult res =
        capacitance_run(Ellipsoid(1.0, 1.0, c), 40, 30, 1);
    const double exact = exact_spheroid_capacitance(1.0, c);
    const double rel = std::abs(res.C.back() - exact) / exact;
    const double gate = c >= 0.01 ? 0.06 : 0.20;
    if (c >= 0.01)
      worst_near = std::max(worst_near, rel);
    else
      worst_far = std::max(worst_far, rel);
    slowest = std::max(slowest, res.wall_seconds);
    std::printf("    c=%-7g rel=%.4f gate=%.2f wall=%.2fs\n", c, rel, gate,
                res.wall_seconds);
    pass = pass && rel <= gate && res.wall_seconds <= 60.0;
  }
  return verdict(1, "spheroid sweep", pass,
                 fmt("worst %.4f<=0.06, %.4f<=0.20, slowest %.2fs<=60s",
                     worst_near, worst_far, slowest));
}

// 2: sphere capacitance and the fixed point density
bool crit2() {
  const double exact = 4.0 * pi;
  const CapacitanceResult lo = capacitance_run(Sphere(1.0), 40, 30, 0);
  const CapacitanceResult hi = capacitance_run(Sphere(1.0), 60, 50, 0);
  const double rel_lo = std::abs(lo.C[0] - exact) / exact;
  const double rel_hi = std::abs(hi.C[0] - exact) / exact;

  const Triangulation tri = triangulate(Sphere(1.0), 40, 30);
  const DoubleLayer W = DoubleLayer::build(tri);
  std::vector<double> delta(tri.size(), 1.0);
  double dev = 0.0;
  for (int it = 0; it < 3; ++it) {
    delta = iterate_density(tri, W, delta, SumPolicy::PairwiseDeterministic);
    for (double d : delta) dev = std::max(dev, std::abs(d - 1.0));
  }
  const bool pass = rel_lo <= 0.02 && rel_hi <= 0.01 && dev <= 1e-12;
  return verdict(2, "sphere capacitance", pass,
                 fmt("rel %.4f<=0.02 (N=2320), %.4f<=0.01 (N=5880), "
                     "density dev %.1e<=1e-12",
                     rel_lo, rel_hi, dev));
}

// 3: error falls strictly under refinement
bool crit3() {
  const double exact = 4.0 * pi;
  double prev = 1e300;
  bool pass = true;
  std::string detail;
  for (auto [n, m] : {std::pair{40, 30}, {50, 40}, {60, 50}}) {
    const CapacitanceResult res = capacitance_run(Sphere(1.0), n, m, 0);
    const double rel = std::abs(res.C[0] - exact) / exact;
    detail += fmt("%.4f ", rel);
    pass = pass && rel < prev;
    prev = rel;
  }
  return verdict(3, "refinement monotonicity", pass, detail + "strictly down");
}

// 4: panel counts
bool crit4() {
  const int n1 = triangulate(Sphere(1.0), 40, 30).size();
  const int n2 = triangulate(Sphere(1.0), 50, 40).size();
  const int n3 = triangulate(Sphere(1.0), 60, 50).size();
  const bool pass = n1 == 2320 && n2 == 3900 && n3 == 5880;
  char buf[96];
  std::snprintf(buf, sizeof buf, "N = %d, %d, %d", n1, n2, n3);
  return verdict(4, "panel counts", pass, buf);
}

void rate_study(Family family, double lambda, double alpha,
                const std::vector<int>& ns, bool& pass, std::string& out) {
  RunConfig cfg;
  cfg.command = Command::Convergence;
  cfg.family = family;
  cfg.lambda = lambda;
  cfg.alpha = alpha;
  cfg.n_list = ns;
  const ConvergenceStudy study = convergence_study(cfg);
  bool under = true;
  for (const auto& p : study.points)
    under = under && p.abs_error < 10.0 * p.predicted;
  const bool in_band = study.have_slope && study.slope >= alpha - 0.2 &&
                       study.slope <= alpha + 0.2;
  out += fmt("l=%.1f a=%.1f slope %.3f ", lambda, alpha, study.slope);
  pass = pass && in_band && under;
}

// 5: periodic class rate on the rough corpus
bool crit5() {
  const double t0 = now_seconds();
  bool pass = true;
  std::string detail;
  for (double lambda : {0.3, 0.5})
    for (double alpha : {0.4, 0.6})
      rate_study(Family::Periodic, lambda, alpha, {8, 16, 32, 64}, pass,
                 detail);
  const double wall = now_seconds() - t0;
  pass = pass && wall <= 300.0;
  return verdict(5, "periodic rate", pass,
                 detail + fmt("(%.0fs<=300s)", wall));
}

// 6: planar class rate, rough and smooth data
bool crit6() {
  bool pass = true;
  std::string detail;
  for (double lambda : {0.3, 0.5})
    for (double alpha : {0.4, 0.6})
      rate_study(Family::PlanarHolder, lambda, alpha, {8, 16, 32, 64}, pass,
                 detail);
  for (double lambda : {0.3, 0.5}) {
    RunConfig cfg;
    cfg.command = Command::Convergence;
    cfg.family = Family::PlanarSmooth;
    cfg.lambda = lambda;
    cfg.r = 2;
    cfg.n_list = {8, 16, 32};
    const ConvergenceStudy study = convergence_study(cfg);
    detail += fmt("smooth l=%.1f slope %.2f ", lambda, study.slope);
    pass = pass && study.have_slope && study.slope >= 1.5;
  }
  return verdict(6, "planar rate", pass, detail);
}

// 7: analytic and frozen constants
bool crit7() {
  bool pass = true;
  auto rel = [](double v, double want) { return std::abs(v - want) / want; };
  pass = pass && rel(gamma_constant(0.0, 1e-8), 4.0 * pi * pi) <= 1e-10;
  pass = pass && rel(planar_gamma(0.0, 1e-8), 4.0) <= 1e-10;
  pass = pass && rel(favard_constant(0), 1.0) <= 1e-10;
  pass = pass && rel(favard_constant(1), pi / 2.0) <= 1e-10;
  for (int r = 1; r <= 4; ++r) {
    pass = pass &&
           rel(least_dev_value(r, LNorm::One), (r + 1.0) / std::pow(2.0, r)) <=
               1e-10;
    pass = pass &&
           rel(least_dev_value(r, LNorm::Inf), std::pow(2.0, 1 - r)) <= 1e-10;
  }
  double worst = 0.0;
  for (const auto& f : wsq_test::kGammaRef)
    worst = std::max(worst, rel(gamma_constant(f.lambda, 1e-6), f.value));
  for (const auto& f : wsq_test::kGammaHatRef)
    worst = std::max(worst, rel(planar_gamma(f.lambda, 1e-6), f.value));
  pass = pass && worst <= 1e-5;
  return verdict(7, "constants", pass,
                 fmt("analytic to 1e-10, frozen worst rel %.1e<=1e-5", worst));
}

// 8: operator identities on the sphere at N = 2320
bool crit8() {
  const Triangulation tri = triangulate(Sphere(1.0), 40, 30);
  const DoubleLayer W = DoubleLayer::build(tri);
  const std::vector<double> out =
      W.apply(std::vector<double>(tri.size(), 1.0));
  double worst = 0.0;
  for (double v : out) worst = std::max(worst, std::abs(v + 1.0));
  double lo = 0.0, hi = -2.0;
  for (int j = 0; j < W.size(); ++j) {
    const double od = W.offdiag_row_sum(j, SumPolicy::PairwiseDeterministic);
    lo = j == 0 ? od : std::min(lo, od);
    hi = std::max(hi, od);
  }
  const double J =
      single_layer_energy(tri, std::vector<double>(tri.size(), 1.0));
  const double relJ = std::abs(J - 16.0 * pi * pi) / (16.0 * pi * pi);
  const bool pass =
      worst <= 1e-14 && lo >= -1.05 && hi <= -0.95 && relJ <= 0.01;
  return verdict(8, "operator identities", pass,
                 fmt("W*1 dev %.1e<=1e-14, rows [%.3f, %.3f] in [-1.05,-0.95], ",
                     worst, lo, hi) +
                     fmt("J rel %.4f<=0.01", relJ));
}

// 9: byte identical CSV bodies without the timing column
bool crit9() {
  RunConfig cfg;
  cfg.command = Command::Capacitance;
  cfg.n_list = {16};
  cfg.m_list = {12};
  cfg.c_list = {1.0, 0.5, 0.01};
  cfg.iters = 1;
  cfg.no_timing = true;
  const std::string a = run(cfg).csv;
  const std::string b = run(cfg).csv;
  cfg.threads = 4;
  const std::string c = run(cfg).csv;

  RunConfig wcfg;
  wcfg.command = Command::Weights;
  wcfg.family = Family::PlanarHolder;
  wcfg.n_list = {8};
  wcfg.lambda = 0.4;
  wcfg.alpha = 0.6;
  const std::string w1 = run(wcfg).csv;
  const std::string w2 = run(wcfg).csv;

  const bool pass = a == b && a == c && w1 == w2;
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "capacitance %zu bytes x3 %s, weights x2 %s", a.size(),
                a == b && a == c ? "equal" : "DIFFER",
                w1 == w2 ? "equal" : "DIFFER");
  return verdict(9, "determinism", pass, buf);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7, 8, 9};

  int failures = 0;
  for (int k : which) {
    bool ok = false;
    switch (k) {
      case 1: ok = crit1(); break;
      case 2: ok = crit2(); break;
      case 3: ok = crit3(); break;
      case 4: ok = crit4(); break;
      case 5: ok = crit5(); break;
      case 6: ok = crit6(); break;
      case 7: ok = crit7(); break;
      case 8: ok = crit8(); break;
      case 9: ok = crit9(); break;
      default:
        std::printf("unknown criterion %d\n", k);
        break;
    }
    if (!ok) ++failures;
  }
  return failures;
}
