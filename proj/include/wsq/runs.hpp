#pragma once

// Run configurations and CSV rendering shared by the command line tool, the
// tests and the acceptance harness.  All numeric output goes through
// std::to_chars, so the text is locale independent and round-trips exactly.

#include <string>
#include <vector>

#include "wsq/capacitance.hpp"
#include "wsq/planar.hpp"

namespace wsq {

enum class Command { Capacitance, Convergence, Weights, Constants };
enum class Family { Periodic, PlanarHolder, PlanarSmooth };

struct ShapeSpec {
  enum class Kind { Ellipsoid, Table };
  Kind kind = Kind::Ellipsoid;
  double a = 1.0, b = 1.0, c = 1.0;
  std::string table_path;
};

struct RunConfig {
  Command command = Command::Capacitance;
  ShapeSpec shape;
  std::vector<double> c_list;  // per-row override of shape.c (ellipsoids)
  std::vector<int> n_list;
  std::vector<int> m_list;
  int iters = 1;
  double lambda = 0.5;
  double alpha = 0.5;
  int r = 2;
  Family family = Family::Periodic;
  NearPolicy near = NearPolicy::PerCell;
  SumPolicy policy = SumPolicy::PairwiseDeterministic;
  bool no_timing = false;
  double eps0 = 1.0;
  int threads = 1;
  int m_cap = 64;
  int i = -1, j = -1;          // periodic evaluation indices; -1 means n/2
  double t1 = 0.0, t2 = 0.0;   // planar evaluation point
  double oracle_tol = 1e-7;
  std::string out;             // CSV destination; empty means stdout
};

struct RunOutput {
  std::string csv;
  std::vector<std::string> notes;  // clamp warnings and similar
};

// Shortest round-trip decimal form of v, '.' decimal point, no locale.
std::string format_double(double v);

// Convergence study against the reference integrator on the built-in
// corpus: periodic and planar Holder data with the kink at the evaluation
// point, and a smooth product cosine for the spline formula.
struct ConvergencePoint {
  int n = 0;
  double computed = 0.0;
  double oracle = 0.0;
  double abs_error = 0.0;
  double predicted = 0.0;
};

struct ConvergenceStudy {
  Family family = Family::Periodic;
  double lambda = 0.0;
  double param = 0.0;  // alpha, or r for the smooth family
  std::vector<ConvergencePoint> points;
  bool have_slope = false;
  double slope = 0.0;  // positive = observed convergence order
};

ConvergenceStudy convergence_study(const RunConfig& cfg);

// Fitted decay order of err against n (least squares on logs, negated).
double fit_order(const std::vector<int>& ns, const std::vector<double>& errs);

RunOutput run_capacitance(const RunConfig& cfg);
RunOutput run_convergence(const RunConfig& cfg);
RunOutput run_weights(const RunConfig& cfg);
RunOutput run_constants(const RunConfig& cfg);
RunOutput run(const RunConfig& cfg);

}  // namespace wsq
