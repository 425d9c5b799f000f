#include "wsq/periodic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wsq/oracle.hpp"

namespace wsq {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void check_lambda(double lambda, const char* who) {
  if (!(lambda >= 0.0 && lambda < 1.0))
    throw std::invalid_argument(std::string(who) +
                                ": lambda must be in [0, 1)");
}

}  // namespace

RegParams choose_regularization(int n, double lambda, double alpha,
                                int m_cap) {
  if (n < 2) throw std::invalid_argument("choose_regularization: n too small");
  check_lambda(lambda, "choose_regularization");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("choose_regularization: alpha out of range");
  if (m_cap < 1)
    throw std::invalid_argument("choose_regularization: m_cap must be >= 1");
  RegParams p;
  p.h = std::pow(n, -2.0 * (2.0 * lambda + alpha) / (1.0 - lambda));
  const double expo =
      (8.0 * lambda + 4.0 * alpha) / (1.0 - lambda) + alpha - 3.0;
  const double raw = std::pow(n, expo);
  double m = std::max(std::floor(raw), 1.0);
  if (m > m_cap) {
    m = m_cap;
    p.clamped = true;
  }
  p.m_gauss = static_cast<int>(m);
  return p;
}

double gamma_constant(double lambda, double tol) {
  check_lambda(lambda, "gamma_constant");
  OracleOptions opt;
  opt.tol = 0.0;
  opt.rel_tol = tol;  // the quadrant fold preserves relative accuracy
  opt.singular = {{0.0, 0.0}};
  auto f = [lambda](double x, double y) {
    const double s1 = std::sin(0.5 * x);
    const double s2 = std::sin(0.5 * y);
    return std::pow(s1 * s1 + s2 * s2, -lambda);
  };
  // Even around pi in both variables: fold the period square to one
  // quadrant, leaving a single corner singularity.
  OracleResult res =
      oracle_integrate(f, Rect{0.0, std::numbers::pi, 0.0, std::numbers::pi},
                       opt);
  if (!res.converged)
    throw std::runtime_error("gamma_constant: reference integration failed");
  return 4.0 * res.value;
}

double PeriodicWeightTable::midpoint(int k) const {
  return (2.0 * k + 1.0) * std::numbers::pi / n;
}

double PeriodicWeightTable::weight_sum(SumPolicy policy) const {
  return reduce(w, policy);
}

PeriodicWeightTable periodic_weights(int n, double lambda, double alpha,
                                     int i, int j, int m_cap) {
  if (n < 2) throw std::invalid_argument("periodic_weights: n too small");
  check_lambda(lambda, "periodic_weights");
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw std::invalid_argument("periodic_weights: midpoint index out of range");

  PeriodicWeightTable t;
  t.n = n;
  t.lambda = lambda;
  t.alpha = alpha;
  t.i = i;
  t.j = j;
  t.reg = choose_regularization(n, lambda, alpha, m_cap);
  t.w.assign(static_cast<std::size_t>(n) * n, 0.0);

  // sin^2 of the half midpoint offsets, indexed by the canonical cyclic
  // distance.  Using the reduced distance d in [0, n/2] keeps the table
  // exactly invariant under shifts of (i, j) and under k <-> l swaps.
  std::vector<double> sin2(n);
  for (int d = 0; d < n; ++d) {
    const int red = std::min(d, n - d);
    const double s = std::sin(std::numbers::pi * red / n);
    sin2[d] = s * s;
  }

  const double cell = two_pi * two_pi / (static_cast<double>(n) * n);
  for (int k = 0; k < n; ++k) {
    const int dk = (k - i + n) % n;
    for (int l = 0; l < n; ++l) {
      const int dl = (l - j + n) % n;
      if (dk == 0 && dl == 0) continue;  // diagonal handled below
      const double base = sin2[dk] + sin2[dl];
      t.w[static_cast<std::size_t>(k) * n + l] =
          cell * std::pow(base, -lambda);
    }
  }

  // Diagonal cell: regularized kernel over the full cell centered at the
  // singularity, one tensor Gauss panel of the prescribed order.
  const double half = std::numbers::pi / n;
  const double h = t.reg.h;
  auto reg_kernel = [lambda, h](double u, double v) {
    const double s1 = std::sin(0.5 * u);
    const double s2 = std::sin(0.5 * v);
    return 1.0 / (std::pow(s1 * s1 + s2 * s2, lambda) + h);
  };
  t.w[static_cast<std::size_t>(i) * n + j] =
      gauss_panel(reg_kernel, Rect{-half, half, -half, half}, t.reg.m_gauss);
  return t;
}

double eval_Kf(const PeriodicWeightTable& table,
               const std::function<double(double, double)>& f,
               SumPolicy policy) {
  const int n = table.n;
  std::vector<double> terms(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    const double xk = table.midpoint(k);
    for (int l = 0; l < n; ++l)
      terms[static_cast<std::size_t>(k) * n + l] =
          table.at(k, l) * f(xk, table.midpoint(l));
  }
  return reduce(terms, policy);
}

}  // namespace wsq
