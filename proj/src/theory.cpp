#include "wsq/theory.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "wsq/oracle.hpp"

namespace wsq {

double favard_constant(int r) {
  if (r < 0 || r > 60)
    throw std::invalid_argument("favard_constant: r out of range");
  // The sign (-1)^j is raised to the power r+1 along with 1/(2j+1), so the
  // series alternates for even r and has positive terms for odd r.
  constexpr int K = 64;
  const double p = r + 1.0;
  if (r % 2 == 0) {
    // Alternating: partial sums plus repeated adjacent averaging.  Direct
    // summation would need ~1e12 terms at r = 0.
    std::array<double, K> s{};
    double partial = 0.0;
    for (int j = 0; j < K; ++j) {
      const double term = std::pow(2.0 * j + 1.0, -p);
      partial += (j % 2 == 0) ? term : -term;
      s[j] = partial;
    }
    for (int level = K - 1; level >= 1; --level)
      for (int i = 0; i < level; ++i) s[i] = 0.5 * (s[i] + s[i + 1]);
    return 4.0 / std::numbers::pi * s[0];
  }
  // Positive terms: sum K of them, then close with the Euler-Maclaurin
  // tail of f(j) = (2j+1)^-p starting at j = K.
  double s = 0.0;
  for (int j = K - 1; j >= 0; --j) s += std::pow(2.0 * j + 1.0, -p);
  const double w = 2.0 * K + 1.0;
  double tail = std::pow(w, 1.0 - p) / (2.0 * (p - 1.0));
  tail += 0.5 * std::pow(w, -p);
  tail += 2.0 * p * std::pow(w, -p - 1.0) / 12.0;
  tail -= 8.0 * p * (p + 1.0) * (p + 2.0) * std::pow(w, -p - 3.0) / 720.0;
  return 4.0 / std::numbers::pi * (s + tail);
}

double least_dev_value(int r, LNorm q) {
  if (r < 1) throw std::invalid_argument("least_dev_value: r must be >= 1");
  switch (q) {
    case LNorm::One:
      return (r + 1.0) * std::ldexp(1.0, -r);
    case LNorm::Inf:
      return std::ldexp(1.0, 1 - r);
  }
  throw std::invalid_argument("least_dev_value: unsupported norm");
}

double planar_gamma(double lambda, double tol) {
  if (!(lambda >= 0.0 && lambda < 1.0))
    throw std::invalid_argument("planar_gamma: lambda must be in [0, 1)");
  OracleOptions opt;
  opt.tol = 0.0;
  opt.rel_tol = tol;  // the quadrant fold preserves relative accuracy
  opt.singular = {{0.0, 0.0}};
  auto f = [lambda](double x, double y) {
    return std::pow(x * x + y * y, -lambda);
  };
  // The integrand is even in both variables: fold to one quadrant with the
  // singularity at a corner.
  OracleResult res = oracle_integrate(f, Rect{0.0, 1.0, 0.0, 1.0}, opt);
  if (!res.converged)
    throw std::runtime_error("planar_gamma: reference integration failed");
  return 4.0 * res.value;
}

double predicted_error(const BoundContext& ctx) {
  if (ctx.n < 2) throw std::invalid_argument("predicted_error: n too small");
  if (!(ctx.gamma > 0.0))
    throw std::invalid_argument("predicted_error: gamma must be positive");
  const double n = ctx.n;
  switch (ctx.cls) {
    case FnClass::HolderAlpha: {
      if (!(ctx.alpha > 0.0 && ctx.alpha <= 1.0))
        throw std::invalid_argument("predicted_error: alpha out of range");
      if (ctx.domain == Domain::Periodic)
        return 2.0 * ctx.gamma / (1.0 + ctx.alpha) *
               std::pow(std::numbers::pi / n, ctx.alpha);
      return ctx.gamma / ((1.0 + ctx.alpha) * std::pow(n, ctx.alpha));
    }
    case FnClass::SobolevWrr: {
      if (ctx.r < 1)
        throw std::invalid_argument("predicted_error: r must be >= 1");
      const double R = least_dev_value(ctx.r, LNorm::One);
      double fact = 1.0;
      for (int k = 2; k <= ctx.r + 1; ++k) fact *= k;
      const double denom =
          fact * std::pow(n - 1.0 + std::pow(R, 1.0 / ctx.r), ctx.r);
      const double scale =
          ctx.domain == Domain::Periodic ? std::pow(std::numbers::pi, ctx.r)
                                         : 1.0;
      return 2.0 * scale * R * ctx.gamma / denom;
    }
    case FnClass::Crr: {
      if (ctx.domain != Domain::Periodic)
        throw std::invalid_argument(
            "predicted_error: Crr bound only wired for the periodic kernel");
      if (ctx.r < 1)
        throw std::invalid_argument("predicted_error: r must be >= 1");
      return 2.0 * ctx.gamma * favard_constant(ctx.r) / std::pow(n, ctx.r);
    }
  }
  throw std::invalid_argument("predicted_error: unknown class");
}

}  // namespace wsq
