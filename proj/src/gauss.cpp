#include "wsq/gauss.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace wsq {

double Rect::diameter() const noexcept {
  return std::hypot(width(), height());
}

namespace {

// Newton iteration on P_m with Chebyshev initial guesses (gauleg).
GaussRule compute_rule(int m) {
  GaussRule g;
  g.node.resize(m);
  g.weight.resize(m);
  const int half = (m + 1) / 2;
  for (int k = 0; k < half; ++k) {
    double x = std::cos(std::numbers::pi * (k + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < m; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      dp = m * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    g.node[k] = -x;
    g.node[m - 1 - k] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.weight[k] = w;
    g.weight[m - 1 - k] = w;
  }
  if (m % 2 == 1) g.node[m / 2] = 0.0;
  return g;
}

}  // namespace

const GaussRule& gauss_legendre(int m) {
  if (m < 1 || m > 512)
    throw std::invalid_argument("gauss_legendre: order out of range");
  static std::map<int, GaussRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, compute_rule(m)).first;
  return it->second;
}

}  // namespace wsq
