#include "wsq/capacitance.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

namespace wsq {

namespace {

constexpr double four_pi = 4.0 * std::numbers::pi;

// Index-parallel loop; every index writes its own slot, so the schedule
// cannot change any result.
template <class F>
void parallel_for(int count, int threads, F&& fn) {
  if (threads <= 1 || count < 4) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  const int nt = std::min(threads, count);
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

void check_density_size(const Triangulation& tri,
                        std::span<const double> delta, const char* who) {
  if (delta.size() != tri.panels.size())
    throw std::invalid_argument(std::string(who) + ": density size mismatch");
}

// next <- -next, rescaled to total charge = surface area.
void negate_and_normalize(const Triangulation& tri, std::vector<double>& next,
                          SumPolicy policy) {
  const int N = tri.size();
  for (double& v : next) v = -v;
  std::vector<double> charge(N);
  for (int k = 0; k < N; ++k) charge[k] = next[k] * tri.panels[k].area;
  const double total = reduce(charge, policy);
  const double S = tri.area();
  if (!(std::abs(total) > 1e-300 * S))
    throw numeric_error("iterate_density: normalization collapsed");
  const double scale = S / total;
  for (double& v : next) v *= scale;
}

}  // namespace

void double_layer_row(const Triangulation& tri, int j, std::span<double> out,
                      SumPolicy policy) {
  const int N = tri.size();
  if (static_cast<int>(out.size()) != N)
    throw std::invalid_argument("double_layer_row: bad output size");
  const Panel& pj = tri.panels[j];
  for (int k = 0; k < N; ++k) {
    if (k == j) {
      out[k] = 0.0;
      continue;
    }
    const Panel& pk = tri.panels[k];
    const Vec3 d = pk.colloc - pj.colloc;
    const double r = d.norm();
    out[k] = pk.area / (2.0 * std::numbers::pi) * pj.normal.dot(d) /
             (r * r * r);
  }
  out[j] = -1.0 - reduce(out, policy);
}

DoubleLayer DoubleLayer::build(const Triangulation& tri, SumPolicy policy,
                               int threads) {
  DoubleLayer W;
  W.N_ = tri.size();
  W.w_.resize(static_cast<std::size_t>(W.N_) * W.N_);
  double* data = W.w_.data();
  const int N = W.N_;
  parallel_for(N, threads, [&](int j) {
    double_layer_row(tri, j,
                     {data + static_cast<std::size_t>(j) * N,
                      static_cast<std::size_t>(N)},
                     policy);
  });
  return W;
}

double DoubleLayer::offdiag_row_sum(int j, SumPolicy policy) const {
  std::vector<double> r(row(j).begin(), row(j).end());
  r[j] = 0.0;
  return reduce(r, policy);
}

std::vector<double> DoubleLayer::apply(std::span<const double> delta,
                                       SumPolicy policy, int threads) const {
  if (static_cast<int>(delta.size()) != N_)
    throw std::invalid_argument("DoubleLayer::apply: size mismatch");
  std::vector<double> out(N_);
  parallel_for(N_, threads, [&, this](int j) {
    thread_local std::vector<double> terms;
    terms.resize(N_);
    const std::span<const double> r = row(j);
    for (int k = 0; k < N_; ++k) terms[k] = r[k] * delta[k];
    out[j] = reduce(terms, policy);
  });
  return out;
}

std::vector<double> apply_double_layer(const Triangulation& tri,
                                       std::span<const double> delta,
                                       SumPolicy policy, int threads) {
  check_density_size(tri, delta, "apply_double_layer");
  const int N = tri.size();
  std::vector<double> out(N);
  parallel_for(N, threads, [&](int j) {
    thread_local std::vector<double> row, terms;
    row.resize(N);
    terms.resize(N);
    double_layer_row(tri, j, row, policy);
    for (int k = 0; k < N; ++k) terms[k] = row[k] * delta[k];
    out[j] = reduce(terms, policy);
  });
  return out;
}

std::vector<double> iterate_density(const Triangulation& tri,
                                    const DoubleLayer& W,
                                    std::span<const double> delta,
                                    SumPolicy policy, int threads) {
  check_density_size(tri, delta, "iterate_density");
  std::vector<double> next = W.apply(delta, policy, threads);
  negate_and_normalize(tri, next, policy);
  return next;
}

double single_layer_energy(const Triangulation& tri,
                           std::span<const double> delta, SumPolicy policy,
                           int threads) {
  check_density_size(tri, delta, "single_layer_energy");
  const int N = tri.size();
  std::vector<double> self(N);
  parallel_for(N, threads,
               [&](int j) { self[j] = self_potential(tri.panels[j]); });
  std::vector<double> outer(N);
  parallel_for(N, threads, [&](int j) {
    thread_local std::vector<double> terms;
    terms.resize(N);
    const Panel& pj = tri.panels[j];
    for (int k = 0; k < N; ++k) {
      if (k == j) {
        terms[k] = delta[j] * self[j];
        continue;
      }
      const Panel& pk = tri.panels[k];
      const double r = (pk.colloc - pj.colloc).norm();
      // The centroid product assumes r is large against the panels.  Flat
      // bodies put facing panels a vanishing distance apart, where that
      // product diverges like 1/r; integrate those panels exactly with the
      // same closed form the self term uses.
      if (r < 1.2 * (std::sqrt(pj.area) + std::sqrt(pk.area)))
        terms[k] =
            delta[k] * triangle_potential(pk.v0, pk.v1, pk.v2, pj.colloc);
      else
        terms[k] = delta[k] * pk.area / r;
    }
    outer[j] = pj.area * reduce(terms, policy);
  });
  return reduce(outer, policy);
}

double exact_spheroid_capacitance(double a, double c, double eps0) {
  if (!(a > 0.0 && c > 0.0))
    throw std::invalid_argument(
        "exact_spheroid_capacitance: semi-axes must be positive");
  if (std::abs(a - c) <= 1e-12 * a) return four_pi * eps0 * a;
  if (c < a)
    return four_pi * eps0 * std::sqrt(a * a - c * c) / std::acos(c / a);
  return four_pi * eps0 * std::sqrt(c * c - a * a) / std::acosh(c / a);
}

CapacitanceResult capacitance_run(const StarBody& body, int n, int m,
                                  int iters, double eps0, SumPolicy policy,
                                  int threads) {
  if (iters < 0)
    throw std::invalid_argument("capacitance_run: iters must be >= 0");
  const auto t0 = std::chrono::steady_clock::now();

  CapacitanceResult res;
  const Triangulation tri = triangulate(body, n, m);
  res.n = n;
  res.m = m;
  res.N = tri.size();
  res.area = tri.area();
  const double S = res.area;

  std::vector<double> delta(tri.panels.size(), 1.0);
  auto record = [&](const std::vector<double>& d) {
    const double E = single_layer_energy(tri, d, policy, threads);
    if (!(E > 0.0))
      throw numeric_error("capacitance_run: energy lost positivity");
    res.energy.push_back(E);
    res.C.push_back(four_pi * eps0 * S * S / E);
  };
  record(delta);

  if (iters > 0) {
    // Dense operator when it fits comfortably, streaming rows otherwise;
    // row values and reductions are identical either way.
    const bool dense = static_cast<long long>(res.N) * res.N <= 42'000'000;
    if (dense) {
      const DoubleLayer W = DoubleLayer::build(tri, policy, threads);
      for (int it = 0; it < iters; ++it) {
        delta = iterate_density(tri, W, delta, policy, threads);
        record(delta);
      }
    } else {
      for (int it = 0; it < iters; ++it) {
        std::vector<double> next =
            apply_double_layer(tri, delta, policy, threads);
        negate_and_normalize(tri, next, policy);
        delta = std::move(next);
        record(delta);
      }
    }
  }

  res.density = std::move(delta);
  res.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
  return res;
}

}  // namespace wsq
