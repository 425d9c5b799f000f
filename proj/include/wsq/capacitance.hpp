#pragma once

// Capacitance of a star-shaped conductor by the double layer iteration on a
// triangulated surface: starting from a uniform density, apply the adjoint
// double layer operator, renormalize to fixed total charge, and convert the
// single layer energy of each iterate into a capacitance estimate.

#include <span>
#include <stdexcept>
#include <vector>

#include "wsq/summation.hpp"
#include "wsq/surface.hpp"

namespace wsq {

// Raised when an estimate loses its sign or a normalization collapses.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Discrete adjoint double layer operator.  Off diagonal entries are
//   w_jk = area_k / (2 pi) * N_j . (tau_k - tau_j) / |tau_k - tau_j|^3,
// and the diagonal closes each row to sum exactly to -1 (the solid angle
// identity of a closed surface).
class DoubleLayer {
 public:
  static DoubleLayer build(const Triangulation& tri,
                           SumPolicy policy = SumPolicy::PairwiseDeterministic,
                           int threads = 1);

  int size() const noexcept { return N_; }
  double at(int j, int k) const {
    return w_[static_cast<std::size_t>(j) * N_ + k];
  }
  std::span<const double> row(int j) const {
    return {w_.data() + static_cast<std::size_t>(j) * N_,
            static_cast<std::size_t>(N_)};
  }
  // Row sum without the diagonal (the raw solid angle estimate).
  double offdiag_row_sum(int j, SumPolicy policy) const;

  std::vector<double> apply(std::span<const double> delta,
                            SumPolicy policy = SumPolicy::PairwiseDeterministic,
                            int threads = 1) const;

 private:
  int N_ = 0;
  std::vector<double> w_;
};

// One row of the operator without storing the matrix; out[j] gets the
// closure diagonal.  Identical values to DoubleLayer::build.
void double_layer_row(const Triangulation& tri, int j, std::span<double> out,
                      SumPolicy policy);

// Matrix-free application, same numbers as DoubleLayer::apply.
std::vector<double> apply_double_layer(
    const Triangulation& tri, std::span<const double> delta,
    SumPolicy policy = SumPolicy::PairwiseDeterministic, int threads = 1);

// next = -(W delta), rescaled so that sum(next_k area_k) equals the total
// surface area.  Throws numeric_error when the rescaling denominator
// vanishes.
std::vector<double> iterate_density(const Triangulation& tri,
                                    const DoubleLayer& W,
                                    std::span<const double> delta,
                                    SumPolicy policy, int threads = 1);

// E(delta) = sum_j area_j [ sum_{k != j} delta_k area_k / |tau_j - tau_k|
//                           + delta_j I_self(j) ],
// the discrete single layer energy; I_self is the analytic flat triangle
// potential at the collocation point.  Pairs closer than a panel diameter
// (flat spheroids put facing panels arbitrarily close) also use the analytic
// potential: there the centroid quotient diverges while the integral stays
// bounded.
double single_layer_energy(const Triangulation& tri,
                           std::span<const double> delta,
                           SumPolicy policy = SumPolicy::PairwiseDeterministic,
                           int threads = 1);

// Closed form capacitance of the spheroid x^2/a^2 + y^2/a^2 + z^2/c^2 = 1:
// 4 pi eps0 sqrt(a^2 - c^2) / arccos(c/a) when c < a, with the c -> a and
// c > a limits handled.  Disc limit c -> 0 gives 8 eps0 a.
double exact_spheroid_capacitance(double a, double c, double eps0 = 1.0);

struct CapacitanceResult {
  int n = 0, m = 0, N = 0;
  double area = 0.0;            // flat surface area S_N
  std::vector<double> energy;   // E(delta_0 .. delta_iters)
  std::vector<double> C;        // C^(0 .. iters), 4 pi eps0 S^2 / E
  std::vector<double> density;  // final iterate
  double wall_seconds = 0.0;
};

// Triangulate, iterate `iters` times, and report every estimate.  Uses the
// dense operator when it fits, streaming rows otherwise; both paths produce
// identical values.
CapacitanceResult capacitance_run(
    const StarBody& body, int n, int m, int iters, double eps0 = 1.0,
    SumPolicy policy = SumPolicy::PairwiseDeterministic, int threads = 1);

}  // namespace wsq
