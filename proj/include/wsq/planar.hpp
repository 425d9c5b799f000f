#pragma once

// Cubature for the planar weakly singular integral
//
//   T f (t) = int_{-1}^{1} int_{-1}^{1} f(tau) *
//             ((tau1 - t1)^2 + (tau2 - t2)^2)^(-lambda) dtau
//
// on the uniform n x n grid over [-1, 1]^2.  Far cells (no closure contact
// with the cell containing t) get midpoint-style weights integrated by a
// Gauss panel; the 3 x 3 block around t integrates a regularized kernel.
// The smooth-data variant replaces samples by a local tensor spline.

#include <functional>
#include <vector>

#include "wsq/gauss.hpp"
#include "wsq/periodic.hpp"  // RegParams, choose_regularization
#include "wsq/summation.hpp"

namespace wsq {

enum class NearPolicy {
  PerCell,      // every near cell keeps its own weight
  MergedDelta   // the whole 3 x 3 block carries one weight at f(x'_i, x'_j)
};

// Weight of one far cell: Gauss panel of the kernel in coordinates relative
// to t.  Exposed so translation covariance can be tested directly.
double far_cell_weight(const Rect& cell, double t1, double t2, double lambda,
                       int m);

// Weight of one near cell: the regularized kernel 1/((.)^lambda + h),
// integrated by Gauss panels after splitting the cell at t when t lies
// strictly inside it (the split turns an interior singularity into corner
// ones, which the panels handle far better).
double near_cell_weight(const Rect& cell, double t1, double t2, double lambda,
                        double h, int m);

struct PlanarWeightTable {
  int n = 0;
  double lambda = 0.0;
  double alpha = 1.0;
  double t1 = 0.0, t2 = 0.0;
  int i = 0, j = 0;  // cell containing t
  NearPolicy near = NearPolicy::PerCell;
  RegParams reg;
  int m_far = 1;
  std::vector<double> w;  // n*n, row-major in (k, l)

  double at(int k, int l) const { return w[static_cast<std::size_t>(k) * n + l]; }
  double node(int k) const { return -1.0 + 2.0 * k / n; }
  double midpoint(int k) const { return -1.0 + (2.0 * k + 1.0) / n; }
  double weight_sum(SumPolicy policy) const { return reduce(w, policy); }
};

// Index of the cell containing coordinate t; ties on a shared edge go to the
// smaller index.
int locate_cell(double t, int n);

PlanarWeightTable planar_weights(int n, double t1, double t2, double lambda,
                                 double alpha,
                                 NearPolicy near = NearPolicy::PerCell,
                                 int m_cap = 64);

// Apply the table to samples of f at cell midpoints.
double eval_Tf_holder(const PlanarWeightTable& table,
                      const std::function<double(double, double)>& f,
                      SumPolicy policy = SumPolicy::PairwiseDeterministic);

// Continuous piecewise tensor polynomial interpolant: M blocks per axis,
// degree r per axis inside each block, blocks sharing edge nodes.
class LocalSpline2D {
 public:
  LocalSpline2D(const Rect& dom, int M, int r, std::vector<double> values);

  static LocalSpline2D from_function(
      const std::function<double(double, double)>& f, const Rect& dom, int M,
      int r);

  int blocks() const noexcept { return M_; }
  int degree() const noexcept { return r_; }
  const Rect& domain() const noexcept { return dom_; }

  double operator()(double x, double y) const;

  // Evaluate the polynomial of a known block; tolerates arguments that sit a
  // rounding error outside the block.
  double eval_in_block(int bx, int by, double x, double y) const;

 private:
  Rect dom_;
  int M_, r_;
  std::vector<double> v_;  // (M r + 1)^2, row-major (iy major)
  double hx_, hy_;         // node spacing
};

// Smooth-data cubature: interpolate f by a LocalSpline2D with one block per
// grid cell (M = n), then integrate spline times kernel cell by cell, the
// near block with the regularized kernel.
double eval_Tf_smooth(const std::function<double(double, double)>& f, int n,
                      int r, double lambda, double t1, double t2,
                      SumPolicy policy = SumPolicy::PairwiseDeterministic,
                      int m_cap = 64);

}  // namespace wsq
