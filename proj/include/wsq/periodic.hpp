#pragma once

// Cubature for the doubly periodic weakly singular integral
//
//   K f (s) = int_0^{2pi} int_0^{2pi} f(sigma) *
//             (sin^2((sigma1 - s1)/2) + sin^2((sigma2 - s2)/2))^(-lambda) dsigma
//
// on the uniform n x n grid, with the evaluation point at a cell midpoint.
// Off diagonal cells carry midpoint weights; the diagonal cell integrates a
// regularized kernel.

#include <functional>
#include <vector>

#include "wsq/summation.hpp"

namespace wsq {

// Regularization parameters: the kernel shift h and the Gauss order used on
// the diagonal cell.  The raw order law grows so fast in n that it is
// clamped; the clamp is part of the returned value, not hidden.
struct RegParams {
  double h = 0.0;
  int m_gauss = 1;
  bool clamped = false;
};

// h = n^(-2(2 lambda + alpha)/(1 - lambda)),
// m = max(floor(n^((8 lambda + 4 alpha)/(1 - lambda) + alpha - 3)), 1),
// clamped to m_cap.
RegParams choose_regularization(int n, double lambda, double alpha,
                                int m_cap = 64);

// gamma(lambda) = int_{[0,2pi]^2} (sin^2(s1/2) + sin^2(s2/2))^(-lambda) ds,
// computed by the reference integrator (folded to one quadrant).  tol is
// relative.  gamma(0) = 4 pi^2.
double gamma_constant(double lambda, double tol = 1e-6);

struct PeriodicWeightTable {
  int n = 0;
  double lambda = 0.0;
  double alpha = 1.0;
  int i = 0, j = 0;  // evaluation midpoint indices
  RegParams reg;
  std::vector<double> w;  // n*n, row-major in (k, l)

  double at(int k, int l) const { return w[static_cast<std::size_t>(k) * n + l]; }
  double midpoint(int k) const;  // x'_k = (2k+1) pi / n
  double weight_sum(SumPolicy policy) const;
};

// Weight table for evaluation point s = (x'_i, x'_j).  alpha is the declared
// Holder exponent of the data (use 1 for smooth f); it only enters the
// regularization of the diagonal cell.
PeriodicWeightTable periodic_weights(int n, double lambda, double alpha,
                                     int i, int j, int m_cap = 64);

// Apply the table to samples of f at the grid midpoints.
double eval_Kf(const PeriodicWeightTable& table,
               const std::function<double(double, double)>& f,
               SumPolicy policy = SumPolicy::PairwiseDeterministic);

}  // namespace wsq
