#pragma once

// Sharp-constant machinery: Favard constants, least deviation values of
// monic polynomials, the planar kernel constant, and the leading order
// error bounds the convergence harness compares against.

#include <stdexcept>

namespace wsq {

// K_r = (4/pi) * sum_{j>=0} [(-1)^j / (2j+1)]^(r+1), summed with Euler
// style averaging so the slowly alternating r = 0 case converges too.
// K_0 = 1, K_1 = pi/2, K_2 = pi^2/8, K_3 = pi^3/24.
double favard_constant(int r);

enum class LNorm { One, Inf };

// Least deviation from zero of monic degree-r polynomials on [-1, 1]:
// L1 value (r+1)/2^r, sup value 2^(1-r).  r >= 1; other norms are not
// implemented.
double least_dev_value(int r, LNorm q);

// gamma_hat(lambda) = int_{[-1,1]^2} (t1^2 + t2^2)^(-lambda) dt, computed by
// the reference integrator (folded to one quadrant).  tol is relative.
// gamma_hat(0) = 4.
double planar_gamma(double lambda, double tol = 1e-6);

enum class Domain { Periodic, Planar };
enum class FnClass { HolderAlpha, SobolevWrr, Crr };

struct BoundContext {
  Domain domain = Domain::Periodic;
  FnClass cls = FnClass::HolderAlpha;
  int n = 0;           // cells per axis
  double lambda = 0.0; // kernel exponent, in [0, 1)
  double gamma = 0.0;  // gamma(lambda) or gamma_hat(lambda), caller supplied
  double alpha = 0.0;  // Holder exponent, used when cls == HolderAlpha
  int r = 0;           // smoothness order, used otherwise
};

// Leading order worst case error of the n x n cubature on the given class.
// Throws std::invalid_argument for class/domain pairs with no wired bound.
double predicted_error(const BoundContext& ctx);

}  // namespace wsq
