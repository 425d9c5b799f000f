#pragma once

// Adaptive reference integrator used to generate and cross check expected
// values.  Not a production path: it trades speed for a trustworthy error
// estimate on integrands with one known weak singularity.

#include <array>
#include <cstddef>
#include <functional>
#include <optional>

#include "wsq/gauss.hpp"

namespace wsq {

struct OracleOptions {
  double tol = 1e-7;          // absolute accuracy target
  double rel_tol = 0.0;       // relative target; the looser of the two wins
  int panel_m = 5;            // Gauss order per cell and axis
  std::optional<std::array<double, 2>> singular;  // declared singular point
  double floor_frac = 0x1p-30;      // smallest cell diameter / domain diameter
  // Cells containing the singular point never pass the two-level test, so
  // they subdivide down to this much deeper floor.  The chain is linear in
  // the depth, not exponential, which keeps this cheap.
  double forced_floor_frac = 0x1p-44;
  std::size_t max_evals = 80'000'000;
};

struct OracleResult {
  double value = 0.0;
  double err_est = 0.0;    // sum of two-level differences of accepted cells
  std::size_t evals = 0;
  bool converged = true;   // err_est met the target within the eval budget
};

OracleResult oracle_integrate(const std::function<double(double, double)>& f,
                              const Rect& domain,
                              const OracleOptions& opt = {});

}  // namespace wsq
