#pragma once

// Deterministic floating point reductions.
//
// Every cubature in this library reduces its terms in the canonical order
// (row-major over cells).  Given that order, both policies below produce
// results that do not depend on chunking or thread count, so repeated runs
// are bit identical.

#include <cmath>
#include <cstddef>
#include <span>

namespace wsq {

enum class SumPolicy {
  SequentialCompensated,  // Neumaier compensated sum, input order
  PairwiseDeterministic   // fixed-shape pairwise tree over the input order
};

// Neumaier variant of compensated summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    double t = s_ + x;
    if (std::abs(s_) >= std::abs(x))
      c_ += (s_ - t) + x;
    else
      c_ += (x - t) + s_;
    s_ = t;
  }
  double value() const noexcept { return s_ + c_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

double reduce(std::span<const double> xs, SumPolicy policy);

}  // namespace wsq
