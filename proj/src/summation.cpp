#include "wsq/summation.hpp"

namespace wsq {

namespace {

// Classic pairwise reduction; the tree shape depends only on the length,
// never on the values or on how callers chunk the work.
double pairwise(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  std::size_t half = xs.size() / 2;
  return pairwise(xs.first(half)) + pairwise(xs.subspan(half));
}

}  // namespace

double reduce(std::span<const double> xs, SumPolicy policy) {
  switch (policy) {
    case SumPolicy::SequentialCompensated: {
      CompensatedSum acc;
      for (double x : xs) acc.add(x);
      return acc.value();
    }
    case SumPolicy::PairwiseDeterministic:
    default:
      return pairwise(xs);
  }
}

}  // namespace wsq
