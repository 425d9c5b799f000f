#pragma once

// Gauss-Legendre rules and tensor product panels on axis aligned rectangles.

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace wsq {

struct Rect {
  double x0, x1, y0, y1;

  double width() const noexcept { return x1 - x0; }
  double height() const noexcept { return y1 - y0; }
  double area() const noexcept { return width() * height(); }
  double diameter() const noexcept;
  bool contains(double x, double y) const noexcept {
    return x0 <= x && x <= x1 && y0 <= y && y <= y1;
  }
};

// Nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> node;
  std::vector<double> weight;
};

// Cached rule of order m (m points, exact through degree 2m-1).
const GaussRule& gauss_legendre(int m);

// Tensor product Gauss panel over a rectangle.  Nodes are visited row-major
// (outer loop y, inner loop x) so the accumulation order is canonical.
template <class F>
double gauss_panel(F&& f, const Rect& r, int m) {
  const GaussRule& g = gauss_legendre(m);
  const double cx = 0.5 * (r.x0 + r.x1), hx = 0.5 * r.width();
  const double cy = 0.5 * (r.y0 + r.y1), hy = 0.5 * r.height();
  double s = 0.0;
  for (int b = 0; b < m; ++b) {
    const double y = cy + hy * g.node[b];
    double row = 0.0;
    for (int a = 0; a < m; ++a)
      row += g.weight[a] * f(cx + hx * g.node[a], y);
    s += g.weight[b] * row;
  }
  return s * hx * hy;
}

}  // namespace wsq
