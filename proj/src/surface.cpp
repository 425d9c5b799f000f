#include "wsq/surface.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wsq/gauss.hpp"
#include "wsq/summation.hpp"

namespace wsq {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Vec3 Vec3::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw std::runtime_error("Vec3: cannot normalize zero");
  return {x / n, y / n, z / n};
}

Ellipsoid::Ellipsoid(double a, double b, double c) : a_(a), b_(b), c_(c) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0))
    throw std::invalid_argument("Ellipsoid: semi-axes must be positive");
}

double Ellipsoid::radius(const Vec3& u) const {
  const double qx = u.x / a_, qy = u.y / b_, qz = u.z / c_;
  return 1.0 / std::sqrt(qx * qx + qy * qy + qz * qz);
}

TabulatedBody::TabulatedBody(int nphi, int ntheta, std::vector<double> radii)
    : nphi_(nphi), ntheta_(ntheta), r_(std::move(radii)) {
  if (nphi < 3 || ntheta < 2)
    throw std::invalid_argument("TabulatedBody: grid too small");
  if (r_.size() != static_cast<std::size_t>(nphi) * ntheta)
    throw std::invalid_argument("TabulatedBody: radius count mismatch");
  for (double v : r_)
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("TabulatedBody: radii must be positive");
}

TabulatedBody TabulatedBody::parse(std::istream& in) {
  int nphi = 0, ntheta = 0;
  if (!(in >> nphi >> ntheta))
    throw std::invalid_argument("TabulatedBody: missing grid header");
  if (nphi < 3 || ntheta < 2)
    throw std::invalid_argument("TabulatedBody: grid too small");
  std::vector<double> radii(static_cast<std::size_t>(nphi) * ntheta);
  for (double& v : radii)
    if (!(in >> v))
      throw std::invalid_argument("TabulatedBody: truncated radius table");
  return TabulatedBody(nphi, ntheta, std::move(radii));
}

TabulatedBody TabulatedBody::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("TabulatedBody: cannot open " + path);
  return parse(in);
}

double TabulatedBody::radius(const Vec3& u) const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double phi = std::atan2(u.y, u.x);
  if (phi < 0.0) phi += two_pi;
  const double theta = std::acos(std::clamp(u.z, -1.0, 1.0));

  const double fp = phi / two_pi * nphi_;
  int i0 = static_cast<int>(std::floor(fp)) % nphi_;
  if (i0 < 0) i0 += nphi_;
  const int i1 = (i0 + 1) % nphi_;
  const double wp = fp - std::floor(fp);

  const double ft = theta / std::numbers::pi * (ntheta_ - 1);
  const int j0 = std::clamp(static_cast<int>(std::floor(ft)), 0, ntheta_ - 2);
  const int j1 = j0 + 1;
  const double wt = std::clamp(ft - j0, 0.0, 1.0);

  auto at = [this](int i, int j) {
    return r_[static_cast<std::size_t>(i) * ntheta_ + j];
  };
  return (1.0 - wp) * ((1.0 - wt) * at(i0, j0) + wt * at(i0, j1)) +
         wp * ((1.0 - wt) * at(i1, j0) + wt * at(i1, j1));
}

double Triangulation::area() const {
  std::vector<double> a(panels.size());
  for (std::size_t k = 0; k < panels.size(); ++k) a[k] = panels[k].area;
  return reduce(a, SumPolicy::PairwiseDeterministic);
}

namespace {

// Circumcenter of the flat triangle; the caller checks whether it lies
// inside.
Vec3 circumcenter(const Vec3& A, const Vec3& B, const Vec3& C) {
  const Vec3 ab = B - A, ac = C - A;
  const Vec3 N = ab.cross(ac);
  const double nn = N.dot(N);
  const Vec3 num =
      (ac.cross(N) * ab.dot(ab)) + (N.cross(ab) * ac.dot(ac));
  return A + num * (0.5 / nn);
}

// Interior with a barycentric margin, not merely inside: a near right
// triangle puts its circumcenter a hair inside the hypotenuse, and the twin
// triangle across that edge does the same, so the two collocation points all
// but coincide and the pair kernel blows up.  The margin routes such panels
// to the centroid.
bool strictly_inside(const Vec3& P, const Vec3& A, const Vec3& B,
                     const Vec3& C) {
  constexpr double margin = 0.10;
  const Vec3 v0 = B - A, v1 = C - A, v2 = P - A;
  const double d00 = v0.dot(v0), d01 = v0.dot(v1), d11 = v1.dot(v1);
  const double d20 = v2.dot(v0), d21 = v2.dot(v1);
  const double denom = d00 * d11 - d01 * d01;
  if (!(denom > 0.0)) return false;
  const double beta = (d11 * d20 - d01 * d21) / denom;
  const double gamma = (d00 * d21 - d01 * d20) / denom;
  return beta > margin && gamma > margin && beta + gamma < 1.0 - margin;
}

Panel make_panel(const StarBody& body, const Vec3& A, const Vec3& B,
                 const Vec3& C) {
  Panel p;
  p.v0 = A;
  p.v1 = B;
  p.v2 = C;
  const Vec3 cr = (B - A).cross(C - A);
  const double two_area = cr.norm();
  if (!(two_area > 0.0))
    throw std::runtime_error("triangulate: degenerate panel");
  p.area = 0.5 * two_area;
  p.normal = cr * (1.0 / two_area);
  Vec3 cc = circumcenter(A, B, C);
  if (!strictly_inside(cc, A, B, C))
    cc = (A + B + C) * (1.0 / 3.0);
  p.colloc = body.point(cc.normalized());
  return p;
}

}  // namespace

Triangulation triangulate(const StarBody& body, int n, int m) {
  if (n < 3) throw std::invalid_argument("triangulate: n must be >= 3");
  if (m < 2 || m % 2 != 0)
    throw std::invalid_argument("triangulate: m must be even and >= 2");

  // Shared vertex grid; poles get exact axis directions so every cap
  // triangle reuses the identical apex.
  const auto vert = [&](int k, int l) -> Vec3 {
    const int kk = k % n;
    if (l == 0) return body.point({0.0, 0.0, 1.0});
    if (l == m) return body.point({0.0, 0.0, -1.0});
    const double phi = 2.0 * std::numbers::pi * kk / n;
    const double theta = std::numbers::pi * l / m;
    const double st = std::sin(theta);
    return body.point({st * std::cos(phi), st * std::sin(phi),
                       std::cos(theta)});
  };
  std::vector<Vec3> grid(static_cast<std::size_t>(n) * (m + 1));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l <= m; ++l)
      grid[static_cast<std::size_t>(k) * (m + 1) + l] = vert(k, l);
  const auto V = [&](int k, int l) -> const Vec3& {
    return grid[static_cast<std::size_t>(k % n) * (m + 1) + l];
  };

  Triangulation tri;
  tri.n = n;
  tri.m = m;
  tri.panels.reserve(static_cast<std::size_t>(2) * n * (m - 1));

  // North cap: fan about the pole, counterclockwise seen from outside.
  for (int k = 0; k < n; ++k)
    tri.panels.push_back(make_panel(body, V(k, 0), V(k, 1), V(k + 1, 1)));

  // Interior bands: two triangles per direction rectangle.
  for (int l = 1; l <= m - 2; ++l) {
    for (int k = 0; k < n; ++k) {
      const Vec3 &A = V(k, l), &B = V(k + 1, l);
      const Vec3 &C = V(k + 1, l + 1), &D = V(k, l + 1);
      tri.panels.push_back(make_panel(body, A, D, C));
      tri.panels.push_back(make_panel(body, A, C, B));
    }
  }

  // South cap, reversed order to stay outward.
  for (int k = 0; k < n; ++k)
    tri.panels.push_back(
        make_panel(body, V(k, m), V(k + 1, m - 1), V(k, m - 1)));

  return tri;
}

double triangle_potential(const Vec3& v0, const Vec3& v1, const Vec3& v2,
                          const Vec3& p) {
  const Vec3 cr = (v1 - v0).cross(v2 - v0);
  const double two_area = cr.norm();
  if (!(two_area > 0.0)) return 0.0;
  const Vec3 nh = cr * (1.0 / two_area);
  const double h = nh.dot(p - v0);
  const Vec3 foot = p - nh * h;

  const Vec3 v[3] = {v0, v1, v2};
  const double len_scale = std::sqrt(two_area);
  double sum = 0.0;
  for (int e = 0; e < 3; ++e) {
    const Vec3 &a = v[e], &b = v[(e + 1) % 3];
    const Vec3 edge = b - a;
    const double len = edge.norm();
    if (!(len > 0.0)) continue;
    const Vec3 sh = edge * (1.0 / len);
    const Vec3 mh = sh.cross(nh);
    const double d = (a - foot).dot(mh);
    const double sa = (a - foot).dot(sh);
    const double sb = sa + len;
    const double Ra = (p - a).norm();
    const double Rb = (p - b).norm();
    const double q = d * d + h * h;
    if (q < 1e-30 * len_scale * len_scale) continue;  // on the edge line
    // R + s rewritten via q/(R - s) when s < 0 to avoid cancellation.
    const double na = sa >= 0.0 ? Ra + sa : q / (Ra - sa);
    const double nb = sb >= 0.0 ? Rb + sb : q / (Rb - sb);
    sum += d * std::log(nb / na);
  }

  if (h != 0.0) {
    // Unsigned solid angle of the triangle at p (van Oosterom-Strackee).
    const Vec3 ra = v0 - p, rb = v1 - p, rc = v2 - p;
    const double la = ra.norm(), lb = rb.norm(), lc = rc.norm();
    const double triple = std::abs(ra.dot(rb.cross(rc)));
    const double denom = la * lb * lc + ra.dot(rb) * lc + ra.dot(rc) * lb +
                         rb.dot(rc) * la;
    const double omega = 2.0 * std::atan2(triple, denom);
    sum -= std::abs(h) * omega;
  }
  return sum;
}

double triangle_potential_numeric(const Vec3& v0, const Vec3& v1,
                                  const Vec3& v2, const Vec3& p, int m) {
  const Vec3 cr = (v1 - v0).cross(v2 - v0);
  const double two_area = cr.norm();
  if (!(two_area > 0.0)) return 0.0;
  const Vec3 nh = cr * (1.0 / two_area);
  const double h = nh.dot(p - v0);
  const Vec3 foot = p - nh * h;

  // Signed fan about the in-plane foot; each piece reduces to a smooth 1-D
  // integral in the sweep parameter.
  const Vec3 v[3] = {v0, v1, v2};
  const GaussRule& g = gauss_legendre(m);
  double total = 0.0;
  for (int e = 0; e < 3; ++e) {
    const Vec3 a = v[e] - foot;
    const Vec3 b = v[(e + 1) % 3] - foot;
    const double signed_two_area = a.cross(b).dot(nh);
    if (signed_two_area == 0.0) continue;
    double acc = 0.0;
    for (int q = 0; q < m; ++q) {
      const double u = 0.5 + 0.5 * g.node[q];
      const Vec3 e_pt = a * (1.0 - u) + b * u;
      const double gg = e_pt.norm();
      double radial;
      if (gg < 1e-300) {
        radial = 0.0;
      } else if (h == 0.0) {
        radial = 1.0 / gg;
      } else {
        radial = (std::sqrt(gg * gg + h * h) - std::abs(h)) / (gg * gg);
      }
      acc += 0.5 * g.weight[q] * radial;
    }
    total += signed_two_area * acc;
  }
  return total;
}

double self_potential(const Panel& panel) {
  return triangle_potential(panel.v0, panel.v1, panel.v2, panel.colloc);
}

}  // namespace wsq
