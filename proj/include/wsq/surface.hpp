#pragma once

// Triangulation of star-shaped closed surfaces from a spherical direction
// grid, plus the flat panel potential integrals the capacitance solver
// needs.

#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace wsq {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const;
  Vec3 normalized() const;
};

// A body given by a positive radial function over directions: the surface
// point along unit direction u is radius(u) * u.
class StarBody {
 public:
  virtual ~StarBody() = default;
  virtual double radius(const Vec3& u) const = 0;

  Vec3 point(const Vec3& u) const { return u * radius(u); }
};

// Axis aligned ellipsoid x^2/a^2 + y^2/b^2 + z^2/c^2 = 1.
class Ellipsoid : public StarBody {
 public:
  Ellipsoid(double a, double b, double c);
  double radius(const Vec3& u) const override;
  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }

 private:
  double a_, b_, c_;
};

// A sphere is the equal-axes ellipsoid; sharing the code keeps the two
// triangulations identical down to the last bit.
class Sphere : public Ellipsoid {
 public:
  explicit Sphere(double a) : Ellipsoid(a, a, a) {}
};

// Radial function tabulated on a (phi, theta) grid, bilinearly interpolated;
// phi wraps, theta clamps to the poles.  Text format: first line
// "nphi ntheta", then nphi rows of ntheta radii, phi_i = 2 pi i / nphi,
// theta_j = pi j / (ntheta - 1).
class TabulatedBody : public StarBody {
 public:
  TabulatedBody(int nphi, int ntheta, std::vector<double> radii);
  static TabulatedBody parse(std::istream& in);
  static TabulatedBody load(const std::string& path);
  double radius(const Vec3& u) const override;

 private:
  int nphi_, ntheta_;
  std::vector<double> r_;  // nphi * ntheta, phi major
};

struct Panel {
  Vec3 v0, v1, v2;  // vertices, counterclockwise seen from outside
  Vec3 normal;      // unit outward normal of the flat triangle
  double area = 0.0;
  Vec3 colloc;      // collocation point, projected back onto the body
};

struct Triangulation {
  int n = 0, m = 0;      // directions: n in phi, m in theta (m even)
  std::vector<Panel> panels;

  int size() const { return static_cast<int>(panels.size()); }
  double area() const;   // total flat area, pairwise summed
};

// Panels from the direction grid phi_k = 2 pi k / n, theta_l = pi l / m:
// one triangle fan per pole cap, two triangles per interior grid rectangle,
// 2 n (m - 1) panels in total.  The collocation point is the circumcenter of
// the flat triangle when that lies strictly inside, else the centroid, and
// is then projected to the body along the ray from the origin.
Triangulation triangulate(const StarBody& body, int n, int m);

// Newtonian potential int_P dA / |p - t| of the flat triangle (v0, v1, v2)
// at an arbitrary point p, by the edge-log closed form with the solid angle
// height term.
double triangle_potential(const Vec3& v0, const Vec3& v1, const Vec3& v2,
                          const Vec3& p);

// Same integral by a polar Gauss rule about the in-plane projection of p;
// validation fallback for the closed form.
double triangle_potential_numeric(const Vec3& v0, const Vec3& v1,
                                  const Vec3& v2, const Vec3& p, int m = 64);

// Potential of a panel at its own collocation point.
double self_potential(const Panel& panel);

}  // namespace wsq
