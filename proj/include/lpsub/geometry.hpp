#pragma once

// Parameterized boundaries: closed curves in the plane and closed surfaces in
// space, with analytic derivatives, offsets along the normal and closest-point
// projection.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lpsub {

template <int D>
using Vec = Eigen::Matrix<double, D, 1>;
using Vec2 = Vec<2>;
using Vec3 = Vec<3>;
using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class Side { interior, exterior };

std::string_view to_string(Side side);

/// A point on a boundary together with its unit outward normal.
template <int D>
struct Anchor {
  Vec<D> point;
  Vec<D> normal;
};

struct CurveSample {
  double t = 0.0;
  Vec2 point;
  Vec2 d1;      // y'(t)
  Vec2 d2;      // y''(t)
  Vec2 normal;  // unit, outward
  double jacobian = 0.0;   // |y'(t)|
  double curvature = 0.0;  // (y1' y2'' - y2' y1'') / |y'|^3, positive on convex arcs

  Anchor<2> anchor() const { return {point, normal}; }
};

/// Closed, counter-clockwise, 2*pi-periodic C^2 curve.
///
/// Built-in kinds are the circle, the kite
///   y(t) = (cos t + 0.65 cos 2t - 0.65, 1.5 sin t)
/// and radial Fourier curves y(t) = r(t) (cos t, sin t) with
///   r(t) = a0 + sum_j a_j cos(jt) + sum_j b_j sin(jt),
/// of which the five-lobed star r(t) = 1.55 + 0.4 cos 5t is one instance.
class Curve2D {
 public:
  enum class Kind { circle, kite, star, fourier };

  static Curve2D circle(double radius, const Vec2& center = Vec2::Zero());
  static Curve2D kite();
  static Curve2D star();
  static Curve2D fourier(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  CurveSample sample(double t) const;
  Vec2 point(double t) const;

  /// Largest chord between coarse samples; used for relative tolerances.
  double diameter() const { return diameter_; }
  /// 1 / max |curvature|: offsets below this are uniquely projected.
  double reach() const { return reach_; }
  /// A point known to lie inside (centroid of the coarse polygon).
  const Vec2& interior_point() const { return interior_point_; }
  /// Axis-aligned bounding box (min corner, max corner) of coarse samples.
  std::pair<Vec2, Vec2> bounding_box() const { return bbox_; }

  /// Crossing-number point-in-curve test against a fine polygonal approximation.
  bool contains(const Vec2& x) const;

 private:
  Curve2D(Kind kind, std::string name, std::vector<double> a, std::vector<double> b, Vec2 center);
  void finalize();

  Kind kind_;
  std::string name_;
  std::vector<double> cos_;  // radial coefficients a_0..a_m (radius for circle)
  std::vector<double> sin_;  // b_1..b_m
  Vec2 center_;
  double diameter_ = 0.0;
  double reach_ = 0.0;
  Vec2 interior_point_ = Vec2::Zero();
  std::pair<Vec2, Vec2> bbox_;
  std::vector<Vec2> polygon_;
};

struct SurfaceSample {
  double s = 0.0;
  double t = 0.0;
  Vec3 point;
  Vec3 ds;
  Vec3 dt;
  Vec3 normal;            // unit, outward
  double jacobian = 0.0;  // |y_s x y_t| / sin s

  Anchor<3> anchor() const { return {point, normal}; }
};

/// Orthogonal change of frame carrying a chosen boundary point to the north pole.
struct PoleRotation {
  Eigen::Matrix3d matrix = Eigen::Matrix3d::Identity();  // physical -> rotated frame

  Vec3 to_rotated(const Vec3& v) const { return matrix * v; }
  Vec3 to_physical(const Vec3& v) const { return matrix.transpose() * v; }
};

/// Closed surface parameterized by y(s,t), s in [0,pi], t in [-pi,pi].
class Surface3D {
 public:
  enum class Kind { sphere, parameterized };

  /// Returns y, y_s, y_t at (s,t).
  using Parameterization = std::function<std::array<Vec3, 3>(double s, double t)>;

  static Surface3D sphere(double radius, const Vec3& center = Vec3::Zero());
  static Surface3D parameterized(std::string name, Parameterization param);

  Kind kind() const { return kind_; }
  bool is_sphere() const { return kind_ == Kind::sphere; }
  const std::string& name() const { return name_; }
  double radius() const { return radius_; }
  const Vec3& center() const { return center_; }

  SurfaceSample sample(double s, double t) const;
  /// Sample of the sphere in a rotated frame: y_R(s,t) = c + R^T (r u(s,t)).
  SurfaceSample sample_rotated(const PoleRotation& rot, double s, double t) const;

 private:
  Surface3D(Kind kind, std::string name, double radius, Vec3 center, Parameterization param);

  Kind kind_;
  std::string name_;
  double radius_ = 0.0;
  Vec3 center_ = Vec3::Zero();
  Parameterization param_;
};

using Boundary = std::variant<Curve2D, Surface3D>;

/// Parses `circle:r`, `kite`, `star`, `sphere:r`, `fourier:[a0,a1,...;b1,...]`.
Boundary parse_shape(std::string_view spec);

CurveSample boundary_sample(const Curve2D& curve, double t);
SurfaceSample boundary_sample(const Surface3D& surface, double s, double t);

/// x* - ell n (interior) or x* + ell n (exterior).
template <int D>
Vec<D> offset_point(const Anchor<D>& anchor, double ell, Side side);

inline Vec2 offset_point(const CurveSample& s, double ell, Side side) {
  return offset_point<2>(s.anchor(), ell, side);
}
inline Vec3 offset_point(const SurfaceSample& s, double ell, Side side) {
  return offset_point<3>(s.anchor(), ell, side);
}

struct NearestPoint2D {
  double t = 0.0;
  double distance = 0.0;
  Side side = Side::exterior;
  bool converged = true;  // false: Newton failed, best coarse sample returned
};

struct NearestPoint3D {
  double s = 0.0;
  double t = 0.0;
  double distance = 0.0;
  Side side = Side::exterior;
};

/// Global closest point on the curve. Seeds a damped Newton iteration on the
/// squared distance from the best of `seeds` uniform samples.
NearestPoint2D nearest_boundary_point(const Curve2D& curve, const Vec2& x, int seeds = 1024);
NearestPoint3D nearest_boundary_point(const Surface3D& surface, const Vec3& x);

/// Rotation R with R (x* - c)/r = e3. Only spheres are supported.
PoleRotation rotate_to_pole(const Surface3D& surface, const Vec3& xstar);

/// Spherical angles (theta in [0,pi], phi in (-pi,pi]) of a direction.
std::pair<double, double> spherical_angles(const Vec3& direction);

}  // namespace lpsub
