#include "lpsub/geometry.hpp"

#include "lpsub/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lpsub {

std::string_view to_string(Side side) {
  return side == Side::interior ? "interior" : "exterior";
}

namespace {

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

constexpr int kPolygonSize = 4096;

}  // namespace

Curve2D::Curve2D(Kind kind, std::string name, std::vector<double> a, std::vector<double> b,
                 Vec2 center)
    : kind_(kind), name_(std::move(name)), cos_(std::move(a)), sin_(std::move(b)), center_(center) {
  if (!all_finite(cos_) || !all_finite(sin_) || !center_.allFinite()) {
    throw InvalidShape("curve '" + name_ + "': non-finite shape parameter");
  }
  finalize();
}

Curve2D Curve2D::circle(double radius, const Vec2& center) {
  if (std::isfinite(radius) && radius <= 0.0) {
    throw InvalidShape("circle radius must be positive");
  }
  std::ostringstream os;
  os << "circle:" << radius;
  return Curve2D(Kind::circle, os.str(), {radius}, {}, center);
}

Curve2D Curve2D::kite() { return Curve2D(Kind::kite, "kite", {}, {}, Vec2::Zero()); }

Curve2D Curve2D::star() {
  return Curve2D(Kind::star, "star", {1.55, 0.0, 0.0, 0.0, 0.0, 0.4}, {}, Vec2::Zero());
}

Curve2D Curve2D::fourier(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs) {
  if (cos_coeffs.empty()) throw InvalidShape("fourier curve needs at least a0");
  std::ostringstream os;
  os << "fourier:[";
  for (std::size_t i = 0; i < cos_coeffs.size(); ++i) os << (i ? "," : "") << cos_coeffs[i];
  os << ";";
  for (std::size_t i = 0; i < sin_coeffs.size(); ++i) os << (i ? "," : "") << sin_coeffs[i];
  os << "]";
  return Curve2D(Kind::fourier, os.str(), std::move(cos_coeffs), std::move(sin_coeffs),
                 Vec2::Zero());
}

CurveSample Curve2D::sample(double t) const {
  CurveSample out;
  out.t = t;
  const double c = std::cos(t), s = std::sin(t);
  if (kind_ == Kind::kite) {
    const double c2 = std::cos(2 * t), s2 = std::sin(2 * t);
    out.point = Vec2(c + 0.65 * c2 - 0.65, 1.5 * s);
    out.d1 = Vec2(-s - 1.3 * s2, 1.5 * c);
    out.d2 = Vec2(-c - 2.6 * c2, -1.5 * s);
  } else {
    double r = cos_[0], dr = 0.0, ddr = 0.0;
    for (std::size_t j = 1; j < cos_.size(); ++j) {
      const double jj = static_cast<double>(j);
      const double cj = std::cos(jj * t), sj = std::sin(jj * t);
      r += cos_[j] * cj;
      dr -= jj * cos_[j] * sj;
      ddr -= jj * jj * cos_[j] * cj;
    }
    for (std::size_t j = 0; j < sin_.size(); ++j) {
      const double jj = static_cast<double>(j + 1);
      const double cj = std::cos(jj * t), sj = std::sin(jj * t);
      r += sin_[j] * sj;
      dr += jj * sin_[j] * cj;
      ddr -= jj * jj * sin_[j] * sj;
    }
    const Vec2 e(c, s), e_perp(-s, c);
    out.point = center_ + r * e;
    out.d1 = dr * e + r * e_perp;
    out.d2 = ddr * e + 2.0 * dr * e_perp - r * e;
  }
  out.jacobian = out.d1.norm();
  out.normal = Vec2(out.d1.y(), -out.d1.x()) / out.jacobian;
  const double cross = out.d1.x() * out.d2.y() - out.d1.y() * out.d2.x();
  out.curvature = cross / (out.jacobian * out.jacobian * out.jacobian);
  return out;
}

Vec2 Curve2D::point(double t) const { return sample(t).point; }

void Curve2D::finalize() {
  polygon_.resize(kPolygonSize);
  double max_curv = 0.0;
  double min_speed = std::numeric_limits<double>::infinity();
  Vec2 lo = Vec2::Constant(std::numeric_limits<double>::infinity());
  Vec2 hi = -lo;
  for (int j = 0; j < kPolygonSize; ++j) {
    const auto smp = sample(kTwoPi * j / kPolygonSize);
    polygon_[j] = smp.point;
    max_curv = std::max(max_curv, std::abs(smp.curvature));
    min_speed = std::min(min_speed, smp.jacobian);
    lo = lo.cwiseMin(smp.point);
    hi = hi.cwiseMax(smp.point);
  }
  if (!(min_speed > 0.0) || !std::isfinite(max_curv)) {
    throw InvalidShape("curve '" + name_ + "' has a cusp or degenerate parameterization");
  }
  // A radial curve with r(t) <= 0 somewhere is not simple and runs clockwise there.
  double area = 0.0;
  Vec2 centroid = Vec2::Zero();
  for (int j = 0; j < kPolygonSize; ++j) {
    const Vec2& p = polygon_[j];
    const Vec2& q = polygon_[(j + 1) % kPolygonSize];
    const double cr = p.x() * q.y() - q.x() * p.y();
    area += 0.5 * cr;
    centroid += (p + q) * cr / 6.0;
  }
  if (!(area > 0.0)) throw InvalidShape("curve '" + name_ + "' is not counter-clockwise");
  interior_point_ = centroid / area;
  bbox_ = {lo, hi};
  reach_ = max_curv > 0.0 ? 1.0 / max_curv : std::numeric_limits<double>::infinity();
  double diam = 0.0;
  for (int i = 0; i < kPolygonSize; i += 8) {
    for (int j = i + 8; j < kPolygonSize; j += 8) {
      diam = std::max(diam, (polygon_[i] - polygon_[j]).norm());
    }
  }
  diameter_ = diam;
}

bool Curve2D::contains(const Vec2& x) const {
  bool inside = false;
  const int n = static_cast<int>(polygon_.size());
  for (int i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = polygon_[i];
    const Vec2& b = polygon_[j];
    if ((a.y() > x.y()) != (b.y() > x.y())) {
      const double xc = (b.x() - a.x()) * (x.y() - a.y()) / (b.y() - a.y()) + a.x();
      if (x.x() < xc) inside = !inside;
    }
  }
  return inside;
}

Surface3D::Surface3D(Kind kind, std::string name, double radius, Vec3 center,
                     Parameterization param)
    : kind_(kind), name_(std::move(name)), radius_(radius), center_(center), param_(std::move(param)) {}

Surface3D Surface3D::sphere(double radius, const Vec3& center) {
  if (!std::isfinite(radius) || !center.allFinite()) {
    throw InvalidShape("sphere: non-finite shape parameter");
  }
  if (radius <= 0.0) throw InvalidShape("sphere radius must be positive");
  std::ostringstream os;
  os << "sphere:" << radius;
  return Surface3D(Kind::sphere, os.str(), radius, center, {});
}

Surface3D Surface3D::parameterized(std::string name, Parameterization param) {
  if (!param) throw InvalidShape("parameterized surface needs a parameterization");
  return Surface3D(Kind::parameterized, std::move(name), 0.0, Vec3::Zero(), std::move(param));
}

SurfaceSample Surface3D::sample(double s, double t) const {
  if (is_sphere()) return sample_rotated(PoleRotation{}, s, t);
  SurfaceSample out;
  out.s = s;
  out.t = t;
  const auto [y, ys, yt] = param_(s, t);
  out.point = y;
  out.ds = ys;
  out.dt = yt;
  Vec3 cross = ys.cross(yt);
  double sin_s = std::sin(s);
  if (std::abs(sin_s) < 1e-12) {
    // Pole: |y_s x y_t| and sin s both vanish; take the ratio just off the pole.
    const double eps = 1e-7;
    const double s_off = s < 1.0 ? s + eps : s - eps;
    const auto [y2, ys2, yt2] = param_(s_off, t);
    cross = ys2.cross(yt2);
    sin_s = std::sin(s_off);
  }
  out.jacobian = cross.norm() / std::abs(sin_s);
  out.normal = cross.normalized();
  return out;
}

SurfaceSample Surface3D::sample_rotated(const PoleRotation& rot, double s, double t) const {
  if (!is_sphere()) throw UnsupportedSurface("rotated sampling requires a sphere");
  SurfaceSample out;
  out.s = s;
  out.t = t;
  const double cs = std::cos(s), ss = std::sin(s), ct = std::cos(t), st = std::sin(t);
  const Vec3 u(ss * ct, ss * st, cs);
  out.normal = rot.to_physical(u);
  out.point = center_ + radius_ * out.normal;
  out.ds = radius_ * rot.to_physical(Vec3(cs * ct, cs * st, -ss));
  out.dt = radius_ * rot.to_physical(Vec3(-ss * st, ss * ct, 0.0));
  out.jacobian = radius_ * radius_;
  return out;
}

CurveSample boundary_sample(const Curve2D& curve, double t) { return curve.sample(t); }

SurfaceSample boundary_sample(const Surface3D& surface, double s, double t) {
  return surface.sample(s, t);
}

template <int D>
Vec<D> offset_point(const Anchor<D>& anchor, double ell, Side side) {
  if (!(ell > 0.0)) throw DomainError("offset distance must be positive");
  return side == Side::interior ? Vec<D>(anchor.point - ell * anchor.normal)
                                : Vec<D>(anchor.point + ell * anchor.normal);
}

template Vec<2> offset_point<2>(const Anchor<2>&, double, Side);
template Vec<3> offset_point<3>(const Anchor<3>&, double, Side);

namespace {

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

struct NewtonResult {
  double t;
  double dist2;
  bool converged;
};

NewtonResult refine_closest(const Curve2D& curve, const Vec2& x, double t0) {
  auto f = [&](double t) { return 0.5 * (x - curve.point(t)).squaredNorm(); };
  double t = t0;
  double ft = f(t);
  for (int iter = 0; iter < 50; ++iter) {
    const auto smp = curve.sample(t);
    const Vec2 r = x - smp.point;
    const double g = -r.dot(smp.d1);
    const double h = smp.d1.squaredNorm() - r.dot(smp.d2);
    double step = h > 0.0 ? -g / h : -g / smp.d1.squaredNorm();
    if (std::abs(step) < 1e-15) return {wrap_angle(t), 2.0 * ft, true};
    double t_new = t + step;
    double f_new = f(t_new);
    int halvings = 0;
    while (f_new > ft && halvings < 40) {
      step *= 0.5;
      t_new = t + step;
      f_new = f(t_new);
      ++halvings;
    }
    if (f_new > ft) return {wrap_angle(t), 2.0 * ft, true};  // at a minimum to roundoff
    t = t_new;
    ft = f_new;
    if (std::abs(step) < 1e-14) return {wrap_angle(t), 2.0 * ft, true};
  }
  return {wrap_angle(t), 2.0 * ft, false};
}

}  // namespace

NearestPoint2D nearest_boundary_point(const Curve2D& curve, const Vec2& x, int seeds) {
  seeds = std::max(seeds, 16);
  std::vector<double> d2(seeds);
  for (int j = 0; j < seeds; ++j) d2[j] = (x - curve.point(kTwoPi * j / seeds)).squaredNorm();

  // Newton from each of the best few local minima of the coarse samples.
  std::vector<int> minima;
  for (int j = 0; j < seeds; ++j) {
    const double prev = d2[(j + seeds - 1) % seeds], next = d2[(j + 1) % seeds];
    if (d2[j] <= prev && d2[j] <= next) minima.push_back(j);
  }
  std::sort(minima.begin(), minima.end(), [&](int a, int b) { return d2[a] < d2[b]; });
  if (minima.size() > 3) minima.resize(3);

  const int best_coarse = minima.front();
  NewtonResult best{kTwoPi * best_coarse / seeds, d2[best_coarse], false};
  bool any_converged = false;
  for (int j : minima) {
    const auto res = refine_closest(curve, x, kTwoPi * j / seeds);
    if (res.converged && (!any_converged || res.dist2 < best.dist2)) {
      best = res;
      any_converged = true;
    }
  }

  NearestPoint2D out;
  out.t = best.t;
  out.distance = std::sqrt(best.dist2);
  out.converged = any_converged;
  if (out.distance <= 1e-13 * curve.diameter()) {
    throw OnBoundaryError("point lies on the boundary");
  }
  if (out.distance < 0.9 * curve.reach()) {
    const auto smp = curve.sample(out.t);
    out.side = (x - smp.point).dot(smp.normal) > 0.0 ? Side::exterior : Side::interior;
  } else {
    out.side = curve.contains(x) ? Side::interior : Side::exterior;
  }
  return out;
}

std::pair<double, double> spherical_angles(const Vec3& d) {
  return {std::atan2(std::hypot(d.x(), d.y()), d.z()), std::atan2(d.y(), d.x())};
}

NearestPoint3D nearest_boundary_point(const Surface3D& surface, const Vec3& x) {
  if (!surface.is_sphere()) throw UnsupportedSurface("closest point requires a sphere");
  const Vec3 rel = x - surface.center();
  const double rho = rel.norm();
  NearestPoint3D out;
  out.distance = std::abs(rho - surface.radius());
  if (out.distance <= 1e-13 * 2.0 * surface.radius()) {
    throw OnBoundaryError("point lies on the sphere");
  }
  if (rho == 0.0) {
    out.s = 0.0;
    out.t = 0.0;
  } else {
    std::tie(out.s, out.t) = spherical_angles(rel);
  }
  out.side = rho < surface.radius() ? Side::interior : Side::exterior;
  return out;
}

PoleRotation rotate_to_pole(const Surface3D& surface, const Vec3& xstar) {
  if (!surface.is_sphere()) throw UnsupportedSurface("rotation to pole requires a sphere");
  const Vec3 a = (xstar - surface.center()).normalized();
  const Vec3 e3 = Vec3::UnitZ();
  PoleRotation rot;
  if ((a - e3).norm() < 1e-15) return rot;
  rot.matrix = Eigen::Quaterniond::FromTwoVectors(a, e3).toRotationMatrix();
  return rot;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\n\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& s, std::string_view context) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InvalidShape("bad number '" + s + "' in shape spec '" + std::string(context) + "'");
  }
  if (trim(s.substr(pos)).size() != 0) {
    throw InvalidShape("bad number '" + s + "' in shape spec '" + std::string(context) + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& s, std::string_view context) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_number(item, context));
  }
  return out;
}

}  // namespace

Boundary parse_shape(std::string_view spec_in) {
  const std::string spec = trim(spec_in);
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string() : trim(spec.substr(colon + 1));
  if (head == "kite" && arg.empty()) return Curve2D::kite();
  if (head == "star" && arg.empty()) return Curve2D::star();
  if (head == "circle") return Curve2D::circle(arg.empty() ? 1.0 : parse_number(arg, spec));
  if (head == "sphere") return Surface3D::sphere(arg.empty() ? 1.0 : parse_number(arg, spec));
  if (head == "fourier") {
    if (arg.size() < 2 || arg.front() != '[' || arg.back() != ']') {
      throw InvalidShape("fourier spec must look like fourier:[a0,a1,...;b1,...]");
    }
    const std::string body = arg.substr(1, arg.size() - 2);
    const auto semi = body.find(';');
    auto a = parse_list(body.substr(0, semi), spec);
    auto b = semi == std::string::npos ? std::vector<double>{} : parse_list(body.substr(semi + 1), spec);
    return Curve2D::fourier(std::move(a), std::move(b));
  }
  throw InvalidShape("unknown shape spec '" + spec + "'");
}

}  // namespace lpsub
