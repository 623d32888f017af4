#include "lpsub/experiments.hpp"

#include "lpsub/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace lpsub {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<double> log_space(double lo, double hi, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    out[i] = std::pow(10.0, std::log10(lo) + f * (std::log10(hi) - std::log10(lo)));
  }
  return out;
}

/// Fibonacci lattice on the unit sphere.
std::vector<Vec3> sphere_directions(int count) {
  std::vector<Vec3> out;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double rho = std::sqrt(1.0 - z * z);
    out.emplace_back(rho * std::cos(golden * i), rho * std::sin(golden * i), z);
  }
  return out;
}

template <int D>
Vec<D> to_vec(const std::vector<double>& v, const char* what) {
  if (static_cast<int>(v.size()) != D) {
    throw UsageError(std::string(what) + " must have " + std::to_string(D) + " components");
  }
  Vec<D> out;
  for (int i = 0; i < D; ++i) out(i) = v[i];
  return out;
}

template <int D>
std::vector<double> to_std(const Vec<D>& v) {
  return std::vector<double>(v.data(), v.data() + D);
}

nlohmann::json report_json(const SolveReport& r) {
  nlohmann::json j{{"rcond", r.rcond}, {"relative_residual", r.relative_residual}};
  if (r.warning) j["warning"] = *r.warning;
  return j;
}

}  // namespace

std::string_view to_string(Problem problem) {
  switch (problem) {
    case Problem::laplace_int_dirichlet: return "laplace-int-dirichlet";
    case Problem::laplace_ext_neumann: return "laplace-ext-neumann";
    case Problem::helmholtz_scatter: return "helmholtz-scatter";
  }
  return "unknown";
}

Problem parse_problem(std::string_view text) {
  for (auto p : {Problem::laplace_int_dirichlet, Problem::laplace_ext_neumann, Problem::helmholtz_scatter}) {
    if (text == to_string(p)) return p;
  }
  throw UsageError("unknown problem '" + std::string(text) + "'");
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  if (j.contains("problem")) c.problem = parse_problem(j.at("problem").get<std::string>());
  if (j.contains("shape")) c.shape = j.at("shape").get<std::string>();
  if (j.contains("N")) c.n = j.at("N").get<int>();
  if (j.contains("k")) c.k = j.at("k").get<double>();
  if (j.contains("x0")) c.x0 = j.at("x0").get<std::vector<double>>();
  if (j.contains("methods")) c.methods = j.at("methods").get<std::vector<std::string>>();
  if (j.contains("solver")) c.solver = j.at("solver").get<std::string>();
  if (j.contains("out")) c.out = j.at("out").get<std::string>();
  if (j.contains("density_cache")) c.density_cache = j.at("density_cache").get<std::string>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    if (g.contains("resolution")) c.grid.resolution = g.at("resolution").get<int>();
    if (g.contains("inflate")) c.grid.inflate = g.at("inflate").get<double>();
  }
  if (j.contains("scan")) {
    const auto& s = j.at("scan");
    if (s.contains("tstar")) c.scan.tstar = s.at("tstar").get<double>();
    if (s.contains("point")) c.scan.point = s.at("point").get<std::vector<double>>();
    if (s.contains("ell")) c.scan.ell = s.at("ell").get<std::vector<double>>();
  }
  if (j.contains("ksweep")) {
    const auto& s = j.at("ksweep");
    if (s.contains("k")) c.ksweep.ks = s.at("k").get<std::vector<double>>();
    if (s.contains("anchors")) c.ksweep.anchors = s.at("anchors").get<int>();
    if (s.contains("ell")) c.ksweep.ell = s.at("ell").get<std::vector<double>>();
  }
  if (j.contains("identity")) {
    const auto& s = j.at("identity");
    if (s.contains("family")) c.identity.family = s.at("family").get<std::string>();
    if (s.contains("N")) c.identity.ns = s.at("N").get<std::vector<int>>();
    if (s.contains("k")) c.identity.k = s.at("k").get<double>();
    if (s.contains("points")) c.identity.points = s.at("points").get<int>();
    if (s.contains("min_distance")) c.identity.min_distance = s.at("min_distance").get<double>();
  }
  return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j{{"problem", to_string(c.problem)},
                   {"shape", c.shape},
                   {"N", c.n},
                   {"k", c.k},
                   {"x0", c.x0},
                   {"methods", c.methods},
                   {"solver", c.solver},
                   {"out", c.out},
                   {"density_cache", c.density_cache},
                   {"seed", c.seed},
                   {"grid", {{"resolution", c.grid.resolution}, {"inflate", c.grid.inflate}}},
                   {"ksweep", {{"k", c.ksweep.ks}, {"anchors", c.ksweep.anchors}, {"ell", c.ksweep.ell}}},
                   {"identity",
                    {{"family", c.identity.family},
                     {"N", c.identity.ns},
                     {"k", c.identity.k},
                     {"points", c.identity.points},
                     {"min_distance", c.identity.min_distance}}}};
  nlohmann::json scan{{"ell", c.scan.ell}};
  if (c.scan.tstar) scan["tstar"] = *c.scan.tstar;
  if (c.scan.point) scan["point"] = *c.scan.point;
  j["scan"] = scan;
  return j;
}

template <int D>
InteriorSolution<D> exact_solution(Problem problem, const Vec<D>& x0, double k) {
  if (problem == Problem::helmholtz_scatter) {
    auto s = green_helmholtz_solution<D>(k, x0);
    s.label = "exact";
    return s;
  }
  InteriorSolution<D> s;
  s.label = "exact";
  if constexpr (D == 2) {
    s.value = [x0](const Vec2& x) {
      const Vec2 d = x - x0;
      return cplx(d.x() / d.squaredNorm());
    };
    s.gradient = [x0](const Vec2& x) {
      const Vec2 d = x - x0;
      const double r4 = d.squaredNorm() * d.squaredNorm();
      return CVec<2>((d.y() * d.y() - d.x() * d.x()) / r4, -2.0 * d.x() * d.y() / r4);
    };
  } else {
    s = green_laplace_solution<3>(x0, 4.0 * kPi);  // 1/|x - x0|
    s.label = "exact";
  }
  return s;
}

template InteriorSolution<2> exact_solution<2>(Problem, const Vec2&, double);
template InteriorSolution<3> exact_solution<3>(Problem, const Vec3&, double);

Experiment::Experiment(ExperimentConfig config) : config_(std::move(config)) {
  const auto boundary = parse_shape(config_.shape);
  dim_ = std::holds_alternative<Curve2D>(boundary) ? 2 : 3;
  const bool wave = config_.problem == Problem::helmholtz_scatter;
  if (wave && !(config_.k > 0.0)) throw DomainError("helmholtz-scatter needs k > 0");
  if (config_.methods.empty()) throw UsageError("no evaluation methods requested");
  for (const auto& m : config_.methods) {
    Representation<2> r{family(), parse_mode(m), {}};
    r.validate();
    modes_.push_back(r.mode);
  }
  solver_ = config_.solver;
  if (solver_.empty()) solver_ = dim_ == 3 ? "galerkin" : (wave ? "kress" : "ptr");
  const bool interior_x0 = config_.problem != Problem::laplace_int_dirichlet;

  auto load_cached = [&]() -> nlohmann::json {
    if (config_.density_cache.empty()) return nullptr;
    auto j = read_json_file(config_.density_cache);
    if (j.is_null() || !(density_key_from_json(j) == key())) return nullptr;
    return j;
  };

  const auto t0 = Clock::now();
  if (dim_ == 2) {
    const auto& curve = std::get<Curve2D>(boundary);
    const Vec2 x0 = to_vec<2>(config_.x0, "x0");
    if (curve.contains(x0) != interior_x0) {
      throw UsageError(interior_x0 ? "x0 must lie inside the boundary" : "x0 must lie outside the boundary");
    }
    auto exact = exact_solution<2>(config_.problem, x0, config_.k);
    exact_ = exact;
    if (const auto cached = load_cached(); !cached.is_null()) {
      eval2_.emplace(density2d_from_json(cached, curve), config_.k);
      from_cache_ = true;
    } else {
      std::optional<Density2D> mu;
      const BoundaryData2D trace = [exact](const CurveSample& s) { return exact.value(s.point); };
      const BoundaryData2D flux = [exact](const CurveSample& s) {
        return exact.normal_derivative(s.point, s.normal);
      };
      if (config_.problem == Problem::laplace_int_dirichlet && solver_ == "ptr") {
        mu.emplace(solve_laplace_dirichlet_2d(curve, trace, config_.n));
      } else if (config_.problem == Problem::laplace_ext_neumann && solver_ == "ptr") {
        mu.emplace(solve_laplace_neumann_2d(curve, flux, config_.n));
      } else if (wave && solver_ == "kress") {
        mu.emplace(solve_helmholtz_kress_2d(curve, config_.k, trace, config_.n));
      } else if (wave && solver_ == "bie-pws") {
        mu.emplace(solve_helmholtz_pws_2d(curve, config_.k, trace, config_.n));
      } else {
        throw UsageError("solver '" + solver_ + "' does not apply to " + std::string(to_string(config_.problem)));
      }
      eval2_.emplace(std::move(*mu), config_.k);
    }
  } else {
    const auto& surface = std::get<Surface3D>(boundary);
    const Vec3 x0 = to_vec<3>(config_.x0, "x0");
    if (((x0 - surface.center()).norm() < surface.radius()) != interior_x0) {
      throw UsageError(interior_x0 ? "x0 must lie inside the sphere" : "x0 must lie outside the sphere");
    }
    auto exact = exact_solution<3>(config_.problem, x0, config_.k);
    exact_ = exact;
    if (const auto cached = load_cached(); !cached.is_null()) {
      eval3_.emplace(density_sh_from_json(cached, surface), config_.k);
      from_cache_ = true;
    } else {
      Problem3D p3 = Problem3D::laplace_dirichlet;
      BoundaryData3D data = [exact](const SurfaceSample& s) { return exact.value(s.point); };
      if (config_.problem == Problem::laplace_ext_neumann) {
        p3 = Problem3D::laplace_neumann;
        data = [exact](const SurfaceSample& s) { return exact.normal_derivative(s.point, s.normal); };
      } else if (wave) {
        p3 = solver_ == "bie-pws" ? Problem3D::helmholtz_pws : Problem3D::helmholtz;
      }
      if (solver_ != "galerkin" && !(wave && solver_ == "bie-pws")) {
        throw UsageError("solver '" + solver_ + "' does not apply to 3D problems");
      }
      eval3_.emplace(solve_galerkin_3d(surface, p3, data, config_.k, config_.n), config_.k);
    }
  }
  solve_seconds_ = seconds_since(t0);
  if (!from_cache_ && !config_.density_cache.empty()) {
    write_json_file(config_.density_cache,
                    dim_ == 2 ? density_to_json(eval2_->density(), key()) : density_to_json(eval3_->density(), key()));
  }
}

Side Experiment::side() const {
  return config_.problem == Problem::laplace_int_dirichlet ? Side::interior : Side::exterior;
}

PotentialFamily Experiment::family() const {
  switch (config_.problem) {
    case Problem::laplace_int_dirichlet: return PotentialFamily::laplace_dlp;
    case Problem::laplace_ext_neumann: return PotentialFamily::laplace_slp;
    case Problem::helmholtz_scatter: return PotentialFamily::helmholtz_combined;
  }
  return PotentialFamily::laplace_dlp;
}

const SolveReport& Experiment::report() const {
  return dim_ == 2 ? eval2_->density().report() : eval3_->density().report();
}

const Density2D& Experiment::density2d() const {
  if (!eval2_) throw UsageError("experiment is three-dimensional");
  return eval2_->density();
}

const DensitySH& Experiment::density_sh() const {
  if (!eval3_) throw UsageError("experiment is two-dimensional");
  return eval3_->density();
}

DensityKey Experiment::key() const {
  return {std::string(to_string(config_.problem)), config_.shape, solver_, config_.n, config_.k, config_.x0};
}

Experiment::PointResult Experiment::finish(PointResult r, const std::vector<cplx>& values) const {
  r.values = values;
  if (dim_ == 2) {
    r.exact = std::get<InteriorSolution<2>>(exact_).value(to_vec<2>(r.x, "x"));
  } else {
    r.exact = std::get<InteriorSolution<3>>(exact_).value(to_vec<3>(r.x, "x"));
  }
  return r;
}

Experiment::PointResult Experiment::evaluate(std::span<const double> x) const {
  std::vector<cplx> values;
  PointResult r;
  r.x.assign(x.begin(), x.end());
  if (dim_ == 2) {
    const auto where = eval2_->locate(to_vec<2>(r.x, "x"));
    for (auto m : modes_) values.push_back(eval2_->eval({family(), m, {}}, where));
    r.xstar = to_std<2>(where.target.xstar.point);
    r.side = where.target.side;
    r.ell = where.target.ell;
  } else {
    const auto target = eval3_->locate(to_vec<3>(r.x, "x"));
    for (auto m : modes_) values.push_back(eval3_->eval({family(), m, {}}, target));
    r.xstar = to_std<3>(target.xstar.point);
    r.side = target.side;
    r.ell = target.ell;
  }
  return finish(std::move(r), values);
}

Experiment::PointResult Experiment::evaluate_along_normal(double tstar, double ell) const {
  if (dim_ != 2) throw UsageError("parameter scans are two-dimensional");
  const auto smp = eval2_->density().curve().sample(tstar);
  const Vec2 x = offset_point(smp, ell, side());
  const auto where = eval2_->at_parameter(tstar, x);
  std::vector<cplx> values;
  for (auto m : modes_) values.push_back(eval2_->eval({family(), m, {}}, where));
  PointResult r{to_std<2>(x), to_std<2>(smp.point), side(), ell, {}, {}};
  return finish(std::move(r), values);
}

Experiment::PointResult Experiment::evaluate_along_normal(const Vec3& anchor, double ell) const {
  if (dim_ != 3) throw UsageError("point scans are three-dimensional");
  const auto& surface = eval3_->density().surface();
  const auto [s, t] = spherical_angles(anchor - surface.center());
  const auto smp = surface.sample(s, t);
  const Vec3 x = offset_point(smp, ell, side());
  const Target<3> target{x, smp.anchor(), side(), ell};
  std::vector<cplx> values;
  for (auto m : modes_) values.push_back(eval3_->eval({family(), m, {}}, target));
  PointResult r{to_std<3>(x), to_std<3>(smp.point), side(), ell, {}, {}};
  return finish(std::move(r), values);
}

Experiment Experiment::with_k(double k) const {
  auto c = config_;
  c.k = k;
  c.density_cache.clear();
  return Experiment(std::move(c));
}

namespace {

std::vector<std::string> extra_header(const Experiment& e) {
  std::vector<std::string> h;
  const char* axes[] = {"1", "2", "3"};
  for (int i = 0; i < e.dim(); ++i) h.push_back(std::string("xstar") + axes[i]);
  for (const auto& m : e.config().methods) {
    h.push_back("re_" + m);
    h.push_back("im_" + m);
  }
  h.push_back("exact_re");
  h.push_back("exact_im");
  return h;
}

void append_extra(std::vector<std::string>& row, const Experiment::PointResult& r) {
  for (double v : r.xstar) row.push_back(format_number(v));
  for (const auto& v : r.values) {
    row.push_back(format_number(v.real()));
    row.push_back(format_number(v.imag()));
  }
  row.push_back(format_number(r.exact.real()));
  row.push_back(format_number(r.exact.imag()));
}

void append_errors(std::vector<std::string>& row, const Experiment::PointResult& r) {
  for (const auto& v : r.values) row.push_back(format_number(std::abs(v - r.exact)));
}

nlohmann::json base_meta(const Experiment& e, const char* kind) {
  return {{"kind", kind},
          {"config", config_to_json(e.config())},
          {"dim", e.dim()},
          {"solver", e.solver()},
          {"solve_seconds", e.solve_seconds()},
          {"density_from_cache", e.loaded_from_cache()},
          {"solve_report", report_json(e.report())},
          {"seed", e.config().seed}};
}

}  // namespace

Table run_normal_scan(const ExperimentConfig& config, RunMeta* meta) {
  Experiment e(config);
  auto ells = config.scan.ell.empty() ? log_space(1e-6, 1.0, 40) : config.scan.ell;
  for (double l : ells) {
    if (!(l > 0.0)) throw DomainError("scan distances must be positive");
  }
  std::sort(ells.begin(), ells.end());

  Table t;
  t.header = {"ell"};
  for (const auto& m : config.methods) t.header.push_back("err_" + m);
  const char* axes[] = {"1", "2", "3"};
  for (int i = 0; i < e.dim(); ++i) t.header.push_back(std::string("x") + axes[i]);
  for (auto& h : extra_header(e)) t.header.push_back(h);

  const auto t0 = Clock::now();
  for (double l : ells) {
    const auto r = e.dim() == 2
                       ? e.evaluate_along_normal(config.scan.tstar.value_or(0.0), l)
                       : e.evaluate_along_normal(to_vec<3>(config.scan.point.value_or(std::vector<double>{0, 0, 1}),
                                                           "scan.point"),
                                                 l);
    std::vector<std::string> row{format_number(l)};
    append_errors(row, r);
    for (double v : r.x) row.push_back(format_number(v));
    append_extra(row, r);
    t.rows.push_back(std::move(row));
  }
  if (meta) {
    meta->json = base_meta(e, "scan");
    meta->json["eval_seconds"] = seconds_since(t0);
  }
  return t;
}

Table run_error_field(const ExperimentConfig& config, RunMeta* meta) {
  if (config.grid.resolution < 1) throw DomainError("field grid needs a positive resolution");
  Experiment e(config);
  const int res = config.grid.resolution;
  const double grow = 1.0 + config.grid.inflate;

  Table t;
  const char* axes[] = {"1", "2", "3"};
  for (int i = 0; i < e.dim(); ++i) t.header.push_back(std::string("x") + axes[i]);
  t.header.push_back("side");
  t.header.push_back("ell");
  for (const auto& m : config.methods) t.header.push_back("err_" + m);
  for (auto& h : extra_header(e)) t.header.push_back(h);

  // Two in-plane axes: (x1, x2) in 2D, (x1, x3) through the center in 3D.
  Eigen::Vector2d lo, hi;
  double diameter = 0.0;
  Vec3 center = Vec3::Zero();
  if (e.dim() == 2) {
    const auto& curve = e.density2d().curve();
    const auto [a, b] = curve.bounding_box();
    const Vec2 mid = 0.5 * (a + b), half = 0.5 * (b - a) * grow;
    lo = mid - half;
    hi = mid + half;
    diameter = curve.diameter();
  } else {
    const auto& s = e.density_sh().surface();
    center = s.center();
    lo = Eigen::Vector2d(center.x(), center.z()) - Eigen::Vector2d::Constant(s.radius() * grow);
    hi = Eigen::Vector2d(center.x(), center.z()) + Eigen::Vector2d::Constant(s.radius() * grow);
    diameter = 2.0 * s.radius();
  }

  int skipped_boundary = 0, masked = 0;
  const auto t0 = Clock::now();
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      const double a = res == 1 ? 0.5 * (lo.x() + hi.x()) : lo.x() + (hi.x() - lo.x()) * i / (res - 1);
      const double b = res == 1 ? 0.5 * (lo.y() + hi.y()) : lo.y() + (hi.y() - lo.y()) * j / (res - 1);
      std::vector<double> x = e.dim() == 2 ? std::vector<double>{a, b} : std::vector<double>{a, center.y(), b};
      Experiment::PointResult r;
      try {
        r = e.evaluate(x);
      } catch (const OnBoundaryError&) {
        ++skipped_boundary;
        continue;
      }
      if (r.side != e.side()) {
        ++masked;
        continue;
      }
      if (r.ell < 1e-6 * diameter) {
        ++skipped_boundary;
        continue;
      }
      std::vector<std::string> row;
      for (double v : r.x) row.push_back(format_number(v));
      row.push_back(std::string(to_string(r.side)));
      row.push_back(format_number(r.ell));
      append_errors(row, r);
      append_extra(row, r);
      t.rows.push_back(std::move(row));
    }
  }
  if (meta) {
    meta->json = base_meta(e, "field");
    meta->json["eval_seconds"] = seconds_since(t0);
    meta->json["skipped_near_boundary"] = skipped_boundary;
    meta->json["masked_other_side"] = masked;
  }
  return t;
}

Table run_k_sweep(const ExperimentConfig& config, RunMeta* meta) {
  const bool three_d = std::holds_alternative<Surface3D>(parse_shape(config.shape));
  auto ks = config.ksweep.ks;
  if (ks.empty()) ks = three_d ? std::vector<double>{1, 2, 5, 8} : std::vector<double>{5, 10, 15, 20, 25, 30};
  if (config.ksweep.anchors < 1 || config.ksweep.ell.empty()) throw UsageError("ksweep needs anchors and distances");

  Table t;
  t.header = {"k"};
  for (const auto& m : config.methods) t.header.push_back("maxerr_" + m);
  t.header.push_back("points");
  t.header.push_back("solve_seconds");

  nlohmann::json runs = nlohmann::json::array();
  for (double k : ks) {
    auto c = config;
    c.k = k;
    c.density_cache.clear();
    Experiment e(c);
    std::vector<double> worst(config.methods.size(), 0.0);
    int points = 0;
    const int a = config.ksweep.anchors;
    const auto dirs = sphere_directions(a);
    for (int i = 0; i < a; ++i) {
      for (double l : config.ksweep.ell) {
        const auto r = three_d ? e.evaluate_along_normal(Vec3(e.density_sh().surface().center() + dirs[i]), l)
                               : e.evaluate_along_normal(kTwoPi * (i + 0.5) / a, l);
        for (std::size_t m = 0; m < worst.size(); ++m) worst[m] = std::max(worst[m], std::abs(r.values[m] - r.exact));
        ++points;
      }
    }
    std::vector<std::string> row{format_number(k)};
    for (double w : worst) row.push_back(format_number(w));
    row.push_back(std::to_string(points));
    row.push_back(format_number(e.solve_seconds()));
    t.rows.push_back(std::move(row));
    runs.push_back({{"k", k}, {"solve_report", report_json(e.report())}});
  }
  if (meta) meta->json = {{"kind", "ksweep"}, {"config", config_to_json(config)}, {"runs", runs}};
  return t;
}

Table run_identity_table(const ExperimentConfig& config, RunMeta* meta) {
  const auto& spec = config.identity;
  if (spec.ns.empty()) throw UsageError("identity table needs a non-empty N list");
  if (spec.family != "laplace" && spec.family != "helmholtz" && spec.family != "all") {
    throw UsageError("identity family must be laplace, helmholtz or all");
  }
  const auto boundary = parse_shape(config.shape);
  Table t;
  t.header = {"case", "region", "N", "residual", "residual_zero", "residual_full"};
  const auto t0 = Clock::now();

  auto keep = [&](Family f) {
    return spec.family == "all" || (spec.family == "laplace") == (f == Family::laplace);
  };
  auto emit = [&](const std::string& label, Region region, int n, double res, double zero, double full) {
    t.rows.push_back({label, std::string(to_string(region)), std::to_string(n), format_number(res),
                      format_number(zero), format_number(full)});
  };

  // Residuals of lhs against c u(x) for c = expected, 0 and -u(x).
  auto run = [&](const auto& geom, const auto& solutions, const auto& interior, const auto& exterior,
                 const auto& on_boundary) {
    for (const auto& sol : solutions) {
      if (!keep(sol.family)) continue;
      for (Region region : {Region::interior, Region::boundary, Region::exterior}) {
        for (int n : spec.ns) {
          double res = 0.0, zero = 0.0, full = 0.0;
          auto account = [&](const auto& c) {
            const cplx lhs = identity_lhs(c, geom, n);
            const cplx u = sol.value(c.point);
            res = std::max(res, std::abs(lhs - identity_expected(c)));
            zero = std::max(zero, std::abs(lhs));
            full = std::max(full, std::abs(lhs + u));
          };
          if (region == Region::boundary) {
            for (const auto& c : on_boundary(sol)) account(c);
          } else {
            for (const auto& x : region == Region::interior ? interior : exterior) {
              account(std::remove_cvref_t<decltype(on_boundary(sol).front())>{sol, region, x, 0.0});
            }
          }
          emit(sol.label, region, n, res, zero, full);
        }
      }
    }
  };

  if (const auto* curve = std::get_if<Curve2D>(&boundary)) {
    const auto in = identity_points(*curve, Region::interior, spec.points, spec.min_distance, config.seed);
    const auto out = identity_points(*curve, Region::exterior, spec.points, spec.min_distance, config.seed + 1);
    auto on = [&](const InteriorSolution<2>& sol) {
      std::vector<IdentityCase<2>> cases;
      for (int j = 0; j < 8; ++j) {
        const double tb = kTwoPi * (j + 0.3) / 8.0;
        cases.push_back({sol, Region::boundary, curve->point(tb), tb});
      }
      return cases;
    };
    run(*curve, builtin_solutions(*curve, spec.k), in, out, on);
  } else {
    const auto& surface = std::get<Surface3D>(boundary);
    const auto in = identity_points(surface, Region::interior, spec.points, spec.min_distance, config.seed);
    const auto out = identity_points(surface, Region::exterior, spec.points, spec.min_distance, config.seed + 1);
    auto on = [&](const InteriorSolution<3>& sol) {
      std::vector<IdentityCase<3>> cases;
      for (const auto& d : sphere_directions(8)) {
        cases.push_back({sol, Region::boundary, Vec3(surface.center() + surface.radius() * d), 0.0});
      }
      return cases;
    };
    run(surface, builtin_solutions(surface, spec.k), in, out, on);
  }
  if (meta) {
    meta->json = {{"kind", "identity"},
                  {"config", config_to_json(config)},
                  {"seed", config.seed},
                  {"eval_seconds", seconds_since(t0)}};
  }
  return t;
}

void write_outputs(const std::filesystem::path& out, const Table& table, const RunMeta& meta) {
  write_csv(out, table);
  write_json_file(out.string() + ".meta.json", meta.json);
}

}  // namespace lpsub
