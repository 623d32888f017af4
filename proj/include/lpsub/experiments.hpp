#pragma once

// Close-evaluation experiments: a boundary value problem with a known exact
// solution is solved once, then every requested evaluation method is compared
// against the exact solution on a grid, along a normal, or across wavenumbers.
//
// CSV contracts (contract columns first, extra columns after):
//   field     x1, x2[, x3], side, ell, err_<method>...
//   scan      ell, err_<method>...
//   ksweep    k, maxerr_<method>...
//   identity  case, region, N, residual

#include "lpsub/bie.hpp"
#include "lpsub/density_io.hpp"
#include "lpsub/identities.hpp"
#include "lpsub/potentials.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lpsub {

enum class Problem { laplace_int_dirichlet, laplace_ext_neumann, helmholtz_scatter };

std::string_view to_string(Problem problem);
Problem parse_problem(std::string_view text);

struct GridSpec {
  int resolution = 200;  // points per axis
  double inflate = 0.5;  // bounding box growth factor
};

struct ScanSpec {
  std::optional<double> tstar;             // 2D anchor parameter
  std::optional<std::vector<double>> point;  // 3D anchor (projected onto the sphere)
  std::vector<double> ell;                 // empty: 40 log-spaced values in [1e-6, 1]
};

struct KSweepSpec {
  std::vector<double> ks;
  int anchors = 16;  // boundary points in the near-boundary set
  std::vector<double> ell{1e-4, 1e-3, 1e-2, 1e-1};
};

struct IdentitySpec {
  std::string family = "all";  // laplace | helmholtz | all
  std::vector<int> ns;
  double k = 5.0;
  int points = 10;
  double min_distance = 0.3;
};

struct ExperimentConfig {
  Problem problem = Problem::laplace_ext_neumann;
  std::string shape = "kite";
  int n = 128;
  double k = 0.0;
  std::vector<double> x0{0.1, 0.4};
  std::vector<std::string> methods{"ptr"};  // column tokens; see parse_mode
  std::string solver;                       // empty: ptr (2D Laplace), kress (2D Helmholtz), galerkin (3D)
  std::string out;
  std::string density_cache;  // optional JSON sidecar path
  std::uint64_t seed = 20240917;
  GridSpec grid;
  ScanSpec scan;
  KSweepSpec ksweep;
  IdentitySpec identity;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

/// Exact solution for the problem: the dipole (x - x0)_1 / |x - x0|^2 or 1/|x - x0|
/// for Laplace, the outgoing point source G^H(x, x0) for Helmholtz.
template <int D>
InteriorSolution<D> exact_solution(Problem problem, const Vec<D>& x0, double k);

/// Rows of strings formatted with %.17g, so numbers round-trip exactly.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
};

void write_csv(const std::filesystem::path& path, const Table& table);
Table read_csv(const std::filesystem::path& path);
std::string format_number(double v);

/// Solved boundary value problem with evaluation helpers.
class Experiment {
 public:
  explicit Experiment(ExperimentConfig config);

  const ExperimentConfig& config() const { return config_; }
  int dim() const { return dim_; }
  Side side() const;
  PotentialFamily family() const;
  const std::vector<Mode>& modes() const { return modes_; }
  const std::string& solver() const { return solver_; }
  double solve_seconds() const { return solve_seconds_; }
  bool loaded_from_cache() const { return from_cache_; }
  const SolveReport& report() const;

  const Density2D& density2d() const;
  const DensitySH& density_sh() const;
  DensityKey key() const;

  struct PointResult {
    std::vector<double> x;
    std::vector<double> xstar;
    Side side = Side::exterior;
    double ell = 0.0;
    std::vector<cplx> values;  // per method
    cplx exact;
  };

  /// Evaluates every method at x with the nearest boundary point.
  PointResult evaluate(std::span<const double> x) const;
  /// 2D: along the normal at y(t); 3D: along the normal at the projection of `anchor`.
  PointResult evaluate_along_normal(double tstar, double ell) const;
  PointResult evaluate_along_normal(const Vec3& anchor, double ell) const;

  /// Re-solves with another wavenumber (k sweep), keeping everything else.
  Experiment with_k(double k) const;

 private:
  ExperimentConfig config_;
  int dim_ = 2;
  std::vector<Mode> modes_;
  std::string solver_;
  double solve_seconds_ = 0.0;
  bool from_cache_ = false;
  std::optional<Evaluator2D> eval2_;
  std::optional<Evaluator3D> eval3_;
  std::variant<InteriorSolution<2>, InteriorSolution<3>> exact_;

  PointResult finish(PointResult r, const std::vector<cplx>& values) const;
};

struct RunMeta {
  nlohmann::json json;
};

Table run_error_field(const ExperimentConfig& config, RunMeta* meta = nullptr);
Table run_normal_scan(const ExperimentConfig& config, RunMeta* meta = nullptr);
Table run_k_sweep(const ExperimentConfig& config, RunMeta* meta = nullptr);
Table run_identity_table(const ExperimentConfig& config, RunMeta* meta = nullptr);

/// Writes `<out>` and `<out>.meta.json`.
void write_outputs(const std::filesystem::path& out, const Table& table, const RunMeta& meta);

}  // namespace lpsub
