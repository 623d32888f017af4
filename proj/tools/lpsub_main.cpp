// lpsub: run layer-potential close-evaluation experiments and write CSV tables.
//
//   lpsub identity|solve|field|scan|ksweep --config <file.json>
//         [--shape S] [--N n] [--k k] [--x0 a,b[,c]] [--methods m1,m2] [--out path]

#include "lpsub/errors.hpp"
#include "lpsub/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct Overrides {
  std::string config;
  std::string shape;
  std::optional<int> n;
  std::optional<double> k;
  std::vector<double> x0;
  std::vector<std::string> methods;
  std::string out;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON experiment configuration")->check(CLI::ExistingFile);
  cmd->add_option("--shape", o.shape, "circle:r | kite | star | sphere:r | fourier:[a0,...;b1,...]");
  cmd->add_option("--N", o.n, "quadrature points (2D) or Galerkin order (3D)");
  cmd->add_option("--k", o.k, "wavenumber");
  cmd->add_option("--x0", o.x0, "exact-solution source point")->delimiter(',');
  cmd->add_option("--methods", o.methods, "evaluation methods: ptr, gauss-sub, dsl, dsg, pws")->delimiter(',');
  cmd->add_option("--out", o.out, "output path");
}

lpsub::ExperimentConfig resolve(const Overrides& o) {
  lpsub::ExperimentConfig c;
  if (!o.config.empty()) c = lpsub::config_from_json(lpsub::read_json_file(o.config));
  if (!o.shape.empty()) c.shape = o.shape;
  if (o.n) c.n = *o.n;
  if (o.k) c.k = *o.k;
  if (!o.x0.empty()) c.x0 = o.x0;
  if (!o.methods.empty()) c.methods = o.methods;
  if (!o.out.empty()) c.out = o.out;
  if (c.out.empty()) throw lpsub::UsageError("no output path (--out or \"out\" in the config)");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Layer potential close-evaluation experiments"};
  app.require_subcommand(1);
  Overrides o;
  auto* identity = app.add_subcommand("identity", "layer potential identity residual table");
  auto* solve = app.add_subcommand("solve", "solve the boundary integral equation and store the density");
  auto* field = app.add_subcommand("field", "error field over a grid");
  auto* scan = app.add_subcommand("scan", "errors along the normal at one boundary point");
  auto* ksweep = app.add_subcommand("ksweep", "near-boundary maximum error against the wavenumber");
  for (auto* cmd : {identity, solve, field, scan, ksweep}) add_common(cmd, o);

  CLI11_PARSE(app, argc, argv);

  try {
    const auto config = resolve(o);
    lpsub::RunMeta meta;
    if (solve->parsed()) {
      lpsub::Experiment e(config);
      const auto j = e.dim() == 2 ? lpsub::density_to_json(e.density2d(), e.key())
                                  : lpsub::density_to_json(e.density_sh(), e.key());
      lpsub::write_json_file(config.out, j);
      std::cout << "density written to " << config.out << " (solve " << e.solve_seconds() << " s)\n";
      return 0;
    }
    lpsub::Table table;
    if (identity->parsed()) table = lpsub::run_identity_table(config, &meta);
    if (field->parsed()) table = lpsub::run_error_field(config, &meta);
    if (scan->parsed()) table = lpsub::run_normal_scan(config, &meta);
    if (ksweep->parsed()) table = lpsub::run_k_sweep(config, &meta);
    lpsub::write_outputs(config.out, table, meta);
    std::cout << table.rows.size() << " rows written to " << config.out << '\n';
  } catch (const lpsub::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const lpsub::SolverError& e) {
    std::cerr << "solver error: " << e.what() << " (rcond " << e.rcond() << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
