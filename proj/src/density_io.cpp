#include "lpsub/density_io.hpp"

#include "lpsub/errors.hpp"

#include <fstream>

namespace lpsub {

namespace {

nlohmann::json key_json(const DensityKey& key) {
  return {{"problem", key.problem}, {"shape", key.shape}, {"solver", key.solver},
          {"N", key.n},             {"k", key.k},         {"x0", key.x0}};
}

nlohmann::json split(std::span<const cplx> values) {
  std::vector<double> re, im;
  re.reserve(values.size());
  im.reserve(values.size());
  for (const auto& v : values) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  return {{"re", re}, {"im", im}};
}

std::vector<cplx> join(const nlohmann::json& j) {
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != im.size()) throw UsageError("density sidecar: re/im length mismatch");
  std::vector<cplx> out(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) out[i] = {re[i], im[i]};
  return out;
}

SolveReport report_from(const nlohmann::json& j) {
  SolveReport r;
  if (j.contains("rcond")) r.rcond = j.at("rcond").get<double>();
  if (j.contains("relative_residual")) r.relative_residual = j.at("relative_residual").get<double>();
  return r;
}

}  // namespace

nlohmann::json density_to_json(const Density2D& density, const DensityKey& key) {
  auto j = key_json(key);
  j["kind"] = "density2d";
  j["values"] = split(density.values());
  j["rcond"] = density.report().rcond;
  j["relative_residual"] = density.report().relative_residual;
  return j;
}

nlohmann::json density_to_json(const DensitySH& density, const DensityKey& key) {
  auto j = key_json(key);
  j["kind"] = "density_sh";
  j["order"] = density.order();
  j["values"] = split(density.coefficients());
  j["rcond"] = density.report().rcond;
  j["relative_residual"] = density.report().relative_residual;
  return j;
}

DensityKey density_key_from_json(const nlohmann::json& j) {
  DensityKey key;
  key.problem = j.at("problem").get<std::string>();
  key.shape = j.at("shape").get<std::string>();
  key.solver = j.at("solver").get<std::string>();
  key.n = j.at("N").get<int>();
  key.k = j.at("k").get<double>();
  key.x0 = j.at("x0").get<std::vector<double>>();
  return key;
}

Density2D density2d_from_json(const nlohmann::json& j, const Curve2D& curve) {
  if (j.at("kind") != "density2d") throw UsageError("density sidecar is not a 2D density");
  return Density2D(curve, join(j.at("values")), report_from(j));
}

DensitySH density_sh_from_json(const nlohmann::json& j, const Surface3D& surface) {
  if (j.at("kind") != "density_sh") throw UsageError("density sidecar is not a spherical-harmonic density");
  return DensitySH(surface, j.at("order").get<int>(), join(j.at("values")), report_from(j));
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return nullptr;
  return nlohmann::json::parse(in);
}

}  // namespace lpsub
