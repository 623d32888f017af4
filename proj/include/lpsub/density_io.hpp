#pragma once

// JSON sidecars for solved densities, so experiment runs can reuse a solve.
// Values are written with round-trip precision; reading back reproduces the
// nodal values (2D) or coefficients (3D) bit for bit.

#include "lpsub/bie.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace lpsub {

/// Identifies the solve that produced a density; a cache hit requires equality.
struct DensityKey {
  std::string problem;
  std::string shape;
  std::string solver;
  int n = 0;
  double k = 0.0;
  std::vector<double> x0;

  bool operator==(const DensityKey&) const = default;
};

nlohmann::json density_to_json(const Density2D& density, const DensityKey& key);
nlohmann::json density_to_json(const DensitySH& density, const DensityKey& key);

DensityKey density_key_from_json(const nlohmann::json& j);
Density2D density2d_from_json(const nlohmann::json& j, const Curve2D& curve);
DensitySH density_sh_from_json(const nlohmann::json& j, const Surface3D& surface);

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
/// Returns a null json value when the file does not exist.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace lpsub
