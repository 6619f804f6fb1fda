#pragma once

#include "aclab/approx.hpp"
#include "aclab/solver.hpp"

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <string>

namespace aclab {

/// One simulation scenario as read from a JSON run config.
struct RunConfig {
  RunParams params;
  int grid_n = 0;          // 0: derive from grid_ratio
  double grid_ratio = 4.0; // h <= eps/grid_ratio
  SolverOptions solver;
  double dt_scale = 1.0; // scales stability_dt when no explicit dt is given
  double flow_step = 1e-3;
  bool flip_phase = false; // boundary value -1, phases swapped via d0 -> -d0

  std::string velocity_kind = "zero";
  double velocity_amplitude = 0.0;
  TestField testfield;

  bool circle = true;
  Vec2 circle_center{0.5, 0.5};
  double circle_radius = 0.25;
  std::string polyline_csv;

  static RunConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Everything materialized and validated for a run.
struct RunSetup {
  Grid grid;
  RunParams params; // dt resolved to a concrete value
  StreamVelocity velocity;
  TestField phi;
  SolverOptions solver;
  double flow_step = 1e-3;
  int phase_sign = 1; // -1 when flip_phase
  ScalarField d0;
  std::shared_ptr<const InitialDistance> dist;
  Interface gamma0;
};

RunSetup make_setup(const RunConfig& cfg, const DoubleWell& well);

std::uint64_t config_hash(const nlohmann::json& j); // FNV-1a over the dump
std::string config_hash_hex(const nlohmann::json& j);
void apply_override(nlohmann::json& j, const std::string& dotted_keyval); // "a.b=3"
nlohmann::json load_json_file(const std::string& path);

Interface read_interface_csv(const std::string& path);
void write_interface_csv(const std::string& path, const Interface& iface);

} // namespace aclab
