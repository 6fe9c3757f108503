#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aperiodic/cps.hpp"
#include "aperiodic/modelset.hpp"
#include "aperiodic/window.hpp"

namespace aperiodic {

// Scenario description shared by every CLI verb. Parsed from JSON or from a
// TOML subset (tables, dotted table headers, scalars, nested arrays); both
// map onto the same schema, documented in the repository README.
struct ScenarioConfig {
  // cps
  int d = 1;
  int m = 1;
  Matrix basis;                 // built from rows in the file or a preset
  int witness_radius = 1000;
  std::string cps_preset;       // "fibonacci" or empty

  // window (internal space)
  std::vector<Box> geometric;
  std::vector<Box> point_free;
  std::vector<Vec> include_points;
  std::vector<Vec> exclude_points;

  // optional Borel counterexample construction
  bool borel_enabled = false;
  GammaRule gamma_rule;
  double borel_a = 1.0;
  Box borel_region;             // physical construction region

  // translation parameters: explicit (s, t) or a seeded generic draw
  std::optional<Vec> s;
  std::optional<Vec> t;
  std::uint64_t generic_seed = 0;
  bool generic_params = false;

  // averaging / diffraction
  std::vector<double> radii;    // strictly increasing
  double autocorr_max_range = 10.0;
  double k_max = 5.0;
  double diffraction_threshold = 1e-4;
  std::uint64_t enumeration_budget = Cps::kDefaultBudget;
  std::size_t peak_budget = 100000;
  int fb_peak_count = 5;        // strongest peaks compared empirically
  int nondual_count = 5;
  std::uint64_t nondual_seed = 1;

  // tolerances (pinned defaults follow the verification harness contract)
  double tol_density = 1e-2;
  double tol_autocorr = 5e-3;
  double tol_intensity = 2e-2;
  double tol_nondual = 1e-2;
  double tol_birkhoff = 2e-2;

  // torus round-trip
  int torus_draws = 20;
  std::uint64_t torus_seed = 5;
  double torus_radius = 1000.0;

  std::vector<std::string> expected_fail;  // criterion names asserted to fail
  std::string output_dir = "out";

  // canonical serialized form and its FNV-1a hash, for run manifests
  std::string canonical;
  std::string config_hash;

  Cps make_cps() const;
  Window make_window() const;
  bool expects_fail(const std::string& criterion) const;
};

// Parse from file; format chosen by extension (.json / .toml) or sniffed.
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig parse_scenario_json(const std::string& text);

// Minimal TOML-to-JSON translation covering the scenario schema.
std::string toml_to_json(const std::string& text);

std::uint64_t fnv1a_hash(const std::string& data);

}  // namespace aperiodic
