#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aperiodic/config.hpp"
#include "aperiodic/diffraction.hpp"
#include "aperiodic/torus.hpp"

namespace aperiodic {

inline constexpr const char* kToolVersion = "0.1.0";

struct CriterionResult {
  std::string name;
  bool pass = false;           // the raw check outcome
  bool expected_fail = false;  // scenario asserts this criterion must fail
  std::string detail;

  // A criterion is OK when it passes, or fails while marked expected-fail.
  bool ok() const { return expected_fail ? !pass : pass; }
};

struct RunManifest {
  std::string config_hash;
  std::string version = kToolVersion;
  std::map<std::string, std::string> artifacts;  // name -> path
  std::vector<CriterionResult> criteria;

  bool all_ok() const;
  std::string to_json() const;
};

// Materialized scenario: validated scheme, window, resolved (s, t). Patches
// are cached per radius so the verbs can share enumeration work.
class ScenarioRunner {
 public:
  explicit ScenarioRunner(ScenarioConfig cfg);

  const ScenarioConfig& config() const { return cfg_; }
  const Cps& cps() const { return cps_; }
  const Window& window() const { return window_; }
  const Vec& s() const { return s_; }
  const Vec& t() const { return t_; }

  const Patch& patch_at(double radius);
  Box centered_region(double radius) const;

  // CLI verbs; every verb appends the files it wrote to the manifest.
  void cmd_generate(const std::string& out_dir, RunManifest& manifest);
  void cmd_autocorr(const std::string& out_dir, RunManifest& manifest);
  void cmd_diffract(const std::string& out_dir, RunManifest& manifest);
  void cmd_fbcoeff(const std::string& out_dir, RunManifest& manifest);
  void cmd_density_scan(const std::string& out_dir, RunManifest& manifest);
  void cmd_torus_recover(const std::string& out_dir, RunManifest& manifest);
  void cmd_borel_demo(const std::string& out_dir, RunManifest& manifest);

  // Full verification pipeline: density law, autocorrelation, diffraction +
  // Consistent Phase Property, translation identities, decoration
  // neutrality, torus round-trip, genericity probe, enumeration oracles, and
  // (for Borel scenarios) the counterexample demonstration.
  RunManifest run_verify(const std::string& out_dir);

  // Individual criteria (exposed for the acceptance suite).
  CriterionResult criterion_density(const std::string& out_dir, RunManifest* manifest);
  CriterionResult criterion_autocorrelation(const std::string& out_dir, RunManifest* manifest);
  CriterionResult criterion_diffraction_cpp(const std::string& out_dir, RunManifest* manifest);
  CriterionResult criterion_translation();
  CriterionResult criterion_borel(const std::string& out_dir, RunManifest* manifest);
  CriterionResult criterion_neutrality();
  CriterionResult criterion_torus();
  CriterionResult criterion_genericity();
  CriterionResult criterion_oracles();

 private:
  ScenarioConfig cfg_;
  Cps cps_;
  Window window_;                 // window used for cutting
  Window prediction_window_;      // L^1-class window backing the predictions
  std::optional<BorelCounterexample> borel_;
  Vec s_, t_;
  std::map<double, Patch> patches_;

  std::vector<Vec> nondual_frequencies() const;
  std::vector<Peak> strongest_peaks(const DiffractionSpectrum& spectrum, int count) const;
};

// Uniform draw from the fundamental domain of the torus (basis * [0,1)^{d+m}),
// split into physical and internal parts.
std::pair<Vec, Vec> draw_generic_parameters(const Cps& cps, std::uint64_t seed);

}  // namespace aperiodic
