// Experiment orchestration: JSON configs, one routine per experiment/mode,
// pass/fail checks against pinned tolerances, and CSV/JSON reports.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "besov/discretization.hpp"

namespace besov::harness {

using json = nlohmann::json;

struct ExperimentConfig {
  std::string experiment;  // norms, equivalence, decay, group-scaling, coorbit, frames, wavelets-verify, propwiener
  std::string mode;        // experiment-specific; empty selects the default
  int criterion = 0;       // acceptance item this config exercises (0: none)
  GridSpec grid{1, 32.0, 4096};
  ScaleLadder ladder = ScaleLadder::octaves(2.0, -6, 10, 8);
  LatticeSpec lattice;
  json params = json::object();  // experiment-specific knobs
  std::string corpus;
  std::uint64_t seed = 0;
  std::string out;
};

/// Structured errors name the offending field: "Configuration: grid.n: ...".
ExperimentConfig parse_config(const json& j);
ExperimentConfig load_config(const std::string& path);
json to_json(const ExperimentConfig& c);

const std::vector<std::string>& experiment_ids();

struct CheckLine {
  int criterion = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Table {
  std::string name;  // file stem
  std::string csv;
};

struct Report {
  ExperimentConfig config;
  json summary = json::object();
  std::vector<Table> tables;
  std::vector<CheckLine> checks;

  bool passed() const;
};

/// Runs the configured experiment. Deterministic for a fixed config.
Report run(const ExperimentConfig& config);

/// Writes summary.json (config, version, results, checks) and, for "csv",
/// the tables as <dir>/<name>.csv. "json" embeds the tables in the summary.
void write_report(const Report& r, const std::string& dir, const std::string& format = "csv");

/// "PASS  [3] cwt tight frame  (detail)"
std::string format_check(const CheckLine& c);

/// Pinned acceptance tolerances.
namespace tol {
inline constexpr double kOrthonormality = 1e-6;
inline constexpr double kHaar = 1e-8;
inline constexpr double kMoment = 1e-7;         // relative to ||psi||_1
inline constexpr double kTightFrame = 0.02;
inline constexpr double kDecaySlope = 0.1;
inline constexpr double kSpatialOrder = 6.0;
inline constexpr double kDilation = 0.03;
inline constexpr double kEquivalenceSpread = 0.10;
inline constexpr double kScalingLo = 0.98, kScalingHi = 1.02;
inline constexpr double kSequenceSpread = 0.10;
inline constexpr double kExact = 1e-12;
inline constexpr double kCoorbitSpread = 0.15;
inline constexpr double kRoundTrip = 1e-4;
inline constexpr double kParseval = 1e-4;
inline constexpr double kSubLattice = 0.005;    // integrability value under a doubled V-lattice
inline constexpr double kCalculator = 1e-12;
inline constexpr double kFeffermanStein = 3.0;  // corpus-level constant
inline constexpr double kSlack = 1e-12;         // for one-sided bounds
}  // namespace tol

}  // namespace besov::harness
