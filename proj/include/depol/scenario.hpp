#ifndef DEPOL_SCENARIO_HPP
#define DEPOL_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "depol/bath.hpp"

namespace depol {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ScenarioModel { Damping, Dephasing, Depolarizing, Multimode, Microscopic };

/// One validated simulation scenario (config schema_version 1).
struct ScenarioConfig {
  int schema_version = 1;
  ScenarioModel model = ScenarioModel::Depolarizing;
  int m = 1;
  int n_max = 1;

  double gamma = 0.0;            // depolarizing
  double gamma_plus = 0.0;       // damping / dephasing
  double gamma_minus = 0.0;
  std::vector<double> gamma_j;   // multimode
  double omega = 0.0;
  std::vector<double> omega_j;
  bool include_unitary = false;

  std::string state_preset;      // empty when an explicit matrix is given
  Matrix state_matrix;           // used when state_preset is empty

  TimeGrid grid;

  // microscopic model
  std::vector<AtomSpec> atoms;
  int n_samples = 256;
  std::uint64_t seed = 0;
  HamiltonianChoice which_hamiltonian = HamiltonianChoice::Full;
  bool cross_atom_term = false;

  bool save_rho = false;

  std::string raw_text;  // original JSON, echoed into run metadata
};

struct PresetInfo {
  std::string name;
  int required_modes;  // 0 = any
  std::string description;
};

const std::vector<PresetInfo>& preset_list();

/// Strict JSON parse: unknown keys are errors, invalid states are
/// reported with the measured violation.
ScenarioConfig parse_config_text(const std::string& text);

/// Resolve the configured initial state on the given basis.
Matrix build_initial_state(const ScenarioConfig& config, const FockBasis& basis);

struct RunOptions {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed_override;
  int n_threads = 0;
};

/// Runs the scenario and writes timeseries.csv, run.json and (optionally)
/// rho_final.json into out_dir.  Returns 0 on success, 2 on an invariant
/// drift failure, 3 on a config/state error.
int run_scenario(const ScenarioConfig& config, const RunOptions& options);

}  // namespace depol

#endif
