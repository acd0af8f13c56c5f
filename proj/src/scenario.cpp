#include "depol/scenario.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace depol {

namespace {

using nlohmann::json;

const std::set<std::string> kAllowedKeys = {
    "schema_version", "model",        "m",
    "N_max",          "gamma",        "gamma_plus",
    "gamma_minus",    "gamma_j",      "omega",
    "omega_j",        "include_unitary", "state",
    "t0",             "t1",           "n_steps",
    "sample_every",   "atoms",        "n_samples",
    "seed",           "which_hamiltonian", "cross_atom_term",
    "save_rho"};

const std::set<std::string> kAtomKeys = {"g_abs", "delta", "gamma_decay",
                                         "n_bar"};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config error at '" + path + "': " + what);
}

double require_number(const json& j, const std::string& key) {
  if (!j.contains(key)) fail(key, "missing required key");
  if (!j.at(key).is_number()) fail(key, "expected a number");
  return j.at(key).get<double>();
}

ScenarioModel parse_model(const std::string& name) {
  if (name == "damping") return ScenarioModel::Damping;
  if (name == "dephasing") return ScenarioModel::Dephasing;
  if (name == "depolarizing") return ScenarioModel::Depolarizing;
  if (name == "multimode") return ScenarioModel::Multimode;
  if (name == "microscopic") return ScenarioModel::Microscopic;
  fail("model", "unknown model '" + name + "'");
}

Matrix parse_state_matrix(const json& j) {
  if (!j.is_array() || j.empty()) fail("state", "expected preset name or matrix");
  const std::size_t d = j.size();
  Matrix rho(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    const json& row = j.at(r);
    if (!row.is_array() || row.size() != d)
      fail("state[" + std::to_string(r) + "]", "matrix must be square");
    for (std::size_t c = 0; c < d; ++c) {
      const json& cell = row.at(c);
      if (cell.is_number()) {
        rho(r, c) = cell.get<double>();
      } else if (cell.is_array() && cell.size() == 2) {
        rho(r, c) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
      } else {
        fail("state[" + std::to_string(r) + "][" + std::to_string(c) + "]",
             "expected number or [re, im] pair");
      }
    }
  }
  return rho;
}

void validate_explicit_state(const Matrix& rho) {
  StateCheck c = check_state(rho);
  std::ostringstream msg;
  if (c.trace_error > 1e-9) {
    msg << "state trace deviates from 1 by " << c.trace_error;
    fail("state", msg.str());
  }
  if (c.hermiticity_error > 1e-10) {
    msg << "state is non-Hermitian by " << c.hermiticity_error;
    fail("state", msg.str());
  }
  if (c.min_eigenvalue < -1e-8) {
    msg << "state has negative eigenvalue " << c.min_eigenvalue;
    fail("state", msg.str());
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const std::string& path, const Trajectory& traj, int n_max,
               bool with_stderr) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "t,s_x,s_y,s_z,P,purity,trace,min_eig";
  for (int n = 0; n <= n_max; ++n) out << ",block_w_" << n;
  if (with_stderr) out << ",stderr_s_x,stderr_s_y,stderr_s_z,stderr_P";
  out << "\n";
  for (const ObsRecord& r : traj.records) {
    out << fmt(r.t) << ',' << fmt(r.sx) << ',' << fmt(r.sy) << ',' << fmt(r.sz)
        << ',' << fmt(r.p) << ',' << fmt(r.purity) << ',' << fmt(r.trace)
        << ',' << fmt(r.min_eig);
    for (double w : r.block_weights) out << ',' << fmt(w);
    if (with_stderr)
      out << ',' << fmt(r.se_sx) << ',' << fmt(r.se_sy) << ',' << fmt(r.se_sz)
          << ',' << fmt(r.se_p);
    out << "\n";
  }
}

json rho_to_json(const Matrix& rho) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < rho.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < rho.cols(); ++c)
      row.push_back({rho(r, c).real(), rho(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

const std::vector<PresetInfo>& preset_list() {
  static const std::vector<PresetInfo> presets = {
      {"vacuum", 0, "vacuum state |0...0>"},
      {"plus", 1, "one photon, + circular polarization"},
      {"minus", 1, "one photon, - circular polarization"},
      {"x_plus", 1, "one photon, (|+> + |->)/sqrt(2)"},
      {"product_pp", 2, "one + photon in each of two modes"},
      {"bell_plus", 2, "(|+>|-> + |->|+>)/sqrt(2) triplet"},
      {"bell_minus", 2, "(|+>|-> - |->|+>)/sqrt(2) singlet"},
      {"singlet", 2, "alias of bell_minus"},
  };
  return presets;
}

ScenarioConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  for (const auto& [key, _] : j.items())
    if (!kAllowedKeys.count(key)) fail(key, "unknown key");

  ScenarioConfig cfg;
  cfg.schema_version = j.value("schema_version", 1);
  if (cfg.schema_version != 1)
    fail("schema_version", "unsupported version " +
                               std::to_string(cfg.schema_version));

  if (!j.contains("model") || !j.at("model").is_string())
    fail("model", "missing or non-string");
  cfg.model = parse_model(j.at("model").get<std::string>());

  cfg.m = static_cast<int>(require_number(j, "m"));
  cfg.n_max = static_cast<int>(require_number(j, "N_max"));
  if (cfg.m < 1) fail("m", "need at least one mode");
  if (cfg.n_max < 0) fail("N_max", "must be nonnegative");

  switch (cfg.model) {
    case ScenarioModel::Damping:
    case ScenarioModel::Dephasing:
      cfg.gamma_plus = require_number(j, "gamma_plus");
      cfg.gamma_minus = require_number(j, "gamma_minus");
      break;
    case ScenarioModel::Depolarizing:
      cfg.gamma = require_number(j, "gamma");
      break;
    case ScenarioModel::Multimode: {
      if (!j.contains("gamma_j") || !j.at("gamma_j").is_array())
        fail("gamma_j", "missing per-mode rate array");
      for (const auto& v : j.at("gamma_j")) cfg.gamma_j.push_back(v.get<double>());
      if (cfg.gamma_j.size() != static_cast<std::size_t>(cfg.m))
        fail("gamma_j", "need exactly one rate per mode");
      if (j.contains("omega_j"))
        for (const auto& v : j.at("omega_j")) cfg.omega_j.push_back(v.get<double>());
      break;
    }
    case ScenarioModel::Microscopic: {
      if (cfg.m != 1) fail("m", "the microscopic model is single-mode");
      if (!j.contains("atoms") || !j.at("atoms").is_array() || j.at("atoms").empty())
        fail("atoms", "need a nonempty atom array");
      int idx = 0;
      for (const auto& a : j.at("atoms")) {
        const std::string path = "atoms[" + std::to_string(idx) + "]";
        if (!a.is_object()) fail(path, "expected an object");
        for (const auto& [key, _] : a.items())
          if (!kAtomKeys.count(key)) fail(path + "." + key, "unknown key");
        AtomSpec atom;
        atom.g_abs = require_number(a, "g_abs");
        atom.delta = require_number(a, "delta");
        atom.gamma_decay = require_number(a, "gamma_decay");
        atom.n_bar = require_number(a, "n_bar");
        cfg.atoms.push_back(atom);
        ++idx;
      }
      cfg.n_samples = static_cast<int>(j.value("n_samples", 256.0));
      if (cfg.n_samples < 1) fail("n_samples", "must be positive");
      if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
      if (j.contains("which_hamiltonian")) {
        const std::string w = j.at("which_hamiltonian").get<std::string>();
        if (w == "full") cfg.which_hamiltonian = HamiltonianChoice::Full;
        else if (w == "effective") cfg.which_hamiltonian = HamiltonianChoice::Effective;
        else fail("which_hamiltonian", "must be 'full' or 'effective'");
      }
      cfg.cross_atom_term = j.value("cross_atom_term", false);
      break;
    }
  }

  cfg.omega = j.value("omega", 0.0);
  cfg.include_unitary = j.value("include_unitary", false);
  cfg.save_rho = j.value("save_rho", false);

  cfg.grid.t0 = j.value("t0", 0.0);
  cfg.grid.t1 = require_number(j, "t1");
  cfg.grid.n_steps = static_cast<int>(require_number(j, "n_steps"));
  cfg.grid.sample_every = static_cast<int>(j.value("sample_every", 1.0));
  try {
    cfg.grid.validate();
  } catch (const std::invalid_argument& e) {
    fail("t0/t1/n_steps/sample_every", e.what());
  }

  cfg.raw_text = text;

  if (!j.contains("state")) fail("state", "missing required key");
  const json& state = j.at("state");
  if (state.is_string()) {
    cfg.state_preset = state.get<std::string>();
    bool known = false;
    for (const PresetInfo& p : preset_list()) {
      if (p.name != cfg.state_preset) continue;
      known = true;
      if (p.required_modes != 0 && p.required_modes != cfg.m)
        fail("state", "preset '" + cfg.state_preset + "' requires m = " +
                          std::to_string(p.required_modes));
    }
    if (!known) fail("state", "unknown preset '" + cfg.state_preset + "'");
  } else {
    cfg.state_matrix = parse_state_matrix(state);
    validate_explicit_state(cfg.state_matrix);
  }
  return cfg;
}

Matrix build_initial_state(const ScenarioConfig& config, const FockBasis& basis) {
  if (config.state_preset.empty()) {
    if (static_cast<std::size_t>(config.state_matrix.rows()) != basis.dim())
      throw ConfigError("config error at 'state': explicit matrix has dimension " +
                        std::to_string(config.state_matrix.rows()) +
                        " but the basis has dimension " +
                        std::to_string(basis.dim()));
    return config.state_matrix;
  }

  const std::size_t d = basis.dim();
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
  const std::string& name = config.state_preset;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (name == "vacuum") {
    psi(basis.index(Occupation(2 * basis.modes(), 0))) = 1.0;
  } else if (name == "plus") {
    psi(basis.index({1, 0})) = 1.0;
  } else if (name == "minus") {
    psi(basis.index({0, 1})) = 1.0;
  } else if (name == "x_plus") {
    psi(basis.index({1, 0})) = inv_sqrt2;
    psi(basis.index({0, 1})) = inv_sqrt2;
  } else if (name == "product_pp") {
    psi(basis.index({1, 0, 1, 0})) = 1.0;
  } else if (name == "bell_plus") {
    psi(basis.index({1, 0, 0, 1})) = inv_sqrt2;
    psi(basis.index({0, 1, 1, 0})) = inv_sqrt2;
  } else if (name == "bell_minus" || name == "singlet") {
    psi(basis.index({1, 0, 0, 1})) = inv_sqrt2;
    psi(basis.index({0, 1, 1, 0})) = -inv_sqrt2;
  } else {
    throw ConfigError("config error at 'state': unknown preset '" + name + "'");
  }
  return psi * psi.adjoint();
}

int run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  json meta;
  meta["schema_version"] = config.schema_version;
  meta["versions"] = {{"depol", "0.1.0"},
                      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                    std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                    std::to_string(EIGEN_MINOR_VERSION)}};

  try {
    std::filesystem::create_directories(options.out_dir);
    FockBasis basis(config.m, config.n_max);
    Matrix rho0 = build_initial_state(config, basis);
    {
      StateCheck c = check_state(rho0);
      if (!c.ok(1e-9, 1e-10, -1e-8))
        throw ConfigError("config error at 'state': invalid density matrix");
    }

    const std::uint64_t seed = options.seed_override.value_or(config.seed);
    Trajectory traj;
    bool microscopic = config.model == ScenarioModel::Microscopic;
    if (microscopic) {
      CompositeBasis composite(basis, static_cast<int>(config.atoms.size()));
      EnsembleOptions opts;
      opts.n_samples = config.n_samples;
      opts.seed = seed;
      opts.which = config.which_hamiltonian;
      opts.cross_atom_term = config.cross_atom_term;
      opts.omega = config.omega;
      opts.n_threads = options.n_threads;
      traj = run_phase_ensemble(config.atoms, composite, rho0, config.grid, opts);
      meta["gamma_effective"] = gamma_effective(config.atoms);
    } else {
      ModelSpec model;
      switch (config.model) {
        case ScenarioModel::Damping: model.kind = ModelKind::Damping; break;
        case ScenarioModel::Dephasing: model.kind = ModelKind::Dephasing; break;
        case ScenarioModel::Depolarizing: model.kind = ModelKind::Depolarizing; break;
        default: model.kind = ModelKind::Multimode; break;
      }
      model.gamma = config.gamma;
      model.gamma_plus = config.gamma_plus;
      model.gamma_minus = config.gamma_minus;
      model.gamma_j = config.gamma_j;
      model.omega = config.omega;
      model.omega_j = config.omega_j.empty()
                          ? std::vector<double>(config.gamma_j.size(), 0.0)
                          : config.omega_j;
      model.include_unitary = config.include_unitary;

      ModelOperators ops = build_model_operators(basis);
      traj = evolve_rk4(rho0, model, ops, config.grid, config.save_rho);
    }

    const std::string csv_path = options.out_dir + "/timeseries.csv";
    write_csv(csv_path, traj, config.n_max, microscopic);

    meta["seed"] = seed;
    if (!config.raw_text.empty()) meta["config"] = json::parse(config.raw_text);
    meta["warnings"] = traj.warnings;
    meta["outputs"] = {{"timeseries", csv_path}};
    if (config.save_rho && !traj.snapshots.empty()) {
      const std::string rho_path = options.out_dir + "/rho_final.json";
      std::ofstream rf(rho_path, std::ios::binary);
      rf << json{{"rho", rho_to_json(traj.snapshots.back())}}.dump(2) << "\n";
      meta["outputs"]["rho_final"] = rho_path;
    }
    meta["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::ofstream mf(options.out_dir + "/run.json", std::ios::binary);
    mf << meta.dump(2) << "\n";
    return 0;
  } catch (const InvariantError& e) {
    std::fprintf(stderr, "invariant drift: %s\n", e.what());
    return 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}

}  // namespace depol
