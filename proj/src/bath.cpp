#include "depol/bath.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace depol {

namespace {

// atomic single-site basis: index 0 = ground, 1 = excited
Eigen::Matrix2cd sigma_z() {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = -1.0;
  m(1, 1) = 1.0;
  return m;
}

Eigen::Matrix2cd sigma_minus() {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 1) = 1.0;
  return m;
}

template <typename T, typename Add>
T pairwise_reduce(const std::vector<T>& xs, std::size_t lo, std::size_t hi,
                  Add add) {
  if (hi - lo == 1) return xs[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return add(pairwise_reduce(xs, lo, mid, add),
             pairwise_reduce(xs, mid, hi, add));
}

}  // namespace

CompositeBasis::CompositeBasis(const FockBasis& field_basis, int atoms)
    : field(&field_basis), n_atoms(atoms) {
  if (field_basis.modes() != 1)
    throw std::invalid_argument("CompositeBasis: field must be single-mode");
  if (atoms < 1)
    throw std::invalid_argument("CompositeBasis: need at least one atom");
}

Matrix atomic_op(const CompositeBasis& composite, int atom,
                 const Eigen::Matrix2cd& single) {
  if (atom < 0 || atom >= composite.n_atoms)
    throw std::out_of_range("atomic_op: atom index out of range");
  Matrix out = Matrix::Identity(1, 1);
  for (int k = 0; k < composite.n_atoms; ++k) {
    const Matrix& factor = (k == atom)
                               ? static_cast<Matrix>(single)
                               : static_cast<Matrix>(Matrix::Identity(2, 2));
    out = Eigen::kroneckerProduct(out, factor).eval();
  }
  return out;
}

Matrix lift_field(const CompositeBasis& composite, const Matrix& field_op) {
  return Eigen::kroneckerProduct(
      field_op, Matrix::Identity(composite.atom_dim(), composite.atom_dim()));
}

Matrix lift_atoms(const CompositeBasis& composite, const Matrix& atoms_op) {
  return Eigen::kroneckerProduct(
      Matrix::Identity(composite.field->dim(), composite.field->dim()),
      atoms_op);
}

Matrix trace_out_atoms(const CompositeBasis& composite, const Matrix& rho_sys) {
  const std::size_t df = composite.field->dim();
  const std::size_t da = composite.atom_dim();
  if (static_cast<std::size_t>(rho_sys.rows()) != df * da)
    throw std::invalid_argument("trace_out_atoms: dimension mismatch");
  Matrix rho_f = Matrix::Zero(df, df);
  for (std::size_t f = 0; f < df; ++f)
    for (std::size_t g = 0; g < df; ++g)
      for (std::size_t a = 0; a < da; ++a)
        rho_f(f, g) += rho_sys(f * da + a, g * da + a);
  return rho_f;
}

Matrix excitation_number(const CompositeBasis& composite) {
  Matrix n_field = annihilation_op(*composite.field, 0, 0).data;
  n_field = (n_field.adjoint() * n_field).eval();
  Matrix am = annihilation_op(*composite.field, 0, 1).data;
  n_field += am.adjoint() * am;

  Matrix out = lift_field(composite, n_field);
  for (int k = 0; k < composite.n_atoms; ++k)
    out += 0.5 * lift_atoms(composite, atomic_op(composite, k, sigma_z()));
  return out;
}

DerivedFrequencies derived_frequencies(const AtomSpec& atom, double phase,
                                       const PolarizationOperators& field_ops) {
  if (atom.delta == 0.0)
    throw std::invalid_argument("derived_frequencies: zero detuning");
  const Complex phase_factor = std::exp(Complex(0.0, phase));
  DerivedFrequencies d;
  d.delta_shift = atom.g_abs * atom.g_abs / atom.delta;
  d.j_coupling = 2.0 * atom.g_abs * atom.g_abs *
                 (field_ops.n_total.data + phase_factor * field_ops.j_plus.data +
                  std::conj(phase_factor) * field_ops.j_minus.data);
  const std::size_t df = field_ops.basis->dim();
  d.omega_op = (atom.delta + d.delta_shift) * Matrix::Identity(df, df) +
               d.j_coupling / atom.delta;
  return d;
}

Matrix build_full_hamiltonian(const std::vector<AtomSpec>& atoms,
                              const CompositeBasis& composite,
                              const std::vector<double>& phases,
                              double omega) {
  if (atoms.size() != static_cast<std::size_t>(composite.n_atoms) ||
      phases.size() != atoms.size())
    throw std::invalid_argument("build_full_hamiltonian: atom/phase count mismatch");

  const FockBasis& field = *composite.field;
  Matrix ap = annihilation_op(field, 0, 0).data;
  Matrix am = annihilation_op(field, 0, 1).data;
  Matrix n_field = ap.adjoint() * ap + am.adjoint() * am;

  Matrix h = omega * lift_field(composite, n_field);
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const double omega_atom = omega + atoms[k].delta;
    h += 0.5 * omega_atom *
         lift_atoms(composite, atomic_op(composite, k, sigma_z()));

    // g_{lambda,+-} = |g| exp(+- i phi/2)
    const Complex gp = atoms[k].g_abs * std::exp(Complex(0.0, 0.5 * phases[k]));
    const Complex gm = atoms[k].g_abs * std::exp(Complex(0.0, -0.5 * phases[k]));
    Matrix sm = atomic_op(composite, k, sigma_minus());
    Matrix coupling =
        gp * Eigen::kroneckerProduct(Matrix(ap.adjoint()), sm).eval() +
        gm * Eigen::kroneckerProduct(Matrix(am.adjoint()), sm).eval();
    h += coupling + coupling.adjoint();
  }
  return h;
}

Matrix build_effective_hamiltonian(const std::vector<AtomSpec>& atoms,
                                   const CompositeBasis& composite,
                                   const std::vector<double>& phases,
                                   double omega, bool cross_atom_term) {
  if (atoms.size() != static_cast<std::size_t>(composite.n_atoms) ||
      phases.size() != atoms.size())
    throw std::invalid_argument("build_effective_hamiltonian: atom/phase count mismatch");

  PolarizationOperators field_ops = build_polarization_ops(*composite.field);
  Matrix h = omega * excitation_number(composite);
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    DerivedFrequencies d = derived_frequencies(atoms[k], phases[k], field_ops);
    h += 0.5 * Eigen::kroneckerProduct(
                   d.omega_op, atomic_op(composite, k, sigma_z()))
                   .eval();
  }
  if (cross_atom_term) {
    for (std::size_t k = 0; k < atoms.size(); ++k)
      for (std::size_t l = 0; l < atoms.size(); ++l) {
        if (k == l) continue;
        // sum_s g_{k s} g_{l s}^* = 2 |g_k||g_l| cos((phi_k - phi_l)/2)
        const double coupling = 2.0 * atoms[k].g_abs * atoms[l].g_abs *
                                std::cos(0.5 * (phases[k] - phases[l]));
        Matrix hop = atomic_op(composite, k, sigma_minus()).adjoint() *
                     atomic_op(composite, l, sigma_minus());
        h += 0.5 * coupling *
             (1.0 / atoms[k].delta + 1.0 / atoms[l].delta) *
             lift_atoms(composite, hop);
      }
  }
  return h;
}

GeneratorTerms composite_terms(const std::vector<AtomSpec>& atoms,
                               const CompositeBasis& composite,
                               const Matrix& hamiltonian) {
  GeneratorTerms terms;
  terms.hamiltonian = hamiltonian;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    Matrix sm = lift_atoms(composite, atomic_op(composite, k, sigma_minus()));
    terms.jumps.emplace_back(atoms[k].gamma_decay * (atoms[k].n_bar + 1.0), sm);
    terms.jumps.emplace_back(atoms[k].gamma_decay * atoms[k].n_bar,
                             Matrix(sm.adjoint()));
  }
  return terms;
}

Matrix rhs_full(const std::vector<AtomSpec>& atoms,
                const CompositeBasis& composite, const Matrix& rho_sys,
                const Matrix& hamiltonian) {
  if (rho_sys.rows() != hamiltonian.rows() ||
      static_cast<std::size_t>(rho_sys.rows()) != composite.dim())
    throw std::invalid_argument("rhs_full: shape mismatch");
  return apply_terms(composite_terms(atoms, composite, hamiltonian), rho_sys);
}

double gamma_effective(const std::vector<AtomSpec>& atoms) {
  double gamma = 0.0;
  for (const AtomSpec& a : atoms) {
    if (a.gamma_decay == 0.0 || a.delta == 0.0 || a.n_bar == 0.0)
      throw std::invalid_argument(
          "gamma_effective: gamma_lambda, Delta_lambda and n_bar must be nonzero");
    gamma += 4.0 * std::pow(a.g_abs, 4) /
             (a.gamma_decay * a.delta * a.delta * a.n_bar);
  }
  return gamma;
}

std::vector<std::string> regime_warnings(const std::vector<AtomSpec>& atoms,
                                         const FockBasis& field_basis) {
  std::vector<std::string> warnings;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const AtomSpec& a = atoms[k];
    std::ostringstream tag;
    tag << "atom " << k << ": ";
    if (a.delta == 0.0) {
      warnings.push_back(tag.str() + "zero detuning");
      continue;
    }
    const double ratio = a.g_abs / std::abs(a.delta);
    if (ratio > 0.1) {
      std::ostringstream msg;
      msg << tag.str() << "dispersive regime violated, |g|/|Delta| = " << ratio;
      warnings.push_back(msg.str());
    }
    if (a.n_bar < 10.0) {
      std::ostringstream msg;
      msg << tag.str() << "high-temperature regime questionable, n_bar = "
          << a.n_bar;
      warnings.push_back(msg.str());
    }
    // |Jcal|/Delta is at most ~ 2|g|^2 (N_max + N_max) / Delta; the phase
    // flips at ~ 2 gamma n_bar, so the narrowing ratio is gamma n_bar vs
    // half that scale (relative rate corrections are the ratio squared)
    const double j_scale = 4.0 * a.g_abs * a.g_abs *
                           std::max(1, field_basis.n_max()) / std::abs(a.delta);
    if (a.gamma_decay * a.n_bar < 2.5 * j_scale) {
      std::ostringstream msg;
      msg << tag.str() << "timescale separation weak, gamma*n_bar = "
          << a.gamma_decay * a.n_bar << " vs |Jcal|/Delta ~ " << j_scale;
      warnings.push_back(msg.str());
    }
  }
  return warnings;
}

std::vector<Matrix> simulate_fixed_phases(const std::vector<AtomSpec>& atoms,
                                          const CompositeBasis& composite,
                                          const Matrix& rho_field0,
                                          const TimeGrid& grid,
                                          const std::vector<double>& phases,
                                          HamiltonianChoice which,
                                          bool cross_atom_term, double omega) {
  Matrix h = (which == HamiltonianChoice::Full)
                 ? build_full_hamiltonian(atoms, composite, phases, omega)
                 : build_effective_hamiltonian(atoms, composite, phases, omega,
                                               cross_atom_term);
  Matrix lsup = liouvillian_from_terms(composite_terms(atoms, composite, h));
  ExactPropagator prop(lsup);

  // atoms start in the high-temperature steady state 1/2 per atom
  const std::size_t da = composite.atom_dim();
  Matrix rho_sys = Eigen::kroneckerProduct(
                       rho_field0, Matrix::Identity(da, da) / double(da))
                       .eval();

  std::vector<Matrix> reduced;
  reduced.reserve(grid.n_samples());
  for (int k = 0; k < grid.n_samples(); ++k) {
    Matrix rho_t = prop.propagate(rho_sys, grid.sample_time(k) - grid.t0);
    reduced.push_back(trace_out_atoms(composite, rho_t));
  }
  return reduced;
}

Trajectory run_phase_ensemble(const std::vector<AtomSpec>& atoms,
                              const CompositeBasis& composite,
                              const Matrix& rho_field0, const TimeGrid& grid,
                              const EnsembleOptions& options) {
  grid.validate();
  if (options.n_samples < 1)
    throw std::invalid_argument("run_phase_ensemble: need at least one sample");
  StateCheck c0 = check_state(rho_field0);
  if (!c0.ok(1e-9, 1e-10, -1e-8))
    throw std::invalid_argument("run_phase_ensemble: invalid initial field state");

  const FockBasis& field = *composite.field;
  PolarizationOperators field_ops = build_polarization_ops(field);
  const int n_times = grid.n_samples();
  const int n_samples = options.n_samples;

  std::vector<std::vector<Matrix>> states(n_samples);
  std::vector<std::vector<double>> obs_sx(n_samples), obs_sy(n_samples),
      obs_sz(n_samples), obs_p(n_samples);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) \
    num_threads(options.n_threads > 0 ? options.n_threads : omp_get_max_threads())
#endif
  for (int i = 0; i < n_samples; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                      static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> uniform(0.0,
                                                   2.0 * std::numbers::pi);
    std::vector<double> phases(atoms.size());
    for (double& p : phases) p = uniform(rng);

    states[i] = simulate_fixed_phases(atoms, composite, rho_field0, grid,
                                      phases, options.which,
                                      options.cross_atom_term, options.omega);
    for (const Matrix& rho_f : states[i]) {
      PolarizationVector s = polarization_vector(rho_f, field_ops);
      obs_sx[i].push_back(s.sx);
      obs_sy[i].push_back(s.sy);
      obs_sz[i].push_back(s.sz);
      obs_p[i].push_back(s.norm());
    }
  }

  auto add_mat = [](const Matrix& a, const Matrix& b) -> Matrix { return a + b; };
  auto add_d = [](double a, double b) { return a + b; };

  Trajectory traj;
  traj.warnings = regime_warnings(atoms, field);
  for (int k = 0; k < n_times; ++k) {
    std::vector<Matrix> slice(n_samples);
    for (int i = 0; i < n_samples; ++i) slice[i] = states[i][k];
    Matrix avg = pairwise_reduce(slice, 0, n_samples, add_mat) /
                 static_cast<double>(n_samples);

    const double t = grid.sample_time(k);
    ObsRecord rec = make_record(t, avg, field_ops, field);
    enforce_state_invariants(rec, avg);

    if (n_samples > 1) {
      auto stderr_of = [&](const std::vector<std::vector<double>>& obs) {
        std::vector<double> vals(n_samples), sq(n_samples);
        for (int i = 0; i < n_samples; ++i) {
          vals[i] = obs[i][k];
          sq[i] = obs[i][k] * obs[i][k];
        }
        const double sum = pairwise_reduce(vals, 0, n_samples, add_d);
        const double sum_sq = pairwise_reduce(sq, 0, n_samples, add_d);
        const double var =
            std::max(0.0, (sum_sq - sum * sum / n_samples) / (n_samples - 1));
        return std::sqrt(var / n_samples);
      };
      rec.se_sx = stderr_of(obs_sx);
      rec.se_sy = stderr_of(obs_sy);
      rec.se_sz = stderr_of(obs_sz);
      rec.se_p = stderr_of(obs_p);
    }

    traj.times.push_back(t);
    traj.records.push_back(std::move(rec));
    traj.snapshots.push_back(std::move(avg));
  }
  return traj;
}

EffectiveComparison compare_to_effective(const Trajectory& averaged,
                                         const std::vector<AtomSpec>& atoms,
                                         const FockBasis& field_basis,
                                         const Matrix& rho_field0,
                                         const TimeGrid& grid) {
  if (averaged.times.size() != static_cast<std::size_t>(grid.n_samples()))
    throw std::invalid_argument("compare_to_effective: grid mismatch");

  EffectiveComparison cmp;
  cmp.gamma = gamma_effective(atoms);
  cmp.warnings = regime_warnings(atoms, field_basis);

  ModelSpec model;
  model.kind = ModelKind::Depolarizing;
  model.gamma = cmp.gamma;
  ModelOperators ops = build_model_operators(field_basis);
  cmp.effective = evolve_exact(rho_field0, model, ops, grid);

  for (std::size_t k = 0; k < averaged.times.size(); ++k) {
    const ObsRecord& a = averaged.records[k];
    const ObsRecord& e = cmp.effective.records[k];
    const double dx = std::abs(a.sx - e.sx);
    const double dy = std::abs(a.sy - e.sy);
    const double dz = std::abs(a.sz - e.sz);
    const double dp = std::abs(a.p - e.p);
    cmp.max_dev_sx = std::max(cmp.max_dev_sx, dx);
    cmp.max_dev_sy = std::max(cmp.max_dev_sy, dy);
    cmp.max_dev_sz = std::max(cmp.max_dev_sz, dz);
    cmp.max_dev_p = std::max(cmp.max_dev_p, dp);
    const double se = std::max({a.se_sx, a.se_sy, a.se_sz, a.se_p, 1e-300});
    cmp.max_dev_over_se =
        std::max(cmp.max_dev_over_se, std::max({dx, dy, dz, dp}) / se);
  }
  return cmp;
}

}  // namespace depol
