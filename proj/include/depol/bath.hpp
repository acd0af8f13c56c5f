#ifndef DEPOL_BATH_HPP
#define DEPOL_BATH_HPP

#include <cstdint>
#include <vector>

#include "depol/propagator.hpp"

namespace depol {

/// One dispersively coupled two-level atom of the random-phase medium.
struct AtomSpec {
  double g_abs = 0.0;       // |g_lambda|
  double delta = 0.0;       // detuning omega_lambda - omega
  double gamma_decay = 0.0; // atomic decay rate
  double n_bar = 0.0;       // thermal occupation of the atomic reservoir
};

/// Single-mode field basis tensored with n two-level atoms.
/// Composite index = field_index * 2^n_atoms + bits, where bit
/// (n_atoms-1-lambda) of `bits` is 1 when atom lambda is excited, so the
/// composite operators are kron(field, atom_0, atom_1, ...).
struct CompositeBasis {
  CompositeBasis(const FockBasis& field_basis, int atoms);

  const FockBasis* field = nullptr;
  int n_atoms = 0;

  std::size_t atom_dim() const { return std::size_t(1) << n_atoms; }
  std::size_t dim() const { return field->dim() * atom_dim(); }
};

/// Operator acting on atom lambda only, lifted to the atomic product space.
Matrix atomic_op(const CompositeBasis& composite, int atom,
                 const Eigen::Matrix2cd& single);

/// Lift a field (atomic) operator to the composite space.
Matrix lift_field(const CompositeBasis& composite, const Matrix& field_op);
Matrix lift_atoms(const CompositeBasis& composite, const Matrix& atoms_op);

/// Partial trace over the atoms.
Matrix trace_out_atoms(const CompositeBasis& composite, const Matrix& rho_sys);

/// Conserved excitation number sum_s a_s^dag a_s + sum_lambda sigma_z/2.
Matrix excitation_number(const CompositeBasis& composite);

/// Dispersive-regime quantities of one atom for a fixed coupling phase:
/// the shift delta = |g|^2/Delta, the field operator
/// Jcal = 2|g|^2 (N + J+ e^{i phi} + J- e^{-i phi}) and the operator-valued
/// frequency Omega = Delta + delta + Jcal/Delta.
struct DerivedFrequencies {
  double delta_shift = 0.0;
  Matrix j_coupling;  // Jcal on the field space
  Matrix omega_op;    // Omega on the field space
};

DerivedFrequencies derived_frequencies(const AtomSpec& atom, double phase,
                                       const PolarizationOperators& field_ops);

/// H = H_field + H_at + V with couplings g_{lambda,+-} = |g| e^{+- i phi/2}.
Matrix build_full_hamiltonian(const std::vector<AtomSpec>& atoms,
                              const CompositeBasis& composite,
                              const std::vector<double>& phases,
                              double omega = 0.0);

/// Dispersive effective Hamiltonian omega Ncal + sum ½ Omega_lambda sigma_z;
/// the cross-atom dipole term is included only when requested.
Matrix build_effective_hamiltonian(const std::vector<AtomSpec>& atoms,
                                   const CompositeBasis& composite,
                                   const std::vector<double>& phases,
                                   double omega = 0.0,
                                   bool cross_atom_term = false);

enum class HamiltonianChoice { Full, Effective };

/// Dissipators of the thermal atomic reservoirs.
GeneratorTerms composite_terms(const std::vector<AtomSpec>& atoms,
                               const CompositeBasis& composite,
                               const Matrix& hamiltonian);

/// -i[H, rho] + sum (gamma/2){(n_bar+1) L[sigma-] + n_bar L[sigma+]} rho
Matrix rhs_full(const std::vector<AtomSpec>& atoms,
                const CompositeBasis& composite, const Matrix& rho_sys,
                const Matrix& hamiltonian);

/// gamma = 4 sum_lambda |g|^4 / (gamma_lambda Delta^2 n_bar)
double gamma_effective(const std::vector<AtomSpec>& atoms);

struct EnsembleOptions {
  int n_samples = 256;
  std::uint64_t seed = 0;
  HamiltonianChoice which = HamiltonianChoice::Full;
  bool cross_atom_term = false;
  double omega = 0.0;
  int n_threads = 0;  // 0 = runtime default
};

/// Parameter-regime checks surfaced as warnings (dispersive coupling,
/// high temperature, timescale separation).
std::vector<std::string> regime_warnings(const std::vector<AtomSpec>& atoms,
                                         const FockBasis& field_basis);

/// Reduced field states at the grid sample times for one fixed phase draw,
/// starting from rho_field0 tensored with maximally mixed atoms.
std::vector<Matrix> simulate_fixed_phases(const std::vector<AtomSpec>& atoms,
                                          const CompositeBasis& composite,
                                          const Matrix& rho_field0,
                                          const TimeGrid& grid,
                                          const std::vector<double>& phases,
                                          HamiltonianChoice which,
                                          bool cross_atom_term = false,
                                          double omega = 0.0);

/// Monte-Carlo average over uniformly random coupling phases.  Sample
/// substreams are derived from (seed, sample index) and the reduction is
/// a deterministic pairwise sum, so the result is identical for any
/// thread count.
Trajectory run_phase_ensemble(const std::vector<AtomSpec>& atoms,
                              const CompositeBasis& composite,
                              const Matrix& rho_field0, const TimeGrid& grid,
                              const EnsembleOptions& options);

/// Deviation of an averaged microscopic trajectory from the effective
/// depolarizing equation with gamma = gamma_effective(atoms).
struct EffectiveComparison {
  double max_dev_sx = 0.0, max_dev_sy = 0.0, max_dev_sz = 0.0, max_dev_p = 0.0;
  double max_dev_over_se = 0.0;  // worst deviation / Monte-Carlo std error
  double gamma = 0.0;
  Trajectory effective;
  std::vector<std::string> warnings;
};

EffectiveComparison compare_to_effective(const Trajectory& averaged,
                                         const std::vector<AtomSpec>& atoms,
                                         const FockBasis& field_basis,
                                         const Matrix& rho_field0,
                                         const TimeGrid& grid);

}  // namespace depol

#endif
