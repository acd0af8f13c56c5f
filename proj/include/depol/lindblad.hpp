#ifndef DEPOL_LINDBLAD_HPP
#define DEPOL_LINDBLAD_HPP

#include <utility>
#include <vector>

#include "depol/polarization.hpp"

namespace depol {

enum class ModelKind { Damping, Dephasing, Depolarizing, Multimode };

/// Which field-level master equation to integrate, with its rates.
/// Damping:      rho' = sum_s (gamma_s/2) L[a_s]          (single mode)
/// Dephasing:    rho' = sum_s (gamma_s/2) L[a_s^dag a_s]  (single mode)
/// Depolarizing: rho' = -i[omega N, rho] (optional)
///                      + (gamma/2)(L[N] + L[J+] + L[J-]) (single mode)
/// Multimode:    rho' = sum_j -i omega_j [N_j, rho] (optional)
///                      + (gamma_j/2)(L[N_j] + L[J_j+] + L[J_j-])
struct ModelSpec {
  ModelKind kind = ModelKind::Depolarizing;
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  double gamma = 0.0;
  std::vector<double> gamma_j;
  double omega = 0.0;
  std::vector<double> omega_j;
  bool include_unitary = false;

  double max_rate() const;
  void validate(const FockBasis& basis) const;
};

/// Polarization operators plus the bare mode operators the damping model
/// needs; built once per basis and shared.
struct ModelOperators {
  PolarizationOperators pol;
  std::vector<OperatorMatrix> a;  // order (0,+), (0,-), (1,+), ...
};

ModelOperators build_model_operators(const FockBasis& basis);

/// L[C] rho = 2 C rho C^dag - {C^dag C, rho}
Matrix lindblad_apply(const Matrix& c, const Matrix& rho);

Matrix rhs(const ModelSpec& model, const ModelOperators& ops,
           const Matrix& rho);

/// Generator and dissipator list of a model, for superoperator assembly.
struct GeneratorTerms {
  Matrix hamiltonian;                              // may be zero
  std::vector<std::pair<double, Matrix>> jumps;    // (rate, C): (rate/2) L[C]
};

GeneratorTerms model_terms(const ModelSpec& model, const ModelOperators& ops);

/// Column-stacking Liouvillian: L vec(rho) = vec(rhs(rho)),
/// with vec(A rho B) = (B^T kron A) vec(rho).
Matrix build_liouvillian(const ModelSpec& model, const ModelOperators& ops,
                         std::size_t max_entries = std::size_t(4096) * 4096);

/// Assemble a Liouvillian from explicit terms (also used by the
/// microscopic field+atoms model).
Matrix liouvillian_from_terms(const GeneratorTerms& terms,
                              std::size_t max_entries = std::size_t(4096) * 4096);

Matrix apply_terms(const GeneratorTerms& terms, const Matrix& rho);

}  // namespace depol

#endif
