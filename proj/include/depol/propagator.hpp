#ifndef DEPOL_PROPAGATOR_HPP
#define DEPOL_PROPAGATOR_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "depol/lindblad.hpp"
#include "depol/observables.hpp"

namespace depol {

struct TimeGrid {
  double t0 = 0.0;
  double t1 = 0.0;
  int n_steps = 1;
  int sample_every = 1;

  void validate() const;
  double dt() const { return (t1 - t0) / n_steps; }
  int n_samples() const { return n_steps / sample_every + 1; }
  double sample_time(int k) const { return t0 + k * sample_every * dt(); }
};

/// Observables of one sampled state.
struct ObsRecord {
  double t = 0.0;
  double sx = 0.0, sy = 0.0, sz = 0.0;
  double p = 0.0;
  double purity = 0.0;
  double trace = 0.0;
  double min_eig = 0.0;
  double n_mean = 0.0;
  std::vector<double> block_weights;
  // Monte-Carlo standard errors; filled only by ensemble runs
  double se_sx = 0.0, se_sy = 0.0, se_sz = 0.0, se_p = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<ObsRecord> records;
  std::vector<Matrix> snapshots;  // empty unless requested
  std::vector<std::string> warnings;
};

/// Thrown when a propagated state drifts outside the density-matrix
/// invariants (trace, Hermiticity, positivity).
class InvariantError : public std::runtime_error {
 public:
  InvariantError(const std::string& what, double t)
      : std::runtime_error(what), t_(t) {}
  double time() const { return t_; }

 private:
  double t_;
};

ObsRecord make_record(double t, const Matrix& rho,
                      const PolarizationOperators& ops,
                      const FockBasis& basis);

/// Sampled-state invariant bounds enforced during propagation.
void enforce_state_invariants(const ObsRecord& rec, const Matrix& rho,
                              double trace_tol = 1e-9, double herm_tol = 1e-10,
                              double eig_floor = -1e-8);

/// Fixed-step classical RK4 on the model right-hand side.  No trace
/// renormalization or eigenvalue clipping: drift beyond bounds throws.
Trajectory evolve_rk4(const Matrix& rho0, const ModelSpec& model,
                      const ModelOperators& ops, const TimeGrid& grid,
                      bool keep_snapshots = false);

/// Exact propagation exp(L t) of a (generally non-normal) Liouvillian via
/// eigendecomposition, falling back to scaling-and-squaring when the
/// eigenvector matrix is ill conditioned.
class ExactPropagator {
 public:
  explicit ExactPropagator(const Matrix& liouvillian,
                           double condition_threshold = 1e12);

  /// unvec(exp(L t) vec(rho0))
  Matrix propagate(const Matrix& rho0, double t) const;

  bool using_expm_fallback() const { return fallback_; }

 private:
  std::size_t dim_;  // Hilbert space dimension (L is dim^2 x dim^2)
  Matrix liouvillian_;
  bool fallback_ = false;
  Eigen::VectorXcd eigenvalues_;
  Matrix eigenvectors_;
  Matrix eigenvectors_inv_;
};

Trajectory evolve_exact(const Matrix& rho0, const ModelSpec& model,
                        const ModelOperators& ops, const TimeGrid& grid,
                        bool keep_snapshots = false);

}  // namespace depol

#endif
