#ifndef DEPOL_ANALYTIC_HPP
#define DEPOL_ANALYTIC_HPP

#include "depol/observables.hpp"

namespace depol {

/// Closed-form solutions used as oracles against numerical propagation.

/// Pure dephasing on the one-photon Bloch vector: transverse components
/// decay as exp(-(gamma_+ + gamma_-) t / 2), s_z is frozen.
PolarizationVector dephasing_bloch(const PolarizationVector& s0,
                                   double gamma_plus, double gamma_minus,
                                   double t);

/// Depolarizing channel on one photon: s_x, s_y decay as exp(-gamma t),
/// s_z as exp(-2 gamma t).
PolarizationVector depolarizing_bloch(const PolarizationVector& s0,
                                      double gamma, double t);

/// One photon per mode in the product basis
/// |1> = |+>|+>, |2> = |+>|->, |3> = |->|+>, |4> = |->|->.
using TwoModeState = Eigen::Matrix4cd;

/// Closed-form solution of the two-mode depolarizing equation on the
/// one-photon-per-mode subspace.  Input must be Hermitian with unit trace.
TwoModeState two_mode_solution(const TwoModeState& rho0, double gamma1,
                               double gamma2, double t);

/// 1/(N+1) identity on the N block of a single-mode basis, zero elsewhere.
DensityMatrix steady_state_block(int n, const FockBasis& basis);

}  // namespace depol

#endif
