#include "depol/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace depol {

PolarizationVector dephasing_bloch(const PolarizationVector& s0,
                                   double gamma_plus, double gamma_minus,
                                   double t) {
  if (t < 0.0) throw std::invalid_argument("dephasing_bloch: negative time");
  const double decay = std::exp(-0.5 * (gamma_plus + gamma_minus) * t);
  PolarizationVector s = s0;
  s.sx *= decay;
  s.sy *= decay;
  return s;
}

PolarizationVector depolarizing_bloch(const PolarizationVector& s0,
                                      double gamma, double t) {
  if (t < 0.0) throw std::invalid_argument("depolarizing_bloch: negative time");
  PolarizationVector s = s0;
  s.sx *= std::exp(-gamma * t);
  s.sy *= std::exp(-gamma * t);
  s.sz *= std::exp(-2.0 * gamma * t);
  return s;
}

TwoModeState two_mode_solution(const TwoModeState& rho0, double gamma1,
                               double gamma2, double t) {
  if (t < 0.0) throw std::invalid_argument("two_mode_solution: negative time");
  if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("two_mode_solution: input not Hermitian");
  if (std::abs(rho0.trace() - Complex(1.0)) > 1e-10)
    throw std::invalid_argument("two_mode_solution: input trace is not 1");

  const double e1 = std::exp(-2.0 * gamma1 * t);
  const double e2 = std::exp(-2.0 * gamma2 * t);
  const double f1 = std::exp(-gamma1 * t);
  const double f2 = std::exp(-gamma2 * t);
  const double f12 = std::exp(-(gamma1 + gamma2) * t);
  const double e12 = std::exp(-2.0 * (gamma1 + gamma2) * t);

  // matrix indices are 0-based; the basis labels run 1..4
  auto r0 = [&](int a, int b) { return rho0(a - 1, b - 1); };

  TwoModeState rho = TwoModeState::Zero();
  // lower-triangle coherences; mode-1 pairs mix under gamma_1, mode-2
  // pairs under gamma_2, the anti-diagonal ones decay independently
  rho(1, 0) = 0.5 * (r0(2, 1) * (1.0 + e1) + r0(4, 3) * (1.0 - e1)) * f2;
  rho(2, 0) = 0.5 * (r0(3, 1) * (1.0 + e2) + r0(4, 2) * (1.0 - e2)) * f1;
  rho(3, 0) = r0(4, 1) * f12;
  rho(2, 1) = r0(3, 2) * f12;
  rho(3, 1) = 0.5 * (r0(4, 2) * (1.0 + e2) + r0(3, 1) * (1.0 - e2)) * f1;
  rho(3, 2) = 0.5 * (r0(4, 3) * (1.0 + e1) + r0(2, 1) * (1.0 - e1)) * f2;

  const double p11 = r0(1, 1).real(), p22 = r0(2, 2).real(),
               p33 = r0(3, 3).real(), p44 = r0(4, 4).real();
  rho(0, 0) = 0.25 * (1.0 + (2.0 * (p11 + p22) - 1.0) * e1 +
                      (2.0 * (p11 + p33) - 1.0) * e2 +
                      (2.0 * (p11 + p44) - 1.0) * e12);
  rho(1, 1) = 0.25 * (1.0 + (2.0 * (p22 + p11) - 1.0) * e1 +
                      (2.0 * (p22 + p44) - 1.0) * e2 +
                      (2.0 * (p22 + p33) - 1.0) * e12);
  rho(2, 2) = 0.25 * (1.0 + (2.0 * (p33 + p44) - 1.0) * e1 +
                      (2.0 * (p33 + p11) - 1.0) * e2 +
                      (2.0 * (p33 + p22) - 1.0) * e12);
  rho(3, 3) = 1.0 - rho(0, 0) - rho(1, 1) - rho(2, 2);

  // Hermiticity fills the upper triangle
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) rho(a, b) = std::conj(rho(b, a));
  return rho;
}

DensityMatrix steady_state_block(int n, const FockBasis& basis) {
  if (basis.modes() != 1)
    throw std::invalid_argument("steady_state_block: single-mode basis required");
  if (n < 0 || n > basis.n_max())
    throw std::out_of_range("steady_state_block: N outside [0, N_max]");

  DensityMatrix state;
  state.basis = &basis;
  state.rho = Matrix::Zero(basis.dim(), basis.dim());
  const std::size_t off = basis.block_offset(n);
  const std::size_t bd = basis.block_dim(n);
  state.rho.block(off, off, bd, bd) =
      Matrix::Identity(bd, bd) / static_cast<double>(n + 1);
  return state;
}

}  // namespace depol
