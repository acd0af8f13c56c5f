#ifndef DEPOL_OBSERVABLES_HPP
#define DEPOL_OBSERVABLES_HPP

#include "depol/polarization.hpp"

namespace depol {

/// Tr(rho * op)
Complex expectation(const Matrix& op, const Matrix& rho);

/// s = <S>/<N> = 2<J>/<N>; zero by convention when <N> = 0 (the vacuum
/// is unpolarized).
struct PolarizationVector {
  double sx = 0.0, sy = 0.0, sz = 0.0;
  double n_mean = 0.0;

  double norm() const;
};

PolarizationVector polarization_vector(const Matrix& rho,
                                       const PolarizationOperators& ops);

/// P = sqrt(<S>^2)/<N> = |s|
double degree_of_polarization(const Matrix& rho,
                              const PolarizationOperators& ops);

/// Tr(rho^2)
double purity(const Matrix& rho);

}  // namespace depol

#endif
