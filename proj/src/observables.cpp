#include "depol/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace depol {

Complex expectation(const Matrix& op, const Matrix& rho) {
  if (op.rows() != rho.rows() || op.cols() != rho.cols())
    throw std::invalid_argument("expectation: shape mismatch");
  return (rho * op).trace();
}

double PolarizationVector::norm() const {
  return std::sqrt(sx * sx + sy * sy + sz * sz);
}

PolarizationVector polarization_vector(const Matrix& rho,
                                       const PolarizationOperators& ops) {
  PolarizationVector s;
  s.n_mean = expectation(ops.n_total.data, rho).real();
  if (s.n_mean <= 0.0) return s;  // vacuum convention: s = 0
  const double scale = 2.0 / s.n_mean;
  s.sx = scale * expectation(ops.j_x.data, rho).real();
  s.sy = scale * expectation(ops.j_y.data, rho).real();
  s.sz = scale * expectation(ops.j_z.data, rho).real();
  return s;
}

double degree_of_polarization(const Matrix& rho,
                              const PolarizationOperators& ops) {
  return polarization_vector(rho, ops).norm();
}

double purity(const Matrix& rho) {
  return (rho * rho).trace().real();
}

}  // namespace depol
