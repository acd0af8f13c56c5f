#include "depol/lindblad.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace depol {

double ModelSpec::max_rate() const {
  double g = 0.0;
  switch (kind) {
    case ModelKind::Damping:
    case ModelKind::Dephasing:
      g = std::max(gamma_plus, gamma_minus);
      break;
    case ModelKind::Depolarizing:
      g = gamma;
      break;
    case ModelKind::Multimode:
      for (double v : gamma_j) g = std::max(g, v);
      break;
  }
  return g;
}

void ModelSpec::validate(const FockBasis& basis) const {
  auto check_rate = [](double r, const char* name) {
    if (!(r >= 0.0) || !std::isfinite(r))
      throw std::invalid_argument(std::string("ModelSpec: rate ") + name +
                                  " must be finite and nonnegative");
  };
  switch (kind) {
    case ModelKind::Damping:
    case ModelKind::Dephasing:
      check_rate(gamma_plus, "gamma_plus");
      check_rate(gamma_minus, "gamma_minus");
      if (basis.modes() != 1)
        throw std::invalid_argument("ModelSpec: damping/dephasing models are single-mode");
      break;
    case ModelKind::Depolarizing:
      check_rate(gamma, "gamma");
      if (basis.modes() != 1)
        throw std::invalid_argument("ModelSpec: depolarizing model is single-mode");
      break;
    case ModelKind::Multimode:
      if (gamma_j.size() != static_cast<std::size_t>(basis.modes()))
        throw std::invalid_argument("ModelSpec: need one gamma_j per mode");
      for (double v : gamma_j) check_rate(v, "gamma_j");
      if (include_unitary && omega_j.size() != gamma_j.size())
        throw std::invalid_argument("ModelSpec: need one omega_j per mode");
      break;
  }
}

ModelOperators build_model_operators(const FockBasis& basis) {
  ModelOperators ops;
  ops.pol = build_polarization_ops(basis);
  for (int j = 0; j < basis.modes(); ++j) {
    ops.a.push_back(annihilation_op(basis, j, 0));
    ops.a.push_back(annihilation_op(basis, j, 1));
  }
  return ops;
}

Matrix lindblad_apply(const Matrix& c, const Matrix& rho) {
  if (c.rows() != rho.rows() || c.cols() != rho.cols() || rho.rows() != rho.cols())
    throw std::invalid_argument("lindblad_apply: shape mismatch");
  Matrix cdc = c.adjoint() * c;
  return 2.0 * c * rho * c.adjoint() - cdc * rho - rho * cdc;
}

GeneratorTerms model_terms(const ModelSpec& model, const ModelOperators& ops) {
  const FockBasis& basis = *ops.pol.basis;
  model.validate(basis);
  const std::size_t d = basis.dim();

  GeneratorTerms terms;
  terms.hamiltonian = Matrix::Zero(d, d);
  switch (model.kind) {
    case ModelKind::Damping:
      terms.jumps.emplace_back(model.gamma_plus, ops.a[0].data);
      terms.jumps.emplace_back(model.gamma_minus, ops.a[1].data);
      break;
    case ModelKind::Dephasing:
      terms.jumps.emplace_back(model.gamma_plus,
                               (ops.a[0].data.adjoint() * ops.a[0].data).eval());
      terms.jumps.emplace_back(model.gamma_minus,
                               (ops.a[1].data.adjoint() * ops.a[1].data).eval());
      break;
    case ModelKind::Depolarizing:
      terms.jumps.emplace_back(model.gamma, ops.pol.n_total.data);
      terms.jumps.emplace_back(model.gamma, ops.pol.j_plus.data);
      terms.jumps.emplace_back(model.gamma, ops.pol.j_minus.data);
      if (model.include_unitary)
        terms.hamiltonian += model.omega * ops.pol.n_total.data;
      break;
    case ModelKind::Multimode:
      for (int j = 0; j < basis.modes(); ++j) {
        const ModeOperators& mode = ops.pol.per_mode[j];
        terms.jumps.emplace_back(model.gamma_j[j], mode.number.data);
        terms.jumps.emplace_back(model.gamma_j[j], mode.j_plus.data);
        terms.jumps.emplace_back(model.gamma_j[j], mode.j_minus.data);
        if (model.include_unitary)
          terms.hamiltonian += model.omega_j[j] * mode.number.data;
      }
      break;
  }
  return terms;
}

Matrix apply_terms(const GeneratorTerms& terms, const Matrix& rho) {
  const Complex i(0.0, 1.0);
  Matrix out = -i * (terms.hamiltonian * rho - rho * terms.hamiltonian);
  for (const auto& [rate, c] : terms.jumps) {
    if (rate == 0.0) continue;
    out += 0.5 * rate * lindblad_apply(c, rho);
  }
  return out;
}

Matrix rhs(const ModelSpec& model, const ModelOperators& ops,
           const Matrix& rho) {
  const std::size_t d = ops.pol.basis->dim();
  if (static_cast<std::size_t>(rho.rows()) != d ||
      static_cast<std::size_t>(rho.cols()) != d)
    throw std::invalid_argument("rhs: state dimension mismatch");
  return apply_terms(model_terms(model, ops), rho);
}

Matrix liouvillian_from_terms(const GeneratorTerms& terms,
                              std::size_t max_entries) {
  const std::size_t d = terms.hamiltonian.rows();
  if (d * d * d * d > max_entries)
    throw std::invalid_argument("liouvillian_from_terms: superoperator size limit exceeded");

  const Matrix id = Matrix::Identity(d, d);
  const Complex i(0.0, 1.0);
  Matrix lsup = Matrix::Zero(d * d, d * d);
  if (terms.hamiltonian.cwiseAbs().maxCoeff() > 0.0) {
    lsup -= i * (Eigen::kroneckerProduct(id, terms.hamiltonian) -
                 Eigen::kroneckerProduct(terms.hamiltonian.transpose(), id));
  }
  for (const auto& [rate, c] : terms.jumps) {
    if (rate == 0.0) continue;
    Matrix cdc = c.adjoint() * c;
    lsup += 0.5 * rate *
            (2.0 * Eigen::kroneckerProduct(c.conjugate(), c) -
             Eigen::kroneckerProduct(id, cdc) -
             Eigen::kroneckerProduct(cdc.transpose(), id));
  }
  return lsup;
}

Matrix build_liouvillian(const ModelSpec& model, const ModelOperators& ops,
                         std::size_t max_entries) {
  return liouvillian_from_terms(model_terms(model, ops), max_entries);
}

}  // namespace depol
