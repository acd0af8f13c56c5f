#include "depol/polarization.hpp"

#include <cmath>
#include <stdexcept>

namespace depol {

PolarizationOperators build_polarization_ops(const FockBasis& basis) {
  const std::size_t d = basis.dim();
  PolarizationOperators ops;
  ops.basis = &basis;
  ops.j_plus = {&basis, "J+", Matrix::Zero(d, d)};
  ops.j_minus = {&basis, "J-", Matrix::Zero(d, d)};
  ops.j_z = {&basis, "Jz", Matrix::Zero(d, d)};
  ops.n_total = {&basis, "N", Matrix::Zero(d, d)};

  for (int j = 0; j < basis.modes(); ++j) {
    Matrix ap = annihilation_op(basis, j, 0).data;
    Matrix am = annihilation_op(basis, j, 1).data;
    Matrix apd = ap.adjoint();
    Matrix amd = am.adjoint();

    ModeOperators mode;
    mode.j_plus = {&basis, "J_" + std::to_string(j) + "+", apd * am};
    mode.j_minus = {&basis, "J_" + std::to_string(j) + "-", amd * ap};
    mode.j_z = {&basis, "J_" + std::to_string(j) + "z",
                0.5 * (apd * ap - amd * am)};
    mode.number = {&basis, "N_" + std::to_string(j), apd * ap + amd * am};

    ops.j_plus.data += mode.j_plus.data;
    ops.j_minus.data += mode.j_minus.data;
    ops.j_z.data += mode.j_z.data;
    ops.n_total.data += mode.number.data;
    ops.per_mode.push_back(std::move(mode));
  }

  const Complex i(0.0, 1.0);
  ops.j_x = {&basis, "Jx", 0.5 * (ops.j_plus.data + ops.j_minus.data)};
  ops.j_y = {&basis, "Jy", (ops.j_plus.data - ops.j_minus.data) / (2.0 * i)};
  return ops;
}

std::vector<BlockComponent> block_decompose(const Matrix& rho,
                                            const FockBasis& basis) {
  if (static_cast<std::size_t>(rho.rows()) != basis.dim() ||
      static_cast<std::size_t>(rho.cols()) != basis.dim())
    throw std::invalid_argument("block_decompose: dimension mismatch");

  std::vector<BlockComponent> blocks;
  for (int n = 0; n <= basis.n_max(); ++n) {
    BlockComponent b;
    b.n_photons = n;
    const std::size_t off = basis.block_offset(n);
    const std::size_t bd = basis.block_dim(n);
    b.block = rho.block(off, off, bd, bd);
    b.weight = b.block.trace().real();
    blocks.push_back(std::move(b));
  }
  return blocks;
}

DensityMatrix unpolarized_state(const FockBasis& basis,
                                const UnpolarizedWeights& weights) {
  if (weights.r.size() != static_cast<std::size_t>(basis.n_max() + 1))
    throw std::invalid_argument("unpolarized_state: need one weight per N block");
  double trace = 0.0;
  for (int n = 0; n <= basis.n_max(); ++n) {
    if (weights.r[n] < 0.0)
      throw std::invalid_argument("unpolarized_state: negative weight");
    trace += weights.r[n] * static_cast<double>(basis.block_dim(n));
  }
  if (std::abs(trace - 1.0) > 1e-12)
    throw std::invalid_argument(
        "unpolarized_state: trace condition violated by " +
        std::to_string(trace - 1.0));

  DensityMatrix state;
  state.basis = &basis;
  state.rho = Matrix::Zero(basis.dim(), basis.dim());
  for (int n = 0; n <= basis.n_max(); ++n) {
    const std::size_t off = basis.block_offset(n);
    const std::size_t bd = basis.block_dim(n);
    state.rho.block(off, off, bd, bd) =
        weights.r[n] * Matrix::Identity(bd, bd);
  }
  return state;
}

}  // namespace depol
