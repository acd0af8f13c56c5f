#ifndef DEPOL_POLARIZATION_HPP
#define DEPOL_POLARIZATION_HPP

#include <vector>

#include "depol/fock.hpp"

namespace depol {

/// su(2) generators and photon number restricted to one mode.
struct ModeOperators {
  OperatorMatrix j_plus, j_minus, j_z, number;
};

/// Schwinger su(2) polarization operators J = S/2 plus the total photon
/// number, together with their per-mode pieces.
struct PolarizationOperators {
  const FockBasis* basis = nullptr;
  OperatorMatrix j_plus, j_minus, j_x, j_y, j_z, n_total;
  std::vector<ModeOperators> per_mode;
};

PolarizationOperators build_polarization_ops(const FockBasis& basis);

/// Per-block weights r_N of a block-identity (unpolarized) state.
struct UnpolarizedWeights {
  std::vector<double> r;  // r[N], N = 0..N_max
};

struct BlockComponent {
  int n_photons = 0;
  Matrix block;    // the diagonal N-block of rho
  double weight = 0.0;  // trace of the block
};

/// Diagonal fixed-N blocks of rho; weights sum to tr(rho).
std::vector<BlockComponent> block_decompose(const Matrix& rho,
                                            const FockBasis& basis);

/// rho = oplus_N r_N 1_N.  Requires sum_N d_N r_N = 1 within 1e-12.
DensityMatrix unpolarized_state(const FockBasis& basis,
                                const UnpolarizedWeights& weights);

}  // namespace depol

#endif
