#include "depol/fock.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace depol {

namespace {

// number of occupation tuples of length `slots` summing to exactly n:
// C(n + slots - 1, slots - 1), computed without overflow for desk scales
std::size_t multiset_count(int n, int slots) {
  // binomial via incremental product
  long double acc = 1.0L;
  for (int k = 1; k <= slots - 1; ++k) {
    acc *= static_cast<long double>(n + k);
    acc /= static_cast<long double>(k);
  }
  return static_cast<std::size_t>(std::llround(acc));
}

// occupation tuples with sum exactly n, + polarization slot varying slowest,
// each slot generated high-to-low so that |+...> precedes |-...>
void emit_block(int n, int slots, Occupation& scratch, int pos,
                std::vector<Occupation>& out) {
  if (pos == slots - 1) {
    scratch[pos] = n;
    out.push_back(scratch);
    return;
  }
  for (int k = n; k >= 0; --k) {
    scratch[pos] = k;
    emit_block(n - k, slots, scratch, pos + 1, out);
  }
}

}  // namespace

FockBasis::FockBasis(int modes, int n_max, std::size_t max_states)
    : modes_(modes), n_max_(n_max) {
  if (modes < 1) throw std::invalid_argument("FockBasis: need at least one mode");
  if (n_max < 0) throw std::invalid_argument("FockBasis: negative photon cutoff");

  const int slots = 2 * modes;
  std::size_t total = 0;
  for (int n = 0; n <= n_max; ++n) {
    total += multiset_count(n, slots);
    if (total > max_states)
      throw std::invalid_argument("FockBasis: dimension exceeds the configured maximum of " +
                                  std::to_string(max_states) + " states");
  }

  states_.reserve(total);
  block_offsets_.reserve(n_max + 2);
  Occupation scratch(slots, 0);
  for (int n = 0; n <= n_max; ++n) {
    block_offsets_.push_back(states_.size());
    emit_block(n, slots, scratch, 0, states_);
  }
  block_offsets_.push_back(states_.size());

  for (std::size_t i = 0; i < states_.size(); ++i) index_[states_[i]] = i;
}

std::size_t FockBasis::index(const Occupation& occ) const {
  auto it = index_.find(occ);
  if (it == index_.end())
    throw std::out_of_range("FockBasis::index: state not in basis");
  return it->second;
}

bool FockBasis::contains(const Occupation& occ) const {
  return index_.find(occ) != index_.end();
}

int FockBasis::total_photons(std::size_t i) const {
  const Occupation& occ = states_[i];
  int n = 0;
  for (int v : occ) n += v;
  return n;
}

std::size_t FockBasis::block_offset(int n) const {
  if (n < 0 || n > n_max_)
    throw std::out_of_range("FockBasis::block_offset: N outside [0, N_max]");
  return block_offsets_[n];
}

std::size_t FockBasis::block_dim(int n) const {
  return block_offset(n) == block_offsets_[n + 1]
             ? 0
             : block_offsets_[n + 1] - block_offsets_[n];
}

StateCheck check_state(const Matrix& rho) {
  StateCheck c;
  c.trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
  c.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()));
  c.min_eigenvalue = es.eigenvalues().minCoeff();
  return c;
}

OperatorMatrix annihilation_op(const FockBasis& basis, int mode, int pol) {
  if (mode < 0 || mode >= basis.modes())
    throw std::out_of_range("annihilation_op: mode index out of range");
  if (pol != 0 && pol != 1)
    throw std::out_of_range("annihilation_op: polarization must be 0 (+) or 1 (-)");

  const int slot = 2 * mode + pol;
  const std::size_t d = basis.dim();
  OperatorMatrix op;
  op.basis = &basis;
  op.label = "a_" + std::to_string(mode) + (pol == 0 ? "+" : "-");
  op.data = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const Occupation& occ = basis.state(i);
    if (occ[slot] == 0) continue;
    Occupation target = occ;
    target[slot] -= 1;
    op.data(basis.index(target), i) = std::sqrt(static_cast<double>(occ[slot]));
  }
  return op;
}

OperatorMatrix creation_op(const FockBasis& basis, int mode, int pol) {
  OperatorMatrix op = annihilation_op(basis, mode, pol);
  op.label = "adag_" + std::to_string(mode) + (pol == 0 ? "+" : "-");
  op.data = op.data.adjoint().eval();
  return op;
}

}  // namespace depol
