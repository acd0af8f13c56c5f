#ifndef DEPOL_FOCK_HPP
#define DEPOL_FOCK_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace depol {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Occupation numbers (n_{1+}, n_{1-}, ..., n_{m+}, n_{m-}).
using Occupation = std::vector<int>;

/// Two-polarization Fock space with m spatiotemporal modes, truncated at
/// total photon number N_max.  States are ordered by ascending total N;
/// within a fixed-N block the occupation tuples are ordered mode-major
/// with the + polarization filled first, so that the one-photon block
/// reads |+>, |-> and the two-mode one-photon-per-mode states appear as
/// |++>, |+->, |-+>, |-->.
class FockBasis {
 public:
  static constexpr std::size_t kDefaultMaxStates = 10000;

  FockBasis(int modes, int n_max, std::size_t max_states = kDefaultMaxStates);

  int modes() const { return modes_; }
  int n_max() const { return n_max_; }
  std::size_t dim() const { return states_.size(); }

  const Occupation& state(std::size_t i) const { return states_[i]; }
  std::size_t index(const Occupation& occ) const;
  bool contains(const Occupation& occ) const;
  int total_photons(std::size_t i) const;

  // block N occupies indices [block_offset(N), block_offset(N) + block_dim(N))
  std::size_t block_offset(int n) const;
  std::size_t block_dim(int n) const;

  bool operator==(const FockBasis& other) const {
    return modes_ == other.modes_ && n_max_ == other.n_max_;
  }

 private:
  int modes_;
  int n_max_;
  std::vector<Occupation> states_;
  std::map<Occupation, std::size_t> index_;
  std::vector<std::size_t> block_offsets_;  // size n_max + 2, last = dim
};

/// Dense operator tied to a basis.
struct OperatorMatrix {
  const FockBasis* basis = nullptr;
  std::string label;
  Matrix data;
};

/// State of the field: dense Hermitian unit-trace matrix over a basis.
struct DensityMatrix {
  const FockBasis* basis = nullptr;
  Matrix rho;
};

/// Deviations of a candidate state from the density-matrix invariants.
struct StateCheck {
  double trace_error = 0.0;      // |tr(rho) - 1|
  double hermiticity_error = 0.0;  // max |rho - rho^dagger|
  double min_eigenvalue = 0.0;

  bool ok(double trace_tol = 1e-12, double herm_tol = 1e-12,
          double eig_floor = -1e-10) const {
    return trace_error <= trace_tol && hermiticity_error <= herm_tol &&
           min_eigenvalue >= eig_floor;
  }
};

StateCheck check_state(const Matrix& rho);

/// <..., n-1, ...| a_{js} |..., n, ...> = sqrt(n); maps the N block into N-1.
OperatorMatrix annihilation_op(const FockBasis& basis, int mode, int pol);

/// Adjoint of annihilation_op; amplitudes crossing the cutoff are zero.
OperatorMatrix creation_op(const FockBasis& basis, int mode, int pol);

}  // namespace depol

#endif
