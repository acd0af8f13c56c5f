#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "depol/fock.hpp"

using namespace depol;

namespace {

// independent oracle: count occupation tuples of 2m slots summing to <= N_max
// by brute-force recursion
int count_states(int slots, int budget) {
  if (slots == 0) return budget >= 0 ? 1 : 0;
  int total = 0;
  for (int k = 0; k <= budget; ++k) total += count_states(slots - 1, budget - k);
  return total;
}

int count_block(int slots, int n) {
  return count_states(slots, n) - (n > 0 ? count_states(slots, n - 1) : 0);
}

}  // namespace

TEST_CASE("m=1, N_max=1 enumerates vacuum plus one-photon doublet") {
  FockBasis basis(1, 1);
  REQUIRE(basis.dim() == 3);
  CHECK(basis.state(0) == Occupation{0, 0});
  CHECK(basis.state(1) == Occupation{1, 0});
  CHECK(basis.state(2) == Occupation{0, 1});
  CHECK(basis.block_dim(0) == 1);
  CHECK(basis.block_dim(1) == 2);
}

TEST_CASE("m=1, N_max=2 has N+1 states per block") {
  FockBasis basis(1, 2);
  REQUIRE(basis.dim() == 6);
  CHECK(basis.block_dim(0) == 1);
  CHECK(basis.block_dim(1) == 2);
  CHECK(basis.block_dim(2) == 3);
}

TEST_CASE("m=2, N_max=2 matches brute-force multiset count") {
  FockBasis basis(2, 2);
  CHECK(basis.dim() == static_cast<std::size_t>(count_states(4, 2)));
  CHECK(basis.dim() == 15);
  for (int n = 0; n <= 2; ++n)
    CHECK(basis.block_dim(n) == static_cast<std::size_t>(count_block(4, n)));
}

TEST_CASE("index map is a bijection and blocks are contiguous by N") {
  FockBasis basis(2, 3);
  std::set<Occupation> seen;
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    CHECK(basis.index(basis.state(i)) == i);
    seen.insert(basis.state(i));
  }
  CHECK(seen.size() == basis.dim());
  for (std::size_t i = 0; i + 1 < basis.dim(); ++i)
    CHECK(basis.total_photons(i) <= basis.total_photons(i + 1));
}

TEST_CASE("enumeration is reproducible") {
  FockBasis a(2, 2), b(2, 2);
  REQUIRE(a.dim() == b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) CHECK(a.state(i) == b.state(i));
}

TEST_CASE("invalid construction is rejected") {
  CHECK_THROWS_AS(FockBasis(0, 1), std::invalid_argument);
  // m=4, N_max=10 has > 10,000 states
  CHECK_THROWS_AS(FockBasis(4, 10), std::invalid_argument);
  CHECK_NOTHROW(FockBasis(4, 10, 100000));
}

TEST_CASE("annihilation acts with sqrt(n) amplitudes") {
  FockBasis basis(1, 1);
  Matrix a = annihilation_op(basis, 0, 0).data;

  Eigen::VectorXcd plus = Eigen::VectorXcd::Zero(3);
  plus(basis.index({1, 0})) = 1.0;
  Eigen::VectorXcd out = a * plus;
  CHECK(std::abs(out(basis.index({0, 0})) - Complex(1.0)) < 1e-15);

  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(3);
  vac(basis.index({0, 0})) = 1.0;
  CHECK((a * vac).norm() == 0.0);
}

TEST_CASE("creation is the adjoint and truncates at the cutoff") {
  FockBasis basis(1, 1);
  Matrix a = annihilation_op(basis, 0, 0).data;
  Matrix adag = creation_op(basis, 0, 0).data;
  CHECK((adag - a.adjoint()).cwiseAbs().maxCoeff() == 0.0);

  Eigen::VectorXcd plus = Eigen::VectorXcd::Zero(3);
  plus(basis.index({1, 0})) = 1.0;
  CHECK((adag * plus).norm() == 0.0);  // would leave N_max=1

  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(3);
  vac(basis.index({0, 0})) = 1.0;
  CHECK(std::abs((adag * vac)(basis.index({1, 0})) - Complex(1.0)) < 1e-15);
}

TEST_CASE("canonical commutator holds below the top block") {
  for (int m : {1, 2}) {
    FockBasis basis(m, 2);
    for (int j = 0; j < m; ++j)
      for (int pol : {0, 1}) {
        Matrix a = annihilation_op(basis, j, pol).data;
        Matrix comm = a * a.adjoint() - a.adjoint() * a;
        // exact identity on the subspace with N <= N_max - 1
        const std::size_t low = basis.block_offset(basis.n_max());
        Matrix sub = comm.topLeftCorner(low, low);
        CHECK((sub - Matrix::Identity(low, low)).cwiseAbs().maxCoeff() < 1e-14);
      }
  }
}

TEST_CASE("distinct mode/polarization operators commute exactly") {
  FockBasis basis(2, 2);
  std::vector<Matrix> ops;
  for (int j = 0; j < 2; ++j)
    for (int pol : {0, 1}) ops.push_back(annihilation_op(basis, j, pol).data);
  const std::size_t low = basis.block_offset(basis.n_max());
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = 0; j < ops.size(); ++j) {
      if (i == j) continue;
      CHECK((ops[i] * ops[j] - ops[j] * ops[i]).cwiseAbs().maxCoeff() == 0.0);
      // the mixed commutator is truncation-free below the top block
      Matrix cross = ops[i] * ops[j].adjoint() - ops[j].adjoint() * ops[i];
      CHECK(cross.topLeftCorner(low, low).cwiseAbs().maxCoeff() == 0.0);
    }
}
