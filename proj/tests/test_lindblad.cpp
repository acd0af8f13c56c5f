#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "depol/lindblad.hpp"
#include "depol/polarization.hpp"

using namespace depol;

namespace {

Matrix random_hermitian(std::size_t d, std::mt19937& rng) {
  std::normal_distribution<double> normal;
  Matrix m(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      m(r, c) = Complex(normal(rng), normal(rng));
  return 0.5 * (m + m.adjoint());
}

Matrix random_density(std::size_t d, std::mt19937& rng) {
  std::normal_distribution<double> normal;
  Matrix g(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      g(r, c) = Complex(normal(rng), normal(rng));
  Matrix rho = g * g.adjoint();
  return rho / rho.trace();
}

Matrix random_matrix(std::size_t d, std::mt19937& rng) {
  std::normal_distribution<double> normal;
  Matrix m(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      m(r, c) = Complex(normal(rng), normal(rng));
  return m;
}

std::vector<ModelSpec> all_models(int m) {
  std::vector<ModelSpec> models;
  if (m == 1) {
    models.push_back({ModelKind::Damping, 0.7, 0.3});
    models.push_back({ModelKind::Dephasing, 0.5, 1.1});
    ModelSpec depol;
    depol.kind = ModelKind::Depolarizing;
    depol.gamma = 0.8;
    models.push_back(depol);
  }
  ModelSpec multi;
  multi.kind = ModelKind::Multimode;
  multi.gamma_j.assign(m, 0.0);
  for (int j = 0; j < m; ++j) multi.gamma_j[j] = 0.4 + 0.3 * j;
  models.push_back(multi);
  return models;
}

}  // namespace

TEST_CASE("lindblad_apply basics") {
  std::mt19937 rng(7);
  FockBasis basis(1, 1);

  SUBCASE("identity jump operator annihilates everything") {
    Matrix id = Matrix::Identity(3, 3);
    for (int k = 0; k < 5; ++k) {
      Matrix rho = random_density(3, rng);
      CHECK(lindblad_apply(id, rho).cwiseAbs().maxCoeff() < 1e-14);
    }
  }

  SUBCASE("a_- on |0,1><0,1| transfers population to the vacuum") {
    Matrix am = annihilation_op(basis, 0, 1).data;
    Matrix rho = Matrix::Zero(3, 3);
    const std::size_t im = basis.index({0, 1});
    rho(im, im) = 1.0;
    Matrix out = lindblad_apply(am, rho);
    Matrix expected = Matrix::Zero(3, 3);
    expected(basis.index({0, 0}), basis.index({0, 0})) = 2.0;
    expected(im, im) = -2.0;
    CHECK((out - expected).cwiseAbs().maxCoeff() < 1e-14);
  }

  SUBCASE("traceless for random states and random jump operators") {
    for (int k = 0; k < 100; ++k) {
      Matrix c = random_matrix(3, rng);
      Matrix rho = random_hermitian(3, rng);
      Matrix out = lindblad_apply(c, rho);
      CHECK(std::abs(out.trace()) < 1e-12);
      CHECK((out - out.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  SUBCASE("shape mismatch rejected") {
    CHECK_THROWS_AS(lindblad_apply(Matrix::Identity(2, 2), Matrix::Identity(3, 3)),
                    std::invalid_argument);
  }
}

TEST_CASE("rhs preserves trace and Hermiticity for every model") {
  std::mt19937 rng(11);
  for (int m : {1, 2}) {
    FockBasis basis(m, 2);
    ModelOperators ops = build_model_operators(basis);
    for (const ModelSpec& model : all_models(m)) {
      for (int k = 0; k < 10; ++k) {
        Matrix rho = random_density(basis.dim(), rng);
        Matrix out = rhs(model, ops, rho);
        CHECK(std::abs(out.trace()) < 1e-12);
        CHECK((out - out.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("depolarizing fixed points") {
  FockBasis basis(1, 2);
  ModelOperators ops = build_model_operators(basis);
  ModelSpec model;
  model.kind = ModelKind::Depolarizing;
  model.gamma = 1.3;

  for (int n = 0; n <= 2; ++n) {
    Matrix rho = Matrix::Zero(basis.dim(), basis.dim());
    const std::size_t off = basis.block_offset(n);
    const std::size_t bd = basis.block_dim(n);
    rho.block(off, off, bd, bd) = Matrix::Identity(bd, bd) / double(bd);
    CHECK(rhs(model, ops, rho).cwiseAbs().maxCoeff() < 1e-12);
  }

  // any unpolarized state is stationary
  DensityMatrix unpol = unpolarized_state(basis, {{0.25, 0.25, 1.0 / 12}});
  CHECK(rhs(model, ops, unpol.rho).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("damping fixed point is the vacuum") {
  FockBasis basis(1, 2);
  ModelOperators ops = build_model_operators(basis);
  ModelSpec model{ModelKind::Damping, 1.0, 0.5};
  Matrix vac = Matrix::Zero(basis.dim(), basis.dim());
  vac(0, 0) = 1.0;
  CHECK(rhs(model, ops, vac).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("dephasing freezes s_z on the one-photon block") {
  FockBasis basis(1, 1);
  ModelOperators ops = build_model_operators(basis);
  ModelSpec model{ModelKind::Dephasing, 0.9, 0.9};
  std::mt19937 rng(3);
  for (int k = 0; k < 5; ++k) {
    Matrix rho = Matrix::Zero(3, 3);
    Matrix block = random_density(2, rng);
    rho.block(1, 1, 2, 2) = block;
    Matrix out = rhs(model, ops, rho);
    // d<J_z>/dt = tr(Jz * rhs) = 0
    CHECK(std::abs((ops.pol.j_z.data * out).trace()) < 1e-13);
  }
}

TEST_CASE("N-block structure of the right-hand side") {
  std::mt19937 rng(5);
  FockBasis basis(1, 2);
  ModelOperators ops = build_model_operators(basis);

  // states supported on the N=2 block only
  Matrix rho = Matrix::Zero(basis.dim(), basis.dim());
  const std::size_t off = basis.block_offset(2);
  rho.block(off, off, 3, 3) = random_density(3, rng);

  auto off_block_norm = [&](const Matrix& m) {
    Matrix copy = m;
    copy.block(off, off, 3, 3).setZero();
    return copy.cwiseAbs().maxCoeff();
  };

  ModelSpec deph{ModelKind::Dephasing, 0.4, 0.6};
  CHECK(off_block_norm(rhs(deph, ops, rho)) < 1e-14);

  ModelSpec depol;
  depol.kind = ModelKind::Depolarizing;
  depol.gamma = 1.0;
  CHECK(off_block_norm(rhs(depol, ops, rho)) < 1e-14);

  // damping couples the N=2 block down to N=1
  ModelSpec damp{ModelKind::Damping, 1.0, 1.0};
  Matrix out = rhs(damp, ops, rho);
  const std::size_t off1 = basis.block_offset(1);
  CHECK(out.block(off1, off1, 2, 2).cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("Liouvillian is consistent with rhs and contracting") {
  std::mt19937 rng(13);
  for (int m : {1, 2}) {
    FockBasis basis(m, m == 1 ? 2 : 1);
    ModelOperators ops = build_model_operators(basis);
    const std::size_t d = basis.dim();
    for (const ModelSpec& model : all_models(m)) {
      Matrix lsup = build_liouvillian(model, ops);
      for (int k = 0; k < 20; ++k) {
        Matrix rho = random_density(d, rng);
        Eigen::VectorXcd v = Eigen::Map<Eigen::VectorXcd>(rho.data(), d * d);
        Matrix expected = rhs(model, ops, rho);
        Eigen::VectorXcd lv = lsup * v;
        Matrix got = Eigen::Map<Matrix>(lv.data(), d, d);
        CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-13);
      }
      Eigen::ComplexEigenSolver<Matrix> es(lsup);
      CHECK(es.eigenvalues().real().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("depolarizing steady state is a null vector of the Liouvillian") {
  FockBasis basis(1, 1);
  ModelOperators ops = build_model_operators(basis);
  ModelSpec model;
  model.kind = ModelKind::Depolarizing;
  model.gamma = 1.0;
  Matrix lsup = build_liouvillian(model, ops);

  Matrix rho = Matrix::Zero(3, 3);
  rho(1, 1) = rho(2, 2) = 0.5;
  Eigen::VectorXcd v = Eigen::Map<Eigen::VectorXcd>(rho.data(), 9);
  CHECK((lsup * v).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("model validation catches bad specs") {
  FockBasis one(1, 1), two(2, 1);
  ModelSpec depol;
  depol.kind = ModelKind::Depolarizing;
  depol.gamma = -1.0;
  CHECK_THROWS_AS(depol.validate(one), std::invalid_argument);
  depol.gamma = 1.0;
  CHECK_THROWS_AS(depol.validate(two), std::invalid_argument);

  ModelSpec multi;
  multi.kind = ModelKind::Multimode;
  multi.gamma_j = {1.0};
  CHECK_THROWS_AS(multi.validate(two), std::invalid_argument);
}
