#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "depol/analytic.hpp"
#include "depol/propagator.hpp"

using namespace depol;

namespace {

Matrix random_density(std::size_t d, std::mt19937& rng) {
  std::normal_distribution<double> normal;
  Matrix g(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      g(r, c) = Complex(normal(rng), normal(rng));
  Matrix rho = g * g.adjoint();
  return rho / rho.trace();
}

Matrix plus_state(const FockBasis& basis) {
  Matrix rho = Matrix::Zero(basis.dim(), basis.dim());
  const std::size_t ip = basis.index({1, 0});
  rho(ip, ip) = 1.0;
  return rho;
}

}  // namespace

TEST_CASE("zero rates freeze the state") {
  FockBasis basis(1, 2);
  ModelOperators ops = build_model_operators(basis);
  std::mt19937 rng(1);
  Matrix rho0 = random_density(basis.dim(), rng);

  ModelSpec model;
  model.kind = ModelKind::Depolarizing;
  model.gamma = 0.0;
  TimeGrid grid{0.0, 1.0, 100, 10};
  Trajectory traj = evolve_rk4(rho0, model, ops, grid, true);
  REQUIRE(traj.snapshots.size() == 11);
  CHECK((traj.snapshots.back() - rho0).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("depolarizing one photon: s_z(1) = exp(-2)") {
  FockBasis basis(1, 1);
  ModelOperators ops = build_model_operators(basis);
  ModelSpec model;
  model.kind = ModelKind::Depolarizing;
  model.gamma = 1.0;
  TimeGrid grid{0.0, 1.0, 2000, 2000};
  Trajectory traj = evolve_rk4(plus_state(basis), model, ops, grid);
  CHECK(traj.records.back().sz == doctest::Approx(std::exp(-2.0)).epsilon(1e-6));
}

TEST_CASE("RK4 agrees with the exact propagator on every model") {
  std::mt19937 rng(9);
  FockBasis basis(1, 2);
  ModelOperators ops = build_model_operators(basis);

  std::vector<ModelSpec> models;
  models.push_back({ModelKind::Damping, 0.8, 0.4});
  models.push_back({ModelKind::Dephasing, 0.6, 1.0});
  ModelSpec depol;
  depol.kind = ModelKind::Depolarizing;
  depol.gamma = 0.7;
  models.push_back(depol);
  ModelSpec multi;
  multi.kind = ModelKind::Multimode;
  multi.gamma_j = {0.9};
  models.push_back(multi);

  TimeGrid grid{0.0, 1.5, 3000, 3000};
  for (const ModelSpec& model : models) {
    Matrix rho0 = random_density(basis.dim(), rng);
    Trajectory rk = evolve_rk4(rho0, model, ops, grid, true);
    Trajectory ex = evolve_exact(rho0, model, ops, grid, true);
    CHECK((rk.snapshots.back() - ex.snapshots.back()).norm() < 1e-8);
  }
}

TEST_CASE("exact propagator basics") {
  FockBasis basis(1, 2);
  ModelOperators ops = build_model_operators(basis);
  std::mt19937 rng(21);
  ModelSpec model;
  model.kind = ModelKind::Depolarizing;
  model.gamma = 1.0;

  SUBCASE("t = t0 is the identity map") {
    Matrix rho0 = random_density(basis.dim(), rng);
    ExactPropagator prop(build_liouvillian(model, ops));
    CHECK((prop.propagate(rho0, 0.0) - rho0).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("semigroup property") {
    Matrix rho0 = random_density(basis.dim(), rng);
    ExactPropagator prop(build_liouvillian(model, ops));
    Matrix one_shot = prop.propagate(rho0, 0.9);
    Matrix two_step = prop.propagate(prop.propagate(rho0, 0.4), 0.5);
    CHECK((one_shot - two_step).cwiseAbs().maxCoeff() < 1e-10);
  }

  SUBCASE("steady state of a single N block at gamma t = 20") {
    for (int n = 1; n <= 2; ++n) {
      Matrix rho0 = Matrix::Zero(basis.dim(), basis.dim());
      const std::size_t off = basis.block_offset(n);
      const std::size_t bd = basis.block_dim(n);
      rho0.block(off, off, bd, bd) = random_density(bd, rng);
      ExactPropagator prop(build_liouvillian(model, ops));
      Matrix rho_inf = prop.propagate(rho0, 20.0);
      Matrix target = Matrix::Zero(basis.dim(), basis.dim());
      target.block(off, off, bd, bd) = Matrix::Identity(bd, bd) / double(bd);
      CHECK((rho_inf - target).norm() < 1e-8);
    }
  }

  SUBCASE("dephasing decays one-photon coherences as exp(-(g+ + g-) t/2)") {
    ModelSpec deph{ModelKind::Dephasing, 0.8, 0.5};
    Matrix rho0 = Matrix::Zero(basis.dim(), basis.dim());
    const std::size_t ip = basis.block_offset(1);
    rho0.block(ip, ip, 2, 2) << 0.5, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.5;
    ExactPropagator prop(build_liouvillian(deph, ops));
    const double t = 1.3;
    Matrix rho_t = prop.propagate(rho0, t);
    const Complex expected = Complex(0.2, 0.1) * std::exp(-0.5 * 1.3 * t);
    CHECK(std::abs(rho_t(ip, ip + 1) - expected) < 1e-12);
  }
}

TEST_CASE("RK4 global error drops ~16x per dt halving") {
  FockBasis basis(1, 1);
  ModelOperators ops = build_model_operators(basis);
  ModelSpec model;
  model.kind = ModelKind::Depolarizing;
  model.gamma = 1.0;
  std::mt19937 rng(33);
  Matrix rho0 = random_density(basis.dim(), rng);

  TimeGrid ref{0.0, 1.0, 5, 5};
  Trajectory exact = evolve_exact(rho0, model, ops, ref, true);
  Matrix target = exact.snapshots.back();

  std::vector<double> errors;
  for (int n : {5, 10, 20, 40}) {
    TimeGrid grid{0.0, 1.0, n, n};
    Trajectory traj = evolve_rk4(rho0, model, ops, grid, true);
    errors.push_back((traj.snapshots.back() - target).norm());
  }
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
    const double factor = errors[k] / errors[k + 1];
    CHECK(factor > 12.0);
    CHECK(factor < 20.0);
  }
}

TEST_CASE("depolarizing evolution commutes with block projection") {
  FockBasis basis(1, 2);
  ModelOperators ops = build_model_operators(basis);
  ModelSpec model;
  model.kind = ModelKind::Depolarizing;
  model.gamma = 0.9;
  std::mt19937 rng(41);
  Matrix rho0 = random_density(basis.dim(), rng);

  auto project = [&](const Matrix& rho, int n) {
    Matrix out = Matrix::Zero(basis.dim(), basis.dim());
    const std::size_t off = basis.block_offset(n);
    const std::size_t bd = basis.block_dim(n);
    out.block(off, off, bd, bd) = rho.block(off, off, bd, bd);
    return out;
  };

  ExactPropagator prop(build_liouvillian(model, ops));
  for (int n = 0; n <= 2; ++n) {
    Matrix evolve_then_project = project(prop.propagate(rho0, 0.7), n);
    Matrix project_then_evolve = prop.propagate(project(rho0, n), 0.7);
    CHECK((evolve_then_project - project_then_evolve).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("purity is non-increasing under depolarizing evolution") {
  FockBasis basis(1, 2);
  ModelOperators ops = build_model_operators(basis);
  ModelSpec model;
  model.kind = ModelKind::Depolarizing;
  model.gamma = 1.0;
  std::mt19937 rng(55);
  for (int k = 0; k < 5; ++k) {
    Matrix rho0 = random_density(basis.dim(), rng);
    TimeGrid grid{0.0, 3.0, 300, 30};
    Trajectory traj = evolve_rk4(rho0, model, ops, grid);
    for (std::size_t i = 0; i + 1 < traj.records.size(); ++i)
      CHECK(traj.records[i + 1].purity <= traj.records[i].purity + 1e-10);
  }
}

TEST_CASE("positivity and trace hold along sampled trajectories") {
  FockBasis basis(1, 2);
  ModelOperators ops = build_model_operators(basis);
  ModelSpec model{ModelKind::Damping, 1.2, 0.4};
  std::mt19937 rng(61);
  Matrix rho0 = random_density(basis.dim(), rng);
  TimeGrid grid{0.0, 2.0, 400, 40};
  Trajectory traj = evolve_rk4(rho0, model, ops, grid);
  for (const ObsRecord& rec : traj.records) {
    CHECK(std::abs(rec.trace - 1.0) <= 1e-9);
    CHECK(rec.min_eig >= -1e-8);
  }
}

TEST_CASE("invariant drift is an error, not silently fixed") {
  FockBasis basis(1, 1);
  ModelOperators ops = build_model_operators(basis);
  // absurdly stiff step: RK4 blows up and the sampler must notice
  ModelSpec model{ModelKind::Dephasing, 500.0, 500.0};
  Matrix rho0 = Matrix::Zero(3, 3);
  rho0.block(1, 1, 2, 2) << 0.5, 0.5, 0.5, 0.5;
  TimeGrid grid{0.0, 1.0, 10, 1};
  CHECK_THROWS_AS(evolve_rk4(rho0, model, ops, grid), InvariantError);
}

TEST_CASE("oversized steps produce a warning") {
  FockBasis basis(1, 1);
  ModelOperators ops = build_model_operators(basis);
  ModelSpec model;
  model.kind = ModelKind::Depolarizing;
  model.gamma = 2.0;
  TimeGrid grid{0.0, 1.0, 10, 10};  // gamma*dt = 0.2
  Trajectory traj = evolve_rk4(plus_state(basis), model, ops, grid);
  CHECK(!traj.warnings.empty());
}
