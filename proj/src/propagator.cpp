#include "depol/propagator.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace depol {

void TimeGrid::validate() const {
  if (!(t1 > t0)) throw std::invalid_argument("TimeGrid: t1 must exceed t0");
  if (n_steps < 1) throw std::invalid_argument("TimeGrid: need at least one step");
  if (sample_every < 1 || n_steps % sample_every != 0)
    throw std::invalid_argument("TimeGrid: sample_every must divide n_steps");
}

ObsRecord make_record(double t, const Matrix& rho,
                      const PolarizationOperators& ops,
                      const FockBasis& basis) {
  ObsRecord rec;
  rec.t = t;
  PolarizationVector s = polarization_vector(rho, ops);
  rec.sx = s.sx;
  rec.sy = s.sy;
  rec.sz = s.sz;
  rec.n_mean = s.n_mean;
  rec.p = s.norm();
  rec.purity = purity(rho);
  StateCheck c = check_state(rho);
  rec.trace = rho.trace().real();
  rec.min_eig = c.min_eigenvalue;
  for (const BlockComponent& b : block_decompose(rho, basis))
    rec.block_weights.push_back(b.weight);
  return rec;
}

void enforce_state_invariants(const ObsRecord& rec, const Matrix& rho,
                              double trace_tol, double herm_tol,
                              double eig_floor) {
  std::ostringstream msg;
  if (std::abs(rec.trace - 1.0) > trace_tol)
    msg << "trace drifted to " << rec.trace;
  else if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
    msg << "Hermiticity drift "
        << (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  else if (rec.min_eig < eig_floor)
    msg << "negative eigenvalue " << rec.min_eig;
  else
    return;
  msg << " at t = " << rec.t;
  throw InvariantError(msg.str(), rec.t);
}

Trajectory evolve_rk4(const Matrix& rho0, const ModelSpec& model,
                      const ModelOperators& ops, const TimeGrid& grid,
                      bool keep_snapshots) {
  const FockBasis& basis = *ops.pol.basis;
  model.validate(basis);
  grid.validate();

  Trajectory traj;
  const double dt = grid.dt();
  if (model.max_rate() * dt > 0.1)
    traj.warnings.push_back("step size gamma_max*dt = " +
                            std::to_string(model.max_rate() * dt) +
                            " exceeds 0.1; accuracy may suffer");

  GeneratorTerms terms = model_terms(model, ops);
  auto deriv = [&](const Matrix& r) { return apply_terms(terms, r); };

  auto sample = [&](double t, const Matrix& rho) {
    ObsRecord rec = make_record(t, rho, ops.pol, basis);
    enforce_state_invariants(rec, rho);
    traj.times.push_back(t);
    traj.records.push_back(std::move(rec));
    if (keep_snapshots) traj.snapshots.push_back(rho);
  };

  Matrix rho = rho0;
  sample(grid.t0, rho);
  for (int step = 1; step <= grid.n_steps; ++step) {
    Matrix k1 = deriv(rho);
    Matrix k2 = deriv(rho + 0.5 * dt * k1);
    Matrix k3 = deriv(rho + 0.5 * dt * k2);
    Matrix k4 = deriv(rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (step % grid.sample_every == 0) sample(grid.t0 + step * dt, rho);
  }
  return traj;
}

ExactPropagator::ExactPropagator(const Matrix& liouvillian,
                                 double condition_threshold)
    : liouvillian_(liouvillian) {
  const std::size_t d2 = liouvillian.rows();
  dim_ = static_cast<std::size_t>(std::lround(std::sqrt(double(d2))));
  if (dim_ * dim_ != d2 || liouvillian.cols() != liouvillian.rows())
    throw std::invalid_argument("ExactPropagator: Liouvillian must be dim^2 x dim^2");

  Eigen::ComplexEigenSolver<Matrix> es(liouvillian);
  if (es.info() != Eigen::Success) {
    fallback_ = true;
    return;
  }
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
  Eigen::PartialPivLU<Matrix> lu(eigenvectors_);
  eigenvectors_inv_ = lu.inverse();

  const double cond = eigenvectors_.norm() * eigenvectors_inv_.norm();
  const double recon = (eigenvectors_ * eigenvalues_.asDiagonal() *
                            eigenvectors_inv_ - liouvillian)
                           .cwiseAbs()
                           .maxCoeff();
  const double scale = std::max(1.0, liouvillian.cwiseAbs().maxCoeff());
  if (cond > condition_threshold || recon > 1e-10 * scale) fallback_ = true;
}

Matrix ExactPropagator::propagate(const Matrix& rho0, double t) const {
  if (static_cast<std::size_t>(rho0.rows()) != dim_ ||
      static_cast<std::size_t>(rho0.cols()) != dim_)
    throw std::invalid_argument("ExactPropagator: state dimension mismatch");

  Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho0.data(), dim_ * dim_);
  Eigen::VectorXcd out;
  if (!fallback_) {
    Eigen::VectorXcd coeffs = eigenvectors_inv_ * v;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k)
      coeffs(k) *= std::exp(eigenvalues_(k) * t);
    out = eigenvectors_ * coeffs;
  } else {
    Matrix prop = (liouvillian_ * t).exp();
    out = prop * v;
  }
  return Eigen::Map<const Matrix>(out.data(), dim_, dim_);
}

Trajectory evolve_exact(const Matrix& rho0, const ModelSpec& model,
                        const ModelOperators& ops, const TimeGrid& grid,
                        bool keep_snapshots) {
  const FockBasis& basis = *ops.pol.basis;
  model.validate(basis);
  grid.validate();

  ExactPropagator prop(build_liouvillian(model, ops));

  Trajectory traj;
  for (int k = 0; k < grid.n_samples(); ++k) {
    const double t = grid.sample_time(k);
    Matrix rho = prop.propagate(rho0, t - grid.t0);
    ObsRecord rec = make_record(t, rho, ops.pol, basis);
    enforce_state_invariants(rec, rho);
    traj.times.push_back(t);
    traj.records.push_back(std::move(rec));
    if (keep_snapshots) traj.snapshots.push_back(std::move(rho));
  }
  return traj;
}

}  // namespace depol
