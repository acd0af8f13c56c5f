// Wall-time comparison of the phase-ensemble Monte Carlo at one worker
// thread (serial reference) versus the OpenMP default, verifying that the
// averaged trajectories are bit-identical.

#include <chrono>
#include <cstdio>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "depol/bath.hpp"

using namespace depol;

namespace {

Trajectory run(int n_threads, int n_samples) {
  FockBasis basis(1, 2);
  CompositeBasis composite(basis, 1);
  std::vector<AtomSpec> atoms = {{0.02, 1.0, 0.01, 100.0}};

  Matrix rho0 = Matrix::Zero(basis.dim(), basis.dim());
  rho0(basis.index({1, 0}), basis.index({1, 0})) = 1.0;

  const double gamma = gamma_effective(atoms);
  TimeGrid grid{0.0, 2.0 / gamma, 20, 1};

  EnsembleOptions opts;
  opts.n_samples = n_samples;
  opts.seed = 42;
  opts.n_threads = n_threads;
  return run_phase_ensemble(atoms, composite, rho0, grid, opts);
}

bool identical(const Trajectory& a, const Trajectory& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    if (std::memcmp(&a.records[k].sx, &b.records[k].sx, sizeof(double)) != 0 ||
        std::memcmp(&a.records[k].sz, &b.records[k].sz, sizeof(double)) != 0 ||
        std::memcmp(&a.records[k].p, &b.records[k].p, sizeof(double)) != 0)
      return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const int n_samples = argc > 1 ? std::atoi(argv[1]) : 64;
#ifdef _OPENMP
  const int max_threads = omp_get_max_threads();
#else
  const int max_threads = 1;
#endif

  std::printf("phase ensemble, %d samples, 1 atom, N_max=2\n", n_samples);

  auto t0 = std::chrono::steady_clock::now();
  Trajectory serial = run(1, n_samples);
  auto t1 = std::chrono::steady_clock::now();
  Trajectory parallel = run(max_threads, n_samples);
  auto t2 = std::chrono::steady_clock::now();

  const double ts = std::chrono::duration<double>(t1 - t0).count();
  const double tp = std::chrono::duration<double>(t2 - t1).count();
  std::printf("serial (1 thread):      %8.3f s\n", ts);
  std::printf("parallel (%d threads):  %8.3f s  (speedup %.2fx)\n", max_threads,
              tp, ts / tp);

  if (!identical(serial, parallel)) {
    std::printf("FAIL: averaged trajectories differ between thread counts\n");
    return 1;
  }
  std::printf("averaged trajectories bit-identical across thread counts\n");
  return 0;
}
