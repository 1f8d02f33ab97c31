#pragma once

#include <cstdint>
#include <vector>

#include "mubtomo/tomography.hpp"

namespace mubtomo {

// Outcome of the most-negative-eigenvalue search for a (d, M) pair.
struct LambdaMinResult {
  int dim = 0;
  int measured = 0;
  double lambda_min = 0.0;
  double initial_lambda = 0.0;  // smallest eigenvalue at the start state
  Matrix optimizer_rho;    // state whose inversion estimator attains it
  Matrix optimizer_sigma;  // projector onto that smallest eigenvalue
  int restarts_used = 1;
  long iterations = 0;
  double residual = 0.0;        // max fixed-point defect norm
  bool bound_saturated = false;  // |lambda + (M-1)/d| below tolerance
  bool converged = false;
};

// Alternating minimization: project onto the smallest eigenvalue of the
// partner's inversion estimator until the fixed-point pair equations
// hold within tol (or the objective stalls below 1e-14 for five
// consecutive iterations).  The objective never increases.
LambdaMinResult lambda_min_iterate(const MubSet& m, int measured,
                                   const DensityMatrix& rho0,
                                   double tol = 1e-10, long max_iter = 10000,
                                   const Tolerances& tols = default_tolerances());

// Best (most negative) iterate over `restarts` runs seeded from
// Haar-random pure states.  Deterministic given the seed and
// independent of scheduling; runs fan out over a small thread pool.
LambdaMinResult lambda_min_scan(const MubSet& m, int measured, int restarts,
                                std::uint64_t seed, double tol = 1e-10,
                                long max_iter = 10000,
                                const Tolerances& tols = default_tolerances());

struct ConjectureRow {
  int dim = 0;
  int measured = 0;
  double lambda_min = 0.0;
  double linear_bound = 0.0;     // -(M-1)/d
  double conjectured_cap = 0.0;  // -min{(M-1)/d, 1/2 - 1/d}
  bool holds = false;
};

// Reports, per scanned (d, M), whether the sharpened lower bound holds
// for the observed value.  Purely descriptive.
std::vector<ConjectureRow> check_conjecture(
    const std::vector<LambdaMinResult>& results);

}  // namespace mubtomo
