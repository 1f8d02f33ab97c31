#pragma once

#include <cstdint>
#include <string>

#include "mubtomo/tomography.hpp"

namespace mubtomo {

// Measures of how far a d-outcome distribution sits from uniform:
// 0 at uniform, 1 at deterministic, convex in between.
enum class Predictability { entropic, purity, betting };

Predictability predictability_from_name(const std::string& name);
std::string predictability_name(Predictability kind);

// entropic: sum p log_d(p d); purity: d/(d-1) sum (p - 1/d)^2;
// betting: max p - min p (defined for d = 3, used as the natural
// extension elsewhere).
double predictability(std::span<const double> p, Predictability kind);

struct LeastBiasConfig {
  double mu = 1e-4;     // weight of the unmeasured-bias term
  double epsilon = 0.0;  // step size; <= 0 picks 0.1/d
  double tol = 1e-10;   // extremal-equation residual target
  long max_iter = 200000;
  Predictability measure = Predictability::entropic;
  bool auto_tune_mu = false;     // halve mu until the estimator settles
  bool force_iteration = false;  // run even when inversion is already physical
  bool validate_iterates = false;  // audit trace/eigenvalues every step
};

struct EstimatorResult {
  std::string kind;
  Matrix estimator;                 // PSD, unit trace
  std::vector<double> eigenvalues;  // ascending
  double min_eigenvalue = 0.0;
  double shannon_unmeasured = 0.0;
  double vn_entropy = 0.0;
  long iterations = 0;
  double residual = 0.0;
  bool converged = true;
  double constraint_defect = 0.0;  // max measured-probability deviation
  double snap_distance = 0.0;  // Frobenius move of the final feasibility snap
  std::uint64_t seed = 0;

  // iteration audit (least_bias with validate_iterates)
  long ascent_violations = 0;
  double max_trace_defect = 0.0;
  double min_iterate_eigenvalue = 0.0;

  // Monte-Carlo diagnostics (bayes_mean)
  double standard_error = 0.0;
  double effective_samples = 0.0;
  bool sampling_ok = true;
};

// Shannon entropy (natural log) of the outcome distributions of the
// unmeasured bases, summed over them.
double shannon_unmeasured(const Matrix& rho, const MubSet& m, int measured);

// -Tr(rho ln rho) over the eigenvalues, 0 ln 0 = 0.
double von_neumann_entropy(const Matrix& rho,
                           const Tolerances& tol = default_tolerances());

// Figure of merit: mock log-likelihood of the measured rows plus mu
// times the unmeasured-bias term for the configured measure.  Returns
// -inf when a measured outcome with nonzero probability has vanishing
// expectation.
double dmu_objective(const Matrix& rho, const ProbabilityTable& t,
                     const MubSet& m, const LeastBiasConfig& cfg);

// Gradient of dmu_objective in the sense dD = Tr(d rho W); the betting
// measure uses an equal-split subgradient at ties.
Matrix gradient_W(const Matrix& rho, const ProbabilityTable& t, const MubSet& m,
                  const LeastBiasConfig& cfg);

// Physical estimator maximizing the unmeasured-outcome entropy (or
// minimizing the configured bias measure) subject to the measured
// probabilities: multiplicative gradient ascent from the maximally
// mixed state.  Returns the inversion estimator directly whenever that
// is already PSD (it is the exact optimum then).
EstimatorResult least_bias(const ProbabilityTable& t, const MubSet& m,
                           const LeastBiasConfig& cfg = {},
                           const Tolerances& tols = default_tolerances());

// Constraint-satisfying estimator with the largest von Neumann entropy
// (projected gradient ascent over the unmeasured coordinates).
EstimatorResult max_vn_estimator(const ProbabilityTable& t, const MubSet& m,
                                 const Tolerances& tols = default_tolerances());

// Constraint-satisfying estimator with the largest minimal eigenvalue
// (projected subgradient ascent, diminishing steps).
EstimatorResult max_mineig_estimator(const ProbabilityTable& t, const MubSet& m,
                                     const Tolerances& tols = default_tolerances());

// Mean over the uniform distribution on the unmeasured coordinates
// restricted to the PSD body (hit-and-run walk with a membership
// oracle).  Deterministic given the seed.
EstimatorResult bayes_mean_estimator(const ProbabilityTable& t, const MubSet& m,
                                     long n_samples, std::uint64_t seed,
                                     const Tolerances& tols = default_tolerances());

}  // namespace mubtomo
