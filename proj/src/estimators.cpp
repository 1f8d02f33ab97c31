#include "mubtomo/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mubtomo/rng.hpp"

namespace mubtomo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Indices of the (near-)largest and (near-)smallest entries.  The tie
// window must cover the per-step movement of the probabilities so that
// iterates zigzagging across a tie surface see the averaged subgradient
// instead of flipping sides every step.
void tied_extremes(std::span<const double> p, double tie_band,
                   std::vector<int>& arg_max, std::vector<int>& arg_min) {
  arg_max.clear();
  arg_min.clear();
  double hi = -kInf, lo = kInf;
  for (double x : p) {
    hi = std::max(hi, x);
    lo = std::min(lo, x);
  }
  for (int i = 0; i < static_cast<int>(p.size()); ++i) {
    if (p[static_cast<size_t>(i)] >= hi - tie_band) arg_max.push_back(i);
    if (p[static_cast<size_t>(i)] <= lo + tie_band) arg_min.push_back(i);
  }
}

double tie_band_for(const LeastBiasConfig& cfg, int d) {
  const double eps = cfg.epsilon > 0.0 ? cfg.epsilon : 0.1 / d;
  return std::max(1e-5, 50.0 * eps * cfg.mu / std::log(static_cast<double>(d)));
}

}  // namespace

Predictability predictability_from_name(const std::string& name) {
  if (name == "entropic") return Predictability::entropic;
  if (name == "purity") return Predictability::purity;
  if (name == "betting") return Predictability::betting;
  throw DomainError("unknown predictability measure '" + name + "'");
}

std::string predictability_name(Predictability kind) {
  switch (kind) {
    case Predictability::entropic: return "entropic";
    case Predictability::purity: return "purity";
    case Predictability::betting: return "betting";
  }
  return "?";
}

double predictability(std::span<const double> p, Predictability kind) {
  const int d = static_cast<int>(p.size());
  switch (kind) {
    case Predictability::entropic: {
      double s = 0.0;
      for (double x : p) s += xlnx(x);
      return (s + std::log(static_cast<double>(d))) / std::log(static_cast<double>(d));
    }
    case Predictability::purity: {
      double s = 0.0;
      for (double x : p) {
        const double dx = x - 1.0 / d;
        s += dx * dx;
      }
      return s * d / (d - 1.0);
    }
    case Predictability::betting: {
      double hi = -kInf, lo = kInf;
      for (double x : p) {
        hi = std::max(hi, x);
        lo = std::min(lo, x);
      }
      return hi - lo;
    }
  }
  return 0.0;
}

double shannon_unmeasured(const Matrix& rho, const MubSet& m, int measured) {
  const int d = m.dim();
  double h = 0.0;
  for (int b = measured; b <= d; ++b)
    for (int k = 0; k < d; ++k) h -= xlnx(std::max(0.0, m.expectation(rho, b, k)));
  return h;
}

double von_neumann_entropy(const Matrix& rho, const Tolerances& tol) {
  double s = 0.0;
  for (double v : eigen_hermitian(rho, tol).eigenvalues) s -= xlnx(std::max(0.0, v));
  return s;
}

namespace {

// expectations for every basis of the set; measured rows first
std::vector<double> all_expectations(const Matrix& rho, const MubSet& m) {
  return expectation_table(rho, m, m.dim() + 1);
}

double objective_from_expectations(std::span<const double> t_all,
                                   const ProbabilityTable& t, const MubSet& m,
                                   const LeastBiasConfig& cfg) {
  const int d = m.dim();
  double val = 0.0;
  for (int b = 0; b < t.measured; ++b)
    for (int k = 0; k < d; ++k) {
      const double p = t.at(b, k);
      if (p <= 0.0) continue;
      const double tt = t_all[static_cast<size_t>(b) * d + static_cast<size_t>(k)];
      if (tt <= 0.0) return -kInf;
      val += p * std::log(tt);
    }

  if (cfg.measure == Predictability::entropic) {
    double h = 0.0;
    for (int b = t.measured; b <= d; ++b)
      for (int k = 0; k < d; ++k)
        h -= xlnx(std::max(0.0, t_all[static_cast<size_t>(b) * d + static_cast<size_t>(k)]));
    val += cfg.mu * h;
  } else {
    const double scale = cfg.mu / std::log(static_cast<double>(d));
    std::vector<double> row(static_cast<size_t>(d));
    for (int b = t.measured; b <= d; ++b) {
      for (int k = 0; k < d; ++k)
        row[static_cast<size_t>(k)] =
            std::max(0.0, t_all[static_cast<size_t>(b) * d + static_cast<size_t>(k)]);
      val -= scale * predictability(row, cfg.measure);
    }
  }
  return val;
}

Matrix gradient_from_expectations(std::span<const double> t_all,
                                  const ProbabilityTable& t, const MubSet& m,
                                  const LeastBiasConfig& cfg) {
  const int d = m.dim();
  Matrix w(d);
  for (int b = 0; b < t.measured; ++b)
    for (int k = 0; k < d; ++k) {
      const double p = t.at(b, k);
      if (p <= 0.0) continue;
      const double tt = std::max(
          t_all[static_cast<size_t>(b) * d + static_cast<size_t>(k)], 1e-300);
      w.add_scaled_outer(p / tt, m.ket(b, k));
    }

  if (cfg.measure == Predictability::entropic) {
    for (int b = t.measured; b <= d; ++b)
      for (int k = 0; k < d; ++k) {
        const double tt = std::max(
            t_all[static_cast<size_t>(b) * d + static_cast<size_t>(k)], 1e-300);
        w.add_scaled_outer(-cfg.mu * std::log(tt), m.ket(b, k));
      }
  } else if (cfg.measure == Predictability::purity) {
    const double scale = cfg.mu / std::log(static_cast<double>(d));
    const double slope = 2.0 * d / (d - 1.0);
    for (int b = t.measured; b <= d; ++b)
      for (int k = 0; k < d; ++k) {
        const double tt = t_all[static_cast<size_t>(b) * d + static_cast<size_t>(k)];
        w.add_scaled_outer(-scale * slope * (tt - 1.0 / d), m.ket(b, k));
      }
  } else {
    const double scale = cfg.mu / std::log(static_cast<double>(d));
    const double band = tie_band_for(cfg, d);
    std::vector<int> arg_max, arg_min;
    for (int b = t.measured; b <= d; ++b) {
      tied_extremes(
          std::span<const double>(t_all.data() + static_cast<size_t>(b) * d,
                                  static_cast<size_t>(d)),
          band, arg_max, arg_min);
      for (int k : arg_max)
        w.add_scaled_outer(-scale / static_cast<double>(arg_max.size()),
                           m.ket(b, k));
      for (int k : arg_min)
        w.add_scaled_outer(scale / static_cast<double>(arg_min.size()),
                           m.ket(b, k));
    }
  }
  return w;
}

// Alternating orthogonal projections between the affine constraint set
// (measured rows and unit trace; the full hyperplane coordinates are an
// orthogonal system, so replacing the measured block is the exact
// projection) and the PSD cone (eigenvalue clipping).  Ends on the
// affine side: measured rows exact, smallest eigenvalue above -1e-12.
Matrix snap_to_constraints(Matrix x, const ProbabilityTable& t, const MubSet& m,
                           const Tolerances& tols) {
  const int d = m.dim();
  const Matrix target = ulin_matrix(t, m);

  auto rebuild = [&](const Matrix& y) {
    Matrix out = target;
    for (int b = t.measured; b <= d; ++b) {
      double row[64];
      double row_sum = 0.0;
      for (int k = 0; k < d; ++k) {
        row[k] = m.expectation(y, b, k);
        row_sum += row[k];
      }
      for (int k = 0; k < d; ++k)
        out.add_scaled_outer(row[k] - row_sum / d, m.ket(b, k));
    }
    return out;
  };

  x = rebuild(x);
  for (int round = 0; round < 500; ++round) {
    const auto eig = eigen_hermitian(x, tols);
    if (eig.eigenvalues.front() >= -1e-12) break;
    Matrix clipped(d);
    for (int i = 0; i < d; ++i) {
      const double v = eig.eigenvalues[static_cast<size_t>(i)];
      if (v > 0.0) clipped.add_scaled_outer(v, eig.eigenvector(i));
    }
    x = rebuild(clipped);
  }
  return x;
}

double measured_defect(const Matrix& x, const ProbabilityTable& t,
                       const MubSet& m) {
  double defect = 0.0;
  for (int b = 0; b < t.measured; ++b)
    for (int k = 0; k < t.dim; ++k)
      defect = std::max(defect, std::abs(m.expectation(x, b, k) - t.at(b, k)));
  return defect;
}

void fill_common(EstimatorResult& r, const ProbabilityTable& t, const MubSet& m,
                 const Tolerances& tols) {
  const auto eig = eigen_hermitian(r.estimator, tols);
  r.eigenvalues = eig.eigenvalues;
  r.min_eigenvalue = eig.eigenvalues.front();
  r.shannon_unmeasured = shannon_unmeasured(r.estimator, m, t.measured);
  double s = 0.0;
  for (double v : eig.eigenvalues) s -= xlnx(std::max(0.0, v));
  r.vn_entropy = s;
  r.constraint_defect = measured_defect(r.estimator, t, m);
}

EstimatorResult reconstruct_result(const ProbabilityTable& t, const MubSet& m,
                                   const std::string& kind,
                                   const Tolerances& tols) {
  EstimatorResult r;
  r.kind = kind;
  r.estimator = full_reconstruct(t, m, tols).matrix();
  r.converged = true;
  fill_common(r, t, m, tols);
  return r;
}

// One multiplicative-ascent run at fixed mu.  Returns the final
// fixed-point residual; updates rho, audit counters and the iteration
// count in place.
double ascent_stage(Matrix& rho, const ProbabilityTable& t, const MubSet& m,
                    const LeastBiasConfig& cfg, const Tolerances& tols,
                    double stop_residual, long budget, EstimatorResult& r) {
  const int d = m.dim();
  const double eps0 = cfg.epsilon > 0.0 ? cfg.epsilon : 0.1 / d;
  double eps = eps0;
  std::vector<double> t_all = all_expectations(rho, m);
  double objective = objective_from_expectations(t_all, t, m, cfg);
  double residual = kInf;

  // The betting objective is piecewise linear; at its kinks the
  // fixed-point residual has a subgradient-selection floor, so progress
  // of the objective decides instead.
  const bool nonsmooth = cfg.measure == Predictability::betting;
  long since_progress = 0;

  for (long it = 1; it <= budget; ++it) {
    ++r.iterations;
    const Matrix w = gradient_from_expectations(t_all, t, m, cfg);
    const double c = hs_inner(w, rho);
    const Matrix w_rho = w * rho;
    double res2 = 0.0;  // ||W rho - c rho||_F
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) res2 += std::norm(w_rho(i, j) - c * rho(i, j));
    residual = std::sqrt(res2);
    if (residual < stop_residual) break;

    // Delta = W - c; candidate = (1+eps Delta) rho (1+eps Delta) / norm
    Matrix delta = w;
    for (int i = 0; i < d; ++i) delta(i, i) -= c;
    const Matrix delta_rho = delta * rho;
    double d2r = 0.0;  // Tr(Delta^2 rho)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        d2r += (delta(i, j) * delta_rho(j, i)).real();

    bool accepted = false;
    while (!accepted) {
      Matrix cand = rho;
      // rho + eps (D rho + rho D) + eps^2 D rho D
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          cand(i, j) += eps * (delta_rho(i, j) + std::conj(delta_rho(j, i)));
      const Matrix dr_d = delta_rho * delta;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) cand(i, j) += eps * eps * std::conj(dr_d(j, i));
      cand *= 1.0 / (1.0 + eps * eps * d2r);

      auto t_cand = all_expectations(cand, m);
      const double cand_objective = objective_from_expectations(t_cand, t, m, cfg);
      if (cand_objective >= objective - 1e-15 * std::abs(objective)) {
        if (cand_objective < objective - 1e-12) ++r.ascent_violations;
        since_progress =
            (cand_objective - objective > 1e-15 * std::max(1.0, std::abs(objective)))
                ? 0
                : since_progress + 1;
        rho = std::move(cand);
        t_all = std::move(t_cand);
        objective = cand_objective;
        accepted = true;
        eps = std::min(eps * 1.2, eps0);
      } else {
        eps *= 0.5;
        if (eps < 1e-8 * eps0) break;  // stalled at rounding level
      }
    }
    if (cfg.validate_iterates) {
      r.max_trace_defect =
          std::max(r.max_trace_defect, std::abs(rho.trace().real() - 1.0));
      r.min_iterate_eigenvalue =
          std::min(r.min_iterate_eigenvalue,
                   eigen_hermitian(rho, tols).eigenvalues.front());
    }
    if (!accepted) break;
    if (nonsmooth && since_progress > 3000) break;
  }
  return residual;
}

EstimatorResult least_bias_single(const ProbabilityTable& t, const MubSet& m,
                                  const LeastBiasConfig& cfg,
                                  const Tolerances& tols) {
  const int d = m.dim();
  EstimatorResult r;
  r.kind = "least_bias_" + predictability_name(cfg.measure);

  const UlinResult ulin = ulin_estimator(t, m, tols);
  if (ulin.is_physical && !cfg.force_iteration) {
    // the inversion estimator is the exact optimum whenever it is PSD
    r.estimator = ulin.matrix;
    r.iterations = 0;
    r.converged = true;
    const auto t_all = all_expectations(r.estimator, m);
    const Matrix w = gradient_from_expectations(t_all, t, m, cfg);
    const double c = hs_inner(w, r.estimator);
    r.residual = (w * r.estimator - c * r.estimator).frobenius_norm();
    fill_common(r, t, m, tols);
    return r;
  }

  Matrix rho = (1.0 / d) * Matrix::identity(d);
  r.min_iterate_eigenvalue = 1.0 / d;
  r.converged = false;

  // Continuation in mu: the bias term only sets the pace of the free
  // coordinates (their target moves by O(mu)), so early stages run with
  // a larger weight and the final stage at the configured mu decides.
  const double factors[] = {64.0, 16.0, 4.0};
  LeastBiasConfig stage_cfg = cfg;
  for (double f : factors) {
    stage_cfg.mu = cfg.mu * f;
    const double stage_tol = std::max(cfg.tol * f * 10.0, cfg.tol);
    ascent_stage(rho, t, m, stage_cfg, tols, stage_tol, cfg.max_iter / 8, r);
  }
  stage_cfg.mu = cfg.mu;
  const long final_budget = std::max<long>(1, cfg.max_iter - r.iterations);
  r.residual = ascent_stage(rho, t, m, stage_cfg, tols, cfg.tol, final_budget, r);
  // betting stages end on objective stall; the others on the residual
  r.converged = r.residual < cfg.tol ||
                (cfg.measure == Predictability::betting &&
                 r.iterations < cfg.max_iter);

  // The converged iterate extremizes the mu-regularized objective, whose
  // maximizer carries an O(mu) bias in the measured rows.  Deliver the
  // nearest matrix that meets the constraints exactly; the residual
  // reported is the iteration's own fixed-point defect.
  r.estimator = snap_to_constraints(rho, t, m, tols);
  r.snap_distance = (r.estimator - rho).frobenius_norm();
  fill_common(r, t, m, tols);
  return r;
}

}  // namespace

double dmu_objective(const Matrix& rho, const ProbabilityTable& t,
                     const MubSet& m, const LeastBiasConfig& cfg) {
  return objective_from_expectations(all_expectations(rho, m), t, m, cfg);
}

Matrix gradient_W(const Matrix& rho, const ProbabilityTable& t, const MubSet& m,
                  const LeastBiasConfig& cfg) {
  return gradient_from_expectations(all_expectations(rho, m), t, m, cfg);
}

EstimatorResult least_bias(const ProbabilityTable& t, const MubSet& m,
                           const LeastBiasConfig& cfg, const Tolerances& tols) {
  if (t.dim != m.dim())
    throw DimensionMismatchError("table and basis-set dimensions differ");
  if (t.measured == t.dim + 1) {
    auto r = reconstruct_result(
        t, m, "least_bias_" + predictability_name(cfg.measure), tols);
    return r;
  }

  EstimatorResult r = least_bias_single(t, m, cfg, tols);
  if (!cfg.auto_tune_mu) return r;

  LeastBiasConfig c2 = cfg;
  for (int h = 0; h < 6; ++h) {
    c2.mu *= 0.5;
    EstimatorResult next = least_bias_single(t, m, c2, tols);
    const double moved = max_abs_diff(next.estimator, r.estimator);
    r = std::move(next);
    if (moved < 1e-6) break;
  }
  return r;
}

// ---------------------------------------------------------------------------
// estimators over the free (unmeasured) coordinates

namespace {

// rho(w) = inversion matrix of the table + sum_{b >= M} w_bk P_bk with
// zero-sum rows; measured probabilities hold for every such w.
struct FreeCoords {
  const MubSet& m;
  int measured;
  int d;
  int rows;
  Matrix base;

  FreeCoords(const ProbabilityTable& t, const MubSet& mm)
      : m(mm), measured(t.measured), d(mm.dim()), rows(mm.dim() + 1 - t.measured),
        base(ulin_matrix(t, mm)) {}

  int size() const { return rows * d; }

  Matrix state(std::span<const double> w) const {
    Matrix x = base;
    for (int b = 0; b < rows; ++b)
      for (int k = 0; k < d; ++k) {
        const double c = w[static_cast<size_t>(b) * d + static_cast<size_t>(k)];
        if (c != 0.0) x.add_scaled_outer(c, m.ket(measured + b, k));
      }
    return x;
  }

  void project(std::vector<double>& g) const {
    for (int b = 0; b < rows; ++b) {
      double mean = 0.0;
      for (int k = 0; k < d; ++k) mean += g[static_cast<size_t>(b) * d + static_cast<size_t>(k)];
      mean /= d;
      for (int k = 0; k < d; ++k) g[static_cast<size_t>(b) * d + static_cast<size_t>(k)] -= mean;
    }
  }
};

struct MineigRun {
  std::vector<double> w;
  double value = -kInf;
  long iterations = 0;
};

// Projected subgradient ascent on the smallest eigenvalue; diminishing
// geometric steps, best iterate kept.
MineigRun mineig_ascent(const FreeCoords& fc, long max_iter,
                        const Tolerances& tols) {
  std::vector<double> w(static_cast<size_t>(fc.size()), 0.0);
  std::vector<double> g(w.size());
  MineigRun best;
  best.w = w;

  double step = 0.25;
  const double decay = 0.7;
  const long epoch = std::max<long>(200, 40 * fc.size());
  for (long it = 0; it < max_iter; ++it) {
    const Matrix x = fc.state(w);
    const auto [lmin, v] = min_eig_pair(x, tols);
    if (lmin > best.value) {
      best.value = lmin;
      best.w = w;
      best.iterations = it + 1;
    }
    for (int b = 0; b < fc.rows; ++b)
      for (int k = 0; k < fc.d; ++k) {
        cplx dot = 0.0;
        const auto ket = fc.m.ket(fc.measured + b, k);
        for (int j = 0; j < fc.d; ++j)
          dot += std::conj(ket[static_cast<size_t>(j)]) * v[static_cast<size_t>(j)];
        g[static_cast<size_t>(b) * fc.d + static_cast<size_t>(k)] = std::norm(dot);
      }
    fc.project(g);
    double gn = 0.0;
    for (double x2 : g) gn += x2 * x2;
    gn = std::sqrt(gn);
    if (gn < 1e-14) break;  // eigenvector gradient vanished: flat point
    if ((it + 1) % epoch == 0) step *= decay;
    if (step < 1e-12) break;
    for (size_t i = 0; i < w.size(); ++i) w[i] += step * g[i] / gn;
  }
  return best;
}

double entropy_of(const EigenDecomposition& eig) {
  double s = 0.0;
  for (double v : eig.eigenvalues) s -= xlnx(std::max(0.0, v));
  return s;
}

}  // namespace

EstimatorResult max_mineig_estimator(const ProbabilityTable& t, const MubSet& m,
                                     const Tolerances& tols) {
  if (t.measured == t.dim + 1) return reconstruct_result(t, m, "max_mineig", tols);

  const FreeCoords fc(t, m);
  const MineigRun run = mineig_ascent(fc, 60000, tols);

  EstimatorResult r;
  r.kind = "max_mineig";
  r.estimator = fc.state(run.w);
  r.iterations = run.iterations;
  r.converged = run.value > -1e-9;
  r.residual = 0.0;
  fill_common(r, t, m, tols);
  return r;
}

EstimatorResult max_vn_estimator(const ProbabilityTable& t, const MubSet& m,
                                 const Tolerances& tols) {
  if (t.measured == t.dim + 1) return reconstruct_result(t, m, "max_vn", tols);

  const FreeCoords fc(t, m);
  EstimatorResult r;
  r.kind = "max_vn";

  // strictly interior start
  const MineigRun start = mineig_ascent(fc, 20000, tols);
  std::vector<double> w = start.w;
  if (start.value < 1e-11) {
    // no interior: the feasible set degenerates to (nearly) one point
    r.estimator = fc.state(w);
    r.converged = false;
    r.iterations = start.iterations;
    fill_common(r, t, m, tols);
    return r;
  }

  EigenDecomposition eig = eigen_hermitian(fc.state(w), tols);
  double s_cur = entropy_of(eig);
  std::vector<double> g(static_cast<size_t>(fc.size()));
  double step = 0.1;
  long it = 0;
  long stalled = 0;
  r.converged = false;
  const long max_iter = 100000;
  for (it = 1; it <= max_iter; ++it) {
    // dS/dw_bk = -<psi| ln rho |psi> - 1
    for (int b = 0; b < fc.rows; ++b)
      for (int k = 0; k < fc.d; ++k) {
        const auto ket = fc.m.ket(fc.measured + b, k);
        double val = 0.0;
        for (int i = 0; i < fc.d; ++i) {
          cplx dot = 0.0;
          for (int j = 0; j < fc.d; ++j)
            dot += std::conj(eig.eigenvectors(j, i)) * ket[static_cast<size_t>(j)];
          const double lam = std::max(eig.eigenvalues[static_cast<size_t>(i)], 1e-300);
          val += std::log(lam) * std::norm(dot);
        }
        g[static_cast<size_t>(b) * fc.d + static_cast<size_t>(k)] = -val - 1.0;
      }
    fc.project(g);
    double g2 = 0.0;
    for (double x : g) g2 += x * x;
    if (std::sqrt(g2) < 1e-10) {
      r.converged = true;
      break;
    }

    bool accepted = false;
    while (step >= 1e-14) {
      std::vector<double> w2 = w;
      for (size_t i = 0; i < w.size(); ++i) w2[i] += step * g[i];
      const Matrix cand = fc.state(w2);
      const EigenDecomposition ce = eigen_hermitian(cand, tols);
      if (ce.eigenvalues.front() > 0.0) {
        const double s_new = entropy_of(ce);
        if (s_new >= s_cur + 1e-4 * step * g2) {
          stalled = (s_new - s_cur < 1e-14 * std::max(1.0, std::abs(s_cur)))
                        ? stalled + 1
                        : 0;
          w = std::move(w2);
          eig = ce;
          s_cur = s_new;
          step = std::min(step * 1.5, 100.0);
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted || stalled > 200) {
      r.converged = std::sqrt(g2) < 1e-6;
      break;
    }
  }
  r.iterations = it;
  r.estimator = fc.state(w);
  fill_common(r, t, m, tols);
  return r;
}

EstimatorResult bayes_mean_estimator(const ProbabilityTable& t, const MubSet& m,
                                     long n_samples, std::uint64_t seed,
                                     const Tolerances& tols) {
  EstimatorResult r;
  r.kind = "bayes_mean";
  r.seed = seed;
  if (t.measured == t.dim + 1) {
    r = reconstruct_result(t, m, "bayes_mean", tols);
    r.seed = seed;
    return r;
  }
  if (n_samples < 10000) throw DomainError("bayes_mean needs at least 10^4 samples");

  const FreeCoords fc(t, m);
  const int nfree = fc.size();

  // start from the deepest interior point
  std::vector<double> w = mineig_ascent(fc, 20000, tols).w;

  Rng rng(Rng::derive(seed, 0xb4e5, static_cast<std::uint64_t>(t.measured)));
  std::vector<double> dir(static_cast<size_t>(nfree));
  std::vector<double> mean_w(static_cast<size_t>(nfree), 0.0);

  const int dim_free = fc.rows * (fc.d - 1);
  const long burn_in = 10L * dim_free;
  const int thin = 5;
  const long total_steps = burn_in + static_cast<long>(n_samples) * thin;

  // batch means for the error estimate
  const int n_batches = 20;
  const long batch_len = std::max<long>(1, n_samples / n_batches);
  std::vector<std::vector<double>> batch_sum(
      static_cast<size_t>(n_batches), std::vector<double>(static_cast<size_t>(nfree), 0.0));
  std::vector<long> batch_count(static_cast<size_t>(n_batches), 0);
  std::vector<double> sum_sq(static_cast<size_t>(nfree), 0.0);

  auto psd_at = [&](const Matrix& base_state, const Matrix& u, double tt) {
    Matrix x = base_state;
    for (int i = 0; i < fc.d; ++i)
      for (int j = 0; j < fc.d; ++j) x(i, j) += tt * u(i, j);
    return psd_within(x, -1e-12);
  };

  long collected = 0;
  for (long step_i = 0; step_i < total_steps; ++step_i) {
    // random direction in the zero-row-sum subspace
    for (auto& x : dir) x = rng.normal();
    fc.project(dir);
    double nrm = 0.0;
    for (double x : dir) nrm += x * x;
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) continue;
    for (auto& x : dir) x /= nrm;

    const Matrix base_state = fc.state(w);
    Matrix u(fc.d);
    for (int b = 0; b < fc.rows; ++b)
      for (int k = 0; k < fc.d; ++k)
        u.add_scaled_outer(dir[static_cast<size_t>(b) * fc.d + static_cast<size_t>(k)],
                           fc.m.ket(fc.measured + b, k));

    // chord endpoints by doubling + bisection
    auto boundary = [&](double sign) {
      double lo = 0.0, hi = sign;
      int guard = 0;
      while (psd_at(base_state, u, hi) && guard++ < 40) {
        lo = hi;
        hi *= 2.0;
      }
      for (int b = 0; b < 50; ++b) {
        const double mid = 0.5 * (lo + hi);
        (psd_at(base_state, u, mid) ? lo : hi) = mid;
      }
      return lo;
    };
    const double t_plus = boundary(0.5);
    const double t_minus = boundary(-0.5);

    const double tt = t_minus + (t_plus - t_minus) * rng.uniform();
    for (size_t i = 0; i < w.size(); ++i) w[i] += tt * dir[i];

    if (step_i >= burn_in && (step_i - burn_in) % thin == thin - 1) {
      const long b = std::min<long>(collected / batch_len, n_batches - 1);
      for (size_t i = 0; i < w.size(); ++i) {
        mean_w[i] += w[i];
        sum_sq[i] += w[i] * w[i];
        batch_sum[static_cast<size_t>(b)][i] += w[i];
      }
      ++batch_count[static_cast<size_t>(b)];
      ++collected;
      if (collected >= n_samples) break;
    }
  }

  for (auto& x : mean_w) x /= static_cast<double>(collected);
  r.estimator = fc.state(mean_w);
  r.iterations = collected;

  // batch-mean standard error; ESS per coordinate from the ratio of the
  // plain sample variance to the batch-mean variance
  double max_se = 0.0, min_ess = kInf;
  for (int i = 0; i < nfree; ++i) {
    const double mu = mean_w[static_cast<size_t>(i)];
    const double var =
        sum_sq[static_cast<size_t>(i)] / static_cast<double>(collected) - mu * mu;
    double bvar = 0.0;
    int used = 0;
    for (int b = 0; b < n_batches; ++b) {
      if (batch_count[static_cast<size_t>(b)] == 0) continue;
      const double bm = batch_sum[static_cast<size_t>(b)][static_cast<size_t>(i)] /
                        static_cast<double>(batch_count[static_cast<size_t>(b)]);
      bvar += (bm - mu) * (bm - mu);
      ++used;
    }
    if (used < 2) continue;
    bvar /= (used - 1);
    max_se = std::max(max_se, std::sqrt(bvar / used));
    if (bvar > 0.0 && var > 0.0) {
      const double tau = std::max(1.0, batch_len * bvar / var);
      min_ess = std::min(min_ess, static_cast<double>(collected) / tau);
    }
  }
  r.standard_error = max_se;
  r.effective_samples = std::isfinite(min_ess) ? min_ess : 0.0;
  r.sampling_ok = collected >= n_samples && r.effective_samples >= 100;
  r.converged = r.sampling_ok;
  fill_common(r, t, m, tols);
  return r;
}

}  // namespace mubtomo
