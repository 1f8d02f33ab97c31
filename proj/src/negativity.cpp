#include "mubtomo/negativity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "mubtomo/rng.hpp"

namespace mubtomo {

namespace {

double pair_defect(const Matrix& est, std::span<const cplx> v, double lambda) {
  // || est |v><v| - lambda |v><v| ||_F = || (est - lambda) v ||_2
  const auto ev = est.apply(v);
  double s = 0.0;
  for (size_t i = 0; i < ev.size(); ++i) s += std::norm(ev[i] - lambda * v[i]);
  return std::sqrt(s);
}

Matrix projector_of(std::span<const cplx> v) {
  Matrix p(static_cast<int>(v.size()));
  p.add_scaled_outer(1.0, v);
  return p;
}

}  // namespace

LambdaMinResult lambda_min_iterate(const MubSet& m, int measured,
                                   const DensityMatrix& rho0, double tol,
                                   long max_iter, const Tolerances& tols) {
  if (measured < 1 || measured > m.dim() + 1)
    throw DomainError("measured basis count outside 1..d+1");

  LambdaMinResult r;
  r.dim = m.dim();
  r.measured = measured;

  Matrix rho = rho0.matrix();
  std::vector<cplx> v_sigma, v_rho;
  Matrix est_rho = ulin_of_state(rho, m, measured);
  r.initial_lambda = min_eig_pair(est_rho, tols).first;
  double lambda = 0.0;

  double prev_lambda = 2.0;
  int stall = 0;
  for (long it = 1; it <= max_iter; ++it) {
    r.iterations = it;

    // project onto the partner's smallest eigenvalue, both directions
    auto [lam_s, vs] = min_eig_pair(est_rho, tols);
    v_sigma = std::move(vs);
    const Matrix sigma = projector_of(v_sigma);
    const Matrix est_sigma = ulin_of_state(sigma, m, measured);

    auto [lam_r, vr] = min_eig_pair(est_sigma, tols);
    v_rho = std::move(vr);
    rho = projector_of(v_rho);
    est_rho = ulin_of_state(rho, m, measured);

    lambda = est_rho.expectation(v_sigma);
    const double defect_s = pair_defect(est_rho, v_sigma, lambda);
    const double defect_r = pair_defect(est_sigma, v_rho, est_sigma.expectation(v_rho));
    r.residual = std::max(defect_s, defect_r);
    if (r.residual < tol) {
      r.converged = true;
      break;
    }
    if (std::abs(lambda - prev_lambda) < 1e-14) {
      if (++stall >= 5) {
        r.converged = true;
        break;
      }
    } else {
      stall = 0;
    }
    prev_lambda = lambda;
  }

  r.lambda_min = lambda;
  r.optimizer_rho = rho;
  r.optimizer_sigma = projector_of(v_sigma);
  r.bound_saturated =
      std::abs(lambda + static_cast<double>(measured - 1) / m.dim()) <
      tols.bound_saturation;
  return r;
}

LambdaMinResult lambda_min_scan(const MubSet& m, int measured, int restarts,
                                std::uint64_t seed, double tol, long max_iter,
                                const Tolerances& tols) {
  if (restarts < 1) throw DomainError("need at least one restart");

  std::vector<LambdaMinResult> runs(static_cast<size_t>(restarts));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= restarts) return;
      Rng rng(Rng::derive(seed, (static_cast<std::uint64_t>(m.dim()) << 20) |
                                    static_cast<std::uint64_t>(measured),
                          static_cast<std::uint64_t>(i)));
      const auto start = DensityMatrix::unchecked(random_pure_projector(m.dim(), rng));
      runs[static_cast<size_t>(i)] =
          lambda_min_iterate(m, measured, start, tol, max_iter, tols);
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned nthreads = std::min<unsigned>(hw, static_cast<unsigned>(restarts));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // merge is a plain minimum, first index wins ties
  size_t best = 0;
  for (size_t i = 1; i < runs.size(); ++i)
    if (runs[i].lambda_min < runs[best].lambda_min) best = i;

  LambdaMinResult out = runs[best];
  out.restarts_used = restarts;
  return out;
}

std::vector<ConjectureRow> check_conjecture(
    const std::vector<LambdaMinResult>& results) {
  std::vector<ConjectureRow> rows;
  rows.reserve(results.size());
  for (const auto& r : results) {
    ConjectureRow row;
    row.dim = r.dim;
    row.measured = r.measured;
    row.lambda_min = r.lambda_min;
    row.linear_bound = -static_cast<double>(r.measured - 1) / r.dim;
    row.conjectured_cap =
        -std::min(static_cast<double>(r.measured - 1) / r.dim,
                  0.5 - 1.0 / r.dim);
    row.holds = r.lambda_min >= row.conjectured_cap - 1e-9;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace mubtomo
