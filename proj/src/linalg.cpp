#include "mubtomo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mubtomo {

DensityMatrix DensityMatrix::validated(Matrix m, const Tolerances& tol) {
  require_hermitian(m, tol.hermiticity);
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol.unit_trace)
    throw Error("density matrix trace " + std::to_string(tr) + " is not 1");
  const double lmin = min_eigenvalue(m, tol);
  if (lmin < tol.psd_floor)
    throw Error("matrix is not positive semidefinite: min eigenvalue " +
                std::to_string(lmin));
  return DensityMatrix(std::move(m));
}

std::vector<cplx> EigenDecomposition::eigenvector(int i) const {
  const int d = eigenvectors.dim();
  std::vector<cplx> v(static_cast<size_t>(d));
  for (int r = 0; r < d; ++r) v[static_cast<size_t>(r)] = eigenvectors(r, i);
  return v;
}

Matrix EigenDecomposition::reconstruct() const {
  const int d = eigenvectors.dim();
  Matrix out(d);
  for (int i = 0; i < d; ++i) out.add_scaled_outer(eigenvalues[static_cast<size_t>(i)], eigenvector(i));
  return out;
}

namespace {

double max_offdiag(const Matrix& a) {
  double m = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = r + 1; c < a.dim(); ++c) m = std::max(m, std::abs(a(r, c)));
  return m;
}

// One cyclic Jacobi pass; returns true when every pair was already below
// the rotation threshold.
bool jacobi_sweep(Matrix& w, Matrix& v, double thresh) {
  const int d = w.dim();
  bool clean = true;
  for (int p = 0; p < d; ++p) {
    for (int q = p + 1; q < d; ++q) {
      const cplx apq = w(p, q);
      const double mag = std::abs(apq);
      if (mag <= thresh) continue;
      clean = false;

      const double app = w(p, p).real();
      const double aqq = w(q, q).real();
      const cplx phase = apq / mag;
      const double tau = (app - aqq) / (2.0 * mag);
      const double t =
          (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = t * c;

      // columns/rows p,q of W under W <- J^dagger W J with
      // J(p,p)=c, J(p,q)=-s*phase, J(q,p)=s*conj(phase), J(q,q)=c
      for (int r = 0; r < d; ++r) {
        if (r == p || r == q) continue;
        const cplx wrp = w(r, p);
        const cplx wrq = w(r, q);
        w(r, p) = c * wrp + s * std::conj(phase) * wrq;
        w(r, q) = -s * phase * wrp + c * wrq;
        w(p, r) = std::conj(w(r, p));
        w(q, r) = std::conj(w(r, q));
      }
      w(p, p) = cplx(app + t * mag, 0.0);
      w(q, q) = cplx(aqq - t * mag, 0.0);
      w(p, q) = 0.0;
      w(q, p) = 0.0;

      for (int r = 0; r < d; ++r) {
        const cplx vrp = v(r, p);
        const cplx vrq = v(r, q);
        v(r, p) = c * vrp + s * std::conj(phase) * vrq;
        v(r, q) = -s * phase * vrp + c * vrq;
      }
    }
  }
  return clean;
}

}  // namespace

EigenDecomposition eigen_hermitian(const Matrix& a, const Tolerances& tol) {
  require_hermitian(a, tol.hermiticity);
  const int d = a.dim();
  Matrix w = symmetrize(a);
  Matrix v = Matrix::identity(d);
  const double stop = tol.jacobi_offdiag * std::max(1.0, w.frobenius_norm());

  constexpr int kMaxSweeps = 60;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (max_offdiag(w) <= stop) break;
    jacobi_sweep(w, v, stop * 0.1);
  }

  std::vector<int> order(static_cast<size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return w(i, i).real() < w(j, j).real();
  });

  EigenDecomposition out;
  out.eigenvalues.resize(static_cast<size_t>(d));
  out.eigenvectors = Matrix(d);
  for (int i = 0; i < d; ++i) {
    out.eigenvalues[static_cast<size_t>(i)] = w(order[static_cast<size_t>(i)], order[static_cast<size_t>(i)]).real();
    for (int r = 0; r < d; ++r) out.eigenvectors(r, i) = v(r, order[static_cast<size_t>(i)]);
  }
  return out;
}

double min_eigenvalue(const Matrix& a, const Tolerances& tol) {
  return eigen_hermitian(a, tol).eigenvalues.front();
}

std::pair<double, std::vector<cplx>> min_eig_pair(const Matrix& a,
                                                  const Tolerances& tol) {
  const EigenDecomposition eig = eigen_hermitian(a, tol);
  const int d = a.dim();
  const double lmin = eig.eigenvalues.front();

  // Tie-break over the near-degenerate candidates: largest-magnitude
  // first nonzero component wins.
  constexpr double kNonzero = 1e-7;
  int best = 0;
  double best_score = -1.0;
  for (int i = 0; i < d; ++i) {
    if (eig.eigenvalues[static_cast<size_t>(i)] > lmin + tol.degeneracy) break;
    for (int r = 0; r < d; ++r) {
      const double mag = std::abs(eig.eigenvectors(r, i));
      if (mag > kNonzero) {
        if (mag > best_score) {
          best_score = mag;
          best = i;
        }
        break;
      }
    }
  }

  std::vector<cplx> v = eig.eigenvector(best);
  for (const cplx& x : v) {
    if (std::abs(x) > kNonzero) {
      const cplx rot = std::conj(x) / std::abs(x);
      for (cplx& y : v) y *= rot;
      break;
    }
  }
  double nrm = 0.0;
  for (const cplx& x : v) nrm += std::norm(x);
  nrm = std::sqrt(nrm);
  for (cplx& x : v) x /= nrm;

  return {lmin, std::move(v)};
}

DensityMatrix min_eig_projector(const Matrix& a, const Tolerances& tol) {
  const auto [lmin, v] = min_eig_pair(a, tol);
  Matrix proj(a.dim());
  proj.add_scaled_outer(1.0, v);
  return DensityMatrix::unchecked(std::move(proj));
}

bool psd_within(const Matrix& a, double floor_) {
  // LDL^dagger without pivoting; a nonpositive pivot ends the recursion
  // exactly where PSD fails.
  const int d = a.dim();
  Matrix l = Matrix::identity(d);
  std::vector<double> diag(static_cast<size_t>(d), 0.0);
  const double scale = std::max(1.0, a.frobenius_norm());
  const double lo = floor_ * scale;
  for (int j = 0; j < d; ++j) {
    double dj = a(j, j).real();
    for (int k = 0; k < j; ++k) dj -= std::norm(l(j, k)) * diag[static_cast<size_t>(k)];
    if (dj < lo) return false;
    diag[static_cast<size_t>(j)] = dj;
    for (int i = j + 1; i < d; ++i) {
      cplx s = a(i, j);
      for (int k = 0; k < j; ++k)
        s -= l(i, k) * std::conj(l(j, k)) * diag[static_cast<size_t>(k)];
      l(i, j) = (dj > 0.0) ? s / dj : cplx{};
      if (dj <= 0.0 && std::abs(s) > -lo) return false;
    }
  }
  return true;
}

}  // namespace mubtomo
