#include "mubtomo/tomography.hpp"

#include <cmath>
#include <string>

namespace mubtomo {

ProbabilityTable ProbabilityTable::validated(int dim, int measured,
                                             std::vector<double> probs,
                                             const Tolerances& tol) {
  if (dim < 2) throw DomainError("dimension must be at least 2");
  if (measured < 1 || measured > dim + 1)
    throw DomainError("measured basis count " + std::to_string(measured) +
                      " outside 1.." + std::to_string(dim + 1));
  if (probs.size() != static_cast<size_t>(dim) * measured)
    throw InconsistentDataError("probability table has wrong shape");
  for (int b = 0; b < measured; ++b) {
    double sum = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double p = probs[static_cast<size_t>(b) * dim + static_cast<size_t>(k)];
      if (p < -tol.table_row || p > 1.0 + tol.table_row)
        throw InconsistentDataError("probability out of range in row " +
                                    std::to_string(b + 1));
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol.table_row)
      throw InconsistentDataError("row " + std::to_string(b + 1) +
                                  " sums to " + std::to_string(sum));
  }
  ProbabilityTable t;
  t.dim = dim;
  t.measured = measured;
  t.probs = std::move(probs);
  return t;
}

WCoordinates WCoordinates::from(const ProbabilityTable& t) {
  WCoordinates w;
  w.dim = t.dim;
  w.measured = t.measured;
  w.w.resize(t.probs.size());
  const double inv_d = 1.0 / t.dim;
  for (size_t i = 0; i < t.probs.size(); ++i) w.w[i] = t.probs[i] - inv_d;
  return w;
}

std::vector<double> expectation_table(const Matrix& x, const MubSet& m,
                                      int measured) {
  if (x.dim() != m.dim())
    throw DimensionMismatchError("state and basis-set dimensions differ");
  std::vector<double> out(static_cast<size_t>(measured) * m.dim());
  for (int b = 0; b < measured; ++b)
    for (int k = 0; k < m.dim(); ++k)
      out[static_cast<size_t>(b) * m.dim() + static_cast<size_t>(k)] =
          m.expectation(x, b, k);
  return out;
}

ProbabilityTable born_probabilities(const DensityMatrix& rho, const MubSet& m,
                                    int measured) {
  if (measured < 1 || measured > m.dim() + 1)
    throw DomainError("measured basis count outside 1..d+1");
  return ProbabilityTable::validated(m.dim(), measured,
                                     expectation_table(rho.matrix(), m, measured));
}

DensityMatrix single_basis_estimator(std::span<const double> row, const MubSet& m,
                                     int basis) {
  Matrix est(m.dim());
  for (int k = 0; k < m.dim(); ++k)
    est.add_scaled_outer(row[static_cast<size_t>(k)], m.ket(basis, k));
  return DensityMatrix::unchecked(std::move(est));
}

DensityMatrix full_reconstruct(const ProbabilityTable& t, const MubSet& m,
                               const Tolerances& tol) {
  if (t.dim != m.dim())
    throw DimensionMismatchError("table and basis-set dimensions differ");
  if (t.measured != t.dim + 1)
    throw DomainError("full reconstruction needs all d+1 bases");
  Matrix rho = ulin_matrix(t, m);
  const double lmin = min_eigenvalue(rho, tol);
  if (lmin < tol.reconstruct_psd)
    throw InconsistentDataError(
        "table is not consistent with any physical state (min eigenvalue " +
        std::to_string(lmin) + ")");
  return DensityMatrix::unchecked(std::move(rho));
}

Matrix ulin_matrix(const ProbabilityTable& t, const MubSet& m) {
  if (t.dim != m.dim())
    throw DimensionMismatchError("table and basis-set dimensions differ");
  const int d = t.dim;
  Matrix out(d);
  for (int i = 0; i < d; ++i) out(i, i) = 1.0 / d;
  for (int b = 0; b < t.measured; ++b)
    for (int k = 0; k < d; ++k)
      out.add_scaled_outer(t.at(b, k) - 1.0 / d, m.ket(b, k));
  return out;
}

Matrix ulin_of_state(const Matrix& rho, const MubSet& m, int measured) {
  const int d = m.dim();
  Matrix out(d);
  for (int i = 0; i < d; ++i) out(i, i) = 1.0 / d;
  for (int b = 0; b < measured; ++b)
    for (int k = 0; k < d; ++k) {
      const auto ket = m.ket(b, k);
      out.add_scaled_outer(rho.expectation(ket) - 1.0 / d, ket);
    }
  return out;
}

UlinResult ulin_estimator(const ProbabilityTable& t, const MubSet& m,
                          const Tolerances& tol) {
  UlinResult r;
  r.matrix = ulin_matrix(t, m);
  const auto eig = eigen_hermitian(r.matrix, tol);
  r.eigenvalues = eig.eigenvalues;
  r.min_eigenvalue = eig.eigenvalues.front();
  r.is_physical = r.min_eigenvalue >= tol.psd_floor;
  r.determinant = 1.0;
  for (double v : eig.eigenvalues) r.determinant *= v;
  return r;
}

cplx z_of_row(std::span<const double> row) {
  const cplx q = qutrit_q();
  return row[0] + q * row[1] + q * q * row[2];
}

ZCoordinates z_coordinates(const Matrix& rho, const MubSet& m) {
  if (m.dim() != 3) throw DimensionMismatchError("z coordinates need d = 3");
  require_same_dim(rho, m.basis(0));
  ZCoordinates zc;
  zc.count = 4;
  const cplx q = qutrit_q();
  for (int b = 0; b < 4; ++b) {
    cplx z = 0.0;
    cplx phase = 1.0;
    for (int k = 0; k < 3; ++k) {
      z += phase * m.expectation(rho, b, k);
      phase *= q;
    }
    zc.z[static_cast<size_t>(b)] = z;
  }
  return zc;
}

ProbabilityTable table_from_z(std::span<const cplx> zs, int measured) {
  if (static_cast<int>(zs.size()) < measured)
    throw DomainError("need one z per measured basis");
  const cplx q = qutrit_q();
  std::vector<double> probs(static_cast<size_t>(measured) * 3);
  for (int b = 0; b < measured; ++b) {
    cplx qk = 1.0;
    for (int k = 0; k < 3; ++k) {
      const cplx zb = zs[static_cast<size_t>(b)];
      probs[static_cast<size_t>(b) * 3 + static_cast<size_t>(k)] =
          (1.0 + std::conj(qk) * zb + qk * std::conj(zb)).real() / 3.0;
      qk *= q;
    }
  }
  return ProbabilityTable::validated(3, measured, std::move(probs));
}

}  // namespace mubtomo
