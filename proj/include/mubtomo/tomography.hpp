#pragma once

#include <array>
#include <span>
#include <vector>

#include "mubtomo/linalg.hpp"
#include "mubtomo/mub.hpp"
#include "mubtomo/tolerances.hpp"

namespace mubtomo {

// Outcome probabilities for the first `measured` bases of a set of
// d+1 unbiased bases.  Rows sum to one; entries stay exactly as given
// (slightly inconsistent rows are rejected, not repaired).
struct ProbabilityTable {
  int dim = 0;
  int measured = 0;
  std::vector<double> probs;  // measured x dim, row-major

  double at(int basis, int k) const {
    return probs[static_cast<size_t>(basis) * dim + static_cast<size_t>(k)];
  }
  std::span<const double> row(int basis) const {
    return {probs.data() + static_cast<size_t>(basis) * dim,
            static_cast<size_t>(dim)};
  }

  static ProbabilityTable validated(int dim, int measured,
                                    std::vector<double> probs,
                                    const Tolerances& tol = default_tolerances());
};

// Hyperplane coordinates w = p - 1/d; every row sums to zero.
struct WCoordinates {
  int dim = 0;
  int measured = 0;
  std::vector<double> w;

  static WCoordinates from(const ProbabilityTable& t);
  double at(int basis, int k) const {
    return w[static_cast<size_t>(basis) * dim + static_cast<size_t>(k)];
  }
};

// Qutrit-only complex coordinates z_b = sum_k q^k p_bk, one per basis.
struct ZCoordinates {
  std::array<cplx, 4> z{};
  int count = 0;
};

// Estimator from unbiased linear inversion.  Hermitian and unit trace
// always; possibly indefinite, which is reported rather than rejected.
struct UlinResult {
  Matrix matrix;
  std::vector<double> eigenvalues;  // ascending
  double min_eigenvalue = 0.0;
  bool is_physical = false;
  double determinant = 0.0;
};

// Raw expectation values Tr(P_bk X) for the first `measured` bases of a
// Hermitian X; no range validation (rows sum to tr X).
std::vector<double> expectation_table(const Matrix& x, const MubSet& m,
                                      int measured);

ProbabilityTable born_probabilities(const DensityMatrix& rho, const MubSet& m,
                                    int measured);

// rho_b = sum_k p_bk P_bk for one measured basis; PSD by construction.
DensityMatrix single_basis_estimator(std::span<const double> row,
                                     const MubSet& m, int basis);

// Requires measured = d+1.  Throws InconsistentDataError when the
// result dips below the PSD floor for inconsistent input tables.
DensityMatrix full_reconstruct(const ProbabilityTable& t, const MubSet& m,
                               const Tolerances& tol = default_tolerances());

// 1/d + sum_{b < measured} sum_k (p_bk - 1/d) P_bk, from a table or
// directly from a state.
Matrix ulin_matrix(const ProbabilityTable& t, const MubSet& m);
Matrix ulin_of_state(const Matrix& rho, const MubSet& m, int measured);

UlinResult ulin_estimator(const ProbabilityTable& t, const MubSet& m,
                          const Tolerances& tol = default_tolerances());

// sum_k q^k p_k of one outcome row (d = 3)
cplx z_of_row(std::span<const double> row);

// z_b = Tr(rho Z_b) for all four qutrit bases.  Accepts any Hermitian
// matrix so that indefinite inversion results can be reported too.
ZCoordinates z_coordinates(const Matrix& rho, const MubSet& m);

// Inverse map p_bk = (1 + q^{-k} z_b + q^k conj(z_b))/3 for the first
// `measured` qutrit bases.
ProbabilityTable table_from_z(std::span<const cplx> zs, int measured);

}  // namespace mubtomo
