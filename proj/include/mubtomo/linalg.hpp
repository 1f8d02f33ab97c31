#pragma once

#include <vector>

#include "mubtomo/matrix.hpp"
#include "mubtomo/tolerances.hpp"

namespace mubtomo {

// Positive semidefinite, unit-trace matrix.  Construct with validated()
// at API boundaries; unchecked() is for values that are PSD by
// construction (projectors, congruence-transformed states, ...).
class DensityMatrix {
 public:
  DensityMatrix() = default;

  static DensityMatrix validated(Matrix m,
                                 const Tolerances& tol = default_tolerances());
  static DensityMatrix unchecked(Matrix m) { return DensityMatrix(std::move(m)); }

  const Matrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }

 private:
  explicit DensityMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // orthonormal columns, same order

  std::vector<cplx> eigenvector(int i) const;
  Matrix reconstruct() const;  // V diag(lambda) V^dagger
};

// Cyclic Jacobi diagonalization with complex 2x2 rotations.  Sweeps
// until the largest off-diagonal magnitude drops below
// tol.jacobi_offdiag * max(1, ||A||_F).  Deterministic for identical
// input.  Throws NonHermitianError for input beyond tol.hermiticity.
EigenDecomposition eigen_hermitian(const Matrix& a,
                                   const Tolerances& tol = default_tolerances());

// Smallest eigenvalue only (same solver, avoids vector bookkeeping at
// the call site).
double min_eigenvalue(const Matrix& a,
                      const Tolerances& tol = default_tolerances());

// Smallest eigenvalue with its tie-broken eigenvector.  When the
// smallest eigenvalue is degenerate within tol.degeneracy, the returned
// eigenvector is the candidate whose first nonzero component has the
// largest magnitude, phase-normalized so that component is real and
// positive.
std::pair<double, std::vector<cplx>> min_eig_pair(
    const Matrix& a, const Tolerances& tol = default_tolerances());

// Rank-one projector onto the eigenvector of min_eig_pair.
DensityMatrix min_eig_projector(const Matrix& a,
                                const Tolerances& tol = default_tolerances());

// True iff all LDL^T pivots stay above floor * max(1, ||A||_F).
// Cheap PSD membership test used by samplers; eigen_hermitian remains
// the reporting path.
bool psd_within(const Matrix& a, double floor_);

}  // namespace mubtomo
