#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "mubtomo/errors.hpp"

namespace mubtomo {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major storage.  Value type; all
// operations leave their arguments untouched.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}

  static Matrix identity(int dim) {
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  int dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }
  const cplx& operator()(int r, int c) const {
    return a_[static_cast<size_t>(r) * dim_ + c];
  }

  std::span<const cplx> row(int r) const {
    return {a_.data() + static_cast<size_t>(r) * dim_, static_cast<size_t>(dim_)};
  }
  std::span<const cplx> data() const { return a_; }
  std::span<cplx> data() { return a_; }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(cplx s);
  Matrix& operator*=(double s) { return *this *= cplx(s, 0.0); }

  Matrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  // max |a(j,k) - conj(a(k,j))| over all entries
  double hermiticity_defect() const;

  // *this += c * |v><v| for real c; preserves exact Hermitian symmetry.
  void add_scaled_outer(double c, std::span<const cplx> v);

  // <v|A|v>, real part (exact for Hermitian A)
  double expectation(std::span<const cplx> v) const;

  std::vector<cplx> apply(std::span<const cplx> v) const;

 private:
  int dim_ = 0;
  std::vector<cplx> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(cplx s, Matrix a);
Matrix operator*(double s, Matrix a);

double max_abs_diff(const Matrix& a, const Matrix& b);

// Tr(AB) for Hermitian A, B of equal dimension; the result is real.
double hs_inner(const Matrix& a, const Matrix& b);

// Throws NonHermitianError when the defect exceeds the tolerance
// (scaled by max(1, largest entry)).
void require_hermitian(const Matrix& a, double tol);

// (A + A^dagger)/2
Matrix symmetrize(const Matrix& a);

void require_same_dim(const Matrix& a, const Matrix& b);

}  // namespace mubtomo
