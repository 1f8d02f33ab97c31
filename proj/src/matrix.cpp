#include "mubtomo/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace mubtomo {

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_dim(*this, o);
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_same_dim(*this, o);
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

Matrix& Matrix::operator*=(cplx s) {
  for (auto& x : a_) x *= s;
  return *this;
}

Matrix Matrix::adjoint() const {
  Matrix m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

cplx Matrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : a_) s += std::norm(x);
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : a_) m = std::max(m, std::abs(x));
  return m;
}

double Matrix::hermiticity_defect() const {
  double m = 0.0;
  for (int r = 0; r < dim_; ++r)
    for (int c = r; c < dim_; ++c)
      m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return m;
}

void Matrix::add_scaled_outer(double c, std::span<const cplx> v) {
  for (int r = 0; r < dim_; ++r) {
    const cplx cv = c * v[static_cast<size_t>(r)];
    cplx* dst = a_.data() + static_cast<size_t>(r) * dim_;
    for (int k = 0; k < dim_; ++k) dst[k] += cv * std::conj(v[static_cast<size_t>(k)]);
  }
}

double Matrix::expectation(std::span<const cplx> v) const {
  cplx s = 0.0;
  for (int r = 0; r < dim_; ++r) {
    cplx row_dot = 0.0;
    const cplx* src = a_.data() + static_cast<size_t>(r) * dim_;
    for (int k = 0; k < dim_; ++k) row_dot += src[k] * v[static_cast<size_t>(k)];
    s += std::conj(v[static_cast<size_t>(r)]) * row_dot;
  }
  return s.real();
}

std::vector<cplx> Matrix::apply(std::span<const cplx> v) const {
  std::vector<cplx> out(static_cast<size_t>(dim_));
  for (int r = 0; r < dim_; ++r) {
    cplx s = 0.0;
    const cplx* src = a_.data() + static_cast<size_t>(r) * dim_;
    for (int k = 0; k < dim_; ++k) s += src[k] * v[static_cast<size_t>(k)];
    out[static_cast<size_t>(r)] = s;
  }
  return out;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b);
  const int d = a.dim();
  Matrix out(d);
  for (int r = 0; r < d; ++r) {
    for (int k = 0; k < d; ++k) {
      const cplx arc = a(r, k);
      if (arc == cplx{}) continue;
      for (int c = 0; c < d; ++c) out(r, c) += arc * b(k, c);
    }
  }
  return out;
}

Matrix operator*(cplx s, Matrix a) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b);
  double m = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
  return m;
}

double hs_inner(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b);
  // Tr(AB) = sum_jk a(j,k) b(k,j)
  cplx s = 0.0;
  for (int j = 0; j < a.dim(); ++j)
    for (int k = 0; k < a.dim(); ++k) s += a(j, k) * b(k, j);
  return s.real();
}

void require_hermitian(const Matrix& a, double tol) {
  const double defect = a.hermiticity_defect();
  const double scale = std::max(1.0, a.max_abs());
  if (defect > tol * scale)
    throw NonHermitianError("matrix is not Hermitian: max |A - A^dagger| = " +
                                std::to_string(defect),
                            defect);
}

Matrix symmetrize(const Matrix& a) {
  Matrix m(a.dim());
  for (int r = 0; r < a.dim(); ++r) {
    for (int c = 0; c < a.dim(); ++c) m(r, c) = 0.5 * (a(r, c) + std::conj(a(c, r)));
    m(r, r) = cplx(m(r, r).real(), 0.0);
  }
  return m;
}

void require_same_dim(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatchError("matrix dimension mismatch: " +
                                 std::to_string(a.dim()) + " vs " +
                                 std::to_string(b.dim()));
}

}  // namespace mubtomo
