#pragma once

#include <array>
#include <string>
#include <vector>

#include "mubtomo/linalg.hpp"
#include "mubtomo/matrix.hpp"

namespace mubtomo {

// Complete set of d+1 pairwise unbiased orthonormal bases.  bases[b] is
// a unitary whose columns are the kets of basis b; the computational
// basis is always bases.back().  Immutable after construction.
class MubSet {
 public:
  MubSet(int dim, std::vector<Matrix> bases);

  int dim() const { return dim_; }
  int basis_count() const { return static_cast<int>(bases_.size()); }
  const Matrix& basis(int b) const { return bases_[static_cast<size_t>(b)]; }
  const std::vector<Matrix>& bases() const { return bases_; }

  // column k of basis b, copied out
  std::vector<cplx> ket(int b, int k) const;
  Matrix projector(int b, int k) const;

  // Re <psi_bk| X |psi_bk>
  double expectation(const Matrix& x, int b, int k) const;

 private:
  int dim_;
  std::vector<Matrix> bases_;
  std::vector<std::vector<cplx>> kets_;  // flattened columns for fast access
};

// d+1 unbiased bases for a prime-power dimension 2 <= d <= 64.
// Throws DomainError (with the factorization) otherwise.
MubSet build_mub(int d);

struct VerificationReport {
  double max_orthonormality = 0.0;  // |<jk|jl> - delta_kl|
  double max_unbiasedness = 0.0;    // ||<ak|bl>|^2 - 1/d|, a != b
  double max_completeness = 0.0;    // entries of sum_k P_ak - 1
  double max_deviation = 0.0;
  int worst_basis = -1, worst_ket = -1;
  double tolerance = 0.0;
  bool pass = false;

  std::string summary() const;
};

VerificationReport verify_mub(const MubSet& m, double tol);

// The four unitary observables Z_b = sum_k q^k P_bk of the qutrit set,
// q = exp(2 pi i / 3).  Requires d = 3.
std::array<Matrix, 4> complementary_observables_qutrit(const MubSet& m);

// exp(2 pi i / 3)
cplx qutrit_q();

}  // namespace mubtomo
