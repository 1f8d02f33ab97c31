#pragma once

#include <vector>

#include "mubtomo/errors.hpp"

namespace mubtomo {

bool is_prime(int n);

// Writes p, n with d = p^n when d is a prime power; false otherwise.
bool prime_power(int d, int& p, int& n);

// GF(p^n) with dense add/mul tables, p^n <= 64.  Elements are integers
// 0..p^n-1 encoding polynomial coefficients base p (constant term in
// the lowest digit).  The modulus is the monic irreducible polynomial
// of degree n over GF(p) with the smallest such encoding; it is exposed
// through modulus() and listed in the format documentation.
class FiniteField {
 public:
  static FiniteField make(int p, int n);

  int order() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return n_; }

  int add(int a, int b) const { return add_[idx(a, b)]; }
  int mul(int a, int b) const { return mul_[idx(a, b)]; }
  int neg(int a) const { return neg_[static_cast<size_t>(a)]; }
  int inverse(int a) const;  // a != 0
  int pow(int a, int e) const;

  // Field trace into GF(p), returned as 0..p-1.
  int trace(int a) const { return trace_[static_cast<size_t>(a)]; }

  // coefficients c0..cn of the modulus, cn = 1
  const std::vector<int>& modulus() const { return modulus_; }

  // multiplicative generator used for the log/antilog tables
  int generator() const { return generator_; }
  int log(int a) const;          // a != 0
  int antilog(int e) const { return antilog_[static_cast<size_t>(e % (q_ - 1))]; }

 private:
  FiniteField() = default;
  size_t idx(int a, int b) const {
    return static_cast<size_t>(a) * q_ + static_cast<size_t>(b);
  }

  int p_ = 0, n_ = 0, q_ = 0;
  int generator_ = 0;
  std::vector<int> modulus_;
  std::vector<int> add_, mul_, neg_, trace_, log_, antilog_;
};

// GR(4, n) = Z4[x]/(f) with f the basic irreducible lift of the GF(2^n)
// modulus; carries the Teichmueller set and the trace into Z4 that the
// characteristic-2 basis construction needs.  Elements are integers
// encoding coefficient vectors base 4.
class GaloisRing4 {
 public:
  static GaloisRing4 make(int n);

  int degree() const { return n_; }
  int teich_count() const { return 1 << n_; }  // |T| = 2^n

  int add(int a, int b) const;
  int mul(int a, int b) const;

  // T = {0, 1, xi, xi^2, ...}; element j of the enumeration
  int teichmuller(int j) const { return teich_[static_cast<size_t>(j)]; }

  int trace_z4(int a) const;  // generalized trace into Z4

  const std::vector<int>& modulus() const { return modulus_; }  // c0..cn in Z4

 private:
  GaloisRing4() = default;
  std::vector<int> to_poly(int a) const;
  int from_poly(const std::vector<int>& c) const;
  int frobenius(int a) const;

  int n_ = 0;
  std::vector<int> modulus_;
  std::vector<int> teich_;
  std::vector<int> xi_even_pow_;  // xi^(2i), i = 0..n-1
};

}  // namespace mubtomo
