#include "mubtomo/finite_field.hpp"

#include <algorithm>
#include <string>

namespace mubtomo {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

bool prime_power(int d, int& p, int& n) {
  if (d < 2) return false;
  for (int f = 2; f * f <= d; ++f) {
    if (d % f != 0) continue;
    // f is the smallest factor, hence prime
    int m = d, e = 0;
    while (m % f == 0) {
      m /= f;
      ++e;
    }
    if (m != 1) return false;
    p = f;
    n = e;
    return true;
  }
  p = d;
  n = 1;
  return true;
}

namespace {

// Polynomials over GF(p), coefficients low -> high.
using Poly = std::vector<int>;

Poly poly_from_encoding(long long enc, int len, int p) {
  Poly c(static_cast<size_t>(len));
  for (int i = 0; i < len; ++i) {
    c[static_cast<size_t>(i)] = static_cast<int>(enc % p);
    enc /= p;
  }
  return c;
}

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  poly_trim(out);
  return out;
}

// a mod m, m monic
Poly poly_mod(Poly a, const Poly& m, int p) {
  poly_trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int lead = a.back();
    for (int i = 0; i <= dm; ++i) {
      int& c = a[static_cast<size_t>(i + shift)];
      c = ((c - lead * m[static_cast<size_t>(i)]) % p + p) % p;
    }
    poly_trim(a);
  }
  return a;
}

bool poly_is_zero(const Poly& a) {
  return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
}

// Smallest-encoding monic irreducible polynomial of degree n over GF(p).
Poly find_irreducible(int p, int n) {
  if (n == 1) return {0, 1};  // x
  long long qn = 1;
  for (int i = 0; i < n; ++i) qn *= p;
  for (long long enc = 0; enc < qn; ++enc) {
    Poly f = poly_from_encoding(enc, n, p);
    f.push_back(1);  // monic
    bool reducible = false;
    for (int m = 1; !reducible && 2 * m <= n; ++m) {
      long long qm = 1;
      for (int i = 0; i < m; ++i) qm *= p;
      for (long long ge = 0; ge < qm; ++ge) {
        Poly g = poly_from_encoding(ge, m, p);
        g.push_back(1);
        if (poly_is_zero(poly_mod(f, g, p))) {
          reducible = true;
          break;
        }
      }
    }
    if (!reducible) return f;
  }
  throw Error("no irreducible polynomial found for p=" + std::to_string(p) +
              " n=" + std::to_string(n));
}

int encode_poly(const Poly& c, int p, int len) {
  int enc = 0;
  for (int i = len - 1; i >= 0; --i)
    enc = enc * p + (i < static_cast<int>(c.size()) ? c[static_cast<size_t>(i)] : 0);
  return enc;
}

}  // namespace

FiniteField FiniteField::make(int p, int n) {
  if (!is_prime(p) || n < 1) throw DomainError("bad field parameters");
  FiniteField f;
  f.p_ = p;
  f.n_ = n;
  f.q_ = 1;
  for (int i = 0; i < n; ++i) f.q_ *= p;
  if (f.q_ > 64) throw DomainError("field order above 64 is not supported");

  const Poly mod = find_irreducible(p, n);
  f.modulus_.assign(mod.begin(), mod.end());

  const int q = f.q_;
  f.add_.resize(static_cast<size_t>(q) * q);
  f.mul_.resize(static_cast<size_t>(q) * q);
  f.neg_.resize(static_cast<size_t>(q));
  for (int a = 0; a < q; ++a) {
    const Poly pa = poly_from_encoding(a, n, p);
    Poly na(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) na[static_cast<size_t>(i)] = (p - pa[static_cast<size_t>(i)]) % p;
    f.neg_[static_cast<size_t>(a)] = encode_poly(na, p, n);
    for (int b = 0; b < q; ++b) {
      const Poly pb = poly_from_encoding(b, n, p);
      Poly s(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i)
        s[static_cast<size_t>(i)] = (pa[static_cast<size_t>(i)] + pb[static_cast<size_t>(i)]) % p;
      f.add_[f.idx(a, b)] = encode_poly(s, p, n);
      f.mul_[f.idx(a, b)] = encode_poly(poly_mod(poly_mul(pa, pb, p), mod, p), p, n);
    }
  }

  // trace via repeated Frobenius
  f.trace_.resize(static_cast<size_t>(q));
  for (int a = 0; a < q; ++a) {
    int t = 0, x = a;
    for (int j = 0; j < n; ++j) {
      t = f.add_[f.idx(t, x)];
      int y = x;
      for (int e = 1; e < p; ++e) y = f.mul_[f.idx(y, x)];  // x^p
      x = y;
    }
    f.trace_[static_cast<size_t>(a)] = t;  // prime-subfield elements encode as 0..p-1
  }

  // smallest multiplicative generator
  for (int g = 1; g < q; ++g) {
    int x = g, order = 1;
    while (x != 1) {
      x = f.mul_[f.idx(x, g)];
      ++order;
    }
    if (order == q - 1) {
      f.generator_ = g;
      break;
    }
  }
  f.log_.assign(static_cast<size_t>(q), -1);
  f.antilog_.resize(static_cast<size_t>(q - 1));
  {
    int x = 1;
    for (int e = 0; e < q - 1; ++e) {
      f.antilog_[static_cast<size_t>(e)] = x;
      f.log_[static_cast<size_t>(x)] = e;
      x = f.mul_[f.idx(x, f.generator_)];
    }
  }
  return f;
}

int FiniteField::inverse(int a) const {
  if (a == 0) throw Error("zero has no inverse");
  return antilog_[static_cast<size_t>((q_ - 1 - log(a)) % (q_ - 1))];
}

int FiniteField::pow(int a, int e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  const long long r = (static_cast<long long>(log(a)) * e) % (q_ - 1);
  return antilog_[static_cast<size_t>(r)];
}

int FiniteField::log(int a) const {
  if (a == 0) throw Error("log of zero");
  return log_[static_cast<size_t>(a)];
}

// ---------------------------------------------------------------------------

namespace {

using PolyZ4 = std::vector<int>;  // coefficients in Z4, low -> high

PolyZ4 z4_mul_mod(const PolyZ4& a, const PolyZ4& b, const PolyZ4& m) {
  PolyZ4 out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) & 3;
  const int dm = static_cast<int>(m.size()) - 1;
  for (int k = static_cast<int>(out.size()) - 1; k >= dm; --k) {
    const int lead = out[static_cast<size_t>(k)];
    if (lead == 0) continue;
    for (int i = 0; i <= dm; ++i) {
      int& c = out[static_cast<size_t>(k - dm + i)];
      c = (c - lead * m[static_cast<size_t>(i)]) & 3;
    }
  }
  out.resize(static_cast<size_t>(dm));
  return out;
}

}  // namespace

GaloisRing4 GaloisRing4::make(int n) {
  if (n < 2) throw DomainError("GR(4,n) construction needs n >= 2");
  GaloisRing4 r;
  r.n_ = n;

  const Poly f2 = find_irreducible(2, n);

  // Unique monic lift of f2 to Z4 dividing x^(2^n - 1) - 1: try all
  // +2 adjustments of the non-leading coefficients and keep the one for
  // which x has multiplicative order 2^n - 1.
  const int period = (1 << n) - 1;
  PolyZ4 found;
  for (int mask = 0; mask < (1 << n) && found.empty(); ++mask) {
    PolyZ4 f(static_cast<size_t>(n) + 1);
    for (int i = 0; i < n; ++i)
      f[static_cast<size_t>(i)] = (f2[static_cast<size_t>(i)] + 2 * ((mask >> i) & 1)) & 3;
    f[static_cast<size_t>(n)] = 1;

    PolyZ4 x(static_cast<size_t>(n), 0);
    x[1] = 1;
    PolyZ4 acc(static_cast<size_t>(n), 0);
    acc[0] = 1;
    for (int e = 0; e < period; ++e) acc = z4_mul_mod(acc, x, f);
    bool one = acc[0] == 1;
    for (int i = 1; i < n; ++i) one = one && acc[static_cast<size_t>(i)] == 0;
    if (one) found = f;
  }
  if (found.empty()) throw Error("no basic irreducible lift found");
  r.modulus_.assign(found.begin(), found.end());

  // Teichmueller set {0, 1, xi, xi^2, ...}
  r.teich_.resize(static_cast<size_t>(1) << n);
  r.teich_[0] = 0;
  {
    PolyZ4 acc(static_cast<size_t>(n), 0);
    acc[0] = 1;
    PolyZ4 x(static_cast<size_t>(n), 0);
    x[1] = 1;
    for (int j = 0; j < period; ++j) {
      r.teich_[static_cast<size_t>(j) + 1] = r.from_poly(acc);
      acc = z4_mul_mod(acc, x, found);
    }
  }

  r.xi_even_pow_.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    PolyZ4 acc(static_cast<size_t>(n), 0);
    acc[0] = 1;
    PolyZ4 x(static_cast<size_t>(n), 0);
    x[1] = 1;
    for (int e = 0; e < 2 * i; ++e) acc = z4_mul_mod(acc, x, found);
    r.xi_even_pow_[static_cast<size_t>(i)] = r.from_poly(acc);
  }
  return r;
}

std::vector<int> GaloisRing4::to_poly(int a) const {
  std::vector<int> c(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    c[static_cast<size_t>(i)] = a & 3;
    a >>= 2;
  }
  return c;
}

int GaloisRing4::from_poly(const std::vector<int>& c) const {
  int enc = 0;
  for (int i = n_ - 1; i >= 0; --i)
    enc = (enc << 2) | (i < static_cast<int>(c.size()) ? (c[static_cast<size_t>(i)] & 3) : 0);
  return enc;
}

int GaloisRing4::add(int a, int b) const {
  const auto pa = to_poly(a), pb = to_poly(b);
  std::vector<int> s(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i)
    s[static_cast<size_t>(i)] = (pa[static_cast<size_t>(i)] + pb[static_cast<size_t>(i)]) & 3;
  return from_poly(s);
}

int GaloisRing4::mul(int a, int b) const {
  return from_poly(z4_mul_mod(to_poly(a), to_poly(b), modulus_));
}

int GaloisRing4::frobenius(int a) const {
  const auto c = to_poly(a);
  int out = 0;
  for (int i = 0; i < n_; ++i) {
    int term = xi_even_pow_[static_cast<size_t>(i)];
    // multiply by the scalar coefficient c_i
    const auto tc = to_poly(term);
    std::vector<int> sc(static_cast<size_t>(n_));
    for (int j = 0; j < n_; ++j)
      sc[static_cast<size_t>(j)] = (tc[static_cast<size_t>(j)] * c[static_cast<size_t>(i)]) & 3;
    out = add(out, from_poly(sc));
  }
  return out;
}

int GaloisRing4::trace_z4(int a) const {
  int t = 0, x = a;
  for (int j = 0; j < n_; ++j) {
    t = add(t, x);
    x = frobenius(x);
  }
  return to_poly(t)[0];
}

}  // namespace mubtomo
