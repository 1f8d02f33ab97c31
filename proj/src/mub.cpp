#include "mubtomo/mub.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mubtomo/finite_field.hpp"

namespace mubtomo {

namespace {

cplx unit_phase(double turns) {  // exp(2 pi i turns)
  const double a = 2.0 * std::numbers::pi * turns;
  return {std::cos(a), std::sin(a)};
}

Matrix qubit_basis_x() {
  Matrix b(2);
  const double s = 1.0 / std::sqrt(2.0);
  b(0, 0) = s;
  b(1, 0) = s;
  b(0, 1) = s;
  b(1, 1) = -s;
  return b;
}

Matrix qubit_basis_y() {
  Matrix b(2);
  const double s = 1.0 / std::sqrt(2.0);
  b(0, 0) = s;
  b(1, 0) = cplx(0.0, s);
  b(0, 1) = s;
  b(1, 1) = cplx(0.0, -s);
  return b;
}

// The fixed qutrit set: three phase bases with q = exp(2 pi i/3)
// followed by the computational basis.  Row j, column k.
std::vector<Matrix> qutrit_bases() {
  const cplx q = qutrit_q();
  const cplx qp[3] = {1.0, q, q * q};
  const double s = 1.0 / std::sqrt(3.0);
  auto from_exponents = [&](const int (&e)[3][3]) {
    Matrix b(3);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) b(j, k) = s * qp[e[j][k]];
    return b;
  };
  const int e1[3][3] = {{0, 0, 0}, {0, 2, 1}, {0, 1, 2}};
  const int e2[3][3] = {{0, 0, 0}, {0, 2, 1}, {1, 2, 0}};
  const int e3[3][3] = {{0, 0, 0}, {0, 2, 1}, {2, 0, 1}};
  std::vector<Matrix> out;
  out.push_back(from_exponents(e1));
  out.push_back(from_exponents(e2));
  out.push_back(from_exponents(e3));
  out.push_back(Matrix::identity(3));
  return out;
}

// Odd prime d: <j|psi_ak> = d^{-1/2} w^{a j^2 + k j}, bases ordered
// a = 1, 2, ..., d-1, 0.
std::vector<Matrix> odd_prime_bases(int d) {
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Matrix> out;
  for (int alpha = 1; alpha <= d; ++alpha) {
    const int a = alpha % d;
    Matrix b(d);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const int e = (a * j * j + k * j) % d;
        b(j, k) = s * unit_phase(static_cast<double>(e) / d);
      }
    out.push_back(std::move(b));
  }
  out.push_back(Matrix::identity(d));
  return out;
}

// Odd prime power q = p^n, n >= 2: field construction with phases
// w_p^{tr(a x^2 + b x)}; rows, columns and bases indexed by the integer
// encodings of the field elements.
std::vector<Matrix> odd_prime_power_bases(int p, int n) {
  const FiniteField f = FiniteField::make(p, n);
  const int q = f.order();
  const double s = 1.0 / std::sqrt(static_cast<double>(q));
  std::vector<Matrix> out;
  for (int a = 0; a < q; ++a) {
    Matrix b(q);
    for (int x = 0; x < q; ++x) {
      const int ax2 = f.mul(a, f.mul(x, x));
      for (int v = 0; v < q; ++v) {
        const int e = f.trace(f.add(ax2, f.mul(v, x)));
        b(x, v) = s * unit_phase(static_cast<double>(e) / p);
      }
    }
    out.push_back(std::move(b));
  }
  out.push_back(Matrix::identity(q));
  return out;
}

// Characteristic 2, d = 2^n with n >= 2: Galois-ring construction with
// quarter phases i^{Tr((a + 2b) x)} over the Teichmueller set.
std::vector<Matrix> char2_bases(int n) {
  const GaloisRing4 ring = GaloisRing4::make(n);
  const int d = 1 << n;
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  const cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<Matrix> out;
  for (int ai = 0; ai < d; ++ai) {
    const int a = ring.teichmuller(ai);
    Matrix b(d);
    for (int xi = 0; xi < d; ++xi) {
      const int x = ring.teichmuller(xi);
      const int ax = ring.mul(a, x);
      for (int bi = 0; bi < d; ++bi) {
        const int bb = ring.teichmuller(bi);
        const int two_b_x = ring.add(ring.mul(bb, x), ring.mul(bb, x));
        const int e = ring.trace_z4(ring.add(ax, two_b_x));
        b(xi, bi) = s * i_pow[e & 3];
      }
    }
    out.push_back(std::move(b));
  }
  out.push_back(Matrix::identity(d));
  return out;
}

}  // namespace

cplx qutrit_q() { return unit_phase(1.0 / 3.0); }

MubSet::MubSet(int dim, std::vector<Matrix> bases)
    : dim_(dim), bases_(std::move(bases)) {
  kets_.reserve(bases_.size() * static_cast<size_t>(dim));
  for (const Matrix& b : bases_)
    for (int k = 0; k < dim_; ++k) {
      std::vector<cplx> v(static_cast<size_t>(dim_));
      for (int j = 0; j < dim_; ++j) v[static_cast<size_t>(j)] = b(j, k);
      kets_.push_back(std::move(v));
    }
}

std::vector<cplx> MubSet::ket(int b, int k) const {
  return kets_[static_cast<size_t>(b) * dim_ + static_cast<size_t>(k)];
}

Matrix MubSet::projector(int b, int k) const {
  Matrix p(dim_);
  p.add_scaled_outer(1.0, kets_[static_cast<size_t>(b) * dim_ + static_cast<size_t>(k)]);
  return p;
}

double MubSet::expectation(const Matrix& x, int b, int k) const {
  return x.expectation(kets_[static_cast<size_t>(b) * dim_ + static_cast<size_t>(k)]);
}

MubSet build_mub(int d) {
  int p = 0, n = 0;
  if (d < 2 || d > 64 || !prime_power(d, p, n)) {
    std::ostringstream msg;
    msg << "unsupported dimension " << d << ": ";
    if (d < 2 || d > 64) {
      msg << "outside 2..64";
    } else {
      msg << d << " = ";
      int m = d;
      bool first = true;
      for (int f = 2; m > 1; ++f)
        while (m % f == 0) {
          msg << (first ? "" : "*") << f;
          first = false;
          m /= f;
        }
      msg << " is not a prime power";
    }
    throw DomainError(msg.str());
  }

  if (d == 2) {
    std::vector<Matrix> b;
    b.push_back(qubit_basis_x());
    b.push_back(qubit_basis_y());
    b.push_back(Matrix::identity(2));
    return MubSet(2, std::move(b));
  }
  if (d == 3) return MubSet(3, qutrit_bases());
  if (n == 1) return MubSet(d, odd_prime_bases(d));
  if (p == 2) return MubSet(d, char2_bases(n));
  return MubSet(d, odd_prime_power_bases(p, n));
}

VerificationReport verify_mub(const MubSet& m, double tol) {
  VerificationReport r;
  r.tolerance = tol;
  const int d = m.dim();
  const int nb = m.basis_count();
  auto note = [&](double dev, int b, int k) {
    if (dev > r.max_deviation) {
      r.max_deviation = dev;
      r.worst_basis = b;
      r.worst_ket = k;
    }
  };

  for (int b = 0; b < nb; ++b) {
    const auto& bb = m.basis(b);
    Matrix complete(d);
    for (int k = 0; k < d; ++k) {
      const auto vk = m.ket(b, k);
      complete.add_scaled_outer(1.0, vk);
      // orthonormality inside the basis
      for (int l = k; l < d; ++l) {
        cplx dot = 0.0;
        for (int j = 0; j < d; ++j) dot += std::conj(bb(j, k)) * bb(j, l);
        const double dev = std::abs(dot - (k == l ? cplx(1.0) : cplx(0.0)));
        r.max_orthonormality = std::max(r.max_orthonormality, dev);
        note(dev, b, k);
      }
      // unbiasedness against later bases
      for (int b2 = b + 1; b2 < nb; ++b2)
        for (int l = 0; l < d; ++l) {
          cplx dot = 0.0;
          for (int j = 0; j < d; ++j) dot += std::conj(bb(j, k)) * m.basis(b2)(j, l);
          const double dev = std::abs(std::norm(dot) - 1.0 / d);
          r.max_unbiasedness = std::max(r.max_unbiasedness, dev);
          note(dev, b, k);
        }
    }
    const double dev = max_abs_diff(complete, Matrix::identity(d));
    r.max_completeness = std::max(r.max_completeness, dev);
    note(dev, b, -1);
  }
  r.pass = r.max_deviation <= tol;
  return r;
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  os << (pass ? "pass" : "FAIL") << " (tol " << tolerance << "): orthonormality "
     << max_orthonormality << ", unbiasedness " << max_unbiasedness
     << ", completeness " << max_completeness;
  if (!pass) os << "; worst at basis " << worst_basis << ", ket " << worst_ket;
  return os.str();
}

std::array<Matrix, 4> complementary_observables_qutrit(const MubSet& m) {
  if (m.dim() != 3) throw DimensionMismatchError("qutrit observables need d = 3");
  const cplx q = qutrit_q();
  std::array<Matrix, 4> z;
  for (int b = 0; b < 4; ++b) {
    Matrix acc(3);
    cplx phase = 1.0;
    for (int k = 0; k < 3; ++k) {
      Matrix p = m.projector(b, k);
      p *= phase;
      acc += p;
      phase *= q;
    }
    z[static_cast<size_t>(b)] = std::move(acc);
  }
  return z;
}

}  // namespace mubtomo
