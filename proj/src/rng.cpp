#include "mubtomo/rng.hpp"

#include <cmath>
#include <numbers>

namespace mubtomo {

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

std::uint64_t Rng::mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix(mix(mix(seed) ^ a) ^ b);
}

std::vector<cplx> random_pure_state(int dim, Rng& rng) {
  std::vector<cplx> v(static_cast<size_t>(dim));
  double nrm = 0.0;
  for (auto& x : v) {
    x = cplx(rng.normal(), rng.normal());
    nrm += std::norm(x);
  }
  nrm = std::sqrt(nrm);
  for (auto& x : v) x /= nrm;
  return v;
}

Matrix random_pure_projector(int dim, Rng& rng) {
  Matrix m(dim);
  m.add_scaled_outer(1.0, random_pure_state(dim, rng));
  return m;
}

Matrix random_density(int dim, int rank, Rng& rng) {
  Matrix m(dim);
  std::vector<cplx> col(static_cast<size_t>(dim));
  for (int j = 0; j < rank; ++j) {
    for (auto& x : col) x = cplx(rng.normal(), rng.normal());
    m.add_scaled_outer(1.0, col);
  }
  const double tr = m.trace().real();
  m *= 1.0 / tr;
  return m;
}

Matrix random_hermitian(int dim, Rng& rng) {
  Matrix m(dim);
  for (int r = 0; r < dim; ++r) {
    m(r, r) = rng.normal();
    for (int c = r + 1; c < dim; ++c) {
      m(r, c) = cplx(rng.normal(), rng.normal());
      m(c, r) = std::conj(m(r, c));
    }
  }
  return m;
}

std::vector<double> random_distribution(int dim, Rng& rng) {
  std::vector<double> p(static_cast<size_t>(dim));
  double s = 0.0;
  for (auto& x : p) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    x = -std::log(u);
    s += x;
  }
  for (auto& x : p) x /= s;
  return p;
}

}  // namespace mubtomo
