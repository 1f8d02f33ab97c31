#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mubtomo/matrix.hpp"

namespace mubtomo {

// Deterministic random source.  The uniform/normal transforms are done
// by hand so that a given seed produces the same stream on every
// standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(mix(seed)) {}

  std::uint64_t next_u64() { return gen_(); }

  double uniform() {  // [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal();

  // splitmix64-style mixing for derived stream seeds
  static std::uint64_t mix(std::uint64_t x);
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b = 0);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Normalized Gaussian vector: Haar-distributed pure state.
std::vector<cplx> random_pure_state(int dim, Rng& rng);

// Projector onto a random pure state.
Matrix random_pure_projector(int dim, Rng& rng);

// GG^dagger / tr with G a dim x rank Gaussian matrix
// (Hilbert-Schmidt-style random mixed state).
Matrix random_density(int dim, int rank, Rng& rng);

Matrix random_hermitian(int dim, Rng& rng);

// Point of the probability simplex, uniform (symmetric Dirichlet).
std::vector<double> random_distribution(int dim, Rng& rng);

}  // namespace mubtomo
