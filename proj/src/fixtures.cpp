#include "mubtomo/fixtures.hpp"

#include <cmath>

namespace mubtomo::fixtures {

DensityMatrix computational_superposition(int d) {
  std::vector<cplx> v(static_cast<size_t>(d));
  v[0] = 1.0 / std::sqrt(2.0);
  v[1] = -1.0 / std::sqrt(2.0);
  Matrix m(d);
  m.add_scaled_outer(1.0, v);
  return DensityMatrix::unchecked(std::move(m));
}

DensityMatrix first_basis_superposition(const MubSet& m) {
  const int d = m.dim();
  const auto k0 = m.ket(0, 0);
  const auto k1 = m.ket(0, 1);
  std::vector<cplx> v(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j)
    v[static_cast<size_t>(j)] =
        (k0[static_cast<size_t>(j)] + k1[static_cast<size_t>(j)]) / std::sqrt(2.0);
  Matrix p(d);
  p.add_scaled_outer(1.0, v);
  return DensityMatrix::unchecked(std::move(p));
}

DensityMatrix qutrit_admixture(double w) {
  Matrix m = computational_superposition(3).matrix();
  m *= (1.0 - w);
  for (int i = 0; i < 3; ++i) m(i, i) += w / 3.0;
  return DensityMatrix::unchecked(std::move(m));
}

DensityMatrix two_projector_mixture(const MubSet& m, int j, int k,
                                    double lambda1) {
  Matrix rho(m.dim());
  rho.add_scaled_outer(lambda1, m.ket(0, j));
  rho.add_scaled_outer(1.0 - lambda1, m.ket(1, k));
  return DensityMatrix::unchecked(std::move(rho));
}

}  // namespace mubtomo::fixtures
