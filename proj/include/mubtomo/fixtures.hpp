#pragma once

#include "mubtomo/linalg.hpp"
#include "mubtomo/mub.hpp"

namespace mubtomo::fixtures {

// Projector onto (|0> - |1>)/sqrt(2) of the computational basis; its
// inversion estimator with the computational basis unmeasured carries
// the indefinite two-level block for every d > 2.
DensityMatrix computational_superposition(int d);

// Projector onto (|psi_00> + |psi_01>)/sqrt(2), a superposition of two
// kets of the first basis.
DensityMatrix first_basis_superposition(const MubSet& m);

// Qutrit family (1-w) * computational_superposition(3) + (w/3) * 1.
DensityMatrix qutrit_admixture(double w);

// lambda1 P_{0j} + (1 - lambda1) P_{1k}: incoherent mixture of one ket
// each from the first two bases.
DensityMatrix two_projector_mixture(const MubSet& m, int j, int k,
                                    double lambda1);

}  // namespace mubtomo::fixtures
