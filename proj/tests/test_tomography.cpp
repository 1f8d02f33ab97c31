#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mubtomo/fixtures.hpp"
#include "mubtomo/rng.hpp"
#include "mubtomo/tomography.hpp"

using namespace mubtomo;

namespace {

DensityMatrix maximally_mixed(int d) {
  return DensityMatrix::unchecked((1.0 / d) * Matrix::identity(d));
}

}  // namespace

TEST_CASE("born probabilities of the maximally mixed state are uniform") {
  for (int d : {2, 3, 5}) {
    const MubSet m = build_mub(d);
    const auto t = born_probabilities(maximally_mixed(d), m, d + 1);
    for (double p : t.probs) CHECK(p == doctest::Approx(1.0 / d).epsilon(1e-13));
  }
}

TEST_CASE("born probabilities of a basis ket") {
  const int d = 5;
  const MubSet m = build_mub(d);
  const auto rho = DensityMatrix::unchecked(m.projector(0, 2));
  const auto t = born_probabilities(rho, m, d + 1);
  for (int k = 0; k < d; ++k)
    CHECK(t.at(0, k) == doctest::Approx(k == 2 ? 1.0 : 0.0).epsilon(1e-13));
  for (int b = 1; b <= d; ++b)
    for (int k = 0; k < d; ++k)
      CHECK(t.at(b, k) == doctest::Approx(1.0 / d).epsilon(1e-13));
}

TEST_CASE("the two-level superposition state has the expected z values") {
  const MubSet m = build_mub(3);
  const auto rho = fixtures::computational_superposition(3);
  const auto z = z_coordinates(rho.matrix(), m);
  const cplx q = qutrit_q();
  for (int b = 0; b < 3; ++b)
    CHECK(std::abs(z.z[static_cast<size_t>(b)] - cplx(-0.5)) < 1e-12);
  CHECK(std::abs(z.z[3] - (-0.5 * q * q)) < 1e-12);
}

TEST_CASE("single-basis estimator") {
  const MubSet m = build_mub(3);

  const std::vector<double> uniform{1.0 / 3, 1.0 / 3, 1.0 / 3};
  CHECK(max_abs_diff(single_basis_estimator(uniform, m, 1).matrix(),
                     (1.0 / 3.0) * Matrix::identity(3)) < 1e-14);

  // computational-basis estimator of the superposition state
  const auto rho = fixtures::computational_superposition(3);
  const auto t = born_probabilities(rho, m, 4);
  const auto est = single_basis_estimator(t.row(3), m, 3);
  Matrix expect(3);
  expect(0, 0) = expect(1, 1) = 0.5;
  CHECK(max_abs_diff(est.matrix(), expect) < 1e-13);

  // unmeasured bases are predicted uniformly
  for (int b = 0; b < 3; ++b)
    for (int k = 0; k < 3; ++k)
      CHECK(m.expectation(est.matrix(), b, k) ==
            doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("full reconstruction round trips") {
  Rng rng(21);
  for (int d : {2, 3, 5}) {
    const MubSet m = build_mub(d);
    const auto uniform_t = born_probabilities(maximally_mixed(d), m, d + 1);
    CHECK(max_abs_diff(full_reconstruct(uniform_t, m).matrix(),
                       (1.0 / d) * Matrix::identity(d)) < 1e-13);

    for (int rep = 0; rep < 10; ++rep) {
      const auto rho = DensityMatrix::unchecked(random_pure_projector(d, rng));
      const auto t = born_probabilities(rho, m, d + 1);
      const auto back = full_reconstruct(t, m);
      CHECK(max_abs_diff(back.matrix(), rho.matrix()) < 1e-12);
      // table round trip as well
      const auto t2 = born_probabilities(back, m, d + 1);
      for (size_t i = 0; i < t.probs.size(); ++i)
        CHECK(std::abs(t.probs[i] - t2.probs[i]) < 1e-12);
    }
  }
}

TEST_CASE("the qutrit superposition state reconstructs exactly") {
  const MubSet m = build_mub(3);
  const auto rho = fixtures::computational_superposition(3);
  const auto t = born_probabilities(rho, m, 4);
  CHECK(max_abs_diff(full_reconstruct(t, m).matrix(), rho.matrix()) < 1e-12);
}

TEST_CASE("an impossible table is rejected") {
  const int d = 3;
  const MubSet m = build_mub(d);
  std::vector<double> probs(static_cast<size_t>(d + 1) * d, 0.0);
  for (int b = 0; b <= d; ++b) probs[static_cast<size_t>(b) * d] = 1.0;  // deterministic everywhere
  const auto t = ProbabilityTable::validated(d, d + 1, std::move(probs));
  CHECK_THROWS_AS(full_reconstruct(t, m), InconsistentDataError);
}

TEST_CASE("inversion estimator of the qutrit superposition state") {
  const MubSet m = build_mub(3);
  const auto rho = fixtures::computational_superposition(3);
  const auto t4 = born_probabilities(rho, m, 4);

  auto for_measured = [&](int measured) {
    ProbabilityTable t;
    t.dim = 3;
    t.measured = measured;
    t.probs.assign(t4.probs.begin(), t4.probs.begin() + 3 * measured);
    return ulin_estimator(t, m);
  };

  const auto u1 = for_measured(1);
  CHECK(u1.is_physical);

  const auto u2 = for_measured(2);
  CHECK(!u2.is_physical);
  CHECK(u2.determinant == doctest::Approx(-1.0 / 27.0).epsilon(1e-9));

  const auto u3 = for_measured(3);
  CHECK(!u3.is_physical);
  CHECK(u3.determinant == doctest::Approx(-5.0 / 108.0).epsilon(1e-9));

  const auto u4 = for_measured(4);
  CHECK(u4.is_physical);
  CHECK(max_abs_diff(u4.matrix, rho.matrix()) < 1e-12);

  // unit trace in all cases
  for (const auto* u : {&u1, &u2, &u3, &u4})
    CHECK(u->matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("inversion estimators in the first-basis representation") {
  // regression fixtures: the four estimators of the first-basis
  // superposition state, written in that basis
  const MubSet m = build_mub(3);
  const auto rho = fixtures::first_basis_superposition(m);
  const auto t4 = born_probabilities(rho, m, 4);
  const cplx q = qutrit_q();

  auto in_first_basis = [&](const Matrix& x) {
    return m.basis(0).adjoint() * x * m.basis(0);
  };
  auto ulin_m = [&](int measured) {
    ProbabilityTable t;
    t.dim = 3;
    t.measured = measured;
    t.probs.assign(t4.probs.begin(), t4.probs.begin() + 3 * measured);
    return in_first_basis(ulin_matrix(t, m));
  };

  Matrix e1(3);
  e1(0, 0) = e1(1, 1) = 0.5;
  CHECK(max_abs_diff(ulin_m(1), e1) < 1e-12);

  Matrix e2(3);
  e2(0, 0) = e2(1, 1) = 0.5;
  e2(0, 1) = e2(1, 0) = 1.0 / 6.0;
  e2(0, 2) = e2(1, 2) = q / 6.0;
  e2(2, 0) = e2(2, 1) = q * q / 6.0;
  CHECK(max_abs_diff(ulin_m(2), e2) < 1e-12);

  Matrix e3(3);
  e3(0, 0) = e3(1, 1) = 0.5;
  e3(0, 1) = e3(1, 0) = 2.0 / 6.0;
  e3(0, 2) = e3(2, 0) = -1.0 / 6.0;
  e3(1, 2) = e3(2, 1) = -1.0 / 6.0;
  CHECK(max_abs_diff(ulin_m(3), e3) < 1e-12);

  Matrix e4(3);
  e4(0, 0) = e4(1, 1) = e4(0, 1) = e4(1, 0) = 0.5;
  CHECK(max_abs_diff(ulin_m(4), e4) < 1e-12);
}

TEST_CASE("two-projector mixtures keep every inversion estimator physical") {
  const MubSet m = build_mub(3);
  const auto rho = fixtures::two_projector_mixture(m, 1, 2, 0.5);
  const auto t4 = born_probabilities(rho, m, 4);
  for (int measured : {2, 3, 4}) {
    ProbabilityTable t;
    t.dim = 3;
    t.measured = measured;
    t.probs.assign(t4.probs.begin(), t4.probs.begin() + 3 * measured);
    const auto u = ulin_estimator(t, m);
    CHECK(u.is_physical);
    CHECK(max_abs_diff(u.matrix, rho.matrix()) < 1e-12);
  }
}

TEST_CASE("qubit inversion estimators are always physical") {
  const MubSet m = build_mub(2);
  Rng rng(33);
  for (int rep = 0; rep < 50; ++rep) {
    const auto rho = DensityMatrix::unchecked(random_density(2, 2, rng));
    for (int measured : {1, 2, 3}) {
      const auto t = born_probabilities(rho, m, measured);
      CHECK(ulin_estimator(t, m).is_physical);
    }
  }
}

TEST_CASE("measured-ket states are returned exactly") {
  for (int d : {3, 5}) {
    const MubSet m = build_mub(d);
    const auto rho = DensityMatrix::unchecked(m.projector(1, 0));
    const auto t = born_probabilities(rho, m, 2);
    const auto u = ulin_estimator(t, m);
    CHECK(u.is_physical);
    CHECK(max_abs_diff(u.matrix, rho.matrix()) < 1e-12);
  }
}

TEST_CASE("the inversion map is a projection") {
  Rng rng(44);
  for (int d : {3, 5}) {
    const MubSet m = build_mub(d);
    for (int measured : {1, 2, d}) {
      const auto rho = DensityMatrix::unchecked(random_density(d, d, rng));
      const Matrix once = ulin_of_state(rho.matrix(), m, measured);
      const Matrix twice = ulin_of_state(once, m, measured);
      CHECK(max_abs_diff(once, twice) < 1e-12);
      // measured rows of the estimator match the input state
      const auto pr = expectation_table(rho.matrix(), m, measured);
      const auto pu = expectation_table(once, m, measured);
      for (size_t i = 0; i < pr.size(); ++i) CHECK(std::abs(pr[i] - pu[i]) < 1e-12);
      // unmeasured rows are uniform
      const auto pall = expectation_table(once, m, d + 1);
      for (size_t i = pr.size(); i < pall.size(); ++i)
        CHECK(pall[i] == doctest::Approx(1.0 / d).epsilon(1e-12));
    }
  }
}

TEST_CASE("trace pairing symmetry of the inversion map") {
  Rng rng(55);
  for (int d : {2, 3, 5}) {
    const MubSet m = build_mub(d);
    for (int measured = 1; measured <= d + 1; ++measured)
      for (int rep = 0; rep < 5; ++rep) {
        const Matrix rho = random_density(d, d, rng);
        const Matrix sig = random_density(d, 2, rng);
        const double lhs = hs_inner(ulin_of_state(rho, m, measured), sig);
        const double rhs = hs_inner(rho, ulin_of_state(sig, m, measured));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
      }
  }
}

TEST_CASE("resolution of the identity from any full table") {
  Rng rng(66);
  for (int d : {3, 4}) {
    const MubSet m = build_mub(d);
    const auto rho = DensityMatrix::unchecked(random_density(d, d, rng));
    const auto t = born_probabilities(rho, m, d + 1);
    Matrix acc(d);
    for (int b = 0; b <= d; ++b) {
      double row_sum = 0.0;
      for (int j = 0; j < d; ++j) row_sum += t.at(b, j);
      for (int k = 0; k < d; ++k) acc.add_scaled_outer(row_sum, m.ket(b, k));
    }
    acc *= 1.0 / (d + 1);
    CHECK(max_abs_diff(acc, Matrix::identity(d)) < 1e-12);
  }
}

TEST_CASE("hyperplane coordinates carry the Euclidean metric") {
  Rng rng(77);
  for (int d : {2, 3, 5}) {
    const MubSet m = build_mub(d);
    for (int rep = 0; rep < 10; ++rep) {
      const Matrix a = random_density(d, d, rng);
      const Matrix b = random_density(d, 2, rng);
      const auto ta = born_probabilities(DensityMatrix::unchecked(a), m, d + 1);
      const auto tb = born_probabilities(DensityMatrix::unchecked(b), m, d + 1);
      const auto wa = WCoordinates::from(ta);
      const auto wb = WCoordinates::from(tb);

      for (int bb = 0; bb <= d; ++bb) {
        double s = 0.0;
        for (int k = 0; k < d; ++k) s += wa.at(bb, k);
        CHECK(std::abs(s) < 1e-12);
      }

      double dot = 0.0, dist2 = 0.0;
      for (size_t i = 0; i < wa.w.size(); ++i) {
        dot += wa.w[i] * wb.w[i];
        const double diff = wa.w[i] - wb.w[i];
        dist2 += diff * diff;
      }
      CHECK(hs_inner(a, b) == doctest::Approx(1.0 / d + dot).epsilon(1e-10));
      const Matrix diff = a - b;
      CHECK(hs_inner(diff, diff) == doctest::Approx(dist2).epsilon(1e-10));
    }
  }
}

TEST_CASE("z coordinates of the admixture family and their inverse") {
  const MubSet m = build_mub(3);
  const cplx q = qutrit_q();
  for (double w : {0.0, 0.1, 0.25, 0.5, 1.0}) {
    const auto rho = fixtures::qutrit_admixture(w);
    const auto z = z_coordinates(rho.matrix(), m);
    for (int b = 0; b < 3; ++b)
      CHECK(std::abs(z.z[static_cast<size_t>(b)] - cplx(-(1.0 - w) / 2.0)) < 1e-12);
    CHECK(std::abs(z.z[3] - (-(1.0 - w) / 2.0) * q * q) < 1e-12);

    // inverse map reproduces the born table
    const auto t = born_probabilities(rho, m, 4);
    const auto t2 = table_from_z(z.z, 4);
    for (size_t i = 0; i < t.probs.size(); ++i)
      CHECK(std::abs(t.probs[i] - t2.probs[i]) < 1e-12);
  }

  // w = 1/4 reference point
  const auto z = z_coordinates(fixtures::qutrit_admixture(0.25).matrix(), m);
  CHECK(z.z[3].real() == doctest::Approx(3.0 / 16.0).epsilon(1e-12));
  CHECK(z.z[3].imag() == doctest::Approx(0.324).epsilon(5e-3));

  const auto z_mixed =
      z_coordinates((1.0 / 3.0) * Matrix::identity(3), m);
  for (int b = 0; b < 4; ++b) CHECK(std::abs(z_mixed.z[static_cast<size_t>(b)]) < 1e-13);
}

TEST_CASE("table validation rejects bad rows") {
  CHECK_THROWS_AS(
      ProbabilityTable::validated(3, 1, std::vector<double>{0.5, 0.6, 0.1}),
      InconsistentDataError);
  CHECK_THROWS_AS(
      ProbabilityTable::validated(3, 1, std::vector<double>{1.2, -0.2, 0.0}),
      InconsistentDataError);
  CHECK_THROWS_AS(ProbabilityTable::validated(3, 5, std::vector<double>(15, 0.2)),
                  DomainError);
}
