#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mubtomo/linalg.hpp"
#include "mubtomo/rng.hpp"

using namespace mubtomo;

TEST_CASE("identity eigenvalues") {
  const auto eig = eigen_hermitian(Matrix::identity(3));
  for (double v : eig.eigenvalues) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("two-level defect block eigenvalues") {
  // diag 1/3 with a -1/2 coupling between the first two levels
  Matrix a(3);
  a(0, 0) = a(1, 1) = a(2, 2) = 1.0 / 3.0;
  a(0, 1) = a(1, 0) = -0.5;
  const auto eig = eigen_hermitian(a);
  CHECK(eig.eigenvalues[0] == doctest::Approx(1.0 / 3.0 - 0.5).epsilon(1e-13));
  CHECK(eig.eigenvalues[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(eig.eigenvalues[2] == doctest::Approx(1.0 / 3.0 + 0.5).epsilon(1e-13));
}

TEST_CASE("eigenvalue sum equals trace and reconstruction is tight") {
  Rng rng(11);
  for (int d : {2, 3, 5, 8, 13}) {
    for (int rep = 0; rep < 5; ++rep) {
      const Matrix a = random_hermitian(d, rng);
      const auto eig = eigen_hermitian(a);
      double sum = 0.0;
      for (double v : eig.eigenvalues) sum += v;
      CHECK(sum == doctest::Approx(a.trace().real()).epsilon(1e-12));

      const Matrix back = eig.reconstruct();
      CHECK((a - back).frobenius_norm() < 1e-10 * a.frobenius_norm());

      // V^dagger V = 1
      const Matrix vtv = eig.eigenvectors.adjoint() * eig.eigenvectors;
      CHECK(max_abs_diff(vtv, Matrix::identity(d)) < 1e-10);

      // ascending order
      for (size_t i = 1; i < eig.eigenvalues.size(); ++i)
        CHECK(eig.eigenvalues[i] >= eig.eigenvalues[i - 1]);
    }
  }
}

TEST_CASE("eigen_hermitian is deterministic") {
  Rng rng(5);
  const Matrix a = random_hermitian(7, rng);
  const auto e1 = eigen_hermitian(a);
  const auto e2 = eigen_hermitian(a);
  CHECK(max_abs_diff(e1.eigenvectors, e2.eigenvectors) == 0.0);
}

TEST_CASE("non-Hermitian input is rejected with the defect") {
  Matrix a(2);
  a(0, 1) = 1.0;
  a(1, 0) = 0.5;
  CHECK_THROWS_AS(eigen_hermitian(a), NonHermitianError);
  try {
    eigen_hermitian(a);
  } catch (const NonHermitianError& e) {
    CHECK(e.defect == doctest::Approx(0.5));
  }
}

TEST_CASE("hs_inner basics") {
  const Matrix eye3 = Matrix::identity(3);
  CHECK(hs_inner((1.0 / 3.0) * eye3, (1.0 / 3.0) * eye3) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  Rng rng(3);
  const Matrix a = random_hermitian(4, rng);
  const Matrix b = random_hermitian(4, rng);
  CHECK(hs_inner(a, b) == doctest::Approx(hs_inner(b, a)).epsilon(1e-13));

  // hs_inner(A, A) = sum of squared eigenvalues >= 0
  const auto eig = eigen_hermitian(a);
  double s2 = 0.0;
  for (double v : eig.eigenvalues) s2 += v * v;
  CHECK(hs_inner(a, a) == doctest::Approx(s2).epsilon(1e-12));
  CHECK(hs_inner(a, a) >= 0.0);

  CHECK_THROWS_AS(hs_inner(a, Matrix::identity(3)), DimensionMismatchError);
}

TEST_CASE("min_eig_projector picks the smallest eigenvalue direction") {
  Matrix a(3);
  a(0, 0) = 0.1;
  a(1, 1) = 0.5;
  a(2, 2) = 0.4;
  const auto p = min_eig_projector(a).matrix();
  Matrix expect(3);
  expect(0, 0) = 1.0;
  CHECK(max_abs_diff(p, expect) < 1e-12);
}

TEST_CASE("min_eig_projector on the coupled block") {
  Matrix a(3);
  a(0, 0) = a(1, 1) = a(2, 2) = 1.0 / 3.0;
  a(0, 1) = a(1, 0) = -0.5;
  const auto p = min_eig_projector(a).matrix();
  // eigenvector (1,1,0)/sqrt(2) up to phase; the projector is phase-free
  Matrix expect(3);
  expect(0, 0) = expect(0, 1) = expect(1, 0) = expect(1, 1) = 0.5;
  CHECK(max_abs_diff(p, expect) < 1e-12);
  // A p = lambda_min p
  const Matrix ap = a * p;
  CHECK(max_abs_diff(ap, (1.0 / 3.0 - 0.5) * p) < 1e-12);
}

TEST_CASE("degenerate minimum resolves deterministically") {
  Matrix a(3);
  a(0, 0) = 0.2;
  a(1, 1) = 0.2;
  a(2, 2) = 0.6;
  const auto p1 = min_eig_projector(a).matrix();
  const auto p2 = min_eig_projector(a).matrix();
  CHECK(max_abs_diff(p1, p2) == 0.0);
  Matrix expect(3);
  expect(0, 0) = 1.0;
  CHECK(max_abs_diff(p1, expect) < 1e-12);
  CHECK(p1.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("density validation") {
  Rng rng(7);
  const Matrix ok = random_density(4, 2, rng);
  CHECK_NOTHROW(DensityMatrix::validated(ok));

  Matrix bad_trace = ok;
  bad_trace *= 1.5;
  CHECK_THROWS(DensityMatrix::validated(bad_trace));

  Matrix indefinite(2);
  indefinite(0, 0) = 1.5;
  indefinite(1, 1) = -0.5;
  CHECK_THROWS(DensityMatrix::validated(indefinite));
}

TEST_CASE("psd_within matches the eigenvalue test") {
  Rng rng(9);
  for (int rep = 0; rep < 50; ++rep) {
    Matrix a = random_hermitian(4, rng);
    a += 2.0 * Matrix::identity(4);  // mostly positive, sometimes not
    const bool by_eig = eigen_hermitian(a).eigenvalues.front() >= -1e-12;
    CHECK(psd_within(a, -1e-12) == by_eig);
  }
}
