#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "mubtomo/mub.hpp"

using namespace mubtomo;

namespace {

Matrix qutrit_expected_basis(int which) {
  const cplx q = qutrit_q();
  const cplx qp[3] = {1.0, q, q * q};
  const double s = 1.0 / std::sqrt(3.0);
  const int e[3][3][3] = {
      {{0, 0, 0}, {0, 2, 1}, {0, 1, 2}},
      {{0, 0, 0}, {0, 2, 1}, {1, 2, 0}},
      {{0, 0, 0}, {0, 2, 1}, {2, 0, 1}},
  };
  Matrix b(3);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) b(j, k) = s * qp[e[which][j][k]];
  return b;
}

}  // namespace

TEST_CASE("qutrit set matches the fixed convention") {
  const MubSet m = build_mub(3);
  REQUIRE(m.basis_count() == 4);
  for (int b = 0; b < 3; ++b)
    CHECK(max_abs_diff(m.basis(b), qutrit_expected_basis(b)) < 1e-15);
  CHECK(max_abs_diff(m.basis(3), Matrix::identity(3)) == 0.0);
}

TEST_CASE("qubit set is the Pauli eigenbases, computational last") {
  const MubSet m = build_mub(2);
  REQUIRE(m.basis_count() == 3);

  Matrix sx(2), sy(2), sz(2);
  sx(0, 1) = sx(1, 0) = 1.0;
  sy(0, 1) = cplx(0, -1);
  sy(1, 0) = cplx(0, 1);
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  const Matrix half = 0.5 * Matrix::identity(2);

  CHECK(max_abs_diff(m.projector(0, 0), half + 0.5 * sx) < 1e-15);
  CHECK(max_abs_diff(m.projector(0, 1), half - 0.5 * sx) < 1e-15);
  CHECK(max_abs_diff(m.projector(1, 0), half + 0.5 * sy) < 1e-15);
  CHECK(max_abs_diff(m.projector(1, 1), half - 0.5 * sy) < 1e-15);
  CHECK(max_abs_diff(m.projector(2, 0), half + 0.5 * sz) < 1e-15);
  CHECK(max_abs_diff(m.projector(2, 1), half - 0.5 * sz) < 1e-15);
}

TEST_CASE("all supported prime powers verify at 1e-10") {
  for (int d : {2, 3, 4, 5, 7, 8, 9, 11, 13}) {
    CAPTURE(d);
    const MubSet m = build_mub(d);
    REQUIRE(m.basis_count() == d + 1);
    CHECK(max_abs_diff(m.basis(d), Matrix::identity(d)) == 0.0);
    const auto report = verify_mub(m, 1e-10);
    CHECK_MESSAGE(report.pass, report.summary());
  }
}

TEST_CASE("d = 13 passes and d = 3 is tight") {
  CHECK(verify_mub(build_mub(13), 1e-10).pass);
  CHECK(verify_mub(build_mub(3), 1e-12).pass);
}

TEST_CASE("a perturbed column is flagged with its location") {
  MubSet m = build_mub(3);
  std::vector<Matrix> bases(m.bases());
  for (int j = 0; j < 3; ++j) bases[1](j, 2) *= 1.01;
  const MubSet broken(3, std::move(bases));
  const auto report = verify_mub(broken, 1e-12);
  CHECK(!report.pass);
  CHECK(report.worst_basis == 1);
  CHECK(report.worst_ket == 2);
}

TEST_CASE("non-prime-power dimensions are rejected with the factorization") {
  for (int d : {6, 10, 12}) {
    CAPTURE(d);
    CHECK_THROWS_AS(build_mub(d), DomainError);
  }
  try {
    build_mub(6);
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("2*3") != std::string::npos);
  }
}

TEST_CASE("cross-basis projector overlaps") {
  for (int d : {3, 4, 5}) {
    CAPTURE(d);
    const MubSet m = build_mub(d);
    for (int a = 0; a < m.basis_count(); ++a)
      for (int b = a; b < m.basis_count(); ++b)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            const double got = hs_inner(m.projector(a, k), m.projector(b, l));
            const double expect =
                (a == b) ? (k == l ? 1.0 : 0.0) : 1.0 / d;
            CHECK(std::abs(got - expect) < 1e-12);
          }
  }
}

TEST_CASE("projectors are idempotent") {
  for (int d : {3, 4, 8, 9}) {
    const MubSet m = build_mub(d);
    for (int b = 0; b < m.basis_count(); ++b)
      for (int k = 0; k < d; ++k) {
        const Matrix p = m.projector(b, k);
        CHECK(max_abs_diff(p * p, p) < 1e-12);
      }
  }
}

TEST_CASE("qutrit complementary observables") {
  const MubSet m = build_mub(3);
  const auto z = complementary_observables_qutrit(m);
  const cplx q = qutrit_q();
  const cplx qp[3] = {1.0, q, q * q};

  // Z_b for b = 0,1,2 has the cyclic-shift shape with phases q^{-b}, q^{b};
  // Z_3 = diag(1, q, q^2)
  for (int b = 0; b < 3; ++b) {
    Matrix expect(3);
    expect(0, 2) = qp[(3 - b) % 3];
    expect(1, 0) = 1.0;
    expect(2, 1) = qp[b];
    CAPTURE(b);
    CHECK(max_abs_diff(z[static_cast<size_t>(b)], expect) < 1e-12);
  }
  Matrix z4(3);
  z4(0, 0) = 1.0;
  z4(1, 1) = q;
  z4(2, 2) = q * q;
  CHECK(max_abs_diff(z[3], z4) < 1e-12);

  // Tr(P_ak Z_b) = delta_ab q^k
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int k = 0; k < 3; ++k) {
        cplx tr = (m.projector(a, k) * z[static_cast<size_t>(b)]).trace();
        const cplx expect = (a == b) ? qp[k] : cplx{};
        CHECK(std::abs(tr - expect) < 1e-12);
      }

  // cubic roots: Z_0^3 = 1
  const Matrix z0 = z[0];
  CHECK(max_abs_diff(z0 * z0 * z0, Matrix::identity(3)) < 1e-12);

  CHECK_THROWS_AS(complementary_observables_qutrit(build_mub(2)),
                  DimensionMismatchError);
}
