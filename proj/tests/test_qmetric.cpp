#include <doctest.h>

#include <cmath>

#include "catq/models.hpp"
#include "catq/qmetric.hpp"
#include "catq/random.hpp"

using namespace catq;

namespace {

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

QMetric identity_metric(Index n) {
  return QMetric{CMatrix::Identity(n, n), CMatrix::Identity(n, n), n};
}

QMetric metric_of(const CMatrix& h) { return build_q(eigendecompose(h)); }

}  // namespace

TEST_CASE("Hermitian input gives the identity metric") {
  const QMetric m = metric_of(mat2(1, 0, 0, 2));
  CHECK((m.q - CMatrix::Identity(2, 2)).norm() <= 1e-15);
}

TEST_CASE("triangular example metric") {
  const TriangularDemo demo = triangular_demo();
  const Spectrum s = eigendecompose(demo.h);
  const QMetric m = build_q(s);
  CHECK((m.q - demo.expected_q).norm() <= 1e-12);
  CHECK((m.q * m.q_inv - CMatrix::Identity(2, 2)).norm() <= 1e-13);
  // <lambda_i|Q|lambda_j> = delta_ij
  CHECK(metric_orthonormality_residual(m, s) <= 1e-12);
  CHECK(metric_completeness_residual(m, s) <= 1e-12);
}

TEST_CASE("unitarily conjugated normal matrix has identity metric") {
  Rng rng(11);
  const CMatrix u = rng.unitary(5);
  CVector d(5);
  for (Index i = 0; i < 5; ++i) d(i) = rng.complex_normal();
  const CMatrix h = u * d.asDiagonal() * u.adjoint();
  const QMetric m = metric_of(h);
  CHECK((m.q - CMatrix::Identity(5, 5)).norm() <= 1e-9);
}

TEST_CASE("inner_q") {
  const QMetric id = identity_metric(2);
  CVector e0(2);
  e0 << 1, 0;
  CHECK(inner_q(id, e0, e0) == Complex(1, 0));

  const QMetric m = metric_of(triangular_demo().h);
  CVector v(2);
  v << 1, 1;
  v /= std::sqrt(2.0);
  CHECK(std::abs(inner_q(m, e0, v)) <= 1e-15);

  Rng rng(5);
  const QMetric r = metric_of(random_nonnormal({4, 2, 0.1, 1.0, 20.0, 1}));
  for (int k = 0; k < 10; ++k) {
    const CVector a = rng.complex_vector(4);
    const CVector b = rng.complex_vector(4);
    CHECK(std::abs(inner_q(r, a, b) - std::conj(inner_q(r, b, a))) <= 1e-12 * std::abs(inner_q(r, a, b)));
  }
  CHECK_THROWS_AS(inner_q(id, CVector::Zero(3), e0), Error);
}

TEST_CASE("q_adjoint") {
  Rng rng(8);
  const CMatrix a = rng.complex_matrix(3, 3);
  CHECK((q_adjoint(identity_metric(3), a) - a.adjoint()).norm() <= 1e-15);

  const TriangularDemo demo = triangular_demo();
  const QMetric m = metric_of(demo.h);
  // Q^-1 H^dagger Q with Q^-1 = [[1.5,.5],[.5,.5]] reproduces H exactly.
  CHECK((q_adjoint(m, demo.h) - demo.h).norm() <= 1e-12);

  const QMetric r = metric_of(random_nonnormal({5, 21, 0.3, 1.0, 10.0, 1}));
  for (int k = 0; k < 5; ++k) {
    const CMatrix o = rng.complex_matrix(5, 5);
    const CVector u = rng.complex_vector(5);
    const CVector v = rng.complex_vector(5);
    const Complex lhs = inner_q(r, u, o * v);
    const Complex rhs = std::conj(inner_q(r, v, q_adjoint(r, o) * u));
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(lhs));
    CHECK((q_adjoint(r, q_adjoint(r, o)) - o).norm() <= 1e-11 * o.norm());
  }
  CHECK_THROWS_AS(q_adjoint(r, CMatrix::Identity(2, 2)), Error);
}

TEST_CASE("decompose_h") {
  SUBCASE("Hermitian H, identity metric") {
    const CMatrix h = mat2(1, Complex(0, 2), Complex(0, -2), 3);
    const HamiltonianSplit split = decompose_h(identity_metric(2), h);
    CHECK((split.q_hermitian - h).norm() <= 1e-15);
    CHECK(split.q_antihermitian.norm() <= 1e-15);
  }
  SUBCASE("i times identity is anti-Q-Hermitian under any metric") {
    const QMetric m = metric_of(random_nonnormal({3, 4, 0.0, 1.0, 5.0, 1}));
    const CMatrix h = kI * CMatrix::Identity(3, 3);
    const HamiltonianSplit split = decompose_h(m, h);
    CHECK(split.q_hermitian.norm() <= 1e-13);
    CHECK((split.q_antihermitian - h).norm() <= 1e-13);
  }
  SUBCASE("eigenvalues +-i: Q-Hermitian part has spectrum Re(lambda) = {0, 0}") {
    const CMatrix h = mat2(kI, 1, 0, -kI);
    const Spectrum s = eigendecompose(h);
    const QMetric m = build_q(s);
    const HamiltonianSplit split = decompose_h(m, h);
    const CMatrix expected = s.diagonalizer * s.eigenvalues.real().cast<Complex>().asDiagonal() *
                             s.inverse_diagonalizer;
    CHECK((split.q_hermitian - expected).norm() <= 1e-13);
    CHECK(split.q_hermitian.norm() <= 1e-13);
    CHECK((split.q_hermitian + split.q_antihermitian - h).norm() <= 1e-15);
  }
  SUBCASE("parts are Q-Hermitian and anti-Q-Hermitian") {
    const CMatrix h = random_nonnormal({6, 13, 0.4, 1.0, 30.0, 1});
    const QMetric m = metric_of(h);
    const HamiltonianSplit split = decompose_h(m, h);
    CHECK((split.q_hermitian + split.q_antihermitian - h).norm() <= 1e-14 * h.norm());
    CHECK((q_adjoint(m, split.q_hermitian) - split.q_hermitian).norm() <= 1e-10 * h.norm());
    CHECK((q_adjoint(m, split.q_antihermitian) + split.q_antihermitian).norm() <= 1e-10 * h.norm());
  }
}

TEST_CASE("q_normality_residual") {
  const CMatrix h = triangular_demo().h;
  CHECK(q_normality_residual(metric_of(h), h) <= 1e-9);
  // [H, H^dagger] = [[1,1],[1,-1]] has norm 2, ||H||^2 = 6.
  CHECK(q_normality_residual(identity_metric(2), h) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  Rng rng(2);
  const CMatrix u = rng.unitary(4);
  CVector d(4);
  for (Index i = 0; i < 4; ++i) d(i) = rng.complex_normal();
  CHECK(q_normality_residual(identity_metric(4), u * d.asDiagonal() * u.adjoint()) <= 1e-12);
}

TEST_CASE("Q-normality and real-spectrum Q-Hermiticity over random matrices") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    RandomSpec spec{2 + static_cast<Index>(seed % 15), seed, 0.2, 1.0, 100.0, 1};
    const CMatrix h = random_nonnormal(spec);
    const Spectrum s = eigendecompose(h);
    const QMetric m = build_q(s);
    CAPTURE(seed);
    CHECK(q_normality_residual(m, h) <= 1e-9);
    CHECK(metric_orthonormality_residual(m, s) <= 1e-9);
    CHECK(metric_completeness_residual(m, s) <= 1e-9);
    CHECK((m.q - m.q.adjoint()).norm() <= 1e-12 * m.q.norm());
  }
  // Real spectrum: H^dagQ = H.
  Rng rng(4);
  const CMatrix p = rng.complex_matrix(5, 5);
  CVector d(5);
  d << -2, -0.5, 0.3, 1.1, 2.5;
  const CMatrix h = p * d.asDiagonal() * p.inverse();
  const HamiltonianSplit split = decompose_h(metric_of(h), h);
  CHECK(split.q_antihermitian.norm() <= 1e-9 * h.norm());
}

TEST_CASE("q_normalize") {
  CVector v(2);
  v << 3, 4;
  const CVector n = q_normalize(identity_metric(2), v);
  CHECK(std::abs(n(0) - 0.6) <= 1e-15);
  CHECK(std::abs(n(1) - 0.8) <= 1e-15);

  const QMetric m = metric_of(triangular_demo().h);
  CVector e1(2);
  e1 << 0, 1;
  const CVector w = q_normalize(m, e1);
  CHECK(std::abs(w(0)) <= 1e-15);
  CHECK(std::abs(w(1) - 1.0 / std::sqrt(3.0)) <= 1e-15);
  CHECK((q_normalize(m, w) - w).norm() <= 1e-15);

  try {
    q_normalize(m, CVector::Zero(2));
    FAIL("expected ZeroVector");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroVector);
  }
}

TEST_CASE("random_q_hermitian") {
  const CMatrix a = random_q_hermitian(identity_metric(4), 17);
  CHECK((a - a.adjoint()).norm() <= 1e-15);

  const QMetric m = metric_of(random_nonnormal({6, 31, 0.0, 1.0, 10.0, 1}));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CMatrix o = random_q_hermitian(m, seed);
    CHECK((q_adjoint(m, o) - o).norm() <= 1e-12 * o.norm());
  }
  CHECK(random_q_hermitian(m, 5) == random_q_hermitian(m, 5));
  CHECK(random_q_hermitian(m, 5) != random_q_hermitian(m, 6));
}
