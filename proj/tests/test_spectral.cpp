#include <doctest.h>

#include <cmath>

#include "catq/models.hpp"
#include "catq/random.hpp"
#include "catq/spectral.hpp"

using namespace catq;

namespace {

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

bool sorted_by_im_then_re(const CVector& v) {
  for (Index i = 0; i + 1 < v.size(); ++i) {
    if (v(i).imag() < v(i + 1).imag()) return false;
    if (v(i).imag() == v(i + 1).imag() && v(i).real() < v(i + 1).real()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("diagonal input is returned sorted with a permuted identity") {
  const Spectrum s = eigendecompose(mat2(1, 0, 0, 2));
  CHECK(s.eigenvalues(0) == Complex(2, 0));
  CHECK(s.eigenvalues(1) == Complex(1, 0));
  const CMatrix expected = mat2(0, 1, 1, 0);
  CHECK((s.diagonalizer - expected).norm() == doctest::Approx(0.0));
  CHECK(spectral_residual(mat2(1, 0, 0, 2), s) <= 1e-15);
}

TEST_CASE("upper triangular 2x2 matches the hand solution") {
  // (H - 2)v = 0 gives v = (1, 1)/sqrt2; (H - 1)v = 0 gives v = (1, 0).
  const CMatrix h = mat2(1, 1, 0, 2);
  const Spectrum s = eigendecompose(h);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s.eigenvalues(0) - 2.0) <= 1e-14);
  CHECK(std::abs(s.eigenvalues(1) - 1.0) <= 1e-14);
  CHECK(std::abs(s.diagonalizer(0, 0) - r) <= 1e-14);
  CHECK(std::abs(s.diagonalizer(1, 0) - r) <= 1e-14);
  CHECK(std::abs(s.diagonalizer(0, 1) - 1.0) <= 1e-14);
  CHECK(std::abs(s.diagonalizer(1, 1)) <= 1e-14);
  CHECK(spectral_residual(h, s) <= 1e-10);
}

TEST_CASE("Jordan block is rejected as defective") {
  try {
    eigendecompose(mat2(1, 1, 0, 1));
    FAIL("expected Defective");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Defective);
  }
}

TEST_CASE("non-finite and non-square input") {
  CMatrix h = mat2(1, 0, 0, 2);
  h(0, 1) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(eigendecompose(h), Error);
  try {
    eigendecompose(h);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFinite);
  }
  CHECK_THROWS_AS(eigendecompose(CMatrix(2, 3)), Error);
}

TEST_CASE("spectral_residual of a wrong diagonalizer") {
  // H P - P diag(2,1) with P = 1 is [[-1,1],[0,1]]: sqrt3 / sqrt6.
  const CMatrix h = mat2(1, 1, 0, 2);
  Spectrum s = eigendecompose(h);
  s.diagonalizer = CMatrix::Identity(2, 2);
  CHECK(spectral_residual(h, s) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(spectral_residual(h, s) >= 0.3);

  Spectrum small = s;
  small.eigenvalues.resize(1);
  CHECK_THROWS_AS(spectral_residual(h, small), Error);
}

TEST_CASE("degenerate eigenspace is orthonormalized") {
  // Two-dimensional eigenspace for eigenvalue 3 spanned by non-orthogonal vectors.
  CMatrix p(3, 3);
  p << 1, 1, 0, 0, 1, 1, 0, 0, 1;
  CVector d(3);
  d << 3, 3, -1;
  const CMatrix h = p * d.asDiagonal() * p.inverse();
  const Spectrum s = eigendecompose(h);
  CHECK(spectral_residual(h, s) <= 1e-10);
  const Complex overlap = s.diagonalizer.col(0).dot(s.diagonalizer.col(1));
  CHECK(std::abs(overlap) <= 1e-12);
}

TEST_CASE("invariants over seeded random non-normal matrices") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomSpec spec;
    spec.dim = 2 + static_cast<Index>(seed % 11);
    spec.seed = seed;
    spec.cond_target = 1.0 + 50.0 * static_cast<double>(seed % 5);
    const CMatrix h = random_nonnormal(spec);
    const Spectrum s = eigendecompose(h);
    CAPTURE(seed);
    CHECK(spectral_residual(h, s) <= 1e-10);
    const Index n = s.dim();
    CHECK((s.diagonalizer * s.inverse_diagonalizer - CMatrix::Identity(n, n)).norm() <= 1e-12);
    CHECK(sorted_by_im_then_re(s.eigenvalues));
    const CMatrix rebuilt = s.diagonalizer * s.eigenvalues.asDiagonal() * s.inverse_diagonalizer;
    CHECK((rebuilt - h).norm() <= 1e-9 * h.norm());
    for (Index c = 0; c < n; ++c) {
      const auto col = s.diagonalizer.col(c);
      CHECK(std::abs(col.norm() - 1.0) <= 1e-14);
      Index k = 0;
      col.cwiseAbs().maxCoeff(&k);
      CHECK(std::abs(col(k).imag()) <= 1e-15);
      CHECK(col(k).real() > 0.0);
    }
    CHECK(s.cond_p >= 1.0);
  }
}

TEST_CASE("identical input gives bit-identical spectra") {
  RandomSpec spec;
  spec.dim = 7;
  spec.seed = 99;
  spec.cond_target = 30.0;
  const CMatrix h = random_nonnormal(spec);
  const Spectrum a = eigendecompose(h);
  const Spectrum b = eigendecompose(h);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.diagonalizer == b.diagonalizer);
  CHECK(a.inverse_diagonalizer == b.inverse_diagonalizer);
}

TEST_CASE("cond_limit is enforced") {
  RandomSpec spec;
  spec.dim = 5;
  spec.seed = 3;
  spec.cond_target = 1e3;
  const CMatrix h = random_nonnormal(spec);
  CHECK_NOTHROW(eigendecompose(h));
  CHECK_THROWS_AS(eigendecompose(h, 1.5), Error);
}
