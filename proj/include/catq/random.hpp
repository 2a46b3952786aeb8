#pragma once

#include <cstdint>
#include <random>

#include "catq/types.hpp"

namespace catq {

/// Seeded source of Gaussian matrices and vectors. Deterministic per seed on
/// a given standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  CVector complex_vector(Index n) {
    CVector v(n);
    for (Index i = 0; i < n; ++i) v(i) = complex_normal();
    return v;
  }

  CMatrix complex_matrix(Index rows, Index cols) {
    CMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
    return m;
  }

  CMatrix hermitian(Index n) {
    const CMatrix g = complex_matrix(n, n);
    return (g + g.adjoint()) / 2.0;
  }

  /// Haar-like unitary from the QR factor of a Gaussian matrix.
  CMatrix unitary(Index n) {
    const CMatrix g = complex_matrix(n, n);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix u = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) {
      const Complex d = r(j, j);
      if (std::abs(d) > 0.0) u.col(j) *= d / std::abs(d);
    }
    return u;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace catq
