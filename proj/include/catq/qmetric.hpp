#pragma once

#include <cstdint>

#include "catq/spectral.hpp"

namespace catq {

/// Hermitian positive-definite metric Q = (P^dagger)^-1 P^-1 together with
/// Q^-1 = P P^dagger. Under <u|Q|v> the eigenvectors in P are orthonormal.
struct QMetric {
  CMatrix q;
  CMatrix q_inv;
  Index source_dim = 0;
};

// Expression-level primitives. They take the metric as a plain matrix so the
// same code runs for any Eigen scalar (tests use complex<long double>).

/// u^dagger Q v
template <typename MQ, typename U, typename V>
typename MQ::Scalar metric_inner(const Eigen::MatrixBase<MQ>& q, const Eigen::MatrixBase<U>& u,
                                 const Eigen::MatrixBase<V>& v) {
  return u.dot(q * v);
}

/// Q^-1 A^dagger Q
template <typename MQ, typename MQi, typename A>
auto metric_adjoint(const Eigen::MatrixBase<MQ>& q, const Eigen::MatrixBase<MQi>& q_inv,
                    const Eigen::MatrixBase<A>& a) {
  using Matrix = Eigen::Matrix<typename A::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  return Matrix(q_inv * a.adjoint() * q);
}

/// Build Q from a validated spectrum. Throws NumericallySingular if Q fails a
/// Cholesky test.
QMetric build_q(const Spectrum& s);

/// Metric for the rescaled eigenbasis |lambda_i> -> scales_i |lambda_i>
/// (scales positive). Q = P^-dagger diag(scales^-2) P^-1.
QMetric build_q_rescaled(const Spectrum& s, const RVector& scales);

Complex inner_q(const QMetric& m, const CVector& u, const CVector& v);

CMatrix q_adjoint(const QMetric& m, const CMatrix& a);

struct HamiltonianSplit {
  CMatrix q_hermitian;      // (H + H^dagQ) / 2
  CMatrix q_antihermitian;  // (H - H^dagQ) / 2
};

HamiltonianSplit decompose_h(const QMetric& m, const CMatrix& h);

/// ||H H^dagQ - H^dagQ H||_F / ||H||_F^2
double q_normality_residual(const QMetric& m, const CMatrix& h);

/// v / sqrt(<v|Q|v>); throws ZeroVector for v = 0.
CVector q_normalize(const QMetric& m, const CVector& v);

/// O = Q^-1 M with M a seeded random Hermitian matrix, so O^dagQ = O.
CMatrix random_q_hermitian(const QMetric& m, std::uint64_t seed);

/// ||P^dagger Q P - 1||_F
double metric_orthonormality_residual(const QMetric& m, const Spectrum& s);

/// ||P P^dagger Q - 1||_F
double metric_completeness_residual(const QMetric& m, const Spectrum& s);

}  // namespace catq
