#include "catq/qmetric.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "catq/random.hpp"

namespace catq {
namespace {

QMetric finish_metric(CMatrix q, CMatrix q_inv, Index dim) {
  q = (q + q.adjoint()).eval() / 2.0;
  q_inv = (q_inv + q_inv.adjoint()).eval() / 2.0;
  Eigen::LLT<CMatrix> llt(q);
  if (llt.info() != Eigen::Success || !q.allFinite())
    throw Error(ErrorKind::NumericallySingular, "metric is not positive definite");
  return QMetric{std::move(q), std::move(q_inv), dim};
}

void require_metric_dim(const QMetric& m, Index n, const char* where) {
  require_dims(m.q.rows() == n, where);
}

}  // namespace

QMetric build_q(const Spectrum& s) {
  const CMatrix& p = s.diagonalizer;
  const CMatrix& p_inv = s.inverse_diagonalizer;
  if (!p_inv.allFinite())
    throw Error(ErrorKind::NumericallySingular, "inverse diagonalizer is not finite");
  return finish_metric(p_inv.adjoint() * p_inv, p * p.adjoint(), s.dim());
}

QMetric build_q_rescaled(const Spectrum& s, const RVector& scales) {
  require_dims(scales.size() == s.dim(), "build_q_rescaled: one scale per eigenvector");
  if (!(scales.array() > 0.0).all())
    throw Error(ErrorKind::NumericallySingular, "eigenvector scales must be positive");
  const CMatrix& p = s.diagonalizer;
  const CMatrix& p_inv = s.inverse_diagonalizer;
  const CVector inv_sq = scales.array().square().inverse().cast<Complex>();
  const CVector sq = scales.array().square().cast<Complex>();
  return finish_metric(p_inv.adjoint() * inv_sq.asDiagonal() * p_inv,
                       p * sq.asDiagonal() * p.adjoint(), s.dim());
}

Complex inner_q(const QMetric& m, const CVector& u, const CVector& v) {
  require_dims(u.size() == m.q.rows() && v.size() == m.q.rows(), "inner_q");
  return metric_inner(m.q, u, v);
}

CMatrix q_adjoint(const QMetric& m, const CMatrix& a) {
  require_dims(a.rows() == a.cols() && a.rows() == m.source_dim, "q_adjoint");
  return metric_adjoint(m.q, m.q_inv, a);
}

HamiltonianSplit decompose_h(const QMetric& m, const CMatrix& h) {
  const CMatrix h_adj = q_adjoint(m, h);
  HamiltonianSplit split;
  split.q_hermitian = (h + h_adj) / 2.0;
  split.q_antihermitian = h - split.q_hermitian;
  return split;
}

double q_normality_residual(const QMetric& m, const CMatrix& h) {
  const CMatrix h_adj = q_adjoint(m, h);
  const double h_norm = h.norm();
  const double commutator = (h * h_adj - h_adj * h).norm();
  return h_norm > 0.0 ? commutator / (h_norm * h_norm) : commutator;
}

CVector q_normalize(const QMetric& m, const CVector& v) {
  require_dims(v.size() == m.q.rows(), "q_normalize");
  const double norm_sq = metric_inner(m.q, v, v).real();
  if (!(norm_sq > 0.0)) throw Error(ErrorKind::ZeroVector, "cannot Q-normalize a zero vector");
  return v / std::sqrt(norm_sq);
}

CMatrix random_q_hermitian(const QMetric& m, std::uint64_t seed) {
  Rng rng(seed);
  return m.q_inv * rng.hermitian(m.source_dim);
}

double metric_orthonormality_residual(const QMetric& m, const Spectrum& s) {
  require_metric_dim(m, s.dim(), "metric_orthonormality_residual");
  const CMatrix& p = s.diagonalizer;
  return (p.adjoint() * m.q * p - CMatrix::Identity(s.dim(), s.dim())).norm();
}

double metric_completeness_residual(const QMetric& m, const Spectrum& s) {
  require_metric_dim(m, s.dim(), "metric_completeness_residual");
  const CMatrix& p = s.diagonalizer;
  return (p * p.adjoint() * m.q - CMatrix::Identity(s.dim(), s.dim())).norm();
}

}  // namespace catq
