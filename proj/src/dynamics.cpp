#include "catq/dynamics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace catq {
namespace {

void require_time(const BoundaryData& bd, double t) {
  if (!(t >= bd.t_a && t <= bd.t_b))
    throw Error(ErrorKind::TimeOutOfRange,
                "t = " + std::to_string(t) + " outside [" + std::to_string(bd.t_a) + ", " +
                    std::to_string(bd.t_b) + "]");
}

bool is_hermitian(const CMatrix& k) {
  const double scale = std::max(k.norm(), 1e-300);
  return (k - k.adjoint()).norm() <= 1e-14 * scale;
}

}  // namespace

void validate(const BoundaryData& bd, Index dim) {
  if (!(bd.t_b >= bd.t_a)) throw Error(ErrorKind::TimeOrder, "boundary data needs t_b >= t_a");
  if (!(bd.hbar > 0.0)) throw Error(ErrorKind::TimeOrder, "hbar must be positive");
  require_dims(bd.a_coeffs.size() == dim && bd.b_coeffs.size() == dim,
               "boundary coefficients must match the spectrum dimension");
}

CVector expand(const Spectrum& s, const QMetric& m, const CVector& v) {
  require_dims(v.size() == s.dim() && m.source_dim == s.dim(), "expand");
  return s.inverse_diagonalizer * v;
}

CVector evolve_a(const Spectrum& s, const BoundaryData& bd, double t) {
  validate(bd, s.dim());
  require_time(bd, t);
  const double elapsed = t - bd.t_a;
  CVector c(s.dim());
  for (Index i = 0; i < s.dim(); ++i)
    c(i) = bd.a_coeffs(i) * std::exp(-kI * s.eigenvalues(i) * elapsed / bd.hbar);
  return s.diagonalizer * c;
}

CVector evolve_b(const Spectrum& s, const QMetric& m, const BoundaryData& bd, double t) {
  require_dims(m.source_dim == s.dim(), "evolve_b");
  validate(bd, s.dim());
  require_time(bd, t);
  const double elapsed = t - bd.t_b;
  CVector c(s.dim());
  for (Index i = 0; i < s.dim(); ++i)
    c(i) = bd.b_coeffs(i) * std::exp(-kI * std::conj(s.eigenvalues(i)) * elapsed / bd.hbar);
  return s.diagonalizer * c;
}

Propagator::Propagator(const CMatrix& generator, double hbar, double cond_limit) : hbar_(hbar) {
  if (!(hbar > 0.0)) throw Error(ErrorKind::TimeOrder, "hbar must be positive");
  if (generator.rows() != generator.cols())
    throw Error(ErrorKind::DimensionMismatch, "propagator generator must be square");
  if (is_hermitian(generator)) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(generator);
    if (solver.info() != Eigen::Success)
      throw Error(ErrorKind::NumericallySingular, "self-adjoint eigensolver failed");
    values_ = solver.eigenvalues().cast<Complex>();
    vectors_ = solver.eigenvectors();
    inverse_vectors_ = vectors_.adjoint();
  } else {
    Spectrum s = eigendecompose(generator, cond_limit);
    values_ = std::move(s.eigenvalues);
    vectors_ = std::move(s.diagonalizer);
    inverse_vectors_ = std::move(s.inverse_diagonalizer);
  }
}

CVector Propagator::phases(double dt) const {
  CVector ph(values_.size());
  for (Index i = 0; i < values_.size(); ++i) ph(i) = std::exp(-kI * values_(i) * dt / hbar_);
  return ph;
}

CVector Propagator::apply(const CVector& v, double dt) const {
  require_dims(v.size() == dim(), "Propagator::apply");
  if (dt == 0.0) return v;
  return vectors_ * (phases(dt).asDiagonal() * (inverse_vectors_ * v));
}

CMatrix Propagator::matrix(double dt) const {
  return vectors_ * phases(dt).asDiagonal() * inverse_vectors_;
}

CMatrix Propagator::heisenberg(const CMatrix& o, double dt) const {
  require_dims(o.rows() == dim() && o.cols() == dim(), "Propagator::heisenberg");
  if (dt == 0.0) return o;
  const CMatrix forward = matrix(dt);
  const CMatrix backward = matrix(-dt);
  return backward * o * forward;
}

CVector evolve_qh(const CMatrix& h_qh, const CVector& v, double dt, double hbar) {
  require_dims(h_qh.rows() == v.size(), "evolve_qh");
  if (dt == 0.0) return v;
  return Propagator(h_qh, hbar).apply(v, dt);
}

CMatrix heisenberg_op(const CMatrix& h_qh, const CMatrix& o, double dt, double hbar) {
  require_dims(h_qh.rows() == o.rows() && o.rows() == o.cols(), "heisenberg_op");
  if (dt == 0.0) return o;
  return Propagator(h_qh, hbar).heisenberg(o, dt);
}

}  // namespace catq
