#pragma once

#include "catq/qmetric.hpp"

namespace catq {

/// Eigenbasis coefficients of the initial state (at t_a) and the final state
/// (at t_b), plus the time window and hbar.
struct BoundaryData {
  CVector a_coeffs;
  CVector b_coeffs;
  double t_a = 0.0;
  double t_b = 1.0;
  double hbar = 1.0;

  double duration() const { return t_b - t_a; }
};

/// Checks t_b >= t_a, hbar > 0 and coefficient lengths against `dim`.
void validate(const BoundaryData& bd, Index dim);

/// c_i = <lambda_i|_Q v> = (P^-1 v)_i
CVector expand(const Spectrum& s, const QMetric& m, const CVector& v);

/// sum_i a_i(T_A) exp(-i lambda_i (t - t_a) / hbar) |lambda_i>
CVector evolve_a(const Spectrum& s, const BoundaryData& bd, double t);

/// sum_i b_i(T_B) exp(-i conj(lambda_i) (t - t_b) / hbar) |lambda_i>, the
/// solution of i hbar d/dt |B> = H^dagQ |B>.
CVector evolve_b(const Spectrum& s, const QMetric& m, const BoundaryData& bd, double t);

/// Propagator exp(-i K dt / hbar) for a fixed generator K, diagonalized once.
///
/// Hermitian generators go through the self-adjoint solver so the propagator
/// is unitary to rounding; other generators (e.g. a Q-Hermitian H_Qh with
/// Q != 1) use `eigendecompose`.
class Propagator {
 public:
  explicit Propagator(const CMatrix& generator, double hbar = 1.0,
                      double cond_limit = kDefaultCondLimit);

  /// exp(-i K dt / hbar) v
  CVector apply(const CVector& v, double dt) const;

  /// exp(+i K dt / hbar) O exp(-i K dt / hbar)
  CMatrix heisenberg(const CMatrix& o, double dt) const;

  /// Dense exp(-i K dt / hbar).
  CMatrix matrix(double dt) const;

  Index dim() const { return values_.size(); }
  double hbar() const { return hbar_; }
  const CVector& eigenvalues() const { return values_; }

 private:
  CVector phases(double dt) const;

  CVector values_;
  CMatrix vectors_;
  CMatrix inverse_vectors_;
  double hbar_;
};

/// exp(-i H_Qh dt / hbar) v. Diagonalizes h_qh on each call; hold a
/// Propagator when stepping repeatedly.
CVector evolve_qh(const CMatrix& h_qh, const CVector& v, double dt, double hbar = 1.0);

/// exp(+i H_Qh dt / hbar) O exp(-i H_Qh dt / hbar)
CMatrix heisenberg_op(const CMatrix& h_qh, const CMatrix& o, double dt, double hbar = 1.0);

}  // namespace catq
