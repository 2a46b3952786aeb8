#pragma once

#include <cstdint>

#include "catq/maximization.hpp"

namespace catq {

enum class AverageKind { two_sided, tilde };

struct AverageReport {
  Complex value;
  double imag_residual = 0.0;  // |Im value| / max(|value|, 1)
  double t = 0.0;
  AverageKind kind = AverageKind::two_sided;
};

inline constexpr double kVanishingOverlap = 1e-300;
inline constexpr double kNormalizationTol = 1e-8;

template <typename T>
auto imag_residual(const std::complex<T>& value) {
  using std::abs;
  using std::max;
  return abs(value.imag()) / max(abs(value), T(1));
}

/// <B|_Q O |A> / <B|_Q A>
template <typename MQ, typename B, typename O, typename A>
typename MQ::Scalar two_sided_ratio(const Eigen::MatrixBase<MQ>& q, const Eigen::MatrixBase<B>& b,
                                    const Eigen::MatrixBase<O>& o, const Eigen::MatrixBase<A>& a) {
  return metric_inner(q, b, o * a) / metric_inner(q, b, a);
}

/// <A|_Q O |A>
template <typename MQ, typename O, typename A>
typename MQ::Scalar metric_average(const Eigen::MatrixBase<MQ>& q, const Eigen::MatrixBase<O>& o,
                                   const Eigen::MatrixBase<A>& a) {
  return metric_inner(q, a, o * a);
}

/// (i/hbar) <A|_Q [K, O] |A>
template <typename MQ, typename O, typename K, typename A>
typename MQ::Scalar commutator_rate(const Eigen::MatrixBase<MQ>& q, const Eigen::MatrixBase<A>& a,
                                    const Eigen::MatrixBase<O>& o, const Eigen::MatrixBase<K>& k,
                                    typename Eigen::NumTraits<typename MQ::Scalar>::Real hbar) {
  using Scalar = typename MQ::Scalar;
  const auto ka = (k * a).eval();
  const auto oa = (o * a).eval();
  const Scalar value = metric_inner(q, a, k * oa) - metric_inner(q, a, o * ka);
  return Scalar(0, 1) * value / Scalar(hbar);
}

/// Two-sided normalized matrix element. Throws VanishingOverlap when
/// |<B|_Q A>| <= 1e-300.
AverageReport normalized_matrix_element(const QMetric& m, const CVector& b_t, const CMatrix& o,
                                        const CVector& a_t, double t = 0.0);

/// Q-average for a Q-normalized state; throws NotNormalized otherwise.
AverageReport tilde_average(const QMetric& m, const CVector& tilde_a_t, const CMatrix& o,
                            double t = 0.0);

/// (i/hbar) <A~|_Q [H_Qh, O] |A~>
Complex ehrenfest_rhs(const QMetric& m, const CVector& tilde_a_t, const CMatrix& o,
                      const CMatrix& h_qh, double hbar = 1.0);

struct RealitySweepOptions {
  double t_a = 0.0;
  double t_b = 1.0;
  double hbar = 1.0;
  MaxOptions pair;
  /// Negative control: sample general complex observables instead of
  /// Q-Hermitian ones.
  bool non_q_hermitian = false;
};

struct RealitySample {
  int observable = 0;
  double t = 0.0;
  Complex value;
  double imag_residual = 0.0;
};

/// Every sampled (observable, time) two-sided average for the maximizing pair.
std::vector<RealitySample> reality_samples(const Spectrum& s, const QMetric& m, int n_observables,
                                           int n_times, std::uint64_t seed,
                                           const RealitySweepOptions& options = {});

/// Largest imag_residual over `reality_samples`.
double reality_sweep(const Spectrum& s, const QMetric& m, int n_observables, int n_times,
                     std::uint64_t seed, const RealitySweepOptions& options = {});

}  // namespace catq
