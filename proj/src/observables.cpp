#include "catq/observables.hpp"

#include <algorithm>
#include <cmath>

#include "catq/random.hpp"

namespace catq {
namespace {

void require_normalized(const QMetric& m, const CVector& v) {
  const double norm_sq = metric_inner(m.q, v, v).real();
  if (!(std::abs(norm_sq - 1.0) <= kNormalizationTol))
    throw Error(ErrorKind::NotNormalized,
                "state has <A|_Q A> = " + std::to_string(norm_sq) + ", expected 1");
}

}  // namespace

AverageReport normalized_matrix_element(const QMetric& m, const CVector& b_t, const CMatrix& o,
                                        const CVector& a_t, double t) {
  require_dims(b_t.size() == m.source_dim && a_t.size() == m.source_dim &&
                   o.rows() == m.source_dim && o.cols() == m.source_dim,
               "normalized_matrix_element");
  const Complex overlap = metric_inner(m.q, b_t, a_t);
  if (!(std::abs(overlap) > kVanishingOverlap))
    throw Error(ErrorKind::VanishingOverlap, "<B|_Q A> vanishes");
  const Complex value = metric_inner(m.q, b_t, o * a_t) / overlap;
  return {value, imag_residual(value), t, AverageKind::two_sided};
}

AverageReport tilde_average(const QMetric& m, const CVector& tilde_a_t, const CMatrix& o, double t) {
  require_dims(tilde_a_t.size() == m.source_dim && o.rows() == m.source_dim &&
                   o.cols() == m.source_dim,
               "tilde_average");
  require_normalized(m, tilde_a_t);
  const Complex value = metric_average(m.q, o, tilde_a_t);
  return {value, imag_residual(value), t, AverageKind::tilde};
}

Complex ehrenfest_rhs(const QMetric& m, const CVector& tilde_a_t, const CMatrix& o,
                      const CMatrix& h_qh, double hbar) {
  require_dims(tilde_a_t.size() == m.source_dim && o.rows() == m.source_dim &&
                   h_qh.rows() == m.source_dim,
               "ehrenfest_rhs");
  require_normalized(m, tilde_a_t);
  return commutator_rate(m.q, tilde_a_t, o, h_qh, hbar);
}

std::vector<RealitySample> reality_samples(const Spectrum& s, const QMetric& m, int n_observables,
                                           int n_times, std::uint64_t seed,
                                           const RealitySweepOptions& options) {
  const MaxPair pair = build_max_pair(s, m, options.t_a, options.t_b, options.hbar, options.pair);

  Rng rng(seed);
  std::vector<double> times(static_cast<std::size_t>(n_times));
  for (double& t : times) t = rng.uniform(options.t_a, options.t_b);

  std::vector<RealitySample> samples;
  samples.reserve(static_cast<std::size_t>(n_observables) * times.size());
  for (int k = 0; k < n_observables; ++k) {
    const std::uint64_t obs_seed = seed * 1000003ULL + static_cast<std::uint64_t>(k) + 1;
    const CMatrix o = options.non_q_hermitian ? Rng(obs_seed).complex_matrix(s.dim(), s.dim())
                                              : random_q_hermitian(m, obs_seed);
    for (double t : times) {
      const CVector a_t = evolve_a(s, pair.boundary, t);
      const CVector b_t = evolve_b(s, m, pair.boundary, t);
      const AverageReport r = normalized_matrix_element(m, b_t, o, a_t, t);
      samples.push_back({k, t, r.value, r.imag_residual});
    }
  }
  return samples;
}

double reality_sweep(const Spectrum& s, const QMetric& m, int n_observables, int n_times,
                     std::uint64_t seed, const RealitySweepOptions& options) {
  double worst = 0.0;
  for (const auto& sample : reality_samples(s, m, n_observables, n_times, seed, options))
    worst = std::max(worst, sample.imag_residual);
  return worst;
}

}  // namespace catq
