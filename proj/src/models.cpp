#include "catq/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "catq/random.hpp"

namespace catq {

CMatrix random_nonnormal(const RandomSpec& spec) {
  require_dims(spec.dim >= 1, "random_nonnormal: dim must be positive");
  const Index n = spec.dim;
  const double cond = std::clamp(spec.cond_target, 1.0, 1e4);
  const Index pinned = std::clamp<Index>(spec.pinned, 1, n);

  Rng rng(spec.seed);
  CVector lambda(n);
  for (Index i = 0; i < n; ++i) {
    const double re = rng.normal();
    // Unpinned modes sit strictly below the bound.
    const double im =
        i < pinned ? spec.im_upper : spec.im_upper - spec.im_spread * rng.uniform(0.05, 1.0);
    lambda(i) = Complex(re, im);
  }

  const CMatrix u = rng.unitary(n);
  const CMatrix v = rng.unitary(n);
  RVector sigma(n);
  for (Index i = 0; i < n; ++i)
    sigma(i) = n == 1 ? 1.0 : std::pow(cond, -static_cast<double>(i) / static_cast<double>(n - 1));

  const CMatrix p = u * sigma.cast<Complex>().asDiagonal() * v.adjoint();
  const CMatrix p_inv = v * sigma.cwiseInverse().cast<Complex>().asDiagonal() * u.adjoint();
  return p * lambda.asDiagonal() * p_inv;
}

TriangularDemo triangular_demo() {
  CMatrix h(2, 2);
  h << 1.0, 1.0, 0.0, 2.0;
  CMatrix q(2, 2);
  q << 1.0, -1.0, -1.0, 3.0;
  return {h, q};
}

bool OscillatorSpec::grid_wide_enough() const {
  return grid_max >= 6.0 * std::sqrt(hbar / std::abs(mass * omega));
}

RVector grid_points(const OscillatorSpec& spec) {
  return RVector::LinSpaced(spec.n_points, spec.grid_min, spec.grid_max);
}

CMatrix oscillator_hamiltonian(const OscillatorSpec& spec) {
  if (spec.n_points < 16)
    throw Error(ErrorKind::GridTooCoarse, "oscillator grid needs at least 16 points");
  const Index n = spec.n_points;
  const double dq = spec.spacing();
  const RVector q = grid_points(spec);
  const Complex hop = -spec.hbar * spec.hbar / (2.0 * spec.mass * dq * dq);
  const Complex spring = 0.5 * spec.mass * spec.omega * spec.omega;

  CMatrix h = CMatrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    h(k, k) = -2.0 * hop + spring * q(k) * q(k);
    if (k + 1 < n) {
      h(k, k + 1) = hop;
      h(k + 1, k) = hop;
    }
  }
  return h;
}

CMatrix position_operator(const OscillatorSpec& spec) {
  return grid_points(spec).cast<Complex>().asDiagonal();
}

CMatrix momentum_operator(const OscillatorSpec& spec) {
  const Index n = spec.n_points;
  const Complex c = -kI * spec.hbar / (2.0 * spec.spacing());
  CMatrix p = CMatrix::Zero(n, n);
  for (Index k = 0; k + 1 < n; ++k) {
    p(k, k + 1) = c;
    p(k + 1, k) = -c;
  }
  return p;
}

QMetric oscillator_metric(const Spectrum& s) {
  RVector scales(s.dim());
  for (Index i = 0; i < s.dim(); ++i) {
    const auto col = s.diagonalizer.col(i);
    scales(i) = 1.0 / std::sqrt(std::abs(col.cwiseProduct(col).sum()));
  }
  return build_q_rescaled(s, scales);
}

namespace {

class BlockProjector {
 public:
  BlockProjector(const Spectrum& s, Index n_check) {
    std::vector<Index> order(static_cast<std::size_t>(s.dim()));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
      return s.eigenvalues(a).real() < s.eigenvalues(b).real();
    });
    left_.resize(n_check, s.dim());
    right_.resize(s.dim(), n_check);
    for (Index k = 0; k < n_check; ++k) {
      left_.row(k) = s.inverse_diagonalizer.row(order[k]);
      right_.col(k) = s.diagonalizer.col(order[k]);
    }
  }

  CMatrix operator()(const CMatrix& x) const { return left_ * x * right_; }

  double relative(const CMatrix& x, const CMatrix& reference) const {
    const double denom = (*this)(reference).norm();
    const double num = (*this)(x - reference).norm();
    return denom > 0.0 ? num / denom : num;
  }

 private:
  CMatrix left_;
  CMatrix right_;
};

}  // namespace

OscillatorRelations oscillator_qq_relations(const OscillatorSpec& spec, const Spectrum& s,
                                            const QMetric& m, Index n_check) {
  require_dims(s.dim() == spec.n_points && m.source_dim == s.dim(),
               "oscillator_qq_relations: spectrum must come from the oscillator grid");
  require_dims(n_check >= 1 && n_check <= s.dim() / 4,
               "oscillator_qq_relations: n_check must be in [1, dim/4]");

  const BlockProjector block(s, n_check);
  const CMatrix h = oscillator_hamiltonian(spec);
  const CMatrix q = position_operator(spec);
  const CMatrix p = momentum_operator(spec);
  const double theta = spec.theta();
  const Complex m_eff = spec.effective_mass();
  const Complex spring = 0.5 * m_eff * spec.omega * spec.omega;
  const Complex half_turn = std::exp(Complex(0.0, theta / 2.0));

  auto h_eff = [&](const CMatrix& qq, const CMatrix& pp) -> CMatrix {
    return (pp * pp) / (2.0 * m_eff) + spring * (qq * qq);
  };

  const CMatrix q_q = (q + q_adjoint(m, q)) / 2.0;
  const CMatrix p_q = (p + q_adjoint(m, p)) / 2.0;
  const CMatrix q_scaled = half_turn * q;
  const CMatrix p_scaled = std::conj(half_turn) * p;

  OscillatorRelations r;
  r.residual_q = block.relative(q_q, q_scaled);
  r.residual_p = block.relative(p_q, p_scaled);
  r.residual_h = block.relative(h_eff(q_q, p_q), h);
  r.hermiticity_q = block.relative(q_adjoint(m, q_scaled), q_scaled);
  r.hermiticity_p = block.relative(q_adjoint(m, p_scaled), p_scaled);
  r.residual_h_scaled = block.relative(h_eff(q_scaled, p_scaled), h);
  return r;
}

}  // namespace catq
