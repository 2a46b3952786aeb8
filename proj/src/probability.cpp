#include "catq/probability.hpp"

#include <cmath>
#include <numbers>

namespace catq {
namespace {

CVector derivative(const CVector& f, double dq) {
  const Index n = f.size();
  CVector d(n);
  for (Index k = 1; k + 1 < n; ++k) d(k) = (f(k + 1) - f(k - 1)) / (2.0 * dq);
  d(0) = (f(1) - f(0)) / dq;
  d(n - 1) = (f(n - 1) - f(n - 2)) / dq;
  return d;
}

void require_same_grid(const GridWavefunction& a, const GridWavefunction& b) {
  const bool same = a.size() == b.size() && a.size() >= 5 &&
                    std::abs(a.q_min - b.q_min) <= 1e-12 * std::max(1.0, std::abs(a.q_min)) &&
                    std::abs(a.dq - b.dq) <= 1e-12 * a.dq && a.mass == b.mass && a.hbar == b.hbar;
  if (!same) throw Error(ErrorKind::GridMismatch, "wavefunctions live on different grids");
}

}  // namespace

double total_probability(const GridWavefunction& psi) { return psi.samples.squaredNorm() * psi.dq; }

GridWavefunction normalized(GridWavefunction psi) {
  const double total = total_probability(psi);
  if (!(total > 0.0)) throw Error(ErrorKind::ZeroVector, "cannot normalize a zero wavefunction");
  psi.samples /= std::sqrt(total);
  return psi;
}

void validate(const GridWavefunction& psi) {
  if (psi.size() < 3 || !(psi.dq > 0.0))
    throw Error(ErrorKind::GridMismatch, "grid needs at least 3 points and dq > 0");
  const double total = total_probability(psi);
  if (!(std::abs(total - 1.0) <= kGridNormTol))
    throw Error(ErrorKind::NotNormalized, "total probability " + std::to_string(total));
  const double peak = psi.samples.cwiseAbs().maxCoeff();
  const double edge = std::max(std::abs(psi.samples(0)), std::abs(psi.samples(psi.size() - 1)));
  if (edge > kEdgeDecayTol * peak)
    throw Error(ErrorKind::NotNormalized, "wavefunction has not decayed at the grid edges");
}

RVector density(const GridWavefunction& psi) {
  validate(psi);
  return psi.samples.cwiseAbs2();
}

RVector current(const GridWavefunction& psi) {
  validate(psi);
  const CVector& f = psi.samples;
  const CVector d = derivative(f, psi.dq);
  const Complex prefactor = kI * psi.hbar / (2.0 * psi.mass);
  const CVector j = prefactor * (d.conjugate().cwiseProduct(f) - f.conjugate().cwiseProduct(d));
  const double scale = std::max(j.cwiseAbs().maxCoeff(), 1.0);
  if (j.imag().cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error(ErrorKind::NonFinite, "probability current picked up an imaginary part");
  return j.real();
}

double continuity_residual(const GridWavefunction& before, const GridWavefunction& after) {
  require_same_grid(before, after);
  const double dt = after.t - before.t;
  if (!(dt > 0.0)) throw Error(ErrorKind::GridMismatch, "psi_after must be later than psi_before");

  const RVector rho_before = density(before);
  const RVector rho_after = density(after);

  GridWavefunction mid = before;
  mid.samples = (before.samples + after.samples) / 2.0;
  mid.t = before.t + dt / 2.0;
  const RVector j = current(normalized(mid));

  const Index n = before.size();
  double worst = 0.0;
  for (Index k = 2; k + 2 < n; ++k) {
    const double dj = (j(k + 1) - j(k - 1)) / (2.0 * before.dq);
    worst = std::max(worst, std::abs((rho_after(k) - rho_before(k)) / dt + dj));
  }
  return worst;
}

GridWavefunction coherent_state(double q_min, double dq, Index n, double q0, double p0,
                                double mass, double omega, double hbar) {
  GridWavefunction psi;
  psi.q_min = q_min;
  psi.dq = dq;
  psi.mass = mass;
  psi.hbar = hbar;
  psi.samples.resize(n);
  const double width = mass * omega / hbar;
  const double norm = std::pow(width / std::numbers::pi, 0.25);
  for (Index k = 0; k < n; ++k) {
    const double q = q_min + static_cast<double>(k) * dq;
    psi.samples(k) = norm * std::exp(Complex(-0.5 * width * (q - q0) * (q - q0), p0 * q / hbar));
  }
  return normalized(std::move(psi));
}

}  // namespace catq
