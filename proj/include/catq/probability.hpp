#pragma once

#include "catq/types.hpp"

namespace catq {

/// Complex samples psi(q_k) on q_k = q_min + k dq at time t. `mass` is the
/// real kinetic coefficient of the Hermitian Hamiltonian that evolves psi.
struct GridWavefunction {
  CVector samples;
  double q_min = 0.0;
  double dq = 1.0;
  double t = 0.0;
  double mass = 1.0;
  double hbar = 1.0;

  Index size() const { return samples.size(); }
};

inline constexpr double kGridNormTol = 1e-6;
inline constexpr double kEdgeDecayTol = 1e-6;

/// sum_k |psi_k|^2 dq
double total_probability(const GridWavefunction& psi);

/// Copy with samples rescaled to unit total probability.
GridWavefunction normalized(GridWavefunction psi);

/// Throws NotNormalized unless total probability is 1 within 1e-6 and both
/// edge samples are below 1e-6 max|psi|.
void validate(const GridWavefunction& psi);

/// rho_k = |psi_k|^2
RVector density(const GridWavefunction& psi);

/// j_k = (i hbar / 2m)(d psi*/dq psi - psi* d psi/dq), central differences in
/// the interior and one-sided at the edges.
RVector current(const GridWavefunction& psi);

/// max over interior k of |(rho_after - rho_before)/dt + dj/dq|, with j taken
/// from the renormalized midpoint state (psi_before + psi_after)/2.
double continuity_residual(const GridWavefunction& before, const GridWavefunction& after);

/// Gaussian (m omega / pi hbar)^{1/4} exp(-m omega (q - q0)^2 / 2 hbar + i p0 q / hbar),
/// normalized on the grid.
GridWavefunction coherent_state(double q_min, double dq, Index n, double q0, double p0,
                                double mass = 1.0, double omega = 1.0, double hbar = 1.0);

}  // namespace catq
