#pragma once

#include <cstdint>

#include "catq/qmetric.hpp"

namespace catq {

/// Seeded random H = P diag(lambda) P^-1 with max Im lambda pinned to
/// `im_upper` and cond(P) = `cond_target`.
struct RandomSpec {
  Index dim = 4;
  std::uint64_t seed = 0;
  double im_upper = 0.0;
  double im_spread = 1.0;
  double cond_target = 10.0;
  Index pinned = 1;  // eigenvalues placed exactly at Im = im_upper
};

CMatrix random_nonnormal(const RandomSpec& spec);

struct TriangularDemo {
  CMatrix h;
  CMatrix expected_q;
};

/// H = [[1, 1], [0, 2]] with its metric Q = [[1, -1], [-1, 3]].
TriangularDemo triangular_demo();

/// H = p^2 / 2m + m omega^2 q^2 / 2 on a uniform grid with Dirichlet edges.
struct OscillatorSpec {
  Complex mass{1.0, 0.0};
  Complex omega{1.0, 0.0};
  double hbar = 1.0;
  double grid_min = -8.0;
  double grid_max = 8.0;
  Index n_points = 256;

  double spacing() const { return (grid_max - grid_min) / static_cast<double>(n_points - 1); }
  /// arg(m omega) in (-pi, pi]
  double theta() const { return std::arg(mass * omega); }
  /// m exp(-i theta); m_eff * omega is real and positive.
  Complex effective_mass() const { return mass * std::exp(Complex(0.0, -theta())); }
  /// Continuum eigenvalue hbar omega (n + 1/2).
  Complex level(Index n) const { return hbar * omega * (static_cast<double>(n) + 0.5); }
  /// Continuum Im lambda_n is bounded above iff Im omega <= 0.
  bool bounded_above() const { return omega.imag() <= 0.0; }
  /// grid_max >= 6 sqrt(hbar / |m omega|)
  bool grid_wide_enough() const;
};

RVector grid_points(const OscillatorSpec& spec);

/// Throws GridTooCoarse for fewer than 16 points.
CMatrix oscillator_hamiltonian(const OscillatorSpec& spec);

/// diag(q_k)
CMatrix position_operator(const OscillatorSpec& spec);

/// -i hbar d/dq by central differences (zero beyond the edges).
CMatrix momentum_operator(const OscillatorSpec& spec);

/// Metric of the oscillator eigenbasis with each eigenvector scaled so that
/// its bilinear self-product psi^T psi has unit modulus.
QMetric oscillator_metric(const Spectrum& s);

struct OscillatorRelations {
  // q_Q = (q + q^dagQ)/2 and p_Q = (p + p^dagQ)/2 against the scaling relations.
  double residual_q = 0.0;  // q_Q vs e^{i theta/2} q
  double residual_p = 0.0;  // p_Q vs e^{-i theta/2} p
  double residual_h = 0.0;  // H vs p_Q^2/2m_eff + m_eff omega^2 q_Q^2/2
  // The scaled operators q' = e^{i theta/2} q, p' = e^{-i theta/2} p directly.
  double hermiticity_q = 0.0;      // ||q' - q'^dagQ|| / ||q'||
  double hermiticity_p = 0.0;      // ||p' - p'^dagQ|| / ||p'||
  double residual_h_scaled = 0.0;  // H vs p'^2/2m_eff + m_eff omega^2 q'^2/2
};

/// Relative residuals restricted to the span of the `n_check` eigenstates
/// with the smallest Re lambda; operators are compared through their matrix
/// elements P^-1 X P on that block.
OscillatorRelations oscillator_qq_relations(const OscillatorSpec& spec, const Spectrum& s,
                                            const QMetric& m, Index n_check);

}  // namespace catq
