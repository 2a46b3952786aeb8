#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "catq/dynamics.hpp"

namespace catq {

struct DominantSet {
  std::vector<Index> indices;  // ascending
  double bound = 0.0;          // B = max_i Im lambda_i
};

inline constexpr double kDefaultDominantTol = 1e-9;

/// Indices whose imaginary part lies within rel_tol * scale of the maximum,
/// where scale = max(spread of Im lambda, max |lambda|), or 1 if both vanish.
DominantSet dominant_set(const CVector& eigenvalues, double rel_tol = kDefaultDominantTol);

/// Free parameters of the (degenerate) maximizer. `weights` and `a_phases`
/// are indexed by position in the dominant set.
struct MaxOptions {
  std::optional<std::vector<double>> weights;
  double theta_c = 0.0;
  std::optional<std::vector<double>> a_phases;
  double dominant_tol = kDefaultDominantTol;
};

struct MaxSolution {
  std::vector<Index> dominant_set;
  double bound_b = 0.0;
  double theta_c = 0.0;
  std::vector<double> a_magnitudes;
  std::vector<double> a_phases;
  std::vector<double> b_magnitudes;
  std::vector<double> b_phases;
  double attained = 0.0;  // |<B(t)|_Q A(t)>|
};

/// Maximizing boundary states. `a_state` is |A(T_A)>, `b_state` is |B(T_B)>.
struct MaxPair {
  MaxSolution solution;
  CVector a_state;
  CVector b_state;
  BoundaryData boundary;  // eigenbasis coefficients of the two states
};

/// Analytic maximizer of |<B(t)|_Q A(t)>| over Q-normalized boundary states.
/// Throws TimeOrder unless t_b > t_a, DegenerateWeights for all-zero weights.
MaxPair build_max_pair(const Spectrum& s, const QMetric& m, double t_a, double t_b,
                       double hbar = 1.0, const MaxOptions& options = {});

/// <B(t)|_Q A(t)>
Complex transition_amplitude(const QMetric& m, const CVector& b_state_t, const CVector& a_state_t);

/// exp(B T / hbar), the value the maximizer attains.
double maximal_amplitude(const DominantSet& dom, double t_a, double t_b, double hbar);

struct OracleResult {
  double best_value = 0.0;  // |<B(T_B)|_Q U |A(T_A)>| at the best restart
  CVector best_a;           // Q-normalized |A(T_A)>
  CVector best_b;           // Q-normalized |B(T_B)>
  bool converged = false;   // best restart met the stopping tolerance
  int restarts = 0;
};

/// Numeric maximization by projected gradient ascent of |<B|_Q U A>|^2 over
/// two Q-unit spheres, U = exp(-i H T / hbar) taken as a dense Pade
/// exponential of H (independent of the eigenbasis). Seeded restarts.
OracleResult oracle_maximize(const CMatrix& h, const QMetric& m, double t_a, double t_b,
                             double hbar, int restarts, int iters, std::uint64_t seed);

/// Convenience overload that rebuilds H = P diag(lambda) P^-1.
OracleResult oracle_maximize(const Spectrum& s, const QMetric& m, double t_a, double t_b,
                             double hbar, int restarts, int iters, std::uint64_t seed);

}  // namespace catq
