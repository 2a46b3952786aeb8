#include "catq/maximization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Cholesky>
#include <unsupported/Eigen/MatrixFunctions>

#include "catq/random.hpp"

namespace catq {

DominantSet dominant_set(const CVector& eigenvalues, double rel_tol) {
  if (eigenvalues.size() == 0) throw Error(ErrorKind::EmptyInput, "dominant_set of no eigenvalues");
  if (!(rel_tol >= 0.0)) throw Error(ErrorKind::EmptyInput, "dominant_set tolerance must be >= 0");

  const RVector im = eigenvalues.imag();
  const double top = im.maxCoeff();
  const double spread = top - im.minCoeff();
  double scale = std::max(spread, eigenvalues.cwiseAbs().maxCoeff());
  if (!(scale > 0.0)) scale = 1.0;

  DominantSet dom;
  dom.bound = top;
  for (Index i = 0; i < eigenvalues.size(); ++i)
    if (im(i) >= top - rel_tol * scale) dom.indices.push_back(i);
  return dom;
}

double maximal_amplitude(const DominantSet& dom, double t_a, double t_b, double hbar) {
  return std::exp(dom.bound * (t_b - t_a) / hbar);
}

Complex transition_amplitude(const QMetric& m, const CVector& b_state_t, const CVector& a_state_t) {
  return inner_q(m, b_state_t, a_state_t);
}

MaxPair build_max_pair(const Spectrum& s, const QMetric& m, double t_a, double t_b, double hbar,
                       const MaxOptions& options) {
  if (!(t_b > t_a)) throw Error(ErrorKind::TimeOrder, "maximization needs t_b > t_a");
  if (!(hbar > 0.0)) throw Error(ErrorKind::TimeOrder, "hbar must be positive");
  require_dims(m.source_dim == s.dim(), "build_max_pair: metric and spectrum differ");

  const DominantSet dom = dominant_set(s.eigenvalues, options.dominant_tol);
  const std::size_t k = dom.indices.size();

  std::vector<double> weights(k, 1.0);
  if (options.weights) {
    require_dims(options.weights->size() == k, "build_max_pair: one weight per dominant mode");
    weights = *options.weights;
    for (double w : weights)
      if (!(w >= 0.0)) throw Error(ErrorKind::DegenerateWeights, "weights must be non-negative");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw Error(ErrorKind::DegenerateWeights, "all weights are zero");

  std::vector<double> a_phases(k, 0.0);
  if (options.a_phases) {
    require_dims(options.a_phases->size() == k, "build_max_pair: one phase per dominant mode");
    a_phases = *options.a_phases;
  }

  const double duration = t_b - t_a;
  MaxPair pair;
  MaxSolution& sol = pair.solution;
  sol.dominant_set = dom.indices;
  sol.bound_b = dom.bound;
  sol.theta_c = options.theta_c;
  sol.a_phases = a_phases;

  CVector a = CVector::Zero(s.dim());
  CVector b = CVector::Zero(s.dim());
  for (std::size_t j = 0; j < k; ++j) {
    const Index i = dom.indices[j];
    const double magnitude = std::sqrt(weights[j] / total);
    // Common phase: theta_a - theta_b - T Re(lambda) / hbar = theta_c.
    const double b_phase =
        a_phases[j] - options.theta_c - duration * s.eigenvalues(i).real() / hbar;
    sol.a_magnitudes.push_back(magnitude);
    sol.b_magnitudes.push_back(magnitude);
    sol.b_phases.push_back(b_phase);
    a(i) = std::polar(magnitude, a_phases[j]);
    b(i) = std::polar(magnitude, b_phase);
  }

  pair.boundary = BoundaryData{a, b, t_a, t_b, hbar};
  pair.a_state = s.diagonalizer * a;
  pair.b_state = s.diagonalizer * b;
  sol.attained = std::abs(
      transition_amplitude(m, evolve_b(s, m, pair.boundary, t_a), pair.a_state));
  return pair;
}

namespace {

struct Ascent {
  double value = 0.0;
  CVector x;
  CVector y;
  bool converged = false;
};

// Maximize |y^dagger M x| over Euclidean unit vectors x, y.
Ascent ascend(const CMatrix& mm, CVector x, CVector y, int iters, double step) {
  x.normalize();
  y.normalize();
  Complex z = y.dot(mm * x);
  double value = std::abs(z);
  bool converged = false;
  for (int it = 0; it < iters; ++it) {
    const Complex phase = std::abs(z) > 0.0 ? z / std::abs(z) : Complex(1.0);
    // Gradient of |z|^2 w.r.t. conj(y) is M x conj(z); w.r.t. conj(x) is M^dagger y z.
    y = (y + step * (mm * x) * std::conj(phase)).normalized();
    z = y.dot(mm * x);
    const Complex phase_y = std::abs(z) > 0.0 ? z / std::abs(z) : Complex(1.0);
    x = (x + step * (mm.adjoint() * y) * phase_y).normalized();
    z = y.dot(mm * x);
    const double next = std::abs(z);
    if (std::abs(next - value) <= 1e-15 * std::max(next, 1e-300)) {
      value = next;
      converged = true;
      break;
    }
    value = next;
  }
  return {value, std::move(x), std::move(y), converged};
}

}  // namespace

OracleResult oracle_maximize(const CMatrix& h, const QMetric& m, double t_a, double t_b,
                             double hbar, int restarts, int iters, std::uint64_t seed) {
  if (!(t_b > t_a)) throw Error(ErrorKind::TimeOrder, "oracle needs t_b > t_a");
  require_dims(h.rows() == h.cols() && h.rows() == m.source_dim, "oracle_maximize");
  const Index n = h.rows();

  const CMatrix propagator = (Complex(0.0, -(t_b - t_a) / hbar) * h).exp();

  // Whitening Q = L L^dagger maps Q-unit vectors to Euclidean unit vectors.
  Eigen::LLT<CMatrix> llt(m.q);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::NumericallySingular, "metric is not positive definite");
  const CMatrix l_adj = llt.matrixU();
  const CMatrix l_adj_inv = l_adj.triangularView<Eigen::Upper>().solve(CMatrix::Identity(n, n));
  const CMatrix whitened = l_adj * propagator * l_adj_inv;
  const double step = 8.0 / std::max(whitened.norm(), 1e-300);

  Rng rng(seed);
  OracleResult best;
  best.restarts = restarts;
  for (int r = 0; r < restarts; ++r) {
    CVector x0 = rng.complex_vector(n);
    CVector y0 = rng.complex_vector(n);
    Ascent run = ascend(whitened, std::move(x0), std::move(y0), iters, step);
    if (r == 0 || run.value > best.best_value) {
      best.best_value = run.value;
      best.best_a = l_adj_inv * run.x;
      best.best_b = l_adj_inv * run.y;
      best.converged = run.converged;
    }
  }
  return best;
}

OracleResult oracle_maximize(const Spectrum& s, const QMetric& m, double t_a, double t_b,
                             double hbar, int restarts, int iters, std::uint64_t seed) {
  const CMatrix h = s.diagonalizer * s.eigenvalues.asDiagonal() * s.inverse_diagonalizer;
  return oracle_maximize(h, m, t_a, t_b, hbar, restarts, iters, seed);
}

}  // namespace catq
