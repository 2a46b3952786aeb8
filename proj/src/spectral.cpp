#include "catq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace catq {
namespace {

// Relative distance under which two eigenvalues share an eigenspace.
constexpr double kDegenerateTol = 1e-9;
// Per-vector residual above which one inverse-iteration sweep is applied.
constexpr double kRefineTol = 1e-12;

bool sorts_before(const Complex& a, const Complex& b) {
  if (a.imag() != b.imag()) return a.imag() > b.imag();
  return a.real() > b.real();
}

void normalize_column(Eigen::Ref<CVector> v) {
  v /= v.norm();
  const double peak = v.cwiseAbs().maxCoeff();
  Index k = 0;
  while (std::abs(v(k)) < peak * (1.0 - 1e-10)) ++k;
  v *= std::conj(v(k)) / std::abs(v(k));
  v(k) = Complex(v(k).real(), 0.0);
}

std::vector<Index> sorted_order(const CVector& values) {
  std::vector<Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return sorts_before(values(a), values(b)); });
  return order;
}

// Union-find grouping of eigenvalues closer than tol.
std::vector<std::vector<Index>> degenerate_clusters(const CVector& values, double tol) {
  const Index n = values.size();
  std::vector<Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (std::abs(values(i) - values(j)) <= tol) parent[find(j)] = find(i);

  std::vector<std::vector<Index>> groups(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<Index>> clusters;
  for (auto& g : groups)
    if (g.size() > 1) clusters.push_back(std::move(g));
  return clusters;
}

void orthonormalize_cluster(const CMatrix& h, const std::vector<Index>& idx, CVector& values,
                            CMatrix& vectors, double h_norm) {
  const Index k = static_cast<Index>(idx.size());
  CMatrix block(vectors.rows(), k);
  for (Index c = 0; c < k; ++c) block.col(c) = vectors.col(idx[c]);

  Eigen::HouseholderQR<CMatrix> qr(block);
  CMatrix basis = qr.householderQ() * CMatrix::Identity(vectors.rows(), k);

  CVector rayleigh(k);
  for (Index c = 0; c < k; ++c) rayleigh(c) = basis.col(c).dot(h * basis.col(c));
  const double residual = (h * basis - basis * rayleigh.asDiagonal()).norm();
  // Near-degenerate but distinct eigenvalues: keep the solver's vectors.
  if (residual > 1e-11 * std::max(h_norm, 1.0)) return;

  for (Index c = 0; c < k; ++c) {
    vectors.col(idx[c]) = basis.col(c);
    values(idx[c]) = rayleigh(c);
  }
}

void refine_vector(const CMatrix& h, const Complex& lambda, Eigen::Ref<CVector> v, double h_norm) {
  if ((h * v - lambda * v).norm() <= kRefineTol * h_norm) return;
  const CMatrix shifted = h - lambda * CMatrix::Identity(h.rows(), h.cols());
  CVector w = shifted.partialPivLu().solve(CVector(v));
  if (!w.allFinite() || w.norm() == 0.0) return;
  w /= w.norm();
  if ((h * w - lambda * w).norm() < (h * v - lambda * v).norm()) v = w;
}

CMatrix refined_inverse(const CMatrix& p) {
  CMatrix inv = p.partialPivLu().inverse();
  const CMatrix id = CMatrix::Identity(p.rows(), p.cols());
  inv += inv * (id - p * inv);
  return inv;
}

}  // namespace

double condition_number(const CMatrix& m) {
  Eigen::BDCSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

Spectrum eigendecompose(const CMatrix& h, double cond_limit) {
  if (h.rows() != h.cols() || h.rows() == 0)
    throw Error(ErrorKind::DimensionMismatch, "eigendecompose needs a non-empty square matrix");
  if (!h.allFinite()) throw Error(ErrorKind::NonFinite, "matrix has NaN or Inf entries");

  const Index n = h.rows();
  const double h_norm = h.norm();

  Eigen::ComplexEigenSolver<CMatrix> solver(h, true);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::NumericallySingular, "complex eigensolver did not converge");

  CVector values = solver.eigenvalues();
  CMatrix vectors = solver.eigenvectors();
  for (Index c = 0; c < n; ++c) vectors.col(c).normalize();

  // Defectiveness must be judged before any cluster rotation hides it.
  const double raw_cond = condition_number(vectors);
  if (!(raw_cond <= cond_limit))
    throw Error(ErrorKind::Defective,
                "eigenvector matrix condition number " + std::to_string(raw_cond) +
                    " exceeds limit " + std::to_string(cond_limit));

  const auto clusters = degenerate_clusters(values, kDegenerateTol * h_norm);
  std::vector<bool> clustered(static_cast<std::size_t>(n), false);
  for (const auto& cluster : clusters) {
    orthonormalize_cluster(h, cluster, values, vectors, h_norm);
    for (Index i : cluster) clustered[i] = true;
  }
  for (Index c = 0; c < n; ++c)
    if (!clustered[c]) refine_vector(h, values(c), vectors.col(c), h_norm);

  Spectrum s;
  s.eigenvalues.resize(n);
  s.diagonalizer.resize(n, n);
  const auto order = sorted_order(values);
  for (Index k = 0; k < n; ++k) {
    s.eigenvalues(k) = values(order[k]);
    s.diagonalizer.col(k) = vectors.col(order[k]);
    normalize_column(s.diagonalizer.col(k));
  }
  s.inverse_diagonalizer = refined_inverse(s.diagonalizer);
  s.cond_p = condition_number(s.diagonalizer);
  if (!(s.cond_p <= cond_limit))
    throw Error(ErrorKind::Defective, "eigenvector matrix condition number exceeds limit");
  return s;
}

double spectral_residual(const CMatrix& h, const Spectrum& s) {
  require_dims(h.rows() == h.cols() && h.rows() == s.dim() && s.diagonalizer.rows() == s.dim(),
               "spectral_residual: matrix and spectrum dimensions differ");
  const double residual =
      (h * s.diagonalizer - s.diagonalizer * s.eigenvalues.asDiagonal()).norm();
  const double h_norm = h.norm();
  return h_norm > 0.0 ? residual / h_norm : residual;
}

}  // namespace catq
