#pragma once

#include "catq/types.hpp"

namespace catq {

/// Eigendecomposition H = P diag(lambda) P^-1 of a diagonalizable matrix.
///
/// Columns of `diagonalizer` are unit-norm right eigenvectors whose
/// largest-magnitude component is real and positive. Eigenvalues are sorted
/// by descending imaginary part, ties broken by descending real part.
struct Spectrum {
  CVector eigenvalues;
  CMatrix diagonalizer;
  CMatrix inverse_diagonalizer;
  double cond_p = 1.0;

  Index dim() const { return eigenvalues.size(); }
};

inline constexpr double kDefaultCondLimit = 1e8;

/// Throws Error{Defective} when cond(P) exceeds `cond_limit`, Error{NonFinite}
/// on NaN/Inf input. Eigenvectors of numerically degenerate eigenvalues are
/// orthonormalized (Euclidean) inside their eigenspace.
Spectrum eigendecompose(const CMatrix& h, double cond_limit = kDefaultCondLimit);

/// ||H P - P diag(lambda)||_F / ||H||_F.
double spectral_residual(const CMatrix& h, const Spectrum& s);

/// P diag(f(lambda_i)) P^-1 for the scalar map `f`.
template <typename F>
CMatrix spectral_function(const Spectrum& s, F&& f) {
  CVector values(s.dim());
  for (Index i = 0; i < s.dim(); ++i) values(i) = f(s.eigenvalues(i));
  return s.diagonalizer * values.asDiagonal() * s.inverse_diagonalizer;
}

/// 2-norm condition number via SVD.
double condition_number(const CMatrix& m);

}  // namespace catq
