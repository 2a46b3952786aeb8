#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace catq {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

enum class ErrorKind {
  Defective,
  NonFinite,
  DimensionMismatch,
  NumericallySingular,
  ZeroVector,
  TimeOutOfRange,
  TimeOrder,
  EmptyInput,
  DegenerateWeights,
  VanishingOverlap,
  NotNormalized,
  GridTooCoarse,
  GridMismatch,
  ParseError,
  ConfigParse,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` distinguishes the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require_dims(bool ok, const char* where) {
  if (!ok) throw Error(ErrorKind::DimensionMismatch, where);
}

}  // namespace catq
