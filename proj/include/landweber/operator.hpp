#pragma once

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>

#include <Eigen/Dense>

namespace landweber {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Raised when an operand's dimension does not match the operator.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// <a, b> = sum a_i conj(b_i), linear in the first argument.
inline Complex inner(const CVector& a, const CVector& b) { return b.dot(a); }

class FftPlan;

/// Bounded linear map T with adjoint T*, backed either by a dense complex
/// matrix or by a cyclic convolution evaluated through the FFT.
///
/// The convolution backend approximates the integral operator
///   (T f)(x) = \int f(u) g(x - u) du
/// on a uniform periodic grid as bin_width * (cyclic convolution). Kernel
/// samples are stored in wraparound layout: index j holds g(j * dx) for
/// j < n/2 and g((j - n) * dx) otherwise.
///
/// Instances are immutable and safe to share between threads.
class LinearOperator {
 public:
  static LinearOperator dense(CMatrix matrix);
  static LinearOperator identity(Index n);
  static LinearOperator cyclic_convolution(const CVector& kernel, double bin_width);

  Index in_dim() const;
  Index out_dim() const;

  CVector apply(const CVector& x) const;
  CVector adjoint_apply(const CVector& y) const;
  /// T*(T x).
  CVector gram_apply(const CVector& x) const;

  /// True when adjoint_apply is routed through apply (real even kernel).
  bool self_adjoint() const;

  /// Dense backing matrix, or nullptr for the convolution backend.
  const CMatrix* matrix() const;

  /// Eigenvalues of T*T for the convolution backend (|transfer function|^2
  /// per frequency bin). Throws std::logic_error for the dense backend.
  Eigen::VectorXd convolution_gram_spectrum() const;

 private:
  struct Dense {
    CMatrix m;
  };
  struct Convolution {
    std::shared_ptr<const FftPlan> plan;
    CVector transfer;  // bin_width * FFT(kernel)
    bool self_adjoint = false;
  };

  explicit LinearOperator(std::variant<Dense, Convolution> backend);

  std::variant<Dense, Convolution> backend_;
};

}  // namespace landweber
