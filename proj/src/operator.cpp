#include "landweber/operator.hpp"

#include <fftw3.h>

#include <mutex>

namespace landweber {

// Forward/backward complex FFT plans of one length. fftw_execute_dft is
// thread-safe; only planning needs the global lock.
class FftPlan {
 public:
  explicit FftPlan(Index n) : n_(n) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    // Out-of-place plans: fftw_execute_dft must be called with the same
    // in-place/out-of-place layout the plan was made for.
    CVector src(n);
    CVector dst(n);
    auto* in = reinterpret_cast<fftw_complex*>(src.data());
    auto* out = reinterpret_cast<fftw_complex*>(dst.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT;
    forward_ = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD, flags);
    backward_ = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_BACKWARD, flags);
    if (forward_ == nullptr || backward_ == nullptr) {
      throw std::runtime_error("FFTW planning failed for length " + std::to_string(n));
    }
  }
  ~FftPlan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  Index size() const { return n_; }

  CVector forward(const CVector& x) const {
    CVector out(n_);
    fftw_execute_dft(forward_, const_cast<fftw_complex*>(reinterpret_cast<const fftw_complex*>(x.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
  }

  // Unnormalized inverse; caller divides by n.
  CVector backward(const CVector& x) const {
    CVector out(n_);
    fftw_execute_dft(backward_, const_cast<fftw_complex*>(reinterpret_cast<const fftw_complex*>(x.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
  }

 private:
  static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
  }

  Index n_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

namespace {

void check_dim(Index got, Index want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(want) + ", got " +
                         std::to_string(got));
  }
}

bool is_real_even(const CVector& kernel) {
  const Index n = kernel.size();
  for (Index j = 0; j < n; ++j) {
    if (kernel[j].imag() != 0.0) return false;
    if (kernel[j] != kernel[(n - j) % n]) return false;
  }
  return true;
}

}  // namespace

LinearOperator::LinearOperator(std::variant<Dense, Convolution> backend) : backend_(std::move(backend)) {}

LinearOperator LinearOperator::dense(CMatrix matrix) {
  if (matrix.rows() < 1 || matrix.cols() < 1) {
    throw std::invalid_argument("dense operator needs at least one row and column");
  }
  return LinearOperator(Dense{std::move(matrix)});
}

LinearOperator LinearOperator::identity(Index n) { return dense(CMatrix::Identity(n, n)); }

LinearOperator LinearOperator::cyclic_convolution(const CVector& kernel, double bin_width) {
  if (kernel.size() < 1) throw std::invalid_argument("convolution kernel is empty");
  if (!(bin_width > 0.0)) throw std::invalid_argument("bin width must be positive");
  auto plan = std::make_shared<const FftPlan>(kernel.size());
  CVector transfer = plan->forward(kernel) * bin_width;
  const bool sa = is_real_even(kernel);
  return LinearOperator(Convolution{std::move(plan), std::move(transfer), sa});
}

Index LinearOperator::in_dim() const {
  if (const auto* d = std::get_if<Dense>(&backend_)) return d->m.cols();
  return std::get<Convolution>(backend_).transfer.size();
}

Index LinearOperator::out_dim() const {
  if (const auto* d = std::get_if<Dense>(&backend_)) return d->m.rows();
  return std::get<Convolution>(backend_).transfer.size();
}

CVector LinearOperator::apply(const CVector& x) const {
  check_dim(x.size(), in_dim(), "apply");
  if (const auto* d = std::get_if<Dense>(&backend_)) return d->m * x;
  const auto& c = std::get<Convolution>(backend_);
  const auto n = static_cast<double>(c.plan->size());
  CVector spec = c.plan->forward(x).cwiseProduct(c.transfer);
  return c.plan->backward(spec) / n;
}

CVector LinearOperator::adjoint_apply(const CVector& y) const {
  check_dim(y.size(), out_dim(), "adjoint_apply");
  if (const auto* d = std::get_if<Dense>(&backend_)) return d->m.adjoint() * y;
  const auto& c = std::get<Convolution>(backend_);
  if (c.self_adjoint) return apply(y);
  const auto n = static_cast<double>(c.plan->size());
  CVector spec = c.plan->forward(y).cwiseProduct(c.transfer.conjugate());
  return c.plan->backward(spec) / n;
}

CVector LinearOperator::gram_apply(const CVector& x) const { return adjoint_apply(apply(x)); }

bool LinearOperator::self_adjoint() const {
  if (const auto* c = std::get_if<Convolution>(&backend_)) return c->self_adjoint;
  return false;
}

const CMatrix* LinearOperator::matrix() const {
  if (const auto* d = std::get_if<Dense>(&backend_)) return &d->m;
  return nullptr;
}

Eigen::VectorXd LinearOperator::convolution_gram_spectrum() const {
  const auto* c = std::get_if<Convolution>(&backend_);
  if (c == nullptr) throw std::logic_error("gram spectrum is only available for convolution operators");
  return c->transfer.cwiseAbs2();
}

}  // namespace landweber
