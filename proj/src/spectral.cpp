#include "gch/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "gch/kernels.hpp"

namespace gch {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// FFTW plan creation is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

Grid::Grid(int n) : n_(n) {
  if (!power_of_two(n) || n < 8)
    throw BadGrid("grid size must be a power of two >= 8, got " + std::to_string(n));
}

struct SpectralOps::Impl {
  int n;
  double* real_buf;
  fftw_complex* cplx_buf;
  fftw_plan fwd;
  fftw_plan bwd;
  mutable std::mutex mtx;

  explicit Impl(int n_) : n(n_) {
    real_buf = fftw_alloc_real(n);
    cplx_buf = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard lock(planner_mutex());
    fwd = fftw_plan_dft_r2c_1d(n, real_buf, cplx_buf, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_1d(n, cplx_buf, real_buf, FFTW_ESTIMATE);
  }

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(real_buf);
    fftw_free(cplx_buf);
  }
};

SpectralOps::SpectralOps(const Grid& grid)
    : grid_(grid), impl_(std::make_unique<Impl>(grid.size())) {}

SpectralOps::~SpectralOps() = default;

std::vector<std::complex<double>> SpectralOps::forward(std::span<const double> u) const {
  const int n = impl_->n;
  std::lock_guard lock(impl_->mtx);
  std::copy(u.begin(), u.end(), impl_->real_buf);
  fftw_execute(impl_->fwd);
  std::vector<std::complex<double>> out(n / 2 + 1);
  const double scale = 1.0 / n;
  for (int k = 0; k <= n / 2; ++k)
    out[k] = std::complex<double>(impl_->cplx_buf[k][0] * scale, impl_->cplx_buf[k][1] * scale);
  return out;
}

std::vector<double> SpectralOps::inverse(std::span<const std::complex<double>> coeffs) const {
  const int n = impl_->n;
  std::lock_guard lock(impl_->mtx);
  for (int k = 0; k <= n / 2; ++k) {
    impl_->cplx_buf[k][0] = coeffs[k].real();
    impl_->cplx_buf[k][1] = coeffs[k].imag();
  }
  fftw_execute(impl_->bwd);
  return std::vector<double>(impl_->real_buf, impl_->real_buf + n);
}

namespace {

// Apply a per-mode complex multiplier in spectral space.
template <class Fn>
std::vector<double> spectral_map(const SpectralOps& ops, std::span<const double> u, Fn&& fn) {
  auto c = ops.forward(u);
  const int half = ops.size() / 2;
  for (int k = 0; k <= half; ++k) c[k] = fn(k, c[k]);
  return ops.inverse(c);
}

}  // namespace

std::vector<double> SpectralOps::derivative(std::span<const double> u) const {
  const int half = size() / 2;
  return spectral_map(*this, u, [half](int k, std::complex<double> c) {
    if (k == half) return std::complex<double>(0.0, 0.0);  // Nyquist: odd derivative
    return std::complex<double>(0.0, kTwoPi * k) * c;
  });
}

std::vector<double> SpectralOps::helmholtz_inverse(std::span<const double> u) const {
  return spectral_map(*this, u, [](int k, std::complex<double> c) {
    const double w = kTwoPi * k;
    return c / (1.0 + w * w);
  });
}

std::vector<double> SpectralOps::helmholtz_forward(std::span<const double> u) const {
  return spectral_map(*this, u, [](int k, std::complex<double> c) {
    const double w = kTwoPi * k;
    return c * (1.0 + w * w);
  });
}

std::vector<double> SpectralOps::dealias(std::span<const double> u) const {
  const int cutoff = grid_.dealias_cutoff();
  return spectral_map(*this, u, [cutoff](int k, std::complex<double> c) {
    return k > cutoff ? std::complex<double>(0.0, 0.0) : c;
  });
}

std::vector<double> SpectralOps::product(std::span<const double> a,
                                         std::span<const double> b) const {
  std::vector<double> ab(a.size());
  kernels::multiply(a, b, ab);
  return dealias(ab);
}

std::vector<double> SpectralOps::truncate_filter(std::span<const double> u, int keep,
                                                 int p) const {
  const double half = size() / 2;
  return spectral_map(*this, u, [keep, p, half](int k, std::complex<double> c) {
    if (k > keep) return std::complex<double>(0.0, 0.0);
    return c * std::exp(-36.0 * std::pow(k / half, p));
  });
}

namespace {

// Shared engines for the standalone free functions.
const SpectralOps& cached_ops(int n) {
  static std::map<int, std::unique_ptr<SpectralOps>> cache;
  static std::mutex mtx;
  std::lock_guard lock(mtx);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<SpectralOps>(Grid(n));
  return *slot;
}

}  // namespace

GridState helmholtz_inverse(const GridState& state) {
  const int n = static_cast<int>(state.u.size());
  if (!power_of_two(n) || n < 8)
    throw BadGrid("helmholtz_inverse: grid size must be a power of two >= 8");
  const SpectralOps& ops = cached_ops(n);
  return GridState{state.time, ops.helmholtz_inverse(state.u)};
}

std::vector<double> momentum_density(const SpectralOps& ops, std::span<const double> u) {
  return ops.helmholtz_forward(u);
}

}  // namespace gch
