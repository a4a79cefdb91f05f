#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "gch/errors.hpp"

namespace gch {

// Uniform period-1 grid, x_j = j/N, N a power of two >= 8.
class Grid {
 public:
  explicit Grid(int n);

  int size() const { return n_; }
  double dx() const { return 1.0 / n_; }
  double x(int j) const { return static_cast<double>(j) / n_; }
  int max_mode() const { return n_ / 2; }
  // 2/3-rule cutoff. 3*floor(N/3) < N for every power of two, so repeated
  // binary products of cutoff-limited fields never alias back below it.
  int dealias_cutoff() const { return n_ / 3; }

 private:
  int n_;
};

// Samples of u at one time on a Grid. The spectrum and the momentum density
// m = u - u_xx are derived through SpectralOps.
struct GridState {
  double time = 0.0;
  std::vector<double> u;
};

// FFT-backed operators for one grid size. Coefficients are normalized so
// u(x) = sum_n c_n e^{2 pi i n x} with c_{-n} = conj(c_n); the returned
// arrays hold n = 0..N/2. Methods serialize on an internal mutex; create
// one instance per thread for parallel runs.
class SpectralOps {
 public:
  explicit SpectralOps(const Grid& grid);
  ~SpectralOps();
  SpectralOps(const SpectralOps&) = delete;
  SpectralOps& operator=(const SpectralOps&) = delete;

  const Grid& grid() const { return grid_; }
  int size() const { return grid_.size(); }

  std::vector<std::complex<double>> forward(std::span<const double> u) const;
  std::vector<double> inverse(std::span<const std::complex<double>> coeffs) const;

  std::vector<double> derivative(std::span<const double> u) const;
  // (1 - d_xx)^{-1}: divide mode n by 1 + (2 pi n)^2. Equals circular
  // convolution with the circle Green kernel.
  std::vector<double> helmholtz_inverse(std::span<const double> u) const;
  // 1 - d_xx (momentum density m when applied to u).
  std::vector<double> helmholtz_forward(std::span<const double> u) const;

  // Zero modes above the 2/3-rule cutoff.
  std::vector<double> dealias(std::span<const double> u) const;
  // Physical-space product followed by 2/3-rule truncation.
  std::vector<double> product(std::span<const double> a, std::span<const double> b) const;
  // Truncation to |n| <= keep combined with the exponential filter
  // exp(-36 (n / (N/2))^p) (mode 0 untouched).
  std::vector<double> truncate_filter(std::span<const double> u, int keep, int p) const;

 private:
  struct Impl;
  Grid grid_;
  std::unique_ptr<Impl> impl_;
};

// Standalone (1 - d_xx)^{-1} on grid samples; validates the grid and reuses
// a per-size engine cache. Throws BadGrid for sizes that are not a power of
// two >= 8.
GridState helmholtz_inverse(const GridState& state);

// m = u - u_xx of a state (spectral multiplier 1 + (2 pi n)^2).
std::vector<double> momentum_density(const SpectralOps& ops, std::span<const double> u);

}  // namespace gch
