#include "gch/kernels.hpp"

#include <cassert>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gch/parallel.hpp"

namespace gch::parallel {

namespace {
bool initial_state() {
  const char* env = std::getenv("GCH_SERIAL");
  return !(env && env[0] == '1');
}
bool g_enabled = initial_state();
}  // namespace

bool enabled() { return g_enabled; }
void set_enabled(bool on) { g_enabled = on; }

int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace gch::parallel

namespace gch::kernels {

namespace {
// OpenMP only pays off once the arrays stop fitting comfortably in cache.
constexpr std::size_t kGrain = 1 << 14;
}  // namespace

void multiply_serial(std::span<const double> a, std::span<const double> b,
                     std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

void multiply_omp(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) if (a.size() >= kGrain)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  if (parallel::enabled())
    multiply_omp(a, b, out);
  else
    multiply_serial(a, b, out);
}

void axpy_serial(double alpha, std::span<const double> d, std::span<const double> x,
                 std::span<double> out) {
  assert(d.size() == x.size() && d.size() == out.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = x[i] + alpha * d[i];
}

void axpy_omp(double alpha, std::span<const double> d, std::span<const double> x,
              std::span<double> out) {
  assert(d.size() == x.size() && d.size() == out.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(d.size());
#pragma omp parallel for schedule(static) if (d.size() >= kGrain)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = x[i] + alpha * d[i];
}

void axpy(double alpha, std::span<const double> d, std::span<const double> x,
          std::span<double> out) {
  if (parallel::enabled())
    axpy_omp(alpha, d, x, out);
  else
    axpy_serial(alpha, d, x, out);
}

void accumulate_serial(double alpha, std::span<const double> a, std::span<double> acc) {
  assert(a.size() == acc.size());
  for (std::size_t i = 0; i < a.size(); ++i) acc[i] += alpha * a[i];
}

void accumulate_omp(double alpha, std::span<const double> a, std::span<double> acc) {
  assert(a.size() == acc.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) if (a.size() >= kGrain)
  for (std::ptrdiff_t i = 0; i < n; ++i) acc[i] += alpha * a[i];
}

void accumulate(double alpha, std::span<const double> a, std::span<double> acc) {
  if (parallel::enabled())
    accumulate_omp(alpha, a, acc);
  else
    accumulate_serial(alpha, a, acc);
}

void rk4_combine_serial(std::span<const double> u, std::span<const double> k1,
                        std::span<const double> k2, std::span<const double> k3,
                        std::span<const double> k4, double dt, std::span<double> out) {
  assert(u.size() == out.size());
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    out[i] = u[i] + w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

void rk4_combine_omp(std::span<const double> u, std::span<const double> k1,
                     std::span<const double> k2, std::span<const double> k3,
                     std::span<const double> k4, double dt, std::span<double> out) {
  assert(u.size() == out.size());
  const double w = dt / 6.0;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static) if (u.size() >= kGrain)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = u[i] + w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

void rk4_combine(std::span<const double> u, std::span<const double> k1,
                 std::span<const double> k2, std::span<const double> k3,
                 std::span<const double> k4, double dt, std::span<double> out) {
  if (parallel::enabled())
    rk4_combine_omp(u, k1, k2, k3, k4, dt, out);
  else
    rk4_combine_serial(u, k1, k2, k3, k4, dt, out);
}

}  // namespace gch::kernels
