#pragma once

#include <span>

namespace gch::kernels {

// Elementwise array kernels used by the pseudospectral right-hand side and
// the RK4 stage updates. Each kernel has a serial reference implementation
// and an OpenMP variant; the undecorated name dispatches on
// parallel::enabled(). Outputs are written element-by-element with no
// reductions, so serial and OpenMP results are bit-identical.

// out[i] = a[i] * b[i]
void multiply_serial(std::span<const double> a, std::span<const double> b, std::span<double> out);
void multiply_omp(std::span<const double> a, std::span<const double> b, std::span<double> out);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);

// out[i] = x[i] + alpha * d[i]
void axpy_serial(double alpha, std::span<const double> d, std::span<const double> x,
                 std::span<double> out);
void axpy_omp(double alpha, std::span<const double> d, std::span<const double> x,
              std::span<double> out);
void axpy(double alpha, std::span<const double> d, std::span<const double> x,
          std::span<double> out);

// acc[i] += alpha * a[i]
void accumulate_serial(double alpha, std::span<const double> a, std::span<double> acc);
void accumulate_omp(double alpha, std::span<const double> a, std::span<double> acc);
void accumulate(double alpha, std::span<const double> a, std::span<double> acc);

// out[i] = u[i] + (dt/6) * (k1[i] + 2 k2[i] + 2 k3[i] + k4[i])
void rk4_combine_serial(std::span<const double> u, std::span<const double> k1,
                        std::span<const double> k2, std::span<const double> k3,
                        std::span<const double> k4, double dt, std::span<double> out);
void rk4_combine_omp(std::span<const double> u, std::span<const double> k1,
                     std::span<const double> k2, std::span<const double> k3,
                     std::span<const double> k4, double dt, std::span<double> out);
void rk4_combine(std::span<const double> u, std::span<const double> k1,
                 std::span<const double> k2, std::span<const double> k3,
                 std::span<const double> k4, double dt, std::span<double> out);

}  // namespace gch::kernels
