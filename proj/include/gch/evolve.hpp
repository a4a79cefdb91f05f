#pragma once

#include <span>
#include <vector>

#include "gch/model.hpp"
#include "gch/spectral.hpp"

namespace gch {

struct SolverConfig {
  int n = 1024;
  double dt = 1e-4;
  double t_end = 0.5;
  bool dealias = true;        // 2/3 rule on every product
  int filter_strength = 36;   // exponent p of the initialization filter
  double cfl_safety = 0.3;
  int record_every = 50;      // diagnostics/snapshot cadence in steps
};

struct DiagnosticsRecord {
  double time = 0.0;
  double h1_energy = 0.0;
  double max_u = 0.0;
  double peak_position = 0.0;  // in [0, 1)
  double shape_error = 0.0;
  double mass_m = 0.0;         // mean of m = mean of u
};

// Right side of u_t = -[ k1 u^2 u_x + (1/2) k1 (1-dxx)^{-1} u_x^3
//                        + k1 (1-dxx)^{-1} d_x(u^3 + (3/2) u u_x^2)
//                        + k2 u u_x + k2 d_x (1-dxx)^{-1}(u^2 + (1/2) u_x^2) ],
// evaluated pseudospectrally: multipliers in spectral space, products in
// physical space with 2/3-rule truncation between binary products.
// Throws NonFiniteState if the input samples are not finite.
std::vector<double> semidiscrete_rhs(const SpectralOps& ops, std::span<const double> u,
                                     const ModelParams& p, bool dealias = true);
std::vector<double> semidiscrete_rhs(const SpectralOps& ops, const GridState& state,
                                     const ModelParams& p, bool dealias = true);

// Reference reductions assembled from only the quadratic (Camassa-Holm) or
// only the cubic (Novikov) terms; the general path with the other
// coefficient zeroed must reproduce these trajectories.
std::vector<double> semidiscrete_rhs_ch(const SpectralOps& ops, std::span<const double> u,
                                        double k2, bool dealias = true);
std::vector<double> semidiscrete_rhs_novikov(const SpectralOps& ops,
                                             std::span<const double> u, double k1,
                                             bool dealias = true);

// Classical RK4 step. Enforces dt <= cfl_safety * dx / max(|k1| U^2 + |k2| U, eps)
// with U = max|u| (CflViolation) and rejects non-finite results
// (NonFiniteState).
GridState rk4_step(const SpectralOps& ops, const GridState& state, const ModelParams& p,
                   double dt, double cfl_safety = 1.0, bool dealias = true);

struct RunResult {
  std::vector<GridState> snapshots;
  std::vector<DiagnosticsRecord> diagnostics;
};

// Method-of-lines integration to t_end with diagnostics every record_every
// steps (plus the initial and final states). When a reference profile is
// given, peak_position/shape_error come from cross-correlation against it;
// otherwise peak_position falls back to the grid argmax and shape_error is 0.
RunResult run(const SolverConfig& cfg, const ModelParams& p, const GridState& initial,
              const TravelingProfile* reference = nullptr);

// Certified periodic peakon sampled on the grid, spectrally truncated to
// |n| <= N/3 and smoothed by the filter exp(-36 (n/(N/2))^p).
GridState mollified_peakon_initial(const ModelParams& p, const Grid& grid, Branch branch,
                                   int filter_strength = 36);

// Parseval form of the H^1 functional: sum (1 + (2 pi n)^2) |u_hat(n)|^2.
double h1_energy(const SpectralOps& ops, std::span<const double> u);

double mean_value(std::span<const double> u);

struct ShapeMatch {
  double error = 0.0;  // relative L2 distance at the best shift
  double shift = 0.0;  // in [0, 1)
};

// Best circular-correlation alignment of the state against the reference
// shape, sub-grid refined by a 3-point parabolic fit of the correlation peak.
ShapeMatch shape_error(const SpectralOps& ops, std::span<const double> u,
                       const TravelingProfile& reference);

struct SpeedEstimate {
  double speed = 0.0;
  bool sufficient_signal = true;  // false for a flat position sequence
};

// Least-squares slope of the unwrapped peak positions. Requires >= 3
// records (InsufficientRecords) and successive displacements below half a
// period.
SpeedEstimate peak_speed_estimate(std::span<const DiagnosticsRecord> records);

}  // namespace gch
