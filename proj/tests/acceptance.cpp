// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Thresholds are pinned in code; regression fixtures carry the
// measured values they were frozen from.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gch/evolve.hpp"
#include "gch/green.hpp"
#include "gch/kernels.hpp"
#include "gch/model.hpp"
#include "gch/parallel.hpp"
#include "gch/quadrature.hpp"
#include "gch/residual.hpp"

using namespace gch;

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

struct Checker {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) {
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------- C1
Checker c1_amplitude_reductions() {
  Checker c;
  for (double speed : {1.0, 4.0, 9.0}) {
    const auto sol = solve_line_amplitudes({1.0, 0.0, speed});
    c.expect(sol.exists && sol.roots.size() == 2, "novikov roots exist");
    c.expect(std::abs(sol.roots[0] + std::sqrt(speed)) <= 1e-12, "minus root -sqrt(c)");
    c.expect(std::abs(sol.roots[1] - std::sqrt(speed)) <= 1e-12, "plus root sqrt(c)");
  }
  for (double speed : {-1.5, 2.5}) {
    const auto sol = solve_line_amplitudes({0.0, 1.0, speed});
    c.expect(sol.roots.size() == 1 && std::abs(sol.roots[0] - speed) <= 1e-12,
             "CH root c/k2");
  }
  const std::vector<double> k1s{1e-8};
  const double limit = branch_continuity_limit(1.0, 2.0, k1s)[0];
  c.expect(std::abs(limit - 2.0) <= 1e-6, "plus branch k1->0 limit, err " +
                                              fmt(std::abs(limit - 2.0)));
  return c;
}

// ---------------------------------------------------------------- C2
Checker c2_periodic_reduction() {
  Checker c;
  for (double speed : {1.0, 4.0}) {
    const auto sol = solve_periodic_amplitudes({1.0, 0.0, speed});
    c.expect(sol.exists && sol.roots.size() == 2, "periodic roots exist");
    for (double a : sol.roots)
      c.expect(std::abs(std::abs(a) * cosh_half() - std::sqrt(speed)) <= 1e-12,
               "crest height sqrt(c)");
  }
  return c;
}

// ---------------------------------------------------------------- C3
Checker c3_convolution_identities() {
  Checker c;
  const double tol = 1e-10;
  const ConvolutionIdentity all[] = {
      ConvolutionIdentity::LineCubic, ConvolutionIdentity::LineQuadratic,
      ConvolutionIdentity::CircleCubic, ConvolutionIdentity::CircleSh2,
      ConvolutionIdentity::CircleQuadratic};
  for (auto which : all) {
    const bool on_line = which == ConvolutionIdentity::LineCubic ||
                         which == ConvolutionIdentity::LineQuadratic;
    const double amplitude = on_line ? 1.4 : 0.9;
    const double coeff = 0.8;
    std::vector<double> ss(101);
    for (int i = 0; i < 101; ++i)
      ss[i] = on_line ? -6.0 + 12.0 * (i + 0.37) / 101.0 : (i + 0.37) / 101.0;

    std::vector<double> diffs(ss.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < 101; ++i) {
      if (on_line && std::abs(ss[i]) < 1e-3) {
        diffs[i] = 0.0;
        continue;
      }
      const auto sample = eval_convolution_identity(which, amplitude, coeff, ss[i], tol);
      diffs[i] = std::abs(sample.closed - sample.quadrature);
    }
    double worst = 0.0;
    for (double d : diffs) worst = std::max(worst, d);
    c.expect(worst <= 1e-8, convolution_identity_name(which) + " max diff " + fmt(worst));
    c.note(convolution_identity_name(which) + "=" + fmt(worst));
  }
  return c;
}

// ---------------------------------------------------------------- C4
Checker c4_strong_residual() {
  Checker c;
  const ModelParams p{1.0, 1.0, 2.0};

  // line
  const auto line = make_peakon(p, Domain::Line, Branch::Plus);
  std::vector<std::array<double, 2>> pts;
  for (int i = 0; i < 36; ++i) {
    const double s = 0.05 * std::pow(10.0 / 0.05, i / 35.0);
    const double t = (i % 2 == 0) ? 0.0 : 0.37;
    pts.push_back({t, p.c * t + s});
    pts.push_back({t, p.c * t - s});
  }
  double worst_closed = 0.0;
  for (double r : strong_residual(line, p, pts, ResidualMode::ClosedForm))
    worst_closed = std::max(worst_closed, std::abs(r));
  c.expect(worst_closed <= 1e-10, "line closed-form residual " + fmt(worst_closed));

  std::vector<std::array<double, 2>> thin(pts.begin(), pts.begin() + 18);
  double worst_quad = 0.0;
  for (double r : strong_residual(line, p, thin, ResidualMode::Quadrature, 1e-8))
    worst_quad = std::max(worst_quad, std::abs(r));
  c.expect(worst_quad <= 1e-6, "line quadrature residual " + fmt(worst_quad));

  // circle
  const auto circ = make_peakon(p, Domain::Circle, Branch::Plus);
  std::vector<std::array<double, 2>> cpts;
  for (int i = 0; i < 31; ++i) {
    const double s = 0.05 + 0.9 * i / 30.0;
    const double t = (i % 2 == 0) ? 0.0 : 0.37;
    cpts.push_back({t, p.c * t + s});
  }
  double worst_circ = 0.0;
  for (double r : strong_residual(circ, p, cpts, ResidualMode::ClosedForm))
    worst_circ = std::max(worst_circ, std::abs(r));
  c.expect(worst_circ <= 1e-9, "circle closed-form residual " + fmt(worst_circ));

  std::vector<std::array<double, 2>> cthin;
  for (std::size_t i = 0; i < cpts.size(); i += 5) cthin.push_back(cpts[i]);
  double worst_cq = 0.0;
  for (double r : strong_residual(circ, p, cthin, ResidualMode::Quadrature, 1e-8))
    worst_cq = std::max(worst_cq, std::abs(r));
  c.expect(worst_cq <= 1e-6, "circle quadrature residual " + fmt(worst_cq));

  // 1% amplitude perturbation must light up the defect prefactor at s = 0.1
  const double s0 = 0.1;
  {
    const auto pert = line.with_amplitude(line.amplitude() * 1.01);
    const std::vector<std::array<double, 2>> one = {{0.0, s0}};
    const double r = strong_residual(pert, p, one, ResidualMode::ClosedForm)[0];
    const double floor_val =
        1e-3 * std::abs(p.k1) * std::pow(std::abs(line.amplitude()), 3) * std::exp(-s0);
    c.expect(std::abs(r) >= floor_val,
             "line perturbed residual " + fmt(std::abs(r)) + " >= " + fmt(floor_val));
  }
  {
    const auto pert = circ.with_amplitude(circ.amplitude() * 1.01);
    const std::vector<std::array<double, 2>> one = {{0.0, s0}};
    const double r = strong_residual(pert, p, one, ResidualMode::ClosedForm)[0];
    const double floor_val =
        1e-3 * std::abs(p.k1) * std::pow(std::abs(circ.amplitude()), 3) * std::exp(-s0);
    c.expect(std::abs(r) >= floor_val,
             "circle perturbed residual " + fmt(std::abs(r)) + " >= " + fmt(floor_val));
  }
  return c;
}

// ---------------------------------------------------------------- C5
Checker c5_weak_residual() {
  Checker c;
  const ModelParams p{1.0, 1.0, 2.0};
  const auto exact = make_peakon(p, Domain::Circle, Branch::Plus);
  const auto family = standard_test_family(8);
  const double max_u = std::abs(exact.amplitude()) * cosh_half();
  const double coeff_scale = 1.0 + std::abs(p.k1) + std::abs(p.k2);

  // certified amplitude: all 24 weak residuals inside tolerance * scale
  std::vector<double> W(family.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(family.size()); ++i)
    W[i] = weak_residual(exact, p, family[i]);
  double worst_rel = 0.0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double scale = family[i].l1_norm() * std::pow(max_u, 3) * coeff_scale;
    worst_rel = std::max(worst_rel, std::abs(W[i]) / scale);
  }
  c.expect(worst_rel <= 1e-6, "certified |W|/scale " + fmt(worst_rel));
  c.note("max|W|/scale=" + fmt(worst_rel));

  // perturbed amplitudes: W(phi) / integral(phi sinh zeta) is constant and
  // equals a' defect(a'). Denominators below 20% of the largest are skipped
  // (time-symmetric envelopes cancel over whole crest laps at c = 2).
  WeakQuadratureConfig tight;
  tight.space_tol = 1e-11;
  tight.conv_tol = 1e-10;

  std::vector<double> D(family.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(family.size()); ++i)
    D[i] = phi_sinh_zeta_integral(family[i], p.c, tight);
  double dmax = 0.0;
  for (double d : D) dmax = std::max(dmax, std::abs(d));

  for (double factor : {1.1, 0.95}) {
    const auto pert = exact.with_amplitude(exact.amplitude() * factor);
    const double predicted =
        pert.amplitude() * periodic_amplitude_defect(pert.amplitude(), p);

    std::vector<double> Wp(family.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(family.size()); ++i)
      Wp[i] = weak_residual(pert, p, family[i], tight);

    double ratio_lo = 1e300, ratio_hi = -1e300;
    int used = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (std::abs(D[i]) < 0.2 * dmax) continue;
      const double ratio = Wp[i] / D[i];
      ratio_lo = std::min(ratio_lo, ratio);
      ratio_hi = std::max(ratio_hi, ratio);
      ++used;
      c.expect(std::abs(ratio - predicted) <= 1e-6 * std::abs(predicted),
               "ratio matches a'defect(a'), off by " +
                   fmt(std::abs(ratio - predicted) / std::abs(predicted)));
    }
    c.expect(used >= 6, "enough well-conditioned denominators");
    const double spread = (ratio_hi - ratio_lo) / std::abs(predicted);
    c.expect(spread <= 1e-6, "ratio spread " + fmt(spread));
    c.note("factor " + fmt(factor) + ": spread=" + fmt(spread) +
           " used=" + std::to_string(used));
  }
  return c;
}

// ---------------------------------------------------------------- C6
Checker c6_evolution_fidelity() {
  Checker c;
  const ModelParams p{1.0, 1.0, 2.0};
  SolverConfig cfg;  // defaults: N=1024, dt=1e-4, t_end=0.5, record_every=50
  const Grid grid(cfg.n);
  const auto reference = make_peakon(p, Domain::Circle, Branch::Plus);
  const GridState init = mollified_peakon_initial(p, grid, Branch::Plus);

  const auto result = run(cfg, p, init, &reference);
  const double e0 = result.diagnostics.front().h1_energy;
  double drift = 0.0;
  for (const auto& d : result.diagnostics)
    drift = std::max(drift, std::abs(d.h1_energy - e0) / e0);
  c.expect(drift <= 1e-8, "H1 relative drift " + fmt(drift));

  const auto speed = peak_speed_estimate(result.diagnostics);
  c.expect(speed.sufficient_signal, "peak track has signal");
  c.expect(std::abs(speed.speed - p.c) <= 0.01 * p.c,
           "peak speed " + fmt(speed.speed) + " within 1% of c");

  const double shape = result.diagnostics.back().shape_error;
  c.expect(shape <= 0.02, "best-shift shape error " + fmt(shape));
  // regression fixture: measured 6.86e-5 at N=1024, dt=1e-4, t_end=0.5
  const double pinned_shape = 6.86e-5;
  c.expect(std::abs(shape - pinned_shape) <= 0.25 * pinned_shape,
           "shape error regression (measured " + fmt(shape) + ", pinned " +
               fmt(pinned_shape) + ")");
  c.note("drift=" + fmt(drift) + " speed=" + fmt(speed.speed) + " shape=" + fmt(shape));
  return c;
}

// ---------------------------------------------------------------- C7
Checker c7_conservation_generic() {
  Checker c;
  const ModelParams p{1.0, 1.0, 0.0};
  SolverConfig cfg;
  cfg.n = 512;
  cfg.dt = 1e-4;
  cfg.t_end = 1.0;
  cfg.record_every = 1000;

  for (unsigned seed : {101u, 202u, 303u, 404u, 505u}) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const Grid grid(cfg.n);
    std::vector<double> u(cfg.n, 0.0);
    for (int n = 1; n <= 3; ++n) {
      const double an = 0.1 * unit(rng), bn = 0.1 * unit(rng);
      for (int j = 0; j < cfg.n; ++j)
        u[j] += an * std::cos(kTwoPi * n * grid.x(j)) +
                bn * std::sin(kTwoPi * n * grid.x(j));
    }
    const auto result = run(cfg, p, GridState{0.0, u});
    const double e0 = result.diagnostics.front().h1_energy;
    double drift = 0.0;
    for (const auto& d : result.diagnostics)
      drift = std::max(drift, std::abs(d.h1_energy - e0) / e0);
    c.expect(drift <= 1e-8, "seed " + std::to_string(seed) + " drift " + fmt(drift));
    c.note(std::to_string(seed) + ":" + fmt(drift));
  }
  return c;
}

// ---------------------------------------------------------------- C8
template <class RhsFn>
GridState rk4_with(RhsFn&& rhs, const GridState& st, double dt) {
  std::vector<double> stage(st.u.size());
  const auto s1 = rhs(st.u);
  kernels::axpy(0.5 * dt, s1, st.u, stage);
  const auto s2 = rhs(stage);
  kernels::axpy(0.5 * dt, s2, st.u, stage);
  const auto s3 = rhs(stage);
  kernels::axpy(dt, s3, st.u, stage);
  const auto s4 = rhs(stage);
  GridState out;
  out.time = st.time + dt;
  out.u.resize(st.u.size());
  kernels::rk4_combine(st.u, s1, s2, s3, s4, dt, out.u);
  return out;
}

Checker c8_reduction_consistency() {
  Checker c;
  const Grid grid(256);
  SpectralOps ops(grid);
  const double dt = 1e-4;
  const int steps = 500;

  {
    const ModelParams p{0.0, 1.0, 1.0};
    GridState general = mollified_peakon_initial(p, grid, Branch::Plus);
    GridState reference = general;
    double worst = 0.0;
    for (int i = 0; i < steps; ++i) {
      general = rk4_step(ops, general, p, dt);
      reference = rk4_with(
          [&](std::span<const double> u) { return semidiscrete_rhs_ch(ops, u, p.k2); },
          reference, dt);
      if (i % 50 == 0 || i == steps - 1)
        for (int j = 0; j < grid.size(); ++j)
          worst = std::max(worst, std::abs(general.u[j] - reference.u[j]));
    }
    c.expect(worst <= 1e-12, "CH reduction max deviation " + fmt(worst));
    c.note("ch=" + fmt(worst));
  }
  {
    const ModelParams p{1.0, 0.0, 1.0};
    GridState general = mollified_peakon_initial(p, grid, Branch::Plus);
    GridState reference = general;
    double worst = 0.0;
    for (int i = 0; i < steps; ++i) {
      general = rk4_step(ops, general, p, dt);
      reference = rk4_with(
          [&](std::span<const double> u) {
            return semidiscrete_rhs_novikov(ops, u, p.k1);
          },
          reference, dt);
      if (i % 50 == 0 || i == steps - 1)
        for (int j = 0; j < grid.size(); ++j)
          worst = std::max(worst, std::abs(general.u[j] - reference.u[j]));
    }
    c.expect(worst <= 1e-12, "Novikov reduction max deviation " + fmt(worst));
    c.note("novikov=" + fmt(worst));
  }
  return c;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<Checker()> fn;
  };
  const std::vector<Entry> criteria = {
      {"C1 amplitude reductions (line)", c1_amplitude_reductions},
      {"C2 periodic crest reduction", c2_periodic_reduction},
      {"C3 convolution identity suite", c3_convolution_identities},
      {"C4 strong-residual certification", c4_strong_residual},
      {"C5 weak-residual certification", c5_weak_residual},
      {"C6 evolution fidelity", c6_evolution_fidelity},
      {"C7 conservation on generic data", c7_conservation_generic},
      {"C8 reduction consistency", c8_reduction_consistency},
  };

  int failures = 0;
  for (const auto& entry : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Checker result;
    try {
      result = entry.fn();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s (%.1fs)%s%s\n", result.ok ? "PASS" : "FAIL", entry.name, seconds,
                result.detail.empty() ? "" : " -- ", result.detail.c_str());
    std::fflush(stdout);
    if (!result.ok) ++failures;
  }
  if (failures != 0) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
