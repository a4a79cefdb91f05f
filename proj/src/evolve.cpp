#include "gch/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "gch/kernels.hpp"

namespace gch {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(std::span<const double> u, double time) {
  for (double v : u)
    if (!std::isfinite(v)) throw NonFiniteState(time);
}

std::vector<double> raw_product(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size());
  kernels::multiply(a, b, out);
  return out;
}

// Shared assembly; the reduction-specific entry points below must perform
// term-by-term the same operations as the corresponding branch here.
std::vector<double> rhs_impl(const SpectralOps& ops, std::span<const double> u, double k1,
                             double k2, bool dealias) {
  require_finite(u, 0.0);
  auto P = [&](std::span<const double> a, std::span<const double> b) {
    return dealias ? ops.product(a, b) : raw_product(a, b);
  };

  const auto ux = ops.derivative(u);
  std::vector<double> rhs(u.size(), 0.0);

  if (k2 != 0.0) {
    const auto u2 = P(u, u);
    const auto ux2 = P(ux, ux);
    const auto uux = P(u, ux);
    std::vector<double> arg(u.size());
    kernels::axpy(0.5, ux2, u2, arg);  // u^2 + 0.5 ux^2
    const auto nonlocal = ops.derivative(ops.helmholtz_inverse(arg));
    kernels::accumulate(-k2, uux, rhs);
    kernels::accumulate(-k2, nonlocal, rhs);
  }
  if (k1 != 0.0) {
    const auto u2 = P(u, u);
    const auto ux2 = P(ux, ux);
    const auto u3 = P(u2, u);
    const auto ux3 = P(ux2, ux);
    const auto uux2 = P(u, ux2);
    const auto u2ux = P(u2, ux);
    std::vector<double> arg(u.size());
    kernels::axpy(1.5, uux2, u3, arg);  // u^3 + 1.5 u ux^2
    const auto conv_ux3 = ops.helmholtz_inverse(ux3);
    const auto nonlocal = ops.derivative(ops.helmholtz_inverse(arg));
    kernels::accumulate(-k1, u2ux, rhs);
    kernels::accumulate(-0.5 * k1, conv_ux3, rhs);
    kernels::accumulate(-k1, nonlocal, rhs);
  }
  return rhs;
}

}  // namespace

std::vector<double> semidiscrete_rhs(const SpectralOps& ops, std::span<const double> u,
                                     const ModelParams& p, bool dealias) {
  return rhs_impl(ops, u, p.k1, p.k2, dealias);
}

std::vector<double> semidiscrete_rhs(const SpectralOps& ops, const GridState& state,
                                     const ModelParams& p, bool dealias) {
  return rhs_impl(ops, state.u, p.k1, p.k2, dealias);
}

std::vector<double> semidiscrete_rhs_ch(const SpectralOps& ops, std::span<const double> u,
                                        double k2, bool dealias) {
  require_finite(u, 0.0);
  auto P = [&](std::span<const double> a, std::span<const double> b) {
    return dealias ? ops.product(a, b) : raw_product(a, b);
  };
  const auto ux = ops.derivative(u);
  std::vector<double> rhs(u.size(), 0.0);
  const auto u2 = P(u, u);
  const auto ux2 = P(ux, ux);
  const auto uux = P(u, ux);
  std::vector<double> arg(u.size());
  kernels::axpy(0.5, ux2, u2, arg);
  const auto nonlocal = ops.derivative(ops.helmholtz_inverse(arg));
  kernels::accumulate(-k2, uux, rhs);
  kernels::accumulate(-k2, nonlocal, rhs);
  return rhs;
}

std::vector<double> semidiscrete_rhs_novikov(const SpectralOps& ops,
                                             std::span<const double> u, double k1,
                                             bool dealias) {
  require_finite(u, 0.0);
  auto P = [&](std::span<const double> a, std::span<const double> b) {
    return dealias ? ops.product(a, b) : raw_product(a, b);
  };
  const auto ux = ops.derivative(u);
  std::vector<double> rhs(u.size(), 0.0);
  const auto u2 = P(u, u);
  const auto ux2 = P(ux, ux);
  const auto u3 = P(u2, u);
  const auto ux3 = P(ux2, ux);
  const auto uux2 = P(u, ux2);
  const auto u2ux = P(u2, ux);
  std::vector<double> arg(u.size());
  kernels::axpy(1.5, uux2, u3, arg);
  const auto conv_ux3 = ops.helmholtz_inverse(ux3);
  const auto nonlocal = ops.derivative(ops.helmholtz_inverse(arg));
  kernels::accumulate(-k1, u2ux, rhs);
  kernels::accumulate(-0.5 * k1, conv_ux3, rhs);
  kernels::accumulate(-k1, nonlocal, rhs);
  return rhs;
}

GridState rk4_step(const SpectralOps& ops, const GridState& state, const ModelParams& p,
                   double dt, double cfl_safety, bool dealias) {
  double umax = 0.0;
  for (double v : state.u) umax = std::max(umax, std::abs(v));
  const double wave_speed = std::max(std::abs(p.k1) * umax * umax + std::abs(p.k2) * umax, 1e-12);
  const double dt_max = cfl_safety * ops.grid().dx() / wave_speed;
  if (dt > dt_max)
    throw CflViolation("rk4_step: dt = " + std::to_string(dt) + " exceeds CFL bound " +
                       std::to_string(dt_max));

  const std::size_t n = state.u.size();
  std::vector<double> stage(n);
  const auto s1 = rhs_impl(ops, state.u, p.k1, p.k2, dealias);
  kernels::axpy(0.5 * dt, s1, state.u, stage);
  const auto s2 = rhs_impl(ops, stage, p.k1, p.k2, dealias);
  kernels::axpy(0.5 * dt, s2, state.u, stage);
  const auto s3 = rhs_impl(ops, stage, p.k1, p.k2, dealias);
  kernels::axpy(dt, s3, state.u, stage);
  const auto s4 = rhs_impl(ops, stage, p.k1, p.k2, dealias);

  GridState next;
  next.time = state.time + dt;
  next.u.resize(n);
  kernels::rk4_combine(state.u, s1, s2, s3, s4, dt, next.u);
  require_finite(next.u, next.time);
  return next;
}

double h1_energy(const SpectralOps& ops, std::span<const double> u) {
  const auto c = ops.forward(u);
  const int half = ops.size() / 2;
  double e = 0.0;
  for (int k = 0; k <= half; ++k) {
    const double w = kTwoPi * k;
    const double weight = (k == 0 || k == half) ? 1.0 : 2.0;
    e += weight * (1.0 + w * w) * std::norm(c[k]);
  }
  return e;
}

double mean_value(std::span<const double> u) {
  double s = 0.0;
  for (double v : u) s += v;
  return s / static_cast<double>(u.size());
}

ShapeMatch shape_error(const SpectralOps& ops, std::span<const double> u,
                       const TravelingProfile& reference) {
  const int n = ops.size();
  std::vector<double> ref(n);
  for (int j = 0; j < n; ++j) ref[j] = reference.eval_u(0.0, ops.grid().x(j));

  // circular cross-correlation via the spectrum
  const auto cu = ops.forward(u);
  const auto cr = ops.forward(ref);
  std::vector<std::complex<double>> cc(cu.size());
  for (std::size_t k = 0; k < cu.size(); ++k) cc[k] = cu[k] * std::conj(cr[k]);
  const auto corr = ops.inverse(cc);

  int best = 0;
  for (int j = 1; j < n; ++j)
    if (corr[j] > corr[best]) best = j;

  const double cm = corr[(best + n - 1) % n];
  const double c0 = corr[best];
  const double cp = corr[(best + 1) % n];
  const double denom = cm - 2.0 * c0 + cp;
  const double delta = std::abs(denom) > 1e-300 ? 0.5 * (cm - cp) / denom : 0.0;
  double shift = (best + std::clamp(delta, -0.5, 0.5)) / n;
  shift -= std::floor(shift);

  double num = 0.0, den = 0.0;
  for (int j = 0; j < n; ++j) {
    const double rs = reference.eval_u(0.0, ops.grid().x(j) - shift);
    const double d = u[j] - rs;
    num += d * d;
    den += rs * rs;
  }
  return ShapeMatch{den > 0.0 ? std::sqrt(num / den) : std::sqrt(num), shift};
}

SpeedEstimate peak_speed_estimate(std::span<const DiagnosticsRecord> records) {
  if (records.size() < 3)
    throw InsufficientRecords("peak_speed_estimate: need at least 3 records");

  // unwrap positions assuming < 1/2 period of travel between records
  std::vector<double> pos(records.size());
  pos[0] = records[0].peak_position;
  for (std::size_t i = 1; i < records.size(); ++i) {
    double d = records[i].peak_position - records[i - 1].peak_position;
    d -= std::round(d);
    pos[i] = pos[i - 1] + d;
  }

  double tbar = 0.0, pbar = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    tbar += records[i].time;
    pbar += pos[i];
  }
  tbar /= static_cast<double>(records.size());
  pbar /= static_cast<double>(records.size());

  double sxx = 0.0, sxy = 0.0, range = 0.0;
  double lo = pos[0], hi = pos[0];
  for (std::size_t i = 0; i < records.size(); ++i) {
    sxx += (records[i].time - tbar) * (records[i].time - tbar);
    sxy += (records[i].time - tbar) * (pos[i] - pbar);
    lo = std::min(lo, pos[i]);
    hi = std::max(hi, pos[i]);
  }
  range = hi - lo;

  SpeedEstimate est;
  est.sufficient_signal = range > 1e-9;
  est.speed = (sxx > 0.0 && est.sufficient_signal) ? sxy / sxx : 0.0;
  return est;
}

GridState mollified_peakon_initial(const ModelParams& p, const Grid& grid, Branch branch,
                                   int filter_strength) {
  const TravelingProfile peakon = make_peakon(p, Domain::Circle, branch);
  SpectralOps ops(grid);
  std::vector<double> u(grid.size());
  for (int j = 0; j < grid.size(); ++j) u[j] = peakon.eval_u(0.0, grid.x(j));
  return GridState{0.0, ops.truncate_filter(u, grid.dealias_cutoff(), filter_strength)};
}

namespace {

DiagnosticsRecord diagnose(const SpectralOps& ops, const GridState& state,
                           const TravelingProfile* reference) {
  DiagnosticsRecord rec;
  rec.time = state.time;
  rec.h1_energy = h1_energy(ops, state.u);
  rec.mass_m = mean_value(state.u);
  int argmax = 0;
  for (std::size_t j = 1; j < state.u.size(); ++j)
    if (state.u[j] > state.u[argmax]) argmax = static_cast<int>(j);
  rec.max_u = state.u[argmax];
  if (reference) {
    const ShapeMatch m = shape_error(ops, state.u, *reference);
    rec.peak_position = m.shift;
    rec.shape_error = m.error;
  } else {
    rec.peak_position = ops.grid().x(argmax);
    rec.shape_error = 0.0;
  }
  return rec;
}

}  // namespace

RunResult run(const SolverConfig& cfg, const ModelParams& p, const GridState& initial,
              const TravelingProfile* reference) {
  const Grid grid(cfg.n);
  if (static_cast<int>(initial.u.size()) != cfg.n)
    throw BadGrid("run: initial state size does not match config.n");
  SpectralOps ops(grid);

  RunResult result;
  GridState state = initial;
  result.snapshots.push_back(state);
  result.diagnostics.push_back(diagnose(ops, state, reference));

  const long long steps = cfg.t_end > 0.0 ? std::llround(cfg.t_end / cfg.dt) : 0;
  for (long long step = 1; step <= steps; ++step) {
    state = rk4_step(ops, state, p, cfg.dt, cfg.cfl_safety, cfg.dealias);
    if (step % std::max(1, cfg.record_every) == 0 || step == steps) {
      result.snapshots.push_back(state);
      result.diagnostics.push_back(diagnose(ops, state, reference));
    }
  }
  return result;
}

}  // namespace gch
