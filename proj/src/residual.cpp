#include "gch/residual.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "gch/parallel.hpp"
#include "gch/quadrature.hpp"

namespace gch {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kKinkClearance = 1e-6;

double bump(double x) { return std::exp(std::cos(kTwoPi * x) - 1.0); }
double bump_x(double x) { return -kTwoPi * std::sin(kTwoPi * x) * bump(x); }

}  // namespace

double TestFunction::envelope_at(double t) const {
  const double T = horizon;
  if (t < 0.0 || t >= T) return 0.0;
  const double r = T - t;
  switch (envelope) {
    case Envelope::Bump2:
      return 16.0 * t * t * r * r / std::pow(T, 4);
    case Envelope::Bump3:
      return 64.0 * t * t * t * r * r * r / std::pow(T, 6);
    case Envelope::Decay:
      return r * r * (T + 2.0 * t) / std::pow(T, 3);
    case Envelope::Zero:
      return 0.0;
  }
  return 0.0;
}

double TestFunction::envelope_rate(double t) const {
  const double T = horizon;
  if (t < 0.0 || t >= T) return 0.0;
  const double r = T - t;
  switch (envelope) {
    case Envelope::Bump2:
      return 32.0 * t * r * (T - 2.0 * t) / std::pow(T, 4);
    case Envelope::Bump3:
      return 192.0 * t * t * r * r * (T - 2.0 * t) / std::pow(T, 6);
    case Envelope::Decay:
      return -6.0 * t * r / std::pow(T, 3);
    case Envelope::Zero:
      return 0.0;
  }
  return 0.0;
}

double TestFunction::phi(double t, double x) const {
  return envelope_at(t) * bump(x - spatial_center);
}

double TestFunction::phi_t(double t, double x) const {
  return envelope_rate(t) * bump(x - spatial_center);
}

double TestFunction::phi_x(double t, double x) const {
  return envelope_at(t) * bump_x(x - spatial_center);
}

double TestFunction::l1_norm() const {
  // phi >= 0: product of the envelope integral and the bump mass.
  static const double bump_mass =
      quadrature::adaptive([](double x) { return bump(x); }, 0.0, 1.0, 1e-13);
  double env = 0.0;
  switch (envelope) {
    case Envelope::Bump2:
      env = 8.0 * horizon / 15.0;
      break;
    case Envelope::Bump3:
      env = 16.0 * horizon / 35.0;
      break;
    case Envelope::Decay:
      env = 0.5 * horizon;
      break;
    case Envelope::Zero:
      env = 0.0;
      break;
  }
  return env * bump_mass;
}

std::vector<TestFunction> standard_test_family(int spatial_translates, double horizon) {
  std::vector<TestFunction> family;
  family.reserve(3 * spatial_translates);
  const TestFunction::Envelope envs[] = {TestFunction::Envelope::Bump2,
                                         TestFunction::Envelope::Bump3,
                                         TestFunction::Envelope::Decay};
  for (int j = 0; j < spatial_translates; ++j)
    for (auto env : envs)
      family.push_back(TestFunction{static_cast<double>(j) / spatial_translates, env, horizon});
  return family;
}

double line_amplitude_defect(double A, const ModelParams& p) {
  return p.k1 * A * A + p.k2 * A - p.c;
}

double periodic_amplitude_defect(double a, const ModelParams& p) {
  return p.k1 * periodic_mass_coeff() * a * a + p.k2 * cosh_half() * a - p.c;
}

double pointwise_periodic_defect(double a, const ModelParams& p, double t, double x) {
  const double s = x - p.c * t;
  if (s == std::floor(s)) throw AtKink("pointwise_periodic_defect: x - ct is an integer");
  return a * periodic_amplitude_defect(a, p) * std::sinh(zeta(s));
}

TravelingField TravelingField::from_profile(const TravelingProfile& profile) {
  TravelingField f;
  f.domain = profile.domain();
  f.speed = profile.speed();
  f.shape = [profile](double s) { return profile.eval_u(0.0, s); };
  f.shape_x = [profile](double s) { return profile.eval_ux(0.0, s); };
  // both peakon families solve shape'' = shape away from the crest
  f.shape_xx = f.shape;
  f.kink_phases = {0.0};
  return f;
}

PhiFns PhiFns::from_test_function(const TestFunction& tf) {
  PhiFns p;
  p.horizon = tf.horizon;
  p.phi = [tf](double t, double x) { return tf.phi(t, x); };
  p.phi_t = [tf](double t, double x) { return tf.phi_t(t, x); };
  p.phi_x = [tf](double t, double x) { return tf.phi_x(t, x); };
  return p;
}

namespace {

struct Conv3 {
  double cubic_arg = 0.0;  // G * (u^3 + 1.5 u u_x^2)
  double ux3 = 0.0;        // G * u_x^3
  double quad_arg = 0.0;   // G * (u^2 + 0.5 u_x^2)
};

// Convolutions of the field's nonlinearities, evaluated in the crest frame
// (phase s, kinks at the field's kink phases).
Conv3 convolutions_at(const TravelingField& f, double s, double tol) {
  const GreenKernel kernel =
      f.domain == Domain::Circle ? GreenKernel::circle() : GreenKernel::line();
  const KinkSet kinks(f.kink_phases);
  auto cubic_arg = [&](double y) {
    const double u = f.shape(y), ux = f.shape_x(y);
    return u * u * u + 1.5 * u * ux * ux;
  };
  auto ux3 = [&](double y) {
    const double ux = f.shape_x(y);
    return ux * ux * ux;
  };
  auto quad_arg = [&](double y) {
    const double u = f.shape(y), ux = f.shape_x(y);
    return u * u + 0.5 * ux * ux;
  };
  Conv3 c;
  c.cubic_arg = quad_convolve(kernel, cubic_arg, kinks, s, tol);
  c.ux3 = quad_convolve(kernel, ux3, kinks, s, tol);
  c.quad_arg = quad_convolve(kernel, quad_arg, kinks, s, tol);
  return c;
}

// a.e. derivatives of the convolution arguments (the arguments are
// continuous across crests, so no delta terms arise).
double cubic_arg_dx(const TravelingField& f, double y) {
  const double u = f.shape(y), ux = f.shape_x(y), uxx = f.shape_xx(y);
  return 3.0 * u * u * ux + 1.5 * ux * ux * ux + 3.0 * u * ux * uxx;
}

double quad_arg_dx(const TravelingField& f, double y) {
  const double u = f.shape(y), ux = f.shape_x(y), uxx = f.shape_xx(y);
  return 2.0 * u * ux + ux * uxx;
}

double wrap01(double x) { return x - std::floor(x); }

}  // namespace

double strong_residual_at(const TravelingField& f, const ModelParams& p, double s,
                          double quad_tol) {
  const GreenKernel kernel =
      f.domain == Domain::Circle ? GreenKernel::circle() : GreenKernel::line();
  const KinkSet kinks(f.kink_phases);
  const double u = f.shape(s), ux = f.shape_x(s), ut = -f.speed * f.shape_x(s);
  double r = ut + p.k1 * u * u * ux + p.k2 * u * ux;
  try {
    if (p.k1 != 0.0) {
      auto ux3 = [&](double y) {
        const double w = f.shape_x(y);
        return w * w * w;
      };
      auto g_cubic = [&](double y) { return cubic_arg_dx(f, y); };
      r += 0.5 * p.k1 * quad_convolve(kernel, ux3, kinks, s, quad_tol);
      r += p.k1 * quad_convolve(kernel, g_cubic, kinks, s, quad_tol);
    }
    if (p.k2 != 0.0) {
      auto g_quad = [&](double y) { return quad_arg_dx(f, y); };
      r += p.k2 * quad_convolve(kernel, g_quad, kinks, s, quad_tol);
    }
  } catch (const ToleranceNotMet& e) {
    throw OracleToleranceNotMet(e.what());
  }
  return r;
}

std::vector<double> strong_residual(const TravelingProfile& profile, const ModelParams& p,
                                    std::span<const std::array<double, 2>> points,
                                    ResidualMode mode, double quad_tol) {
  const double A = profile.amplitude();
  const double c = profile.speed();
  const bool circle = profile.domain() == Domain::Circle;

  for (const auto& pt : points) {
    const double s = pt[1] - c * pt[0];
    const double dist = circle ? std::abs(s - std::round(s)) : std::abs(s);
    if (dist < kKinkClearance)
      throw PointOnKink("strong_residual: point within 1e-6 of a crest line");
  }

  std::vector<double> out(points.size());
  if (mode == ResidualMode::ClosedForm) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double t = points[i][0], x = points[i][1];
      const double s = x - c * t;
      const double u = profile.eval_u(t, x), ux = profile.eval_ux(t, x),
                   ut = profile.eval_ut(t, x);
      const double local = ut + p.k1 * u * u * ux + p.k2 * u * ux;
      if (circle) {
        // circle closed forms carry the weak-form sign: subtract
        out[i] = local - closedform_circle_cubic(A, p.k1, s) -
                 closedform_circle_quadratic(A, p.k2, s);
      } else {
        out[i] = local + closedform_line_cubic(A, p.k1, s) +
                 closedform_line_quadratic(A, p.k2, s);
      }
    }
    return out;
  }

  const TravelingField field = TravelingField::from_profile(profile);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic) if (parallel::enabled() && n > 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double s = points[i][1] - c * points[i][0];
    out[i] = strong_residual_at(field, p, s, quad_tol);
  }
  return out;
}

double weak_residual(const TravelingField& f, const ModelParams& p, const PhiFns& phi,
                     const WeakQuadratureConfig& cfg) {
  if (f.domain != Domain::Circle)
    throw std::invalid_argument("weak_residual: periodic (circle) candidates only");

  // Substituting x = ct + s moves the kink to the panel ends s = 0, 1 for
  // every t, and makes the convolutions functions of s alone (memoized).
  std::map<double, Conv3> memo;
  auto conv_at = [&](double s) -> const Conv3& {
    auto it = memo.find(s);
    if (it == memo.end()) it = memo.emplace(s, convolutions_at(f, s, cfg.conv_tol)).first;
    return it->second;
  };

  auto [tn, tw] = quadrature::gauss_nodes(cfg.time_nodes, 0.0, phi.horizon);
  double total = 0.0;
  for (int i = 0; i < cfg.time_nodes; ++i) {
    const double t = tn[i];
    const double ct = f.speed * t;
    auto integrand = [&](double s) {
      const double x = wrap01(ct + s);
      const Conv3& cv = conv_at(s);
      const double u = f.shape(s);
      const double px = phi.phi_x(t, x);
      return u * phi.phi_t(t, x) + (p.k1 / 3.0) * u * u * u * px + p.k1 * cv.cubic_arg * px -
             0.5 * p.k1 * cv.ux3 * phi.phi(t, x) + 0.5 * p.k2 * u * u * px +
             p.k2 * cv.quad_arg * px;
    };
    total += tw[i] * quadrature::adaptive(integrand, 0.0, 1.0, cfg.space_tol);
  }

  // initial-data term: at t = 0 the phase coincides with x
  total += quadrature::adaptive(
      [&](double s) { return f.shape(s) * phi.phi(0.0, wrap01(s)); }, 0.0, 1.0,
      cfg.space_tol);
  return total;
}

double weak_residual(const TravelingProfile& profile, const ModelParams& p,
                     const TestFunction& tf, const WeakQuadratureConfig& cfg) {
  return weak_residual(TravelingField::from_profile(profile), p,
                       PhiFns::from_test_function(tf), cfg);
}

double phi_sinh_zeta_integral(const TestFunction& tf, double speed,
                              const WeakQuadratureConfig& cfg) {
  auto [tn, tw] = quadrature::gauss_nodes(cfg.time_nodes, 0.0, tf.horizon);
  double total = 0.0;
  for (int i = 0; i < cfg.time_nodes; ++i) {
    const double t = tn[i];
    const double ct = speed * t;
    auto integrand = [&](double s) {
      return tf.phi(t, wrap01(ct + s)) * std::sinh(zeta(s));
    };
    total += tw[i] * quadrature::adaptive(integrand, 0.0, 1.0, cfg.space_tol);
  }
  return total;
}

ResidualReport certify(const TravelingProfile& profile, const ModelParams& p,
                       const CertifyOptions& opts) {
  ResidualReport report;
  report.tolerance = opts.tolerance;
  report.defect_value = profile.domain() == Domain::Line
                            ? line_amplitude_defect(profile.amplitude(), p)
                            : periodic_amplitude_defect(profile.amplitude(), p);

  // Strong residual sample points, alternating between t = 0 and t = 0.37.
  std::vector<std::array<double, 2>> pts;
  const int n = std::max(opts.strong_points, 4);
  if (profile.domain() == Domain::Line) {
    // log-spaced |s| in [0.05, 10], both sides of the crest
    for (int i = 0; i < n; ++i) {
      const double frac_i = static_cast<double>(i) / (n - 1);
      const double s = 0.05 * std::pow(10.0 / 0.05, frac_i);
      const double t = (i % 2 == 0) ? 0.0 : 0.37;
      pts.push_back({t, p.c * t + s});
      pts.push_back({t, p.c * t - s});
    }
  } else {
    for (int i = 0; i < n; ++i) {
      const double s = 0.05 + 0.9 * static_cast<double>(i) / (n - 1);
      const double t = (i % 2 == 0) ? 0.0 : 0.37;
      pts.push_back({t, p.c * t + s});
    }
  }

  const auto closed = strong_residual(profile, p, pts, ResidualMode::ClosedForm);
  double max_strong = 0.0;
  for (double r : closed) max_strong = std::max(max_strong, std::abs(r));

  // thinned quadrature-mode cross-check
  std::vector<std::array<double, 2>> spot;
  const int stride = std::max<std::size_t>(1, pts.size() / std::max(1, opts.quadrature_spot_checks));
  for (std::size_t i = 0; i < pts.size(); i += stride) spot.push_back(pts[i]);
  const auto quad = strong_residual(profile, p, spot, ResidualMode::Quadrature, 1e-8);
  for (double r : quad) max_strong = std::max(max_strong, std::abs(r));
  report.max_strong_residual = max_strong;

  bool weak_ok = true;
  if (profile.domain() == Domain::Circle) {
    const auto family = standard_test_family(opts.spatial_translates);
    report.weak_residuals.resize(family.size());
    const double max_u = std::abs(profile.amplitude()) * cosh_half();
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(family.size());
#pragma omp parallel for schedule(dynamic) if (parallel::enabled() && m > 1)
    for (std::ptrdiff_t i = 0; i < m; ++i)
      report.weak_residuals[i] = weak_residual(profile, p, family[i], opts.weak);
    for (std::size_t i = 0; i < family.size(); ++i) {
      const double scale = family[i].l1_norm() * std::pow(max_u, 3) *
                           (1.0 + std::abs(p.k1) + std::abs(p.k2));
      if (std::abs(report.weak_residuals[i]) > opts.tolerance * scale) weak_ok = false;
    }
  }

  report.certified = (max_strong <= opts.tolerance) && weak_ok;
  return report;
}

}  // namespace gch
