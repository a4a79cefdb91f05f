#include "gch/green.hpp"

#include <algorithm>
#include <cmath>

#include "gch/parallel.hpp"
#include "gch/quadrature.hpp"

namespace gch {

namespace {

double frac(double x) { return x - std::floor(x); }

double sgn(double s) { return static_cast<double>((s > 0.0) - (s < 0.0)); }

// Truncation radius for line convolutions: e^{-40}/2 < 2e-18.
constexpr double kLineCutoff = 40.0;

}  // namespace

double GreenKernel::eval(double x) const {
  if (domain == Domain::Line) return 0.5 * std::exp(-std::abs(x));
  return std::cosh(zeta(x)) / (2.0 * sinh_half());
}

double GreenKernel::eval_dx(double x) const {
  if (domain == Domain::Line) return -sgn(x) * 0.5 * std::exp(-std::abs(x));
  return -std::sinh(zeta(x)) / (2.0 * sinh_half());
}

double eval_green(const GreenKernel& kernel, double x) { return kernel.eval(x); }

KinkSet::KinkSet(std::initializer_list<double> locs)
    : KinkSet(std::vector<double>(locs)) {}

KinkSet::KinkSet(std::vector<double> locs) : locations(std::move(locs)) {
  std::sort(locations.begin(), locations.end());
  locations.erase(std::unique(locations.begin(), locations.end(),
                              [](double a, double b) { return std::abs(a - b) <= 1e-14; }),
                  locations.end());
}

void KinkSet::insert(double s) {
  auto it = std::lower_bound(locations.begin(), locations.end(), s);
  if (it != locations.end() && std::abs(*it - s) <= 1e-14) return;
  if (it != locations.begin() && std::abs(*(it - 1) - s) <= 1e-14) return;
  locations.insert(it, s);
}

namespace {

double convolve_impl(const GreenKernel& kernel, const std::function<double(double)>& f,
                     const KinkSet& kinks, double x, double tol, bool deriv_kernel) {
  if (!(tol > 1e-14 && tol < 1e-4))
    throw std::invalid_argument("quad_convolve: tol must lie in (1e-14, 1e-4)");

  auto integrand = [&](double y) {
    const double k = deriv_kernel ? kernel.eval_dx(x - y) : kernel.eval(x - y);
    return f(y) * k;
  };

  std::vector<double> bps;
  if (kernel.domain == Domain::Circle) {
    bps = {0.0, 1.0, frac(x)};
    for (double k : kinks.locations) bps.push_back(frac(k));
  } else {
    bps = {x - kLineCutoff, x + kLineCutoff, x};
    for (double k : kinks.locations)
      if (k > x - kLineCutoff && k < x + kLineCutoff) bps.push_back(k);
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end(),
                        [](double a, double b) { return std::abs(a - b) <= 1e-14; }),
            bps.end());
  return quadrature::adaptive_segmented(integrand, bps, tol);
}

}  // namespace

double quad_convolve(const GreenKernel& kernel, const std::function<double(double)>& f,
                     const KinkSet& kinks, double x, double tol) {
  return convolve_impl(kernel, f, kinks, x, tol, false);
}

double quad_convolve_dx(const GreenKernel& kernel, const std::function<double(double)>& f,
                        const KinkSet& kinks, double x, double tol) {
  return convolve_impl(kernel, f, kinks, x, tol, true);
}

std::vector<double> quad_convolve_batch(const GreenKernel& kernel,
                                        const std::function<double(double)>& f,
                                        const KinkSet& kinks, std::span<const double> xs,
                                        double tol, bool deriv_kernel) {
  std::vector<double> out(xs.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(dynamic) if (parallel::enabled() && n > 1)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = convolve_impl(kernel, f, kinks, xs[i], tol, deriv_kernel);
  return out;
}

double closedform_line_cubic(double A, double k1, double s) {
  const double e1 = std::exp(-std::abs(s));
  return sgn(s) * k1 * A * A * A * (e1 * e1 * e1 - e1);
}

double closedform_line_quadratic(double A, double k2, double s) {
  const double e1 = std::exp(-std::abs(s));
  return sgn(s) * k2 * A * A * (e1 * e1 - e1);
}

double closedform_circle_cubic(double a, double k1, double s) {
  const double sz = std::sinh(zeta(s));
  return k1 * a * a * a * (sinh_half() * sinh_half() * sz - sz * sz * sz);
}

double closedform_circle_sh2(double s) {
  if (s == std::floor(s)) throw AtKink("closedform_circle_sh2: integer s");
  const double sigma = frac(s);
  const double z = 0.5 - sigma;
  return (2.0 / 3.0) * (cosh_half() * std::sinh(z) - std::sinh(z) * std::cosh(z));
}

double closedform_circle_quadratic(double a, double k2, double s) {
  if (s == std::floor(s)) throw AtKink("closedform_circle_quadratic: integer s");
  const double z = zeta(s);
  return k2 * a * a * (cosh_half() - std::cosh(z)) * std::sinh(z);
}

IdentitySample eval_convolution_identity(ConvolutionIdentity which, double amplitude,
                                         double coeff, double s, double tol) {
  const KinkSet crest{0.0};
  IdentitySample out;
  switch (which) {
    case ConvolutionIdentity::LineCubic: {
      // uxx = u away from the crest, so d_x(u^3 + 1.5 u ux^2) = 6 u^2 ux + 1.5 ux^3
      const GreenKernel g = GreenKernel::line();
      const TravelingProfile prof(Domain::Line, amplitude, 0.0);
      auto ux3 = [&](double y) { return std::pow(prof.eval_ux(0.0, y), 3); };
      auto g_cub = [&](double y) {
        const double u = prof.eval_u(0.0, y), ux = prof.eval_ux(0.0, y);
        return 6.0 * u * u * ux + 1.5 * ux * ux * ux;
      };
      out.closed = closedform_line_cubic(amplitude, coeff, s);
      out.quadrature = 0.5 * coeff * quad_convolve(g, ux3, crest, s, tol) +
                       coeff * quad_convolve(g, g_cub, crest, s, tol);
      break;
    }
    case ConvolutionIdentity::LineQuadratic: {
      const GreenKernel g = GreenKernel::line();
      const TravelingProfile prof(Domain::Line, amplitude, 0.0);
      auto g_quad = [&](double y) {
        return 3.0 * prof.eval_u(0.0, y) * prof.eval_ux(0.0, y);
      };
      out.closed = closedform_line_quadratic(amplitude, coeff, s);
      out.quadrature = coeff * quad_convolve(g, g_quad, crest, s, tol);
      break;
    }
    case ConvolutionIdentity::CircleCubic: {
      const GreenKernel g = GreenKernel::circle();
      auto f1 = [](double y) {
        const double sz = std::sinh(zeta(y));
        return 3.0 * sz + 3.5 * sz * sz * sz;
      };
      auto f2 = [](double y) {
        const double sz = std::sinh(zeta(y));
        return std::cosh(zeta(y)) * sz * sz;
      };
      const double a3 = amplitude * amplitude * amplitude;
      out.closed = closedform_circle_cubic(amplitude, coeff, s);
      out.quadrature = coeff * a3 * quad_convolve(g, f1, crest, s, tol) -
                       1.5 * coeff * a3 * quad_convolve_dx(g, f2, crest, s, tol);
      break;
    }
    case ConvolutionIdentity::CircleSh2: {
      const GreenKernel g = GreenKernel::circle();
      auto f = [](double y) { return std::sinh(2.0 * zeta(y)); };
      out.closed = closedform_circle_sh2(s);
      out.quadrature = quad_convolve(g, f, crest, s, tol);
      break;
    }
    case ConvolutionIdentity::CircleQuadratic: {
      // the closed form carries the weak-form sign: negate the flux route
      const GreenKernel g = GreenKernel::circle();
      const TravelingProfile prof(Domain::Circle, amplitude, 0.0);
      auto g_quad = [&](double y) {
        return 3.0 * prof.eval_u(0.0, y) * prof.eval_ux(0.0, y);
      };
      out.closed = closedform_circle_quadratic(amplitude, coeff, s);
      out.quadrature = -coeff * quad_convolve(g, g_quad, crest, s, tol);
      break;
    }
  }
  return out;
}

ConvolutionIdentity parse_convolution_identity(const std::string& name) {
  if (name == "line_cubic") return ConvolutionIdentity::LineCubic;
  if (name == "line_quadratic") return ConvolutionIdentity::LineQuadratic;
  if (name == "circle_cubic") return ConvolutionIdentity::CircleCubic;
  if (name == "circle_sh2") return ConvolutionIdentity::CircleSh2;
  if (name == "circle_quadratic") return ConvolutionIdentity::CircleQuadratic;
  throw std::invalid_argument("unknown convolution identity: " + name);
}

std::string convolution_identity_name(ConvolutionIdentity which) {
  switch (which) {
    case ConvolutionIdentity::LineCubic: return "line_cubic";
    case ConvolutionIdentity::LineQuadratic: return "line_quadratic";
    case ConvolutionIdentity::CircleCubic: return "circle_cubic";
    case ConvolutionIdentity::CircleSh2: return "circle_sh2";
    case ConvolutionIdentity::CircleQuadratic: return "circle_quadratic";
  }
  return "unknown";
}

}  // namespace gch
