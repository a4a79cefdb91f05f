#pragma once

#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "gch/errors.hpp"
#include "gch/model.hpp"

namespace gch {

// Green's function of the Helmholtz operator 1 - d_xx:
//   line:   G(x) = e^{-|x|} / 2
//   circle: G(x) = cosh(1/2 - x + floor(x)) / (2 sinh(1/2)), period 1.
// eval is positive and even about 0 (line) / every integer (circle) with
// unit mass; eval_dx is the one-sided derivative away from the kinks.
struct GreenKernel {
  Domain domain = Domain::Line;

  static GreenKernel line() { return {Domain::Line}; }
  static GreenKernel circle() { return {Domain::Circle}; }

  double eval(double x) const;
  double eval_dx(double x) const;
};

double eval_green(const GreenKernel& kernel, double x);

// Sorted, deduplicated (within 1e-14) locations where an integrand's
// derivative jumps; quadrature panels are split there.
struct KinkSet {
  std::vector<double> locations;

  KinkSet() = default;
  KinkSet(std::initializer_list<double> locs);
  explicit KinkSet(std::vector<double> locs);
  void insert(double s);
};

// (G * f)(x) by adaptive Gauss-Legendre quadrature with panels split at
// every kink of f and at the kernel kink y = x. The line integral is
// truncated to |y - x| <= 40 (kernel below 2e-18). tol is an absolute
// error target and must lie in (1e-14, 1e-4); throws ToleranceNotMet when
// the refinement budget runs out.
double quad_convolve(const GreenKernel& kernel, const std::function<double(double)>& f,
                     const KinkSet& kinks, double x, double tol);

// Same with the kernel derivative: (G_x * f)(x).
double quad_convolve_dx(const GreenKernel& kernel, const std::function<double(double)>& f,
                        const KinkSet& kinks, double x, double tol);

// Convolution at many points; parallelized over points when enabled (each
// point is computed by the identical serial code path, so results match the
// one-point calls bitwise).
std::vector<double> quad_convolve_batch(const GreenKernel& kernel,
                                        const std::function<double(double)>& f,
                                        const KinkSet& kinks, std::span<const double> xs,
                                        double tol, bool deriv_kernel = false);

// Closed forms of the paper-side convolution combinations for the exact
// peakon families, as functions of the wave phase s = x - ct.
//
// Line, u = A e^{-|s|}:
//   cubic:     (1/2) k1 G*(u_x^3) + k1 G*d_x(u^3 + (3/2) u u_x^2)
//              = sgn(s) k1 A^3 (e^{-3|s|} - e^{-|s|})
//   quadratic: k2 G*d_x(u^2 + (1/2) u_x^2) = sgn(s) k2 A^2 (e^{-2|s|} - e^{-|s|})
double closedform_line_cubic(double A, double k1, double s);
double closedform_line_quadratic(double A, double k2, double s);

// Circle, u = a cosh(zeta(s)). These carry the weak-form sign (the
// phi-coefficient of the identity), i.e. the negative of the corresponding
// evolution terms:
//   cubic:     k1 a^3 (sinh^2(1/2) sinh(zeta) - sinh^3(zeta))
//   sh2:       G * sinh(2 zeta)
//              = (2/3) [cosh(1/2) sinh(1/2-sigma) - sinh(1/2-sigma) cosh(1/2-sigma)],
//              sigma = s - floor(s)
//   quadratic: k2 a^2 (cosh(1/2) - cosh(zeta)) sinh(zeta)
//              = (3/2) k2 a^2 * closedform_circle_sh2(s)
// sh2 and quadratic throw AtKink at integer s (one-sided limits: evaluate at
// s -/+ epsilon).
double closedform_circle_cubic(double a, double k1, double s);
double closedform_circle_sh2(double s);
double closedform_circle_quadratic(double a, double k2, double s);

enum class ConvolutionIdentity {
  LineCubic,
  LineQuadratic,
  CircleCubic,
  CircleSh2,
  CircleQuadratic,
};

struct IdentitySample {
  double closed = 0.0;
  double quadrature = 0.0;
};

// One sample of a closed form against its independent quadrature assembly
// (the oracle route never reuses the closed-form expressions). `amplitude`
// is A on the line and a on the circle; `coeff` is k1 for the cubic
// identities and k2 for the quadratic ones (ignored by CircleSh2).
IdentitySample eval_convolution_identity(ConvolutionIdentity which, double amplitude,
                                         double coeff, double s, double tol);

ConvolutionIdentity parse_convolution_identity(const std::string& name);
std::string convolution_identity_name(ConvolutionIdentity which);

}  // namespace gch
