#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "gch/green.hpp"
#include "gch/model.hpp"

namespace gch {

// Smooth space-time test function phi(t, x) = envelope(t) * bump(x - x0)
// with bump(x) = exp(cos(2 pi x) - 1) (period 1, unit maximum). Envelopes
// are polynomial bumps supported in [0, T); Decay starts at 1 so the
// initial-data term of the weak identity is exercised.
struct TestFunction {
  enum class Envelope {
    Bump2,  // 16 t^2 (T-t)^2 / T^4
    Bump3,  // 64 t^3 (T-t)^3 / T^6
    Decay,  // (T-t)^2 (T+2t) / T^3, equals 1 at t = 0
    Zero,
  };

  double spatial_center = 0.0;
  Envelope envelope = Envelope::Bump2;
  double horizon = 1.0;

  double phi(double t, double x) const;
  double phi_t(double t, double x) const;
  double phi_x(double t, double x) const;
  double envelope_at(double t) const;
  double envelope_rate(double t) const;
  double l1_norm() const;  // integral of |phi| over [0, T) x S
};

// K spatial translates x0 = j/K crossed with the three nonzero envelopes.
std::vector<TestFunction> standard_test_family(int spatial_translates = 8,
                                               double horizon = 1.0);

// Amplitude defect polynomials whose roots make the residual vanish.
double line_amplitude_defect(double A, const ModelParams& p);      // k1 A^2 + k2 A - c
double periodic_amplitude_defect(double a, const ModelParams& p);  // k1 (1+sh^2(1/2)) a^2 + k2 ch(1/2) a - c

// a * periodic_amplitude_defect(a) * sinh(zeta(x - ct)): the pointwise
// integrand the weak identity reduces to for cosh-profiles. Throws AtKink
// when x - ct is an integer.
double pointwise_periodic_defect(double a, const ModelParams& p, double t, double x);

enum class ResidualMode { ClosedForm, Quadrature };

// Pointwise residual of the nonlocal evolution form
//   R = u_t + k1 u^2 u_x + (1/2) k1 G*u_x^3 + k1 G*d_x(u^3 + (3/2) u u_x^2)
//       + k2 u u_x + k2 G*d_x(u^2 + (1/2) u_x^2)
// at the given (t, x) points. ClosedForm assembles the exact convolution
// identities of the peakon families; Quadrature assembles each convolution
// with the kink-aware quadrature oracle (tolerance quad_tol). Points must
// stay at least 1e-6 away from the crest lines (PointOnKink otherwise);
// quadrature failures surface as OracleToleranceNotMet.
std::vector<double> strong_residual(const TravelingProfile& profile, const ModelParams& p,
                                    std::span<const std::array<double, 2>> points,
                                    ResidualMode mode, double quad_tol = 1e-8);

struct WeakQuadratureConfig {
  int time_nodes = 32;      // Gauss-Legendre nodes on [0, T]
  double space_tol = 1e-10; // adaptive spatial quadrature target per time node
  double conv_tol = 1e-9;   // inner convolution tolerance
};

// The Definition-2.2 integral for a periodic traveling candidate: all six
// phi-weighted terms plus the initial-data term. Vanishes (to quadrature
// accuracy) exactly when the amplitude solves the periodic defect
// polynomial. Circle profiles only.
double weak_residual(const TravelingProfile& profile, const ModelParams& p,
                     const TestFunction& phi, const WeakQuadratureConfig& cfg = {});

// The companion integral of the factorization: the weak residual of a
// cosh-profile equals a * defect(a) * phi_sinh_zeta_integral(phi, c).
double phi_sinh_zeta_integral(const TestFunction& phi, double speed,
                              const WeakQuadratureConfig& cfg = {});

// Generic traveling candidate u(t,x) = shape(x - ct) for the quadrature
// machinery; shape_xx is needed because the nonlocal terms differentiate
// products of u and u_x. Peakon families satisfy shape_xx = shape away from
// crests; smooth candidates supply their own second derivative.
struct TravelingField {
  Domain domain = Domain::Circle;
  double speed = 0.0;
  std::function<double(double)> shape;
  std::function<double(double)> shape_x;
  std::function<double(double)> shape_xx;
  std::vector<double> kink_phases;  // phases where shape_x jumps

  static TravelingField from_profile(const TravelingProfile& profile);
};

// Arbitrary test function (weak-form linearity checks).
struct PhiFns {
  double horizon = 1.0;
  std::function<double(double, double)> phi;
  std::function<double(double, double)> phi_t;
  std::function<double(double, double)> phi_x;

  static PhiFns from_test_function(const TestFunction& tf);
};

double weak_residual(const TravelingField& field, const ModelParams& p, const PhiFns& phi,
                     const WeakQuadratureConfig& cfg = {});

// Strong residual of a generic traveling candidate at phase s (quadrature
// assembly of the convolutions).
double strong_residual_at(const TravelingField& field, const ModelParams& p, double s,
                          double quad_tol = 1e-8);

struct ResidualReport {
  double max_strong_residual = 0.0;
  std::vector<double> weak_residuals;
  double defect_value = 0.0;
  double tolerance = 1e-6;
  bool certified = false;
};

struct CertifyOptions {
  double tolerance = 1e-6;
  int strong_points = 40;          // closed-form residual sample count
  int quadrature_spot_checks = 5;  // quadrature-mode strong samples
  int spatial_translates = 8;      // weak family size = 3 * this (circle only)
  WeakQuadratureConfig weak;
};

// Full certification: strong residuals in both modes plus (on the circle)
// the weak-residual suite. Certified iff max strong residual <= tolerance
// and every |weak residual| <= tolerance * scale with
// scale = ||phi||_1 * max|u|^3 * (1 + |k1| + |k2|).
ResidualReport certify(const TravelingProfile& profile, const ModelParams& p,
                       const CertifyOptions& opts = {});

}  // namespace gch
