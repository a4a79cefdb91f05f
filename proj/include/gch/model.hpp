#pragma once

#include <span>
#include <utility>
#include <vector>

#include "gch/errors.hpp"

namespace gch {

enum class Domain { Line, Circle };

// Branch labels refer to the sign in front of the square root of the
// amplitude formula, not to the sign of the amplitude itself.
enum class Branch { Plus, Minus };

// Coefficients of m_t + k1 (3 u u_x m + u^2 m_x) + k2 (2 m u_x + m_x u) = 0
// together with a traveling-wave speed c. k1 = 0, k2 = 1 is Camassa-Holm;
// k1 = 1, k2 = 0 is Novikov.
struct ModelParams {
  double k1 = 0.0;
  double k2 = 0.0;
  double c = 0.0;
};

// Periodic phase 1/2 - s + floor(s), in (-1/2, 1/2]. Period 1 in s.
double zeta(double s);

// cosh(1/2), sinh(1/2) and the mass coefficient 1 + sinh^2(1/2) of the
// periodic amplitude polynomial.
double cosh_half();
double sinh_half();
double periodic_mass_coeff();

struct AmplitudeSolution {
  std::vector<double> roots;  // ascending; two entries (possibly equal) when
                              // the cubic coefficient is nonzero, one when it
                              // vanishes, none when no real amplitude exists
  double discriminant = 0.0;
  bool exists = false;
};

// Roots of k1 A^2 + k2 A - c = 0 (line peakon amplitudes). For k1 = 0 the
// single root c/k2 is returned and the discriminant reported as k2^2.
// Discriminants within eps_disc = 1e-12 (k2^2 + |4 k1 c| + 1) below zero are
// clamped to a double root. Throws DegenerateParams when k1 = k2 = 0.
AmplitudeSolution solve_line_amplitudes(const ModelParams& p);

// Roots of k1 (1 + sinh^2(1/2)) a^2 + k2 cosh(1/2) a - c = 0 (periodic
// peakon amplitudes); same conventions as the line solver.
AmplitudeSolution solve_periodic_amplitudes(const ModelParams& p);

// A traveling-wave candidate: A e^{-|x-ct|} on the line, a cosh(zeta(x-ct))
// on the unit circle. eval_ux returns the one-sided distributional
// representative away from crests; eval_ut = -speed * eval_ux.
class TravelingProfile {
 public:
  TravelingProfile(Domain domain, double amplitude, double speed)
      : domain_(domain), amplitude_(amplitude), speed_(speed) {}

  Domain domain() const { return domain_; }
  double amplitude() const { return amplitude_; }
  double speed() const { return speed_; }

  double eval_u(double t, double x) const;
  double eval_ux(double t, double x) const;
  double eval_ut(double t, double x) const;

  // Same wave shape and speed with a rescaled amplitude (certification of
  // perturbed candidates).
  TravelingProfile with_amplitude(double a) const {
    return TravelingProfile(domain_, a, speed_);
  }

 private:
  Domain domain_;
  double amplitude_;
  double speed_;
};

// Exact peakon for the selected branch. Throws NoRealAmplitude when the
// discriminant is negative; for k1 = 0 the unique root is returned under
// either branch label.
TravelingProfile make_peakon(const ModelParams& p, Domain domain, Branch branch);

// Both branches at once. Throws BranchUnavailable when k1 = 0 (only one
// root exists).
std::pair<TravelingProfile, TravelingProfile> make_peakon_pair(const ModelParams& p,
                                                               Domain domain);

// Plus-branch line amplitude along a sequence of k1 values (regression
// utility for the k1 -> 0 reduction to the Camassa-Holm peakon c/k2).
// Requires k2 != 0; propagates NoRealAmplitude.
std::vector<double> branch_continuity_limit(double k2, double c,
                                            std::span<const double> k1_values);

}  // namespace gch
