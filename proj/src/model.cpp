#include "gch/model.hpp"

#include <algorithm>
#include <cmath>

namespace gch {

double zeta(double s) { return 0.5 - s + std::floor(s); }

double cosh_half() {
  static const double v = std::cosh(0.5);
  return v;
}

double sinh_half() {
  static const double v = std::sinh(0.5);
  return v;
}

double periodic_mass_coeff() {
  static const double v = 1.0 + sinh_half() * sinh_half();
  return v;
}

namespace {

// Roots of q2 r^2 + q1 r + q0 = 0 with q2 != 0, computed in the
// cancellation-free form: the larger-magnitude root from the sign-matched
// formula, the other from the product q0/q2 = r1 r2.
AmplitudeSolution solve_quadratic(double q2, double q1, double q0) {
  AmplitudeSolution out;
  const double disc = q1 * q1 - 4.0 * q2 * q0;
  out.discriminant = disc;
  const double eps_disc = 1e-12 * (q1 * q1 + std::abs(4.0 * q2 * q0) + 1.0);
  if (disc < -eps_disc) {
    out.exists = false;
    return out;
  }
  out.exists = true;
  if (disc <= 0.0) {
    // clamp: double root at the vertex
    const double r = -q1 / (2.0 * q2);
    out.roots = {r, r};
    return out;
  }
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (q1 + std::copysign(sq, q1));
  double r1, r2;
  if (q == 0.0) {  // q1 = 0 and disc = 0 imply q0 = 0
    r1 = r2 = 0.0;
  } else {
    r1 = q / q2;
    r2 = q0 / q;
  }
  out.roots = {std::min(r1, r2), std::max(r1, r2)};
  return out;
}

double plus_branch_root(const AmplitudeSolution& s, double lead_coeff) {
  // (-q1 + sqrt(disc)) / (2 q2): the larger root when q2 > 0, else the smaller.
  return lead_coeff > 0.0 ? s.roots.back() : s.roots.front();
}

}  // namespace

AmplitudeSolution solve_line_amplitudes(const ModelParams& p) {
  if (p.k1 == 0.0 && p.k2 == 0.0)
    throw DegenerateParams("amplitude polynomial is degenerate: k1 = k2 = 0");
  if (p.k1 == 0.0) {
    AmplitudeSolution out;
    out.roots = {p.c / p.k2};
    out.discriminant = p.k2 * p.k2;
    out.exists = true;
    return out;
  }
  return solve_quadratic(p.k1, p.k2, -p.c);
}

AmplitudeSolution solve_periodic_amplitudes(const ModelParams& p) {
  if (p.k1 == 0.0 && p.k2 == 0.0)
    throw DegenerateParams("amplitude polynomial is degenerate: k1 = k2 = 0");
  const double ch = cosh_half();
  if (p.k1 == 0.0) {
    AmplitudeSolution out;
    out.roots = {p.c / (p.k2 * ch)};
    out.discriminant = p.k2 * p.k2 * ch * ch;
    out.exists = true;
    return out;
  }
  return solve_quadratic(p.k1 * periodic_mass_coeff(), p.k2 * ch, -p.c);
}

double TravelingProfile::eval_u(double t, double x) const {
  const double s = x - speed_ * t;
  if (domain_ == Domain::Line) return amplitude_ * std::exp(-std::abs(s));
  return amplitude_ * std::cosh(zeta(s));
}

double TravelingProfile::eval_ux(double t, double x) const {
  const double s = x - speed_ * t;
  if (domain_ == Domain::Line) {
    const double sgn = (s > 0.0) - (s < 0.0);
    return -amplitude_ * sgn * std::exp(-std::abs(s));
  }
  return -amplitude_ * std::sinh(zeta(s));
}

double TravelingProfile::eval_ut(double t, double x) const { return -speed_ * eval_ux(t, x); }

TravelingProfile make_peakon(const ModelParams& p, Domain domain, Branch branch) {
  const AmplitudeSolution sol =
      domain == Domain::Line ? solve_line_amplitudes(p) : solve_periodic_amplitudes(p);
  if (!sol.exists) throw NoRealAmplitude(sol.discriminant);
  double amplitude;
  if (sol.roots.size() == 1) {
    amplitude = sol.roots.front();  // k1 = 0: either branch label accepted
  } else {
    const double lead = domain == Domain::Line ? p.k1 : p.k1 * periodic_mass_coeff();
    const double plus = plus_branch_root(sol, lead);
    amplitude = branch == Branch::Plus ? plus
                                       : (plus == sol.roots.front() ? sol.roots.back()
                                                                    : sol.roots.front());
  }
  return TravelingProfile(domain, amplitude, p.c);
}

std::pair<TravelingProfile, TravelingProfile> make_peakon_pair(const ModelParams& p,
                                                               Domain domain) {
  if (p.k1 == 0.0)
    throw BranchUnavailable("k1 = 0: the amplitude polynomial is linear with a single root");
  return {make_peakon(p, domain, Branch::Plus), make_peakon(p, domain, Branch::Minus)};
}

std::vector<double> branch_continuity_limit(double k2, double c,
                                            std::span<const double> k1_values) {
  if (k2 == 0.0) throw DegenerateParams("branch_continuity_limit requires k2 != 0");
  std::vector<double> out;
  out.reserve(k1_values.size());
  for (double k1 : k1_values) {
    const ModelParams p{k1, k2, c};
    const AmplitudeSolution sol = solve_line_amplitudes(p);
    if (!sol.exists) throw NoRealAmplitude(sol.discriminant);
    out.push_back(sol.roots.size() == 1 ? sol.roots.front() : plus_branch_root(sol, k1));
  }
  return out;
}

}  // namespace gch
