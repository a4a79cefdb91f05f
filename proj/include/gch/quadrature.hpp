#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "gch/errors.hpp"

namespace gch::quadrature {

// 15-point Gauss-Legendre nodes and weights on [-1, 1].
inline constexpr std::array<std::array<double, 2>, 15> kGauss15 = {{
    {-0.98799251802048538, 0.030753241996118647},
    {-0.93727339240070595, 0.070366047488108069},
    {-0.84820658341042721, 0.10715922046717177},
    {-0.72441773136017007, 0.13957067792615391},
    {-0.57097217260853883, 0.16626920581699378},
    {-0.39415134707756339, 0.18616100001556188},
    {-0.20119409399743451, 0.19843148532711125},
    {0.0, 0.2025782419255609},
    {0.20119409399743451, 0.19843148532711125},
    {0.39415134707756339, 0.18616100001556188},
    {0.57097217260853883, 0.16626920581699378},
    {0.72441773136017007, 0.13957067792615391},
    {0.84820658341042721, 0.10715922046717177},
    {0.93727339240070595, 0.070366047488108069},
    {0.98799251802048538, 0.030753241996118647},
}};

template <class F>
double gauss15(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (const auto& nw : kGauss15) sum += nw[1] * f(mid + half * nw[0]);
  return half * sum;
}

namespace detail {

template <class F>
double adaptive_rec(F& f, double a, double b, double tol, double whole, int depth,
                    long& panels) {
  if (--panels < 0) throw ToleranceNotMet("adaptive quadrature: panel budget exhausted");
  const double mid = 0.5 * (a + b);
  const double left = gauss15(f, a, mid);
  const double right = gauss15(f, mid, b);
  const double refined = left + right;
  if (std::abs(refined - whole) <= tol) return refined;
  if (depth >= 48) throw ToleranceNotMet("adaptive quadrature: depth limit reached");
  return adaptive_rec(f, a, mid, 0.5 * tol, left, depth + 1, panels) +
         adaptive_rec(f, mid, b, 0.5 * tol, right, depth + 1, panels);
}

}  // namespace detail

// Adaptive dyadic refinement of 15-point panels with an absolute error
// target. Throws ToleranceNotMet when the refinement budget is exhausted.
template <class F>
double adaptive(F&& f, double a, double b, double tol, long panel_budget = 400000) {
  if (!(b > a)) return 0.0;
  long panels = panel_budget;
  return detail::adaptive_rec(f, a, b, tol, gauss15(f, a, b), 0, panels);
}

// Integrate over [breakpoints.front(), breakpoints.back()] splitting at every
// interior breakpoint (integrand kinks); the tolerance is divided across
// segments so the total error estimate stays below tol.
template <class F>
double adaptive_segmented(F&& f, const std::vector<double>& breakpoints, double tol) {
  if (breakpoints.size() < 2) return 0.0;
  const double per = tol / static_cast<double>(breakpoints.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] - breakpoints[i] < 1e-14) continue;
    total += adaptive(f, breakpoints[i], breakpoints[i + 1], per);
  }
  return total;
}

// n-point Gauss-Legendre nodes/weights on [a, b], assembled from the
// tabulated 15-point rule when n == 15 or via Newton iteration on Legendre
// polynomials otherwise (used for the time quadrature in the weak form).
std::pair<std::vector<double>, std::vector<double>> gauss_nodes(int n, double a, double b);

}  // namespace gch::quadrature
