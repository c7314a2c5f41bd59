#pragma once

#include <functional>
#include <vector>

namespace dilation {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule
{
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule from Newton iteration on P_n; exact for polynomials of degree <= 2n - 1.
GaussRule gauss_legendre_rule(int n);

inline constexpr int kPanelPoints = 15;

struct QuadResult
{
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
  int evaluations = 0;
  bool converged = false;
};

using Integrand = std::function<double(double)>;

/// Fixed 15-point rule on [a, b].
double gauss_panel(const Integrand& f, double a, double b);

/// Globally adaptive composite Gauss-Legendre quadrature.
///
/// Each panel is scored by |G15(panel) - G15(left) - G15(right)| and the panel with the largest
/// score is bisected until the summed score drops to abs_tol or max_panels is reached.
QuadResult integrate_adaptive(const Integrand& f, double a, double b, double abs_tol, int initial_panels = 1,
                              int max_panels = 20000);

} // namespace dilation
