#include "dilation/quadrature.hpp"

#include "dilation/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace dilation {

GaussRule gauss_legendre_rule(int n)
{
  if (n < 1) throw InvalidInput("gauss_legendre_rule: n must be positive");
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (x * p0 - p1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

namespace {

const GaussRule& panel_rule()
{
  static const GaussRule rule = gauss_legendre_rule(kPanelPoints);
  return rule;
}

struct Panel
{
  double a, b;
  double whole;  // G15 over [a, b]
  double refined; // G15(left) + G15(right)
  double left, right;
  double error() const { return std::abs(whole - refined); }
  bool operator<(const Panel& o) const { return error() < o.error(); }
};

} // namespace

double gauss_panel(const Integrand& f, double a, double b)
{
  const GaussRule& rule = panel_rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

QuadResult integrate_adaptive(const Integrand& f, double a, double b, double abs_tol, int initial_panels,
                              int max_panels)
{
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  const double sign = b > a ? 1.0 : -1.0;
  if (b < a) std::swap(a, b);

  auto make_panel = [&](double lo, double hi, double whole) {
    const double mid = 0.5 * (lo + hi);
    const double l = gauss_panel(f, lo, mid);
    const double r = gauss_panel(f, mid, hi);
    out.evaluations += 2 * kPanelPoints;
    return Panel{lo, hi, whole, l + r, l, r};
  };

  std::priority_queue<Panel> heap;
  double total_error = 0.0;
  const int k0 = std::max(initial_panels, 1);
  for (int i = 0; i < k0; ++i) {
    const double lo = a + (b - a) * i / k0;
    const double hi = (i + 1 == k0) ? b : a + (b - a) * (i + 1) / k0;
    const double whole = gauss_panel(f, lo, hi);
    out.evaluations += kPanelPoints;
    heap.push(make_panel(lo, hi, whole));
  }
  auto summed_error = [&] {
    double e = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      e += copy.top().error();
      copy.pop();
    }
    return e;
  };
  total_error = summed_error();

  while (total_error > abs_tol && static_cast<int>(heap.size()) < max_panels) {
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(worst);
      break;
    }
    total_error -= worst.error();
    const Panel left = make_panel(worst.a, mid, worst.left);
    const Panel right = make_panel(mid, worst.b, worst.right);
    total_error += left.error() + right.error();
    heap.push(left);
    heap.push(right);
    if (heap.size() % 64 == 0) total_error = summed_error(); // drift from incremental updates
  }

  total_error = 0.0;
  double value = 0.0;
  out.panels = static_cast<int>(heap.size());
  while (!heap.empty()) {
    value += heap.top().refined;
    total_error += heap.top().error();
    heap.pop();
  }
  out.value = sign * value;
  out.error = total_error;
  out.converged = total_error <= abs_tol;
  return out;
}

} // namespace dilation
