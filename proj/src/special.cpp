#include "dilation/special.hpp"

#include "dilation/error.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace dilation {

double lanczos_gamma(double x)
{
  static constexpr double g = 7.0;
  static constexpr std::array<double, 9> c{
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
  };
  if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
  x -= 1.0;
  double a = c[0];
  const double t = x + g + 0.5;
  for (std::size_t i = 1; i < c.size(); ++i) a += c[i] / (x + static_cast<double>(i));
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double ball_volume(int k, double r)
{
  if (k < 0) throw InvalidInput("ball_volume: negative dimension");
  if (k == 0) return 1.0;
  return std::pow(std::numbers::pi, 0.5 * k) * std::pow(r, k) / lanczos_gamma(0.5 * k + 1.0);
}

} // namespace dilation
