#pragma once

namespace dilation {

/// Gamma function, Lanczos approximation (g = 7, 9 terms) with reflection for x < 1/2.
double lanczos_gamma(double x);

/// Volume of the k-dimensional ball of radius r: pi^{k/2} r^k / Gamma(k/2 + 1).
double ball_volume(int k, double r);

} // namespace dilation
