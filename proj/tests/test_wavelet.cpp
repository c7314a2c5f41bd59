#include "dilation/error.hpp"
#include "dilation/quadrature.hpp"
#include "dilation/wavelet.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numbers>

using namespace dilation;

TEST_CASE("default profile")
{
  const Profile p = default_profile();
  CHECK(p.support_end() == 1.0);
  CHECK(p(0.0) == 0.0);
  CHECK(std::abs(p(1.0)) < 1e-15);
  CHECK(p(0.5) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
  CHECK(p(-0.1) == 0.0);
  CHECK(p(1.1) == 0.0);
  CHECK(profile_l2_norm_squared(p) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("user profiles are checked")
{
  // hat of height sqrt(3/2) on [0, 2]: squared norm 2 * (3/2) / 3 = 1
  const double h = std::sqrt(1.5);
  const Profile hat = Profile::tabulated({0.0, 1.0, 2.0}, {0.0, h, 0.0});
  CHECK(hat(1.0) == doctest::Approx(h));
  CHECK(hat(0.5) == doctest::Approx(h / 2));
  CHECK_THROWS_AS(Profile::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0}), InvalidInput);
  CHECK_THROWS_AS(Profile::tabulated({0.0, 1.0, 2.0}, {0.1, h, 0.0}), InvalidInput);

  // sqrt(2) e^{t} on (-inf, 0]
  const Profile tail = Profile::custom([](double t) { return std::sqrt(2.0) * std::exp(t); },
                                       -std::numeric_limits<double>::infinity(), 0.0, "exp-tail");
  CHECK(tail.l2_norm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(Profile::custom([](double) { return 1.0; }, 0.0, 2.0, "box"), InvalidInput);
}

TEST_CASE("profile wavelet evaluation")
{
  const WaveletSpec w = make_profile_wavelet(Matrix::identity(2));
  CHECK(evaluate(w, Vector{0.0, 0.0}) == 0.0);
  CHECK(evaluate(w, Vector{std::exp(0.5), 0.0}) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-10));
  CHECK(w.support().radius == doctest::Approx(std::exp(1.0)));
  CHECK(evaluate(w, Vector{std::exp(1.0) * 1.0001, 0.0}) == 0.0);
  CHECK_FALSE(w.support().unbounded);
}

TEST_CASE("profile support radius")
{
  // symmetric part diag(1.5, 1)
  const WaveletSpec w = make_profile_wavelet(Matrix{{1.5, 0.7}, {-0.7, 1.0}});
  CHECK(w.profile().transpose.lambda_max == doctest::Approx(1.5));
  CHECK(w.support().radius == doctest::Approx(std::exp(1.5)));

  const Profile shifted = Profile::custom(
      [](double t) { return t >= -3.0 && t <= -2.0 ? std::numbers::sqrt2 * std::sin(std::numbers::pi * (t + 3.0)) : 0.0; },
      -3.0, -2.0, "shifted");
  const WaveletSpec s = make_profile_wavelet(Matrix::identity(2), shifted);
  CHECK(s.support().radius == 1.0);
}

TEST_CASE("profile wavelet continuity at the origin")
{
  const WaveletSpec w = make_profile_wavelet(Matrix{{1.0, 1.0}, {0.0, 1.0}});
  for (int k = 1; k < 40; ++k) {
    const double r = std::pow(2.0, -k);
    CHECK(evaluate(w, Vector{r * 0.6, -r * 0.8}) == 0.0);
  }
}

TEST_CASE("indicator wavelet")
{
  const WaveletSpec w = make_indicator_wavelet(Matrix::diagonal(Vector{1.0, 1.0}));
  CHECK(evaluate(w, Vector{0.0, std::exp(-1.0)}) == 1.0);
  CHECK(evaluate(w, Vector{0.0, std::exp(1.0)}) == 0.0);
  CHECK(evaluate(w, Vector{0.3, 0.0}) == 0.0);
  CHECK(w.support().unbounded);
  CHECK_THROWS_AS(make_indicator_wavelet(Vector{1.0, -1.0}), InvalidInput);
  CHECK_THROWS_AS(make_indicator_wavelet(Matrix{{1.0, 1.0}, {0.0, 1.0}}), InvalidInput);
}

TEST_CASE("indicator permutes a zero distinguished entry")
{
  const WaveletSpec w = make_indicator_wavelet(Vector{2.0, 0.0});
  CHECK(w.indicator().distinguished == 0);
  CHECK(w.indicator().chart_diagonal == Vector{0.0, 2.0});
  // xi_0 plays the distinguished role: tau = ln(e^{-2}) / 2 = -1 with u = 0
  CHECK(evaluate(w, Vector{std::exp(-2.0), 0.0}) == 1.0);
}

TEST_CASE("indicator symmetry and unit slab")
{
  const WaveletSpec w = make_indicator_wavelet(Vector{1.0, -2.0, 4.0});
  for (int s = 0; s < 200; ++s) {
    CounterRng rng(59, static_cast<std::uint64_t>(s));
    Vector xi = oracle::random_vector(rng, 3);
    const double v = evaluate(w, xi);
    CHECK((v == 0.0 || v == 1.0));
    Vector flipped = xi;
    flipped[2] = -flipped[2];
    CHECK(evaluate(w, flipped) == v);
  }

  // along a fixed u the parameter set where the value is 1 has length 1
  const Vector d = w.indicator().chart_diagonal;
  const std::vector<double> u{0.4, -0.3};
  const auto on_chart = [&](double tau) {
    Vector xi{u[0] * std::exp(tau * d[0]), u[1] * std::exp(tau * d[1]), std::exp(tau * d[2])};
    return evaluate(w, xi);
  };
  const QuadResult len = integrate_adaptive(on_chart, -5.0, 5.0, 1e-11, 16, 100000);
  CHECK(len.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("transported wavelet")
{
  const WaveletSpec base = make_indicator_wavelet(Vector{1.0, 1.0});
  const WaveletSpec same = make_transported_wavelet(base, Matrix::identity(2));
  for (int s = 0; s < 100; ++s) {
    CounterRng rng(61, static_cast<std::uint64_t>(s));
    const Vector xi = oracle::random_vector(rng, 2);
    CHECK(evaluate(same, xi) == evaluate(base, xi));
  }
  const WaveletSpec t = make_transported_wavelet(base, Matrix::diagonal(Vector{2.0, 1.0}));
  CHECK(evaluate(t, Vector{0.0, std::exp(-1.0)}) == 1.0);
  CHECK(group_generator(t) == Matrix::identity(2));
  CHECK_THROWS_AS(make_transported_wavelet(base, Matrix{{1.0, 2.0}, {2.0, 4.0}}), InvalidInput);
  CHECK_THROWS_AS(make_transported_wavelet(base, Matrix{{1.0, 1.0}, {1.0, 1.0 + 1e-15}}), InvalidInput);
}
