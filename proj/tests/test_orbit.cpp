#include "dilation/error.hpp"
#include "dilation/matkit.hpp"
#include "dilation/orbit.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace dilation;

namespace {

Matrix random_generator(CounterRng& rng, int n) { return oracle::conditioned_generator(rng, n, 1.0, 2.0, 1.0); }

} // namespace

TEST_CASE("group descriptor")
{
  const GroupDescriptor id = group_from_generator(Matrix::identity(2));
  CHECK(id.lambda_min == 1.0);
  CHECK(id.lambda_max == 1.0);
  CHECK(id.sign == 1);

  const GroupDescriptor j = group_from_generator(Matrix{{1.0, 1.0}, {0.0, 1.0}});
  CHECK(j.sym_part == Matrix{{1.0, 0.5}, {0.5, 1.0}});
  CHECK(j.lambda_min == doctest::Approx(0.5));
  CHECK(j.lambda_max == doctest::Approx(1.5));

  CHECK_THROWS_AS(group_from_generator(Matrix{{0.0, 1.0}, {0.0, 0.0}}), HypothesisViolation);
  CHECK_THROWS_AS(group_from_generator(Matrix::diagonal(Vector{1.0, 0.0})), HypothesisViolation);

  const GroupDescriptor neg = group_from_generator(-1.0 * Matrix::identity(2));
  CHECK(neg.sign == -1);
  CHECK(neg.lambda_min == 1.0);
}

TEST_CASE("orbit_point examples")
{
  const GroupDescriptor id = group_from_generator(Matrix::identity(2));
  CHECK(orbit_point(id, 0.0, Vector{0.3, 0.4}) == Vector{0.3, 0.4});
  CHECK(orbit_point(id, 1.0, Vector{1.0, 0.0})[0] == doctest::Approx(std::exp(1.0)));

  const Matrix x{{1.0, 1.0}, {-1.0, 1.0}};
  const GroupDescriptor g = group_from_generator(x);
  const Vector p = orbit_point(g, 2.0, Vector{1.0, 0.0});
  const Vector ref = oracle::taylor_exp(2.0 * x) * Vector{1.0, 0.0};
  CHECK(p[0] == doctest::Approx(ref[0]).epsilon(1e-13));
  CHECK(p[1] == doctest::Approx(ref[1]).epsilon(1e-13));
  CHECK(p[0] == doctest::Approx(std::exp(2.0) * std::cos(2.0)).epsilon(1e-13));
  CHECK(p[1] == doctest::Approx(-std::exp(2.0) * std::sin(2.0)).epsilon(1e-13));
}

TEST_CASE("orbit_time examples")
{
  const GroupDescriptor id = group_from_generator(Matrix::identity(2));
  CHECK(orbit_time(id, Vector{0.6, 0.8}) == doctest::Approx(0.0));
  CHECK(orbit_time(id, Vector{std::exp(1.0), 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(orbit_time(id, Vector{0.0, 0.0}), DomainError);

  const GroupDescriptor g = group_from_generator(Matrix{{1.0, 1.0}, {-1.0, 1.0}});
  CHECK(orbit_time(g, Vector{0.0, std::exp(2.0)}) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("orbit_decompose examples")
{
  const GroupDescriptor id = group_from_generator(Matrix::identity(2));
  const OrbitCoordinates unit = orbit_decompose(id, Vector{0.6, 0.8});
  CHECK(unit.t == doctest::Approx(0.0));
  CHECK(unit.v[1] == doctest::Approx(0.8));
  const OrbitCoordinates c = orbit_decompose(id, Vector{0.0, std::exp(-1.0)});
  CHECK(c.t == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(c.v[1] == doctest::Approx(1.0).epsilon(1e-12));

  for (int s = 0; s < 50; ++s) {
    CounterRng rng(37, static_cast<std::uint64_t>(s));
    const GroupDescriptor g = group_from_generator(random_generator(rng, 3));
    Vector xi = oracle::random_vector(rng, 3);
    xi *= std::pow(10.0, rng.uniform(-3.0, 3.0)) / xi.norm();
    const OrbitCoordinates oc = orbit_decompose(g, xi);
    CHECK(oc.v.norm() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((orbit_point(g, oc.t, oc.v) - xi).norm() <= 1e-9 * xi.norm());
  }
}

TEST_CASE("norm bounds")
{
  const GroupDescriptor g = group_from_generator(Matrix::diagonal(Vector{1.0, 2.0}));
  const NormBounds zero = norm_bounds_check(g, 0.0, Vector{0.6, 0.8});
  CHECK(zero.lower == doctest::Approx(1.0));
  CHECK(zero.value == doctest::Approx(1.0));
  CHECK(zero.upper == doctest::Approx(1.0));
  const NormBounds b = norm_bounds_check(g, 1.0, Vector{1.0, 0.0});
  CHECK(b.lower == doctest::Approx(std::exp(1.0)));
  CHECK(b.value == doctest::Approx(std::exp(1.0)));
  CHECK(b.upper == doctest::Approx(std::exp(2.0)));
  const NormBounds r = norm_bounds_check(g, -1.0, Vector{1.0, 0.0});
  CHECK(r.lower <= r.value * (1.0 + 1e-12));
  CHECK(r.value <= r.upper * (1.0 + 1e-12));
}

TEST_CASE("group law and monotonicity")
{
  for (int s = 0; s < 20; ++s) {
    CounterRng rng(41, static_cast<std::uint64_t>(s));
    const int n = 2 + s % 3;
    const GroupDescriptor g = group_from_generator(random_generator(rng, n));
    Vector v = oracle::random_vector(rng, n);
    v *= 1.0 / v.norm();
    const double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);
    const Vector lhs = orbit_point(g, a, orbit_point(g, b, v));
    const Vector rhs = orbit_point(g, a + b, v);
    CHECK((lhs - rhs).norm() <= 1e-9 * rhs.norm());

    double prev = 0.0;
    for (int k = 0; k <= 200; ++k) {
      const double t = -10.0 + 0.1 * k;
      const double norm = orbit_point(g, t, v).norm();
      CHECK(norm > prev);
      prev = norm;
    }

    const double t = rng.uniform(-3.0, 3.0);
    CHECK(orbit_time(g, orbit_point(g, t, v)) == doctest::Approx(t).epsilon(1e-9));
  }
}

TEST_CASE("continuity probe shrinks")
{
  const GroupDescriptor g = group_from_generator(Matrix{{1.0, 1.0}, {0.0, 1.0}});
  const auto diffs = continuity_probe(g, Vector{0.3, -1.2}, Vector{0.6, 0.8}, 30);
  REQUIRE(diffs.size() == 30);
  for (std::size_t k = 4; k < diffs.size(); ++k) CHECK(diffs[k] <= diffs[k - 1] + 1e-12);
  CHECK(diffs.back() < 1e-8);
}
