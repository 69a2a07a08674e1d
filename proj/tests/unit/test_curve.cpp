#include "arcsample/curve.hpp"
#include "arcsample/error.hpp"
#include "arcsample/experiment.hpp"
#include "arcsample/validation.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <complex>
#include <random>

using namespace arcsample;
using arcsample::test::line_curve;
using arcsample::test::loop_curve;
using arcsample::test::parabola;

TEST_CASE("poly canonical form") {
  CHECK(Polyd{1.0, 2.0, 0.0, 0.0}.degree() == 1);
  CHECK(Polyd{0.0, 0.0}.is_zero());
  CHECK(Polyd{0.0, 0.0}.degree() == 0);
  // only true zeros are trimmed
  CHECK(Polyd{1.0, 1e-200}.degree() == 1);
}

TEST_CASE("eval") {
  CHECK(eval(Polyd{1.0, 2.0}, 3.0) == 7.0);
  const auto z = eval(Polyd{0.0, 0.0, 1.0}, std::complex<double>(0.0, 1.0));
  CHECK(z.real() == doctest::Approx(-1.0));
  CHECK(z.imag() == doctest::Approx(0.0));
  CHECK(eval(Polyd{4.0, 0.0, -20.0, 0.0, 81.0}, 0.5) == doctest::Approx(4.0625));
}

TEST_CASE("derivative") {
  CHECK(derivative(Polyd{0.0, 0.0, 1.0}) == Polyd{0.0, 2.0});
  CHECK(derivative(Polyd{0.0, -2.0, 0.0, 3.0}) == Polyd{-2.0, 0.0, 9.0});
  CHECK(derivative(Polyd{5.0}).is_zero());
}

TEST_CASE("speed squared of the test curves") {
  CHECK(speed_squared(line_curve()) == Polyd{1.0});
  CHECK(speed_squared(parabola()) == Polyd{1.0, 0.0, 4.0});
  CHECK(speed_squared(loop_curve()) == Polyd{4.0, 0.0, -20.0, 0.0, 81.0});
}

TEST_CASE("weighted coefficient norm") {
  CHECK(weighted_coeff_norm(line_curve()) == 1.0);
  CHECK(weighted_coeff_norm(parabola()) == 3.0);
  CHECK(weighted_coeff_norm(loop_curve()) == 15.0);
}

TEST_CASE("condition number") {
  CHECK(condition_number(line_curve()).condition == doctest::Approx(1.0));
  const auto p = condition_number(parabola());
  CHECK(p.min_speed == doctest::Approx(1.0));
  CHECK(p.coeff_norm == 3.0);
  CHECK(p.condition == doctest::Approx(3.0));
  const Curved cusp({Polyd{0.0, 0.0, 1.0}, Polyd{0.0, 0.0, 1.0}});
  CHECK_THROWS_AS(condition_number(cusp), Error);
  try {
    condition_number(cusp);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::VanishingSpeed);
  }
  CHECK_FALSE(condition_data(cusp).finite());
}

TEST_CASE("rescale to unit") {
  CHECK(rescale_to_unit(line_curve()).coeffs() == line_curve().coeffs());

  const Curved shifted({Polyd{0.0, 1.0}}, {0.0, 2.0});
  const auto u = rescale_to_unit(shifted);
  CHECK(u.component(0) == Polyd{1.0, 1.0});
  CHECK(u.domain() == Interval<double>{-1.0, 1.0});

  const Curved sq({Polyd{0.0, 0.0, 1.0}}, {0.0, 1.0});
  const auto v = rescale_to_unit(sq);
  for (const double t : {-1.0, -0.5, 0.0, 0.3, 1.0}) {
    const double s = 0.5 * (t + 1.0);
    CHECK(eval(v.component(0), t) == doctest::Approx(s * s).epsilon(1e-15));
    CHECK(eval(v.component(0), t) == doctest::Approx((1 + t) * (1 + t) / 4));
  }

  CHECK_THROWS_AS(rescale_to_unit(Curved({Polyd{0.0, 1.0}}, {1.0, 1.0})), Error);
  CHECK_THROWS_AS(rescale_to_unit(Curved({Polyd{0.0, 1.0}}, {2.0, 1.0})), Error);
}

TEST_CASE("property: speed squared matches component derivatives") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 12, n = 1 + trial % 5;
    const Curved c = random_gaussian_curve(d, n, rng);
    const Polyd sq = speed_squared(c);
    for (int i = 0; i < 20; ++i) {
      const double t = unif(rng);
      double direct = 0.0;
      for (Eigen::Index j = 0; j < c.dimension(); ++j) {
        const double v = eval(derivative(c.component(j)), t);
        direct += v * v;
      }
      CHECK(eval(sq, t) == doctest::Approx(direct).epsilon(1e-12));
    }
    for (int i = 0; i <= 1000; ++i) CHECK(eval(sq, -1.0 + 2.0 * i / 1000) >= 0.0);
  }
}

TEST_CASE("property: min speed invariant under permutation and sign flips") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Curved c = random_gaussian_curve(6, 3, rng);
    Curved::Matrix m = c.coeffs();
    m.row(0).swap(m.row(2));
    m.row(1) *= -1.0;
    const Curved flipped(m, c.domain());
    CHECK(condition_data(flipped).min_speed == condition_data(c).min_speed);
  }
}

TEST_CASE("property: rescale preserves arc length") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Curved base = random_gaussian_curve(5, 3, rng);
    const Curved c = base.with_domain({-0.3, 2.1});
    const Polyd sq = speed_squared(c);
    const double direct =
        integrate_adaptive([&](double s) { return std::sqrt(std::max(eval(sq, s), 0.0)); }, -0.3, 2.1, 1e-13);
    const Polyd usq = speed_squared(rescale_to_unit(c));
    const double unit =
        integrate_adaptive([&](double s) { return std::sqrt(std::max(eval(usq, s), 0.0)); }, -1.0, 1.0, 1e-13);
    CHECK(unit == doctest::Approx(direct).epsilon(1e-10));
  }
}
