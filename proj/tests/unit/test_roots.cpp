#include "arcsample/error.hpp"
#include "arcsample/roots.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace arcsample;
using cd = std::complex<double>;

namespace {

bool residual_ok(const Polyd& p, const std::vector<cd>& roots) {
  const double norm = coeff_abs_sum(p);
  for (const auto& z : roots)
    if (std::abs(eval(p, z)) > 1e-8 * norm * std::pow(std::max(1.0, std::abs(z)), p.degree())) return false;
  return true;
}

// Greedy multiset match; returns the largest distance.
double match_distance(std::vector<cd> found, const std::vector<cd>& planted) {
  double worst = 0.0;
  for (const auto& z : planted) {
    auto it = std::min_element(found.begin(), found.end(),
                               [&](const cd& a, const cd& b) { return std::abs(a - z) < std::abs(b - z); });
    worst = std::max(worst, std::abs(*it - z));
    found.erase(it);
  }
  return worst;
}

}  // namespace

TEST_CASE("quadratics") {
  const auto r = complex_roots(Polyd{1.0, 0.0, 4.0});
  REQUIRE(r.size() == 2);
  CHECK(match_distance(r, {cd(0, 0.5), cd(0, -0.5)}) < 1e-14);
  CHECK(r[0] == std::conj(r[1]));

  const auto s = complex_roots(Polyd{6.0, -5.0, 1.0});
  REQUIRE(s.size() == 2);
  CHECK(match_distance(s, {2.0, 3.0}) < 1e-13);
  CHECK(s[0].imag() == 0.0);
}

TEST_CASE("zero polynomial and constants") {
  CHECK_THROWS_AS(complex_roots(Polyd{0.0}), Error);
  CHECK(complex_roots(Polyd{3.0}).empty());
  const auto z = complex_roots(Polyd{0.0, 0.0, 1.0});
  CHECK(z.size() == 2);
  for (const auto& r : z) CHECK(r == cd(0.0));
}

TEST_CASE("planted roots") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    // 0, 2 or 4 conjugate pairs, the rest real
    const int pairs = 2 * (trial % 3);
    std::vector<cd> planted;
    for (int i = 0; i < pairs; ++i) {
      const cd z(unif(rng), unif(rng));
      planted.push_back(z);
      planted.push_back(std::conj(z));
    }
    while (planted.size() < 8) planted.push_back(unif(rng));
    const Polyd p = poly_from_roots(planted);
    REQUIRE(p.degree() == 8);
    const auto found = complex_roots(p);
    REQUIRE(found.size() == 8);
    CHECK(match_distance(found, planted) < 1e-7);
    CHECK(residual_ok(p, found));
    for (const auto& z : found) {
      if (z.imag() == 0.0) continue;
      CHECK(std::find(found.begin(), found.end(), std::conj(z)) != found.end());
    }
  }
}

TEST_CASE("random gaussian polynomials up to degree 40") {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> normal;
  for (int d = 1; d <= 40; ++d) {
    Polyd::Coeffs c(d + 1);
    for (int j = 0; j <= d; ++j) c[j] = normal(rng);
    const Polyd p(c);
    const auto r = complex_roots(p);
    CHECK(static_cast<int>(r.size()) == p.degree());
    CHECK(residual_ok(p, r));
  }
}

TEST_CASE("double roots") {
  const Polyd p = poly_from_roots({cd(0.3, 0.2), cd(0.3, -0.2), cd(0.3, 0.2), cd(0.3, -0.2), 1.5});
  const auto r = complex_roots(p);
  CHECK(r.size() == 5);
  CHECK(residual_ok(p, r));
  CHECK(match_distance(r, {cd(0.3, 0.2), cd(0.3, -0.2), cd(0.3, 0.2), cd(0.3, -0.2), 1.5}) < 1e-6);
}
