#include "arcsample/analyticity.hpp"

#include "arcsample/chebyshev.hpp"
#include "arcsample/error.hpp"
#include "arcsample/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace arcsample {
namespace {

constexpr int kThetaGrid = 2048;
constexpr double kGoldenTolerance = 1e-10;

std::complex<double> ellipse_point(double rho, double theta) {
  return {0.5 * (rho + 1.0 / rho) * std::cos(theta), 0.5 * (rho - 1.0 / rho) * std::sin(theta)};
}

double distance_to_interval(std::complex<double> z) {
  const double dx = std::max(0.0, std::abs(z.real()) - 1.0);
  return std::hypot(dx, z.imag());
}

}  // namespace

double ellipse_parameter(std::complex<double> z) {
  const double s = std::abs(z + 1.0) + std::abs(z - 1.0);
  return 0.5 * (s + std::sqrt(std::max(s * s - 4.0, 0.0)));
}

double rho_star(std::span<const std::complex<double>> roots) {
  double best = kInfinity;
  for (const auto& z : roots) {
    if (distance_to_interval(z) <= 1e-12)
      throw Error(ErrorCode::RootOnInterval, "speed vanishes on [-1, 1]");
    best = std::min(best, ellipse_parameter(z));
  }
  return best;
}

double ellipse_sup(const Polyd& speed_sq, double rho, double normalizer, RootCheck check) {
  const double floor = 1e-14 * coeff_abs_sum(speed_sq);
  auto modulus = [&](double theta) { return std::abs(eval(speed_sq, ellipse_point(rho, theta))); };

  double best = -1.0;
  int best_index = 0;
  // Phase of speed^2 along the upper half of the boundary; by conjugate
  // symmetry the winding number (roots enclosed) is this total over pi.
  double phase = 0.0;
  std::complex<double> previous = 0.0;
  for (int j = 0; j < kThetaGrid; ++j) {
    const double theta = std::numbers::pi * j / (kThetaGrid - 1);
    const auto value = eval(speed_sq, ellipse_point(rho, theta));
    const double m = std::abs(value);
    if (check == RootCheck::Strict && m < floor)
      throw Error(ErrorCode::RootInside, "speed^2 vanishes on the ellipse boundary");
    if (j > 0 && m > 0.0 && std::abs(previous) > 0.0) phase += std::arg(value / previous);
    previous = value;
    if (m > best) {
      best = m;
      best_index = j;
    }
  }
  if (check == RootCheck::Strict && std::lround(phase / std::numbers::pi) != 0)
    throw Error(ErrorCode::RootInside, "speed^2 has a root inside the ellipse");

  // Golden-section refinement on the two cells around the best grid point.
  const double h = std::numbers::pi / (kThetaGrid - 1);
  double lo = std::max(0.0, h * (best_index - 1));
  double hi = std::min(std::numbers::pi, h * (best_index + 1));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = modulus(x1), f2 = modulus(x2);
  while (hi - lo > kGoldenTolerance) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = modulus(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = modulus(x1);
    }
  }
  best = std::max({best, f1, f2});
  return std::sqrt(best) / normalizer;
}

double rho_lower_bound(int d, double condition) {
  return 1.0 + 1.0 / (std::numbers::e * d * condition);
}

int choose_degree(int ell, double ellipse_sup, double rho) {
  if (!std::isfinite(rho)) return kMinDegree;
  const double needed =
      (5.0 + ell + std::log2(ellipse_sup) - std::log2(rho - 1.0)) / std::log2(rho);
  int k = kMinDegree;
  if (needed > k) k = static_cast<int>(std::ceil(needed));
  const double budget = std::ldexp(1.0, -(1 + ell));
  while (16.0 * ellipse_sup * std::pow(rho, -k) / (rho - 1.0) > budget) ++k;
  return k;
}

int uncertified_degree(int ell, double ellipse_sup, double rho) {
  if (!std::isfinite(rho)) return kMinDegree;
  return 5 + ell + static_cast<int>(std::ceil((std::log(ellipse_sup) - std::log(rho - 1.0)) / std::log(rho)));
}

double speed_integral(const Polyd& speed_sq) {
  auto speed = [&](double t) { return std::sqrt(std::max(eval(speed_sq, t), 0.0)); };
  double previous = definite_integral(interpolate<double>(speed, 16));
  for (int k = 32; k <= 4096; k *= 2) {
    const double current = definite_integral(interpolate<double>(speed, k));
    if (std::abs(current - previous) <= 1e-13 * std::abs(current)) return current;
    previous = current;
  }
  return previous;
}

AnalyticityReport analyze(const Curved& unit_curve, int ell) {
  AnalyticityReport report;
  const Polyd sq = speed_squared(unit_curve);
  if (sq.degree() > 0) report.roots = complex_roots(sq);
  report.rho_star = rho_star(report.roots);
  report.normalizer = speed_integral(sq);
  if (std::isfinite(report.rho_star))
    report.ellipse_sup = ellipse_sup(sq, report.rho_star, report.normalizer, RootCheck::AllowBoundaryRoots);
  else
    report.ellipse_sup = std::sqrt(std::abs(sq[0])) / report.normalizer;
  report.degree = choose_degree(ell, report.ellipse_sup, report.rho_star);
  report.uncertified_degree = uncertified_degree(ell, report.ellipse_sup, report.rho_star);
  return report;
}

}  // namespace arcsample
