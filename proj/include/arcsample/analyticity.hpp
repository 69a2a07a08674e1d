#pragma once

#include "arcsample/curve.hpp"
#include "arcsample/poly.hpp"

#include <complex>
#include <limits>
#include <span>
#include <vector>

namespace arcsample {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Smallest interpolant degree handed out by choose_degree.
inline constexpr int kMinDegree = 8;

/// Bernstein-ellipse data for the normalized speed of a curve on [-1, 1].
struct AnalyticityReport {
  std::vector<std::complex<double>> roots;  // zeros of ||gamma'||^2, with multiplicity
  double rho_star = kInfinity;               // +inf when there are no roots
  double ellipse_sup = 0.0;                  // M = max of |phi| on the ellipse boundary
  int degree = kMinDegree;                   // certified interpolant degree k
  double normalizer = 0.0;                   // integral of ||gamma'|| over [-1, 1]
  int uncertified_degree = kMinDegree;       // k from the 5 + l + ceil(...) rule, diagnostics only
};

/// Ellipse parameter of the smallest Bernstein ellipse through z.
double ellipse_parameter(std::complex<double> z);

/// min over roots of ellipse_parameter; +inf for an empty list. Throws
/// ROOT_ON_INTERVAL if a root lies within 1e-12 of [-1, 1].
double rho_star(std::span<const std::complex<double>> roots);

enum class RootCheck { Strict, AllowBoundaryRoots };

/// max over the boundary of E_rho of sqrt|speed_sq(z)| / normalizer.
///
/// Scans theta in [0, pi] (the other half is the conjugate image) on a
/// 2048-point grid, then refines the best cell by golden-section search.
/// With RootCheck::Strict, throws ROOT_INSIDE if |speed_sq| nearly vanishes
/// on the grid. Evaluating at exactly rho_star, where a root sits on the
/// boundary, needs AllowBoundaryRoots.
double ellipse_sup(const Polyd& speed_sq, double rho, double normalizer, RootCheck check = RootCheck::Strict);

/// 1 + 1 / (e d C).
double rho_lower_bound(int d, double condition);

/// Smallest k >= kMinDegree with 16 M rho^-k / (rho - 1) <= 2^-(1 + ell).
int choose_degree(int ell, double ellipse_sup, double rho);

/// k = 5 + ell + ceil((log M - log(rho - 1)) / log rho), not certified for rho < 2.
int uncertified_degree(int ell, double ellipse_sup, double rho);

/// Integral of sqrt(speed_sq) over [-1, 1], by Chebyshev interpolation with
/// degree doubling until successive values agree to 1e-13 relative.
double speed_integral(const Polyd& speed_sq);

/// Full offline analysis of a curve already on [-1, 1].
AnalyticityReport analyze(const Curved& unit_curve, int ell);

}  // namespace arcsample
