#pragma once

#include "arcsample/curve.hpp"
#include "arcsample/sampler.hpp"

#include <json.hpp>

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace arcsample {

/// Adaptive Gauss-Kronrod (15-point) integration to an absolute tolerance.
///
/// Global subdivision: the cell with the largest error estimate is bisected
/// until the summed estimate meets abs_tol, a cell reaches max_depth, or a
/// fixed cell budget runs out. Rounding noise in the integrand therefore
/// costs a bounded number of evaluations.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-12,
                          int max_depth = 40);

/// Exact arc-length density phi(t) = ||gamma'(t)|| / int ||gamma'|| of a curve,
/// computed by quadrature on the square-root speed. Independent of the
/// Chebyshev machinery; serves as the oracle.
class ReferenceDistribution {
 public:
  /// The curve is rescaled to [-1, 1] first.
  explicit ReferenceDistribution(const Curved& curve);

  double speed(double t) const;
  double pdf(double t) const { return speed(t) / total_; }
  double cdf(double t) const;
  /// Arc length of the whole curve.
  double total() const { return total_; }

  /// cdf at every point of an ascending list, by accumulating the integrals
  /// between consecutive points.
  std::vector<double> cdf_sorted(std::span<const double> ascending) const;

 private:
  static constexpr int kPanels = 64;

  Polyd speed_sq_;
  std::vector<double> panel_mass_;  // cumulative unnormalized mass at panel edges
  double total_ = 0.0;
  double tol_ = 0.0;  // absolute quadrature tolerance, relative to the arc length
};

double reference_cdf(const Curved& curve, double t);

/// (1/2) sum over B equal bins of [-1, 1] of |empirical - reference| mass.
double binned_tv(std::span<const double> samples, const Curved& curve, int bins);
double binned_tv(std::span<const double> samples, const ReferenceDistribution& ref, int bins);

/// Two-sided Kolmogorov-Smirnov statistic against the reference cdf.
double ks_statistic(std::span<const double> samples, const Curved& curve);
double ks_statistic(std::span<const double> samples, const ReferenceDistribution& ref);

/// Density of the sampler output at t: piece density scaled by probability / half-width.
double composite_density(const SamplerPlan& plan, double t);

/// int_{-1}^{1} |composite_density - phi|.
double l1_density_error(const SamplerPlan& plan, const Curved& curve);
double l1_density_error(const SamplerPlan& plan, const ReferenceDistribution& ref);

struct PieceError {
  double l1 = 0.0;        // int over the piece of |composite - phi|
  double sup_grid = 0.0;  // max over a dense grid of |composite - phi|
  double length = 0.0;
};

std::vector<PieceError> piece_errors(const SamplerPlan& plan, const ReferenceDistribution& ref);

struct Certificate {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double bound = 0.0;
};

/// (a) l1 error, (b) bisection error per piece, (c) rho* lower bound per
/// piece, (d) cdf monotonicity and normalization.
std::vector<Certificate> check_certificates(const SamplerPlan& plan, const Curved& curve);

struct TVReport {
  double l1_density_error = 0.0;
  double binned_tv = 0.0;
  double ks_stat = 0.0;
  double budget = 0.0;
  std::size_t sample_count = 0;
  int bins = 0;
  std::vector<Certificate> certificates;

  bool all_passed() const;
  /// binned_tv / budget; logged, expected far below 1.
  double tightness() const { return budget > 0.0 ? binned_tv / budget : 0.0; }
};

TVReport validate(const SamplerPlan& plan, const Curved& curve, std::span<const double> samples, int bins);

nlohmann::json to_json(const TVReport& report);

}  // namespace arcsample
