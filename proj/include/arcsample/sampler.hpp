#pragma once

#include "arcsample/analyticity.hpp"
#include "arcsample/chebyshev.hpp"
#include "arcsample/curve.hpp"
#include "arcsample/random.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <complex>
#include <span>
#include <vector>

namespace arcsample {

/// One subinterval of the partition, with its density in local coordinates.
///
/// density and cdf live on the piece's own [-1, 1] frame: density integrates
/// to 1 there, cdf(-1) = 0 and cdf(1) = 1.
struct PlanPiece {
  Interval<double> interval;
  ChebSeriesd density;
  ChebSeriesd cdf;
  double probability = 0.0;
  int bisect_depth = 1;

  /// Maps a local coordinate in [-1, 1] into the piece's interval.
  double to_global(double local) const {
    return std::clamp(interval.midpoint() + interval.half_width() * local, interval.lo, interval.hi);
  }
  double to_local(double t) const { return (t - interval.midpoint()) / interval.half_width(); }
};

struct PlanOptions {
  int ell = 4;
  /// Number of equal subintervals (0 or 1: none).
  int splits = 0;
  /// Also split at the real parts of the complex zeros of ||gamma'||^2.
  bool root_split = true;
};

/// Immutable offline artifact: everything the online sampler needs.
class SamplerPlan {
 public:
  SamplerPlan(int ell, Curved curve, std::vector<PlanPiece> pieces, std::vector<AnalyticityReport> reports);

  int ell() const { return ell_; }
  const Curved& curve() const { return curve_; }
  const std::vector<PlanPiece>& pieces() const { return pieces_; }
  const std::vector<AnalyticityReport>& reports() const { return reports_; }
  /// Running sums of piece probabilities; the last entry is exactly 1.
  const std::vector<double>& cumulative() const { return cumulative_; }

  /// Index of the piece whose interval contains t (lowest index on ties).
  std::size_t locate(double t) const;

  int max_degree() const;

 private:
  int ell_;
  Curved curve_;
  std::vector<PlanPiece> pieces_;
  std::vector<AnalyticityReport> reports_;
  std::vector<double> cumulative_;
};

/// Sorted interior breakpoints: real parts of the roots inside (-1, 1) plus,
/// for splits > 1, the splits - 1 uniform interior points. Values closer than
/// 1e-9 are merged.
std::vector<double> split_points(std::span<const std::complex<double>> roots, int splits);

/// Offline construction. Throws VANISHING_SPEED, ROOT_ON_INTERVAL or
/// POSITIVITY_FAILURE.
SamplerPlan build_plan(const Curved& curve, const PlanOptions& options);

/// Bisection depth 2 + ell + max{0, ceil(log2 sup|density'|)}.
int bisection_depth(int ell, double derivative_sup);

struct Bracket {
  double lo;
  double hi;
};

/// depth bisection steps on u - cdf, keeping sign(u - cdf(lo)) >= 0 >= sign(u - cdf(hi)).
inline Bracket bisect(const ChebSeriesd& cdf, double u, int depth) {
  Bracket b{-1.0, 1.0};
  for (int i = 0; i < depth; ++i) {
    const double mid = 0.5 * (b.lo + b.hi);
    if (u - clenshaw_eval(cdf, mid) > 0.0)
      b.lo = mid;
    else
      b.hi = mid;
  }
  return b;
}

/// Bisection inverse-transform draw in the piece's local frame. Uses two uniforms.
template <RandomSource R>
double bisection_draw(const PlanPiece& piece, R& rng) {
  const double u = rng.next_unit();
  const auto b = bisect(piece.cdf, u, piece.bisect_depth);
  return b.lo + rng.next_unit() * (b.hi - b.lo);
}

/// Smallest i with u < cumulative[i].
inline std::size_t select_piece(const std::vector<double>& cumulative, double u) {
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

/// Parameter t in [-1, 1] of the canonical curve. A single-piece plan skips
/// the piece-selection uniform.
template <RandomSource R>
double draw_parameter(const SamplerPlan& plan, R& rng) {
  std::size_t i = 0;
  if (plan.pieces().size() > 1) i = select_piece(plan.cumulative(), rng.next_unit());
  const auto& piece = plan.pieces()[i];
  return piece.to_global(bisection_draw(piece, rng));
}

/// Draws per shard; shard s uses Xoshiro256(derive_seed(seed, s)).
inline constexpr std::size_t kShardSize = 65536;

/// count parameters drawn shard by shard. Output is identical for any thread
/// count: shards are fixed-size and written back in shard order.
std::vector<double> draw_parameters(const SamplerPlan& plan, std::size_t count, std::uint64_t seed,
                                    unsigned threads = 1);

template <RandomSource R>
Eigen::VectorXd sample_point(const SamplerPlan& plan, R& rng) {
  return plan.curve()(draw_parameter(plan, rng));
}

}  // namespace arcsample
