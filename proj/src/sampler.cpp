#include "arcsample/sampler.hpp"

#include "arcsample/error.hpp"
#include "arcsample/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

namespace arcsample {
namespace {

constexpr int kMaxDoublings = 6;
constexpr double kPositivityTolerance = 1e-9;

struct PieceFit {
  ChebSeriesd density;
  double integral = 0.0;  // unnormalized, i.e. the arc length of the piece
  int degree = 0;
};

bool density_ok(const ChebSeriesd& density, const ChebSeriesd& cdf, int k) {
  const auto grid = cheb_extrema<double>(10 * (k + 1));
  double previous = -kInfinity;
  for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
    if (clenshaw_eval(density, *it) < -kPositivityTolerance) return false;
    const double c = clenshaw_eval(cdf, *it);
    if (c < previous - 1e-12) return false;
    previous = std::max(previous, c);
  }
  return true;
}

PieceFit fit_piece(const Curved& local, int k) {
  const Polyd sq = speed_squared(local);
  auto speed = [&](double t) { return std::sqrt(std::max(eval(sq, t), 0.0)); };
  for (int attempt = 0; attempt <= kMaxDoublings; ++attempt, k *= 2) {
    const auto interpolant = interpolate<double>(speed, k);
    const double integral = definite_integral(interpolant);
    const auto density = (1.0 / integral) * interpolant;
    if (density_ok(density, antiderivative(density), k)) return {density, integral, k};
  }
  throw Error(ErrorCode::PositivityFailure,
              "interpolated density stays negative after " + std::to_string(kMaxDoublings) + " doublings");
}

}  // namespace

SamplerPlan::SamplerPlan(int ell, Curved curve, std::vector<PlanPiece> pieces, std::vector<AnalyticityReport> reports)
    : ell_(ell), curve_(std::move(curve)), pieces_(std::move(pieces)), reports_(std::move(reports)) {
  if (pieces_.empty()) throw Error(ErrorCode::Parse, "plan has no pieces");
  if (reports_.size() != pieces_.size()) throw Error(ErrorCode::Parse, "plan needs one report per piece");
  double acc = 0.0;
  for (const auto& p : pieces_) {
    acc += p.probability;
    cumulative_.push_back(acc);
  }
  cumulative_.back() = 1.0;
}

std::size_t SamplerPlan::locate(double t) const {
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i)
    if (t <= pieces_[i].interval.hi) return i;
  return pieces_.size() - 1;
}

int SamplerPlan::max_degree() const {
  int k = 0;
  for (const auto& p : pieces_) k = std::max(k, p.density.degree());
  return k;
}

std::vector<double> split_points(std::span<const std::complex<double>> roots, int splits) {
  constexpr double kMerge = 1e-9;
  std::vector<double> pts;
  for (int i = 1; i < splits; ++i) pts.push_back(-1.0 + 2.0 * i / splits);
  // Equal-split edges come first so a nearby root real part merges into them.
  auto near_existing = [&](double x) {
    return std::any_of(pts.begin(), pts.end(), [&](double p) { return std::abs(p - x) <= kMerge; });
  };
  for (const auto& z : roots) {
    double x = z.real();
    if (std::abs(x) < 1e-12) x = 0.0;  // symmetric speeds give purely imaginary roots
    if (x - 1.0 < -kMerge && x + 1.0 > kMerge && !near_existing(x)) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

int bisection_depth(int ell, double derivative_sup) {
  int extra = 0;
  if (derivative_sup > 0.0) extra = std::max(0, static_cast<int>(std::ceil(std::log2(derivative_sup))));
  return 2 + ell + extra;
}

SamplerPlan build_plan(const Curved& curve, const PlanOptions& options) {
  const Curved unit = rescale_to_unit(curve);
  condition_number(unit);

  std::vector<std::complex<double>> roots;
  const Polyd sq = speed_squared(unit);
  if (options.root_split && sq.degree() > 0) roots = complex_roots(sq);
  std::vector<double> edges{-1.0};
  for (const double p : split_points(roots, options.splits)) edges.push_back(p);
  edges.push_back(1.0);

  std::vector<PlanPiece> pieces;
  std::vector<AnalyticityReport> reports;
  std::vector<double> lengths;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const Interval<double> interval{edges[i], edges[i + 1]};
    const Curved local = restrict_to(unit, interval);
    auto report = analyze(local, options.ell);
    auto fit = fit_piece(local, report.degree);
    report.degree = fit.degree;

    PlanPiece piece;
    piece.interval = interval;
    piece.cdf = antiderivative(fit.density);
    piece.bisect_depth = bisection_depth(options.ell, sup_norm_estimate(derivative_series(fit.density)).grid);
    piece.density = std::move(fit.density);
    pieces.push_back(std::move(piece));
    reports.push_back(std::move(report));
    lengths.push_back(fit.integral);
  }

  const double total = std::accumulate(lengths.begin(), lengths.end(), 0.0);
  for (std::size_t i = 0; i < pieces.size(); ++i) pieces[i].probability = lengths[i] / total;
  return SamplerPlan(options.ell, unit, std::move(pieces), std::move(reports));
}

std::vector<double> draw_parameters(const SamplerPlan& plan, std::size_t count, std::uint64_t seed,
                                    unsigned threads) {
  std::vector<double> out(count);
  const std::size_t shards = (count + kShardSize - 1) / kShardSize;
  auto run = [&](unsigned worker, unsigned stride) {
    for (std::size_t s = worker; s < shards; s += stride) {
      Xoshiro256 rng(derive_seed(seed, s));
      const std::size_t end = std::min(count, (s + 1) * kShardSize);
      for (std::size_t i = s * kShardSize; i < end; ++i) out[i] = draw_parameter(plan, rng);
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(shards, 1))));
  if (threads == 1) {
    run(0, 1);
    return out;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < threads; ++w) pool.emplace_back(run, w, threads);
  pool.clear();
  return out;
}

}  // namespace arcsample
