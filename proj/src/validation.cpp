#include "arcsample/validation.hpp"

#include "arcsample/analyticity.hpp"
#include "arcsample/error.hpp"
#include "arcsample/roots.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <queue>

namespace arcsample {
namespace {

using GaussKronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

double unit_bin(double t, int bins) {
  const double x = std::floor((t + 1.0) / 2.0 * bins);
  return std::clamp(x, 0.0, static_cast<double>(bins - 1));
}

constexpr int kMaxCells = 4000;

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                          int max_depth) {
  if (!(b > a)) return 0.0;
  struct Cell {
    double lo, hi, est, err;
    int depth;
    bool operator<(const Cell& o) const { return err < o.err; }
  };
  auto make = [&](double lo, double hi, int depth) {
    // Boost leaves the error estimate in reference-interval units, so map to
    // [-1, 1] here and scale both numbers by the half-width.
    const double h = 0.5 * (hi - lo), m = 0.5 * (hi + lo);
    Cell c{lo, hi, 0.0, 0.0, depth};
    c.est = h * GaussKronrod::integrate([&](double x) { return f(m + h * x); }, -1.0, 1.0, 0, 0.0, &c.err);
    c.err *= h;
    return c;
  };
  // Global scheme: always split the cell with the largest error estimate.
  std::priority_queue<Cell> open;
  std::vector<Cell> done;
  open.push(make(a, b, 0));
  double err_total = open.top().err;
  for (int cells = 1; !open.empty() && err_total > abs_tol && cells < kMaxCells; ++cells) {
    const Cell c = open.top();
    open.pop();
    if (c.depth >= max_depth) {
      done.push_back(c);
      continue;
    }
    const double mid = 0.5 * (c.lo + c.hi);
    const Cell l = make(c.lo, mid, c.depth + 1), r = make(mid, c.hi, c.depth + 1);
    err_total += l.err + r.err - c.err;
    open.push(l);
    open.push(r);
  }
  for (; !open.empty(); open.pop()) done.push_back(open.top());
  std::sort(done.begin(), done.end(), [](const Cell& x, const Cell& y) { return x.lo < y.lo; });
  double sum = 0.0, comp = 0.0;
  for (const Cell& c : done) {
    const double t = sum + c.est;
    comp += std::abs(sum) >= std::abs(c.est) ? (sum - t) + c.est : (c.est - t) + sum;
    sum = t;
  }
  return sum + comp;
}

ReferenceDistribution::ReferenceDistribution(const Curved& curve)
    : speed_sq_(speed_squared(rescale_to_unit(curve))) {
  panel_mass_.assign(kPanels + 1, 0.0);
  auto f = [this](double t) { return speed(t); };
  tol_ = 1e-15 * std::max(GaussKronrod::integrate(f, -1.0, 1.0, 0, 0.0), 1e-300);
  for (int j = 0; j < kPanels; ++j) {
    const double lo = -1.0 + 2.0 * j / kPanels;
    const double hi = -1.0 + 2.0 * (j + 1) / kPanels;
    panel_mass_[j + 1] = panel_mass_[j] + integrate_adaptive(f, lo, hi, tol_);
  }
  total_ = panel_mass_.back();
}

double ReferenceDistribution::speed(double t) const { return std::sqrt(std::max(eval(speed_sq_, t), 0.0)); }

double ReferenceDistribution::cdf(double t) const {
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const int j = std::min(kPanels - 1, static_cast<int>(std::floor((t + 1.0) / 2.0 * kPanels)));
  const double lo = -1.0 + 2.0 * j / kPanels;
  auto f = [this](double s) { return speed(s); };
  const double mass = panel_mass_[j] + integrate_adaptive(f, lo, t, tol_);
  return std::clamp(mass / total_, 0.0, 1.0);
}

std::vector<double> ReferenceDistribution::cdf_sorted(std::span<const double> ascending) const {
  std::vector<double> out;
  out.reserve(ascending.size());
  auto f = [this](double s) { return speed(s); };
  double previous = -1.0, mass = 0.0;
  for (const double x : ascending) {
    const double t = std::clamp(x, -1.0, 1.0);
    if (t > previous) {
      // Restart from a panel edge when the gap spans panels; keeps error local.
      const int jp = static_cast<int>(std::floor((previous + 1.0) / 2.0 * kPanels));
      const int jt = static_cast<int>(std::floor((t + 1.0) / 2.0 * kPanels));
      if (jt > jp && jt <= kPanels) {
        const int j = std::min(jt, kPanels);
        const double edge = -1.0 + 2.0 * j / kPanels;
        mass = panel_mass_[j] + (j < kPanels ? integrate_adaptive(f, edge, t, tol_) : 0.0);
      } else {
        mass += integrate_adaptive(f, previous, t, tol_);
      }
      previous = t;
    }
    out.push_back(std::clamp(mass / total_, 0.0, 1.0));
  }
  return out;
}

double reference_cdf(const Curved& curve, double t) { return ReferenceDistribution(curve).cdf(t); }

double binned_tv(std::span<const double> samples, const ReferenceDistribution& ref, int bins) {
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  for (const double t : samples) counts[static_cast<std::size_t>(unit_bin(t, bins))] += 1.0;
  const double n = static_cast<double>(samples.size());
  double tv = 0.0;
  double left = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double right = b + 1 == bins ? 1.0 : ref.cdf(-1.0 + 2.0 * (b + 1) / bins);
    tv += std::abs(counts[b] / n - (right - left));
    left = right;
  }
  return 0.5 * tv;
}

double binned_tv(std::span<const double> samples, const Curved& curve, int bins) {
  return binned_tv(samples, ReferenceDistribution(curve), bins);
}

double ks_statistic(std::span<const double> samples, const ReferenceDistribution& ref) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto f = ref.cdf_sorted(sorted);
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    d = std::max(d, static_cast<double>(i + 1) / n - f[i]);
    d = std::max(d, f[i] - static_cast<double>(i) / n);
  }
  return d;
}

double ks_statistic(std::span<const double> samples, const Curved& curve) {
  return ks_statistic(samples, ReferenceDistribution(curve));
}

double composite_density(const SamplerPlan& plan, double t) {
  const auto& piece = plan.pieces()[plan.locate(t)];
  return piece.probability * clenshaw_eval(piece.density, piece.to_local(t)) / piece.interval.half_width();
}

std::vector<PieceError> piece_errors(const SamplerPlan& plan, const ReferenceDistribution& ref) {
  constexpr int kSubPanels = 8;
  constexpr int kGrid = 2000;
  std::vector<PieceError> out;
  for (const auto& piece : plan.pieces()) {
    auto diff = [&](double t) {
      const double approx =
          piece.probability * clenshaw_eval(piece.density, piece.to_local(t)) / piece.interval.half_width();
      return std::abs(approx - ref.pdf(t));
    };
    PieceError e;
    e.length = piece.interval.hi - piece.interval.lo;
    for (int j = 0; j < kSubPanels; ++j) {
      const double lo = piece.interval.lo + e.length * j / kSubPanels;
      const double hi = j + 1 == kSubPanels ? piece.interval.hi : piece.interval.lo + e.length * (j + 1) / kSubPanels;
      e.l1 += integrate_adaptive(diff, lo, hi, 1e-13 / (kSubPanels * plan.pieces().size()));
    }
    for (int j = 0; j <= kGrid; ++j) e.sup_grid = std::max(e.sup_grid, diff(piece.interval.lo + e.length * j / kGrid));
    out.push_back(e);
  }
  return out;
}

double l1_density_error(const SamplerPlan& plan, const ReferenceDistribution& ref) {
  double total = 0.0;
  for (const auto& e : piece_errors(plan, ref)) total += e.l1;
  return total;
}

double l1_density_error(const SamplerPlan& plan, const Curved& curve) {
  return l1_density_error(plan, ReferenceDistribution(curve));
}

std::vector<Certificate> check_certificates(const SamplerPlan& plan, const Curved& curve) {
  const double half_budget = std::ldexp(1.0, -(1 + plan.ell()));
  std::vector<Certificate> out;

  const double l1 = l1_density_error(plan, curve);
  out.push_back({"l1_density_error", l1 <= half_budget, l1, half_budget});

  double bisection = 0.0;
  for (const auto& piece : plan.pieces()) {
    const double slope = sup_norm_estimate(derivative_series(piece.density)).grid;
    bisection = std::max(bisection, std::ldexp(slope, 1 - piece.bisect_depth));
  }
  out.push_back({"bisection_tv", bisection <= half_budget, bisection, half_budget});

  // rho* >= 1 + 1/(e d C) on every piece, recomputed from the curve itself.
  const Curved unit = rescale_to_unit(curve);
  double margin = kInfinity;
  for (const auto& piece : plan.pieces()) {
    const Curved local = restrict_to(unit, piece.interval);
    const auto cond = condition_data(local);
    if (!cond.finite()) {
      margin = -kInfinity;
      break;
    }
    const Polyd sq = speed_squared(local);
    double rho = kInfinity;
    try {
      if (sq.degree() > 0) rho = rho_star(complex_roots(sq));
    } catch (const Error&) {
      margin = -kInfinity;
      break;
    }
    const double lower = rho_lower_bound(std::max(1, local.degree()), cond.condition);
    margin = std::min(margin, rho - lower);
  }
  out.push_back({"rho_lower_bound", margin > 0.0, margin, 0.0});

  double violation = 0.0;
  double mass = 0.0;
  for (const auto& piece : plan.pieces()) {
    violation = std::max(violation, std::abs(clenshaw_eval(piece.cdf, -1.0)));
    violation = std::max(violation, std::abs(clenshaw_eval(piece.cdf, 1.0) - 1.0));
    if (piece.probability < 0.0 || piece.probability > 1.0) violation = std::max(violation, 1.0);
    mass += piece.probability;
    const auto grid = cheb_extrema<double>(10 * (piece.cdf.degree() + 1));
    double previous = clenshaw_eval(piece.cdf, -1.0);
    for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
      const double c = clenshaw_eval(piece.cdf, *it);
      violation = std::max(violation, previous - c);
      previous = std::max(previous, c);
    }
  }
  violation = std::max(violation, std::abs(mass - 1.0));
  out.push_back({"cdf_monotone", violation <= 1e-10, violation, 1e-10});
  return out;
}

bool TVReport::all_passed() const {
  return std::all_of(certificates.begin(), certificates.end(), [](const Certificate& c) { return c.passed; });
}

TVReport validate(const SamplerPlan& plan, const Curved& curve, std::span<const double> samples, int bins) {
  const ReferenceDistribution ref(curve);
  TVReport r;
  r.certificates = check_certificates(plan, curve);
  r.l1_density_error = r.certificates.front().value;
  r.binned_tv = binned_tv(samples, ref, bins);
  r.ks_stat = ks_statistic(samples, ref);
  r.budget = std::ldexp(1.0, -plan.ell());
  r.sample_count = samples.size();
  r.bins = bins;
  return r;
}

nlohmann::json to_json(const TVReport& r) {
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& c : r.certificates)
    certs.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"bound", c.bound}});
  return {{"l1_density_error", r.l1_density_error},
          {"binned_tv", r.binned_tv},
          {"ks_stat", r.ks_stat},
          {"budget", r.budget},
          {"sample_count", r.sample_count},
          {"bins", r.bins},
          {"tightness", r.tightness()},
          {"passed", r.all_passed()},
          {"certificates", certs}};
}

}  // namespace arcsample
