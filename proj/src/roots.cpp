#include "arcsample/roots.hpp"

#include "arcsample/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace arcsample {
namespace {

using cplx = std::complex<double>;

constexpr int kMaxIterations = 200;
constexpr double kResidualTolerance = 1e-10;

struct Eval {
  cplx value;
  cplx slope;
  double abs_bound;  // sum |a_j| |z|^j
};

Eval eval_with_bound(const Eigen::VectorXd& a, cplx z) {
  const double r = std::abs(z);
  cplx v = a[a.size() - 1];
  cplx dv = 0.0;
  double bound = std::abs(a[a.size() - 1]);
  for (Eigen::Index j = a.size() - 2; j >= 0; --j) {
    dv = dv * z + v;
    v = v * z + a[j];
    bound = bound * r + std::abs(a[j]);
  }
  return {v, dv, bound};
}

// Unique positive root of |a_m| x^m - sum_{j<m} |a_j| x^j.
double cauchy_radius(const Eigen::VectorXd& a) {
  const Eigen::Index m = a.size() - 1;
  const double lead = std::abs(a[m]);
  double x = 1.0 + a.head(m).cwiseAbs().maxCoeff() / lead;
  for (int it = 0; it < 100; ++it) {
    double f = lead, df = 0.0;
    for (Eigen::Index j = m - 1; j >= 0; --j) {
      df = df * x + f;
      f = f * x - std::abs(a[j]);
    }
    if (df <= 0.0) break;
    const double step = f / df;
    x -= step;
    if (std::abs(step) <= 1e-12 * x) break;
  }
  return std::max(x, std::numeric_limits<double>::min());
}

bool residual_ok(const Eigen::VectorXd& a, cplx z) {
  const auto e = eval_with_bound(a, z);
  return std::isfinite(std::abs(z)) && std::abs(e.value) <= kResidualTolerance * e.abs_bound;
}

// One Aberth sweep (Gauss-Seidel ordering). Returns true when all roots have
// reached rounding-level backward error or stopped moving.
bool aberth_sweep(const Eigen::VectorXd& a, std::vector<cplx>& z, std::vector<bool>& done) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double rounding = 4.0 * static_cast<double>(a.size()) * eps;
  bool all_done = true;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (done[i]) continue;
    const auto e = eval_with_bound(a, z[i]);
    if (std::abs(e.value) <= rounding * e.abs_bound) {
      done[i] = true;
      continue;
    }
    const cplx newton = e.value / e.slope;
    cplx sum = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j)
      if (j != i) sum += 1.0 / (z[i] - z[j]);
    const cplx w = newton / (1.0 - newton * sum);
    if (!std::isfinite(std::abs(w))) {
      all_done = false;
      continue;
    }
    z[i] -= w;
    if (std::abs(w) <= eps * std::abs(z[i])) done[i] = true;
    all_done = all_done && done[i];
  }
  return all_done;
}

std::vector<cplx> aberth(const Eigen::VectorXd& a, std::vector<cplx> z) {
  std::vector<bool> done(z.size(), false);
  for (int it = 0; it < kMaxIterations; ++it)
    if (aberth_sweep(a, z, done)) break;
  return z;
}

std::vector<cplx> companion_roots(const Eigen::VectorXd& a) {
  const Eigen::Index m = a.size() - 1;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) companion(0, j) = -a[m - 1 - j] / a[m];
  for (Eigen::Index j = 1; j < m; ++j) companion(j, j - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<cplx> z;
  for (Eigen::Index j = 0; j < m; ++j) z.push_back(solver.eigenvalues()[j]);
  return z;
}

// Mirror non-real roots so that conjugates are paired exactly.
std::vector<cplx> enforce_conjugate_pairs(std::vector<cplx> z) {
  std::vector<cplx> upper, lower, real;
  for (const auto& r : z) {
    const double tol = 1e-12 * std::max(1.0, std::abs(r));
    if (r.imag() > tol)
      upper.push_back(r);
    else if (r.imag() < -tol)
      lower.push_back(r);
    else
      real.emplace_back(r.real(), 0.0);
  }
  auto by_abs_imag = [](const cplx& x, const cplx& y) { return std::abs(x.imag()) < std::abs(y.imag()); };
  while (upper.size() > lower.size()) {
    auto it = std::min_element(upper.begin(), upper.end(), by_abs_imag);
    real.emplace_back(it->real(), 0.0);
    upper.erase(it);
  }
  while (lower.size() > upper.size()) {
    auto it = std::min_element(lower.begin(), lower.end(), by_abs_imag);
    real.emplace_back(it->real(), 0.0);
    lower.erase(it);
  }
  std::vector<cplx> out = real;
  for (const auto& u : upper) {
    auto it = std::min_element(lower.begin(), lower.end(), [&](const cplx& x, const cplx& y) {
      return std::abs(std::conj(x) - u) < std::abs(std::conj(y) - u);
    });
    const cplx avg = 0.5 * (u + std::conj(*it));
    lower.erase(it);
    out.push_back(avg);
    out.push_back(std::conj(avg));
  }
  return out;
}

}  // namespace

std::vector<cplx> complex_roots(const Polyd& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPoly, "cannot take roots of the zero polynomial");
  const Eigen::VectorXd& full = p.coeffs();

  // Exact roots at zero are split off first.
  Eigen::Index zeros = 0;
  while (full[zeros] == 0.0) ++zeros;
  const Eigen::VectorXd a = full.tail(full.size() - zeros);
  const Eigen::Index m = a.size() - 1;

  std::vector<cplx> roots(static_cast<std::size_t>(zeros), cplx(0.0, 0.0));
  if (m == 0) return roots;
  if (m == 1) {
    roots.emplace_back(-a[0] / a[1], 0.0);
  } else {
    const double radius = cauchy_radius(a);
    std::vector<cplx> z(static_cast<std::size_t>(m));
    for (Eigen::Index j = 0; j < m; ++j)
      z[j] = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m) + 0.4);
    z = aberth(a, std::move(z));

    bool ok = std::all_of(z.begin(), z.end(), [&](cplx r) { return residual_ok(a, r); });
    if (!ok) {
      z = aberth(a, companion_roots(a));
      ok = std::all_of(z.begin(), z.end(), [&](cplx r) { return residual_ok(a, r); });
    }
    if (!ok) throw Error(ErrorCode::NoConvergence, "root iteration did not meet the residual tolerance");
    z = enforce_conjugate_pairs(std::move(z));
    roots.insert(roots.end(), z.begin(), z.end());
  }

  std::sort(roots.begin(), roots.end(), [](const cplx& x, const cplx& y) {
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  });
  return roots;
}

Polyd poly_from_roots(const std::vector<cplx>& roots) {
  std::vector<cplx> c{1.0};
  for (const auto& r : roots) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j + 1] += c[j];
      next[j] -= r * c[j];
    }
    c = std::move(next);
  }
  std::vector<double> re;
  for (const auto& x : c) re.push_back(x.real());
  return Polyd::from_vector(re);
}

}  // namespace arcsample
