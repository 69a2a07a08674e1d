#pragma once

#include "arcsample/error.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace arcsample {

/// Chebyshev series c_0 / 2 + sum_{a=1}^{k} c_a T_a(x) on [-1, 1].
template <typename Scalar>
class ChebSeries {
 public:
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  ChebSeries() : coeffs_(Coeffs::Zero(1)) {}
  explicit ChebSeries(Coeffs coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 0) coeffs_ = Coeffs::Zero(1);
  }
  ChebSeries(std::initializer_list<Scalar> c) : coeffs_(static_cast<Eigen::Index>(c.size())) {
    std::copy(c.begin(), c.end(), coeffs_.data());
    if (coeffs_.size() == 0) coeffs_ = Coeffs::Zero(1);
  }

  static ChebSeries from_vector(const std::vector<Scalar>& v) {
    Coeffs c(static_cast<Eigen::Index>(v.size()));
    std::copy(v.begin(), v.end(), c.data());
    return ChebSeries(std::move(c));
  }

  const Coeffs& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Scalar operator[](Eigen::Index a) const { return a < coeffs_.size() ? coeffs_[a] : Scalar(0); }
  std::vector<Scalar> to_vector() const { return {coeffs_.data(), coeffs_.data() + coeffs_.size()}; }

  Scalar operator()(Scalar x) const;

  friend bool operator==(const ChebSeries& a, const ChebSeries& b) {
    return a.coeffs_.size() == b.coeffs_.size() && a.coeffs_ == b.coeffs_;
  }

 private:
  Coeffs coeffs_;
};

using ChebSeriesd = ChebSeries<double>;

/// Zeros of T_k in decreasing order: cos((1 + 2a) pi / (2k)), a = 0..k-1.
template <typename Scalar = double>
std::vector<Scalar> cheb_nodes(int k) {
  std::vector<Scalar> x(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) x[a] = std::cos(Scalar(1 + 2 * a) * std::numbers::pi_v<Scalar> / Scalar(2 * k));
  // Symmetric pairs are computed with rounding error; force exact antisymmetry.
  for (int a = 0; a < k / 2; ++a) {
    const Scalar m = (x[a] - x[k - 1 - a]) / Scalar(2);
    x[a] = m;
    x[k - 1 - a] = -m;
  }
  if (k % 2 == 1) x[k / 2] = Scalar(0);
  return x;
}

/// Degree-k Chebyshev interpolant of f through the k + 1 zeros of T_{k+1}.
///
/// Direct O(k^2) sum; T_a at the nodes is cos(a * theta_i), which is exact
/// up to rounding for any a.
template <typename Scalar, typename F>
ChebSeries<Scalar> interpolate(F&& f, int k) {
  const int n = k + 1;
  const auto x = cheb_nodes<Scalar>(n);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> fx(n);
  for (int i = 0; i < n; ++i) {
    fx[i] = static_cast<Scalar>(f(x[i]));
    if (!std::isfinite(fx[i])) throw Error(ErrorCode::NonfiniteSample, "f is not finite at a Chebyshev node");
  }
  typename ChebSeries<Scalar>::Coeffs c(n);
  for (int a = 0; a <= k; ++a) {
    Scalar acc(0);
    for (int i = 0; i < n; ++i) {
      const Scalar theta = Scalar(1 + 2 * i) * std::numbers::pi_v<Scalar> / Scalar(2 * n);
      acc += fx[i] * std::cos(Scalar(a) * theta);
    }
    c[a] = Scalar(2) * acc / Scalar(n);
  }
  return ChebSeries<Scalar>(std::move(c));
}

/// Clenshaw backward recurrence; value (B_0 - B_2) / 2.
template <typename Scalar>
Scalar clenshaw_eval(const ChebSeries<Scalar>& s, Scalar x) {
  const auto& c = s.coeffs();
  Scalar b1(0), b2(0);  // B_{a+1}, B_{a+2}
  const Scalar two_x = Scalar(2) * x;
  for (Eigen::Index a = c.size() - 1; a >= 1; --a) {
    const Scalar b0 = two_x * b1 - b2 + c[a];
    b2 = b1;
    b1 = b0;
  }
  const Scalar b0 = two_x * b1 - b2 + c[0];
  return (b0 - b2) / Scalar(2);
}

template <typename Scalar>
Scalar ChebSeries<Scalar>::operator()(Scalar x) const {
  return clenshaw_eval(*this, x);
}

/// Primitive P of s with P(-1) = 0, of degree k + 1.
template <typename Scalar>
ChebSeries<Scalar> antiderivative(const ChebSeries<Scalar>& s) {
  const int k = s.degree();
  typename ChebSeries<Scalar>::Coeffs p = ChebSeries<Scalar>::Coeffs::Zero(k + 2);
  for (int a = 1; a <= k + 1; ++a) p[a] = (s[a - 1] - s[a + 1]) / Scalar(2 * a);
  // T_a(-1) = (-1)^a; choose p_0 so that p_0 / 2 + sum p_a (-1)^a = 0.
  Scalar at_minus_one(0);
  for (int a = 1; a <= k + 1; ++a) at_minus_one += (a % 2 == 0 ? p[a] : -p[a]);
  p[0] = Scalar(-2) * at_minus_one;
  return ChebSeries<Scalar>(std::move(p));
}

/// Integral over [-1, 1]: c_0 - sum_{a even >= 2} 2 c_a / (a^2 - 1).
template <typename Scalar>
Scalar definite_integral(const ChebSeries<Scalar>& s) {
  const auto& c = s.coeffs();
  Scalar acc = c[0];
  for (Eigen::Index a = 2; a < c.size(); a += 2) acc -= Scalar(2) * c[a] / Scalar(a * a - 1);
  return acc;
}

/// Exact derivative by the backward recurrence d_{a-1} = d_{a+1} + 2a c_a.
template <typename Scalar>
ChebSeries<Scalar> derivative_series(const ChebSeries<Scalar>& s) {
  const int k = s.degree();
  if (k == 0) return ChebSeries<Scalar>();
  typename ChebSeries<Scalar>::Coeffs d = ChebSeries<Scalar>::Coeffs::Zero(k + 1);  // d_k = 0 padding
  for (int a = k; a >= 1; --a) {
    const Scalar next = a + 1 <= k ? d[a + 1] : Scalar(0);
    d[a - 1] = next + Scalar(2 * a) * s[a];
  }
  d.conservativeResize(k);
  return ChebSeries<Scalar>(std::move(d));
}

template <typename Scalar>
ChebSeries<Scalar> operator*(Scalar factor, const ChebSeries<Scalar>& s) {
  return ChebSeries<Scalar>(typename ChebSeries<Scalar>::Coeffs(factor * s.coeffs()));
}

template <typename Scalar>
struct SupNorm {
  Scalar grid;         // max |s| over the grid, a lower bound on the sup-norm
  Scalar coeff_bound;  // |c_0| / 2 + sum |c_a|, an upper bound
};

/// Chebyshev extreme points cos(j pi / m), j = 0..m, in decreasing order; includes +-1.
template <typename Scalar = double>
std::vector<Scalar> cheb_extrema(int m) {
  std::vector<Scalar> x(static_cast<std::size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) x[j] = std::cos(Scalar(j) * std::numbers::pi_v<Scalar> / Scalar(m));
  x.front() = Scalar(1);
  x.back() = Scalar(-1);
  return x;
}

template <typename Scalar>
SupNorm<Scalar> sup_norm_estimate(const ChebSeries<Scalar>& s) {
  const int m = 8 * (s.degree() + 1);
  Scalar grid(0);
  for (const Scalar x : cheb_extrema<Scalar>(m)) grid = std::max(grid, std::abs(clenshaw_eval(s, x)));
  const auto& c = s.coeffs();
  const Scalar bound = std::abs(c[0]) / Scalar(2) + c.tail(c.size() - 1).cwiseAbs().sum();
  return {grid, bound};
}

}  // namespace arcsample
