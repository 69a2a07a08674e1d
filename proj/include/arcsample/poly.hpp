#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

namespace arcsample {

/// Real polynomial a_0 + a_1 T + ... + a_m T^m in the monomial basis.
///
/// Stored in canonical form: trailing coefficients that are true zeros
/// (|a_j| <= 1e-300) are trimmed, so degree() is the index of the last entry.
/// The zero polynomial is the single coefficient 0.
template <typename Scalar>
class Poly {
 public:
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Poly() : coeffs_(Coeffs::Zero(1)) {}

  explicit Poly(Coeffs coeffs) : coeffs_(std::move(coeffs)) { canonicalize(); }

  Poly(std::initializer_list<Scalar> coeffs) : coeffs_(static_cast<Eigen::Index>(coeffs.size())) {
    std::copy(coeffs.begin(), coeffs.end(), coeffs_.data());
    canonicalize();
  }

  static Poly from_vector(const std::vector<Scalar>& v) {
    Coeffs c(static_cast<Eigen::Index>(v.size()));
    std::copy(v.begin(), v.end(), c.data());
    return Poly(std::move(c));
  }

  const Coeffs& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == Scalar(0); }
  Scalar operator[](Eigen::Index j) const { return j < coeffs_.size() ? coeffs_[j] : Scalar(0); }

  std::vector<Scalar> to_vector() const { return {coeffs_.data(), coeffs_.data() + coeffs_.size()}; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.coeffs_.size() == b.coeffs_.size() && a.coeffs_ == b.coeffs_;
  }

 private:
  void canonicalize() {
    using std::abs;
    if (coeffs_.size() == 0) {
      coeffs_ = Coeffs::Zero(1);
      return;
    }
    Eigen::Index n = coeffs_.size();
    while (n > 1 && abs(coeffs_[n - 1]) <= Scalar(1e-300)) --n;
    if (n == 1 && abs(coeffs_[0]) <= Scalar(1e-300)) coeffs_[0] = Scalar(0);
    coeffs_.conservativeResize(n);
  }

  Coeffs coeffs_;
};

using Polyd = Poly<double>;

/// Horner evaluation; works for real and complex arguments.
template <typename Scalar, typename Arg>
auto eval(const Poly<Scalar>& p, const Arg& z) {
  using Result = decltype(Scalar{} * z);
  const auto& c = p.coeffs();
  Result acc = Result(c[c.size() - 1]);
  for (Eigen::Index j = c.size() - 2; j >= 0; --j) acc = acc * z + Result(c[j]);
  return acc;
}

template <typename Scalar>
Poly<Scalar> derivative(const Poly<Scalar>& p) {
  const auto& c = p.coeffs();
  if (c.size() <= 1) return Poly<Scalar>();
  typename Poly<Scalar>::Coeffs d(c.size() - 1);
  for (Eigen::Index j = 1; j < c.size(); ++j) d[j - 1] = Scalar(j) * c[j];
  return Poly<Scalar>(std::move(d));
}

template <typename Scalar>
Poly<Scalar> operator+(const Poly<Scalar>& a, const Poly<Scalar>& b) {
  const Eigen::Index n = std::max(a.coeffs().size(), b.coeffs().size());
  typename Poly<Scalar>::Coeffs c = Poly<Scalar>::Coeffs::Zero(n);
  c.head(a.coeffs().size()) += a.coeffs();
  c.head(b.coeffs().size()) += b.coeffs();
  return Poly<Scalar>(std::move(c));
}

template <typename Scalar>
Poly<Scalar> operator*(const Poly<Scalar>& a, const Poly<Scalar>& b) {
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  typename Poly<Scalar>::Coeffs c = Poly<Scalar>::Coeffs::Zero(x.size() + y.size() - 1);
  for (Eigen::Index i = 0; i < x.size(); ++i) c.segment(i, y.size()) += x[i] * y;
  return Poly<Scalar>(std::move(c));
}

template <typename Scalar>
Poly<Scalar> operator*(Scalar s, const Poly<Scalar>& p) {
  return Poly<Scalar>(typename Poly<Scalar>::Coeffs(s * p.coeffs()));
}

/// Sum of absolute coefficients, ||p||_0 in the weighted sense without weights.
template <typename Scalar>
Scalar coeff_abs_sum(const Poly<Scalar>& p) {
  return p.coeffs().cwiseAbs().sum();
}

/// Returns T -> p(alpha + beta T), expanded exactly by the binomial theorem.
/// Each output coefficient is accumulated with Neumaier compensated summation.
template <typename Scalar>
Poly<Scalar> compose_affine(const Poly<Scalar>& p, Scalar alpha, Scalar beta) {
  using std::abs;
  const auto& a = p.coeffs();
  const Eigen::Index n = a.size();

  // binom(j, m) alpha^(j-m) beta^m for every (j, m), built row by row.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> terms =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  terms(0, 0) = Scalar(1);
  for (Eigen::Index j = 1; j < n; ++j) {
    for (Eigen::Index m = 0; m <= j; ++m) {
      Scalar from_alpha = m < j ? alpha * terms(j - 1, m) : Scalar(0);
      Scalar from_beta = m > 0 ? beta * terms(j - 1, m - 1) : Scalar(0);
      terms(j, m) = from_alpha + from_beta;
    }
  }

  typename Poly<Scalar>::Coeffs out(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    Scalar sum(0), comp(0);
    for (Eigen::Index j = m; j < n; ++j) {
      const Scalar term = a[j] * terms(j, m);
      const Scalar t = sum + term;
      if (abs(sum) >= abs(term))
        comp += (sum - t) + term;
      else
        comp += (term - t) + sum;
      sum = t;
    }
    out[m] = sum + comp;
  }
  return Poly<Scalar>(std::move(out));
}

}  // namespace arcsample
