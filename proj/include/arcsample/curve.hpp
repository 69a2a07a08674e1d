#pragma once

#include "arcsample/error.hpp"
#include "arcsample/poly.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace arcsample {

template <typename Scalar>
struct Interval {
  Scalar lo;
  Scalar hi;

  Scalar half_width() const { return (hi - lo) / Scalar(2); }
  Scalar midpoint() const { return (lo + hi) / Scalar(2); }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Parametric polynomial curve t -> (gamma_1(t), ..., gamma_n(t)) over a domain.
///
/// Row i of coeffs() holds the monomial coefficients of gamma_i, ascending in
/// degree and zero padded to the common length d + 1.
template <typename Scalar>
class Curve {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Curve(const std::vector<Poly<Scalar>>& components, Interval<Scalar> domain = {Scalar(-1), Scalar(1)})
      : domain_(domain) {
    if (components.empty()) throw Error(ErrorCode::Parse, "curve needs at least one component");
    int d = 0;
    for (const auto& c : components) d = std::max(d, c.degree());
    coeffs_ = Matrix::Zero(static_cast<Eigen::Index>(components.size()), d + 1);
    for (std::size_t i = 0; i < components.size(); ++i) {
      const auto& c = components[i].coeffs();
      coeffs_.row(static_cast<Eigen::Index>(i)).head(c.size()) = c.transpose();
    }
  }

  Curve(Matrix coeffs, Interval<Scalar> domain) : coeffs_(std::move(coeffs)), domain_(domain) {
    if (coeffs_.rows() == 0 || coeffs_.cols() == 0)
      throw Error(ErrorCode::Parse, "curve needs at least one component");
    trim_columns();
  }

  const Matrix& coeffs() const { return coeffs_; }
  const Interval<Scalar>& domain() const { return domain_; }
  Eigen::Index dimension() const { return coeffs_.rows(); }
  int degree() const { return static_cast<int>(coeffs_.cols()) - 1; }

  Poly<Scalar> component(Eigen::Index i) const { return Poly<Scalar>(Vector(coeffs_.row(i).transpose())); }

  std::vector<Poly<Scalar>> components() const {
    std::vector<Poly<Scalar>> out;
    for (Eigen::Index i = 0; i < dimension(); ++i) out.push_back(component(i));
    return out;
  }

  /// Point gamma(t), by Horner over the coefficient columns.
  Vector operator()(Scalar t) const {
    Vector acc = coeffs_.col(coeffs_.cols() - 1);
    for (Eigen::Index j = coeffs_.cols() - 2; j >= 0; --j) acc = acc * t + coeffs_.col(j);
    return acc;
  }

  Curve with_domain(Interval<Scalar> domain) const { return Curve(coeffs_, domain); }

 private:
  void trim_columns() {
    Eigen::Index n = coeffs_.cols();
    while (n > 1 && coeffs_.col(n - 1).cwiseAbs().maxCoeff() <= Scalar(1e-300)) --n;
    if (n != coeffs_.cols()) coeffs_ = Matrix(coeffs_.leftCols(n));
  }

  Matrix coeffs_;
  Interval<Scalar> domain_;
};

using Curved = Curve<double>;

/// ||gamma'||^2 = sum_i (gamma_i')^2 as a polynomial.
/// Per-coefficient contributions are summed in sorted order, so the result
/// does not depend on the order of the components.
template <typename Scalar>
Poly<Scalar> speed_squared(const Curve<Scalar>& c) {
  const Eigen::Index n = c.dimension();
  const int d = c.degree();
  if (d < 1) return Poly<Scalar>();
  using Coeffs = typename Poly<Scalar>::Coeffs;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> terms(n, 2 * d - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto p = derivative(c.component(i));
    const auto sq = p * p;
    terms.row(i).setZero();
    terms.row(i).head(sq.coeffs().size()) = sq.coeffs().transpose();
  }
  Coeffs out(2 * d - 1);
  std::vector<Scalar> column(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < terms.cols(); ++j) {
    for (Eigen::Index i = 0; i < n; ++i) column[i] = terms(i, j);
    std::sort(column.begin(), column.end());
    Scalar acc(0);
    for (const Scalar x : column) acc += x;
    out[j] = acc;
  }
  return Poly<Scalar>(out);
}

/// ||gamma'||_0 = sum_i sum_j j |gamma_{i,j}|.
template <typename Scalar>
Scalar weighted_coeff_norm(const Curve<Scalar>& c) {
  using std::abs;
  Scalar acc(0);
  for (Eigen::Index j = 1; j < c.coeffs().cols(); ++j) acc += Scalar(j) * c.coeffs().col(j).cwiseAbs().sum();
  return acc;
}

/// Reparametrizes gamma over [a, b] as t -> gamma(a + (b - a)(t + 1) / 2) on [-1, 1].
template <typename Scalar>
Curve<Scalar> rescale_to_unit(const Curve<Scalar>& c) {
  const auto [a, b] = c.domain();
  if (!(a < b)) throw Error(ErrorCode::EmptyDomain, "curve domain must satisfy a < b");
  const Interval<Scalar> unit{Scalar(-1), Scalar(1)};
  if (a == Scalar(-1) && b == Scalar(1)) return c;
  const Scalar alpha = (a + b) / Scalar(2);
  const Scalar beta = (b - a) / Scalar(2);
  std::vector<Poly<Scalar>> comps;
  for (Eigen::Index i = 0; i < c.dimension(); ++i) comps.push_back(compose_affine(c.component(i), alpha, beta));
  return Curve<Scalar>(comps, unit);
}

/// The sub-curve over [lo, hi] (in the parameter of c), rescaled to [-1, 1].
template <typename Scalar>
Curve<Scalar> restrict_to(const Curve<Scalar>& c, Interval<Scalar> piece) {
  return rescale_to_unit(c.with_domain(piece));
}

struct ConditionData {
  double coeff_norm = 0.0;
  double min_speed = 0.0;
  double condition = std::numeric_limits<double>::infinity();

  bool finite() const { return std::isfinite(condition); }
};

/// Positivity tolerance for min_speed, relative to ||gamma'||_0.
inline constexpr double kVanishingSpeedTolerance = 1e-9;

/// Computes C(gamma) for a curve on [-1, 1]. Never throws on vanishing speed;
/// condition is +inf when min_speed <= 1e-9 * coeff_norm.
ConditionData condition_data(const Curved& c);

/// As condition_data, but throws VANISHING_SPEED when the condition is infinite.
ConditionData condition_number(const Curved& c);

}  // namespace arcsample
