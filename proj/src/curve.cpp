#include "arcsample/curve.hpp"

#include "arcsample/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace arcsample {

ConditionData condition_data(const Curved& c) {
  ConditionData out;
  out.coeff_norm = weighted_coeff_norm(c);

  const Polyd sq = speed_squared(c);
  std::vector<double> candidates{-1.0, 1.0};
  const Polyd slope = derivative(sq);
  if (!slope.is_zero()) {
    // Real parts of every critical point in the interval: a superset of the
    // real critical points, tolerant of roots returned slightly off the axis.
    for (const auto& z : complex_roots(slope))
      if (z.real() > -1.0 && z.real() < 1.0) candidates.push_back(z.real());
  }
  // ||gamma'(t)|| from the component derivatives, not sqrt(speed^2): near a
  // zero of the speed, speed^2 sits at rounding level and its root would
  // report ~1e-8 instead of ~1e-16.
  std::vector<Polyd> velocity;
  for (Eigen::Index i = 0; i < c.dimension(); ++i) velocity.push_back(derivative(c.component(i)));
  out.min_speed = std::numeric_limits<double>::infinity();
  std::vector<double> parts(velocity.size());
  for (const double t : candidates) {
    for (std::size_t i = 0; i < velocity.size(); ++i) parts[i] = std::abs(eval(velocity[i], t));
    std::sort(parts.begin(), parts.end());  // independent of component order
    double acc = 0.0;
    for (const double x : parts) acc = std::hypot(acc, x);
    out.min_speed = std::min(out.min_speed, acc);
  }

  if (out.min_speed <= kVanishingSpeedTolerance * out.coeff_norm || out.min_speed == 0.0)
    out.condition = std::numeric_limits<double>::infinity();
  else
    out.condition = std::max(1.0, out.coeff_norm / out.min_speed);
  return out;
}

ConditionData condition_number(const Curved& c) {
  auto data = condition_data(c);
  if (!data.finite())
    throw Error(ErrorCode::VanishingSpeed,
                "minimum speed " + std::to_string(data.min_speed) + " is not certifiably positive");
  return data;
}

}  // namespace arcsample
