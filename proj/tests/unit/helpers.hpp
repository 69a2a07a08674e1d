#pragma once

#include "arcsample/curve.hpp"

#include <cstddef>
#include <vector>

namespace arcsample::test {

inline Curved line_curve() { return Curved({Polyd{0.0, 1.0}, Polyd{0.0}}); }
inline Curved parabola() { return Curved({Polyd{0.0, 1.0}, Polyd{0.0, 0.0, 1.0}}); }
// (3T^3 - 2T, 2T^2)
inline Curved loop_curve() { return Curved({Polyd{0.0, -2.0, 0.0, 3.0}, Polyd{0.0, 0.0, 2.0}}); }

/// Replays a fixed list of uniforms; repeats the last one when exhausted.
struct FixedStream {
  std::vector<double> values;
  std::size_t next = 0;
  double next_unit() { return values[std::min(next++, values.size() - 1)]; }
};

}  // namespace arcsample::test
