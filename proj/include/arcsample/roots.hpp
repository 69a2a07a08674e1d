#pragma once

#include "arcsample/poly.hpp"

#include <complex>
#include <vector>

namespace arcsample {

/// All deg(p) complex roots of p, with multiplicity.
///
/// Aberth-Ehrlich simultaneous iteration started on a circle whose radius is
/// the Cauchy bound. Iteration stops once every root passes a backward-error
/// test. Non-real roots of the (real) input are returned in exact conjugate
/// pairs, and the result is sorted by (real, imag).
///
/// Throws ZERO_POLY for p == 0 and NO_CONVERGENCE if neither the iteration nor
/// the companion-matrix fallback meets the residual test.
std::vector<std::complex<double>> complex_roots(const Polyd& p);

/// Polynomial with the given roots and leading coefficient 1 (real part only;
/// intended for conjugate-closed root sets).
Polyd poly_from_roots(const std::vector<std::complex<double>>& roots);

}  // namespace arcsample
