#pragma once

#include "arcsample/curve.hpp"
#include "arcsample/sampler.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace arcsample {

/// Degree-d curve in R^n on [-1, 1] with iid standard Gaussian coefficients.
Curved random_gaussian_curve(int d, int n, std::mt19937_64& rng);

/// (1 + T + ... + T^d) (1, 1, 1).
Curved geometric_sum_curve(int d);

/// ell = ceil(log2(1 / epsilon)) for epsilon in (0, 1).
int ell_from_epsilon(double epsilon);

struct ExperimentRow {
  std::string mode;
  int trial = 0;
  int d = 0;
  int n = 0;
  int ell = 0;
  double epsilon = 0.0;
  int splits = 0;
  int k = 0;  // max interpolant degree over the plan's pieces
  int pieces = 0;
  double preprocess_time = 0.0;   // seconds
  double time_per_sample = 0.0;   // seconds
  std::string status = "ok";      // or the error code of a skipped curve
};

struct ExperimentConfig {
  std::vector<int> degrees{5, 10, 15, 20};
  std::vector<int> dimensions{20, 40, 60, 80, 100};
  std::vector<double> epsilons{0.1, 0.01};
  std::vector<int> splits{0};
  int trials = 1;
  std::size_t timing_samples = 2000;
  std::uint64_t seed = 1;
  bool root_split = false;
};

/// Random Gaussian curves over the (d, n, epsilon, splits) grid. The curve
/// for a given (d, n, trial) is shared by every epsilon and splits value.
std::vector<ExperimentRow> run_random_grid(const ExperimentConfig& config, const std::string& mode = "table1");

/// The geometric-sum curve for each d in config.degrees.
std::vector<ExperimentRow> run_degree_sweep(const ExperimentConfig& config);

/// Builds a plan and times timing_samples draws; failures land in status.
ExperimentRow measure(const Curved& curve, const PlanOptions& options, std::size_t timing_samples, std::uint64_t seed);

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

/// Shortest-form-safe, locale-independent formatting with 17 significant digits.
std::string format_double(double x);

}  // namespace arcsample
