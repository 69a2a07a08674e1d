#include "arcsample/experiment.hpp"

#include "arcsample/error.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ostream>

namespace arcsample {

Curved random_gaussian_curve(int d, int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Curved::Matrix coeffs(n, d + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= d; ++j) coeffs(i, j) = normal(rng);
  return Curved(coeffs, {-1.0, 1.0});
}

Curved geometric_sum_curve(int d) {
  return Curved(Curved::Matrix::Ones(3, d + 1), {-1.0, 1.0});
}

int ell_from_epsilon(double epsilon) {
  return std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / epsilon) - 1e-12)));
}

ExperimentRow measure(const Curved& curve, const PlanOptions& options, std::size_t timing_samples,
                      std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  ExperimentRow row;
  row.d = curve.degree();
  row.n = static_cast<int>(curve.dimension());
  row.ell = options.ell;
  row.epsilon = std::ldexp(1.0, -options.ell);
  row.splits = options.splits;
  try {
    const auto t0 = clock::now();
    const SamplerPlan plan = build_plan(curve, options);
    const auto t1 = clock::now();
    row.preprocess_time = std::chrono::duration<double>(t1 - t0).count();
    row.k = plan.max_degree();
    row.pieces = static_cast<int>(plan.pieces().size());

    Xoshiro256 rng(seed);
    double sink = 0.0;
    const auto t2 = clock::now();
    for (std::size_t i = 0; i < timing_samples; ++i) sink += sample_point(plan, rng)[0];
    const auto t3 = clock::now();
    row.time_per_sample = timing_samples ? std::chrono::duration<double>(t3 - t2).count() / timing_samples : 0.0;
    if (!std::isfinite(sink)) row.status = "NONFINITE_SAMPLE";
  } catch (const Error& e) {
    row.status = std::string(to_string(e.code()));
  }
  return row;
}

std::vector<ExperimentRow> run_random_grid(const ExperimentConfig& config, const std::string& mode) {
  std::vector<ExperimentRow> rows;
  std::mt19937_64 rng(config.seed);
  for (const int d : config.degrees) {
    for (const int n : config.dimensions) {
      for (int trial = 0; trial < config.trials; ++trial) {
        const Curved curve = random_gaussian_curve(d, n, rng);
        for (const double eps : config.epsilons) {
          for (const int splits : config.splits) {
            PlanOptions options{ell_from_epsilon(eps), splits, config.root_split};
            auto row = measure(curve, options, config.timing_samples, config.seed + trial);
            row.mode = mode;
            row.trial = trial;
            row.epsilon = eps;
            rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  return rows;
}

std::vector<ExperimentRow> run_degree_sweep(const ExperimentConfig& config) {
  std::vector<ExperimentRow> rows;
  for (const int d : config.degrees) {
    for (const double eps : config.epsilons) {
      PlanOptions options{ell_from_epsilon(eps), 0, config.root_split};
      auto row = measure(geometric_sum_curve(d), options, config.timing_samples, config.seed);
      row.mode = "degree";
      row.epsilon = eps;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "mode,trial,d,n,ell,epsilon,splits,k,pieces,preprocess_time,time_per_sample,status\n";
  for (const auto& r : rows) {
    out << r.mode << ',' << r.trial << ',' << r.d << ',' << r.n << ',' << r.ell << ',' << format_double(r.epsilon)
        << ',' << r.splits << ',' << r.k << ',' << r.pieces << ',' << format_double(r.preprocess_time) << ','
        << format_double(r.time_per_sample) << ',' << r.status << '\n';
  }
}

}  // namespace arcsample
