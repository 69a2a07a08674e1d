// arcsample: arc-length uniform sampling on polynomial curves.
//
//   preprocess  curve file -> plan file (offline)
//   sample      plan file -> CSV / JSONL points (online)
//   validate    plan + curve -> TV report, exit 5 on a failed certificate
//   bench       per-sample cost of a plan
//   experiment  random-curve tables (table1 | split | degree)

#include "arcsample/error.hpp"
#include "arcsample/experiment.hpp"
#include "arcsample/plan_io.hpp"
#include "arcsample/sampler.hpp"
#include "arcsample/validation.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

namespace {

using namespace arcsample;
using clock_type = std::chrono::steady_clock;

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParse = 2,
  kVanishing = 3,
  kPositivity = 4,
  kCertificate = 5,
};

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::Parse:
    case ErrorCode::EmptyDomain: return kParse;
    case ErrorCode::VanishingSpeed:
    case ErrorCode::RootOnInterval: return kVanishing;
    case ErrorCode::PositivityFailure: return kPositivity;
    default: return kFailure;
  }
}

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct PreprocessArgs {
  std::string curve;
  std::string out;
  int ell = 4;
  std::optional<double> epsilon;
  int splits = 0;
  bool no_root_split = false;
};

struct SampleArgs {
  std::string plan;
  std::string out = "-";
  std::size_t count = 1;
  std::uint64_t seed = 1;
  std::string format = "csv";
  unsigned threads = 1;
};

struct ValidateArgs {
  std::string plan;
  std::string curve;
  std::string out = "-";
  std::size_t count = 100000;
  int bins = 256;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct BenchArgs {
  std::string plan;
  std::size_t count = 100000;
  std::uint64_t seed = 1;
};

struct ExperimentArgs {
  std::string mode = "table1";
  std::string out = "-";
  int trials = 1;
  std::uint64_t seed = 1;
  std::size_t samples = 2000;
  std::vector<int> degrees;
  std::vector<int> dims;
  std::vector<double> epsilons;
  bool root_split = false;
};

int run_preprocess(const PreprocessArgs& a) {
  const Curved curve = read_curve_file(a.curve);
  const int ell = a.epsilon ? ell_from_epsilon(*a.epsilon) : a.ell;
  if (ell < 1 || ell > 40) throw Error(ErrorCode::Parse, "ell must lie in [1, 40]");
  const auto t0 = clock_type::now();
  const SamplerPlan plan = build_plan(curve, {ell, a.splits, !a.no_root_split});
  const double elapsed = seconds_since(t0);
  write_plan_file(a.out, plan);

  std::cout << "ell " << ell << ", " << plan.pieces().size() << " piece(s), preprocess " << elapsed << " s\n";
  for (std::size_t i = 0; i < plan.pieces().size(); ++i) {
    const auto& p = plan.pieces()[i];
    const auto& r = plan.reports()[i];
    std::cout << "  [" << format_double(p.interval.lo) << ", " << format_double(p.interval.hi) << "]"
              << " k=" << r.degree << " (uncertified rule " << r.uncertified_degree << ")"
              << " rho*=" << r.rho_star << " M=" << r.ellipse_sup << " l_B=" << p.bisect_depth
              << " p=" << p.probability << '\n';
  }
  return kOk;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  return file;
}

int run_sample(const SampleArgs& a) {
  const SamplerPlan plan = read_plan_file(a.plan);
  if (a.count < 1 || a.count > 1'000'000'000) throw Error(ErrorCode::Parse, "count must lie in [1, 1e9]");
  const std::uint64_t seed = resolve_seed(a.seed);

  const auto t0 = clock_type::now();
  const auto ts = draw_parameters(plan, a.count, seed, a.threads);
  const double draw_seconds = seconds_since(t0);

  std::ofstream file;
  std::ostream& out = open_output(a.out, file);
  const auto n = plan.curve().dimension();
  std::string line;
  if (a.format == "csv") {
    out << 't';
    for (Eigen::Index i = 1; i <= n; ++i) out << ",x" << i;
    out << '\n';
  }
  for (const double t : ts) {
    const Eigen::VectorXd x = plan.curve()(t);
    line.clear();
    if (a.format == "csv") {
      line += format_double(t);
      for (Eigen::Index i = 0; i < n; ++i) line += ',' + format_double(x[i]);
    } else {
      line += "{\"t\":" + format_double(t) + ",\"x\":[";
      for (Eigen::Index i = 0; i < n; ++i) line += (i ? "," : "") + format_double(x[i]);
      line += "]}";
    }
    line += '\n';
    out << line;
  }
  std::cerr << a.count << " samples, " << draw_seconds / static_cast<double>(a.count) << " s/sample (draw only)\n";
  return kOk;
}

int run_validate(const ValidateArgs& a) {
  const SamplerPlan plan = read_plan_file(a.plan);
  const Curved curve = read_curve_file(a.curve);
  if (a.bins < 2) throw Error(ErrorCode::Parse, "bins must be at least 2");
  const auto ts = draw_parameters(plan, a.count, resolve_seed(a.seed), a.threads);
  const TVReport report = validate(plan, curve, ts, a.bins);

  std::ofstream file;
  std::ostream& out = open_output(a.out, file);
  out << to_json(report).dump(1) << '\n';
  for (const auto& c : report.certificates)
    std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << " value=" << c.value << " bound=" << c.bound << '\n';
  std::cerr << "binned_tv=" << report.binned_tv << " ks=" << report.ks_stat << " budget=" << report.budget
            << " tightness=" << report.tightness() << '\n';
  return report.all_passed() ? kOk : kCertificate;
}

int run_bench(const BenchArgs& a) {
  const SamplerPlan plan = read_plan_file(a.plan);
  Xoshiro256 rng(resolve_seed(a.seed));
  double sink = 0.0;
  const auto t0 = clock_type::now();
  for (std::size_t i = 0; i < a.count; ++i) sink += draw_parameter(plan, rng);
  const double per_sample = seconds_since(t0) / static_cast<double>(a.count);
  int depth = 0;
  for (const auto& p : plan.pieces()) depth = std::max(depth, p.bisect_depth);
  std::cout << "pieces=" << plan.pieces().size() << " max_k=" << plan.max_degree() << " max_l_B=" << depth
            << " time_per_sample=" << per_sample << " s (checksum " << sink << ")\n";
  return kOk;
}

int run_experiment(const ExperimentArgs& a) {
  ExperimentConfig config;
  config.trials = a.trials;
  config.seed = a.seed;
  config.timing_samples = a.samples;
  config.root_split = a.root_split;
  std::vector<ExperimentRow> rows;
  if (a.mode == "table1") {
    rows = [&] {
      if (!a.degrees.empty()) config.degrees = a.degrees;
      if (!a.dims.empty()) config.dimensions = a.dims;
      if (!a.epsilons.empty()) config.epsilons = a.epsilons;
      return run_random_grid(config, "table1");
    }();
  } else if (a.mode == "split") {
    config.degrees = a.degrees.empty() ? std::vector<int>{10} : a.degrees;
    config.dimensions = a.dims.empty() ? std::vector<int>{50} : a.dims;
    config.epsilons.clear();
    if (a.epsilons.empty())
      for (int ell = 1; ell <= 12; ++ell) config.epsilons.push_back(std::ldexp(1.0, -ell));
    else
      config.epsilons = a.epsilons;
    config.splits = {0, 4};
    rows = run_random_grid(config, "split");
  } else if (a.mode == "degree") {
    config.degrees.clear();
    if (a.degrees.empty())
      for (int d = 2; d <= 40; ++d) config.degrees.push_back(d);
    else
      config.degrees = a.degrees;
    config.epsilons = a.epsilons.empty() ? std::vector<double>{0.1} : a.epsilons;
    rows = run_degree_sweep(config);
  } else {
    throw Error(ErrorCode::Parse, "unknown experiment mode " + a.mode);
  }
  for (const auto& r : rows)
    if (r.status != "ok") std::cerr << "skipped d=" << r.d << " n=" << r.n << " trial=" << r.trial << ": " << r.status << '\n';
  std::ofstream file;
  write_csv(open_output(a.out, file), rows);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arc-length uniform random points on parametric polynomial curves"};
  app.require_subcommand(1);

  PreprocessArgs pre;
  auto* cmd_pre = app.add_subcommand("preprocess", "Build a sampler plan from a curve file");
  cmd_pre->add_option("--curve", pre.curve, "Curve JSON file")->required();
  cmd_pre->add_option("--out", pre.out, "Plan JSON output")->required();
  auto* ell_opt = cmd_pre->add_option("--ell", pre.ell, "Error exponent: TV budget 2^-ell")->check(CLI::Range(1, 40));
  cmd_pre->add_option("--epsilon", pre.epsilon, "TV budget in (0, 1); sets ell = ceil(log2(1/eps))")
      ->check(CLI::Range(1e-12, 0.999999))
      ->excludes(ell_opt);
  cmd_pre->add_option("--splits", pre.splits, "Equal subintervals (0 = none)")->check(CLI::NonNegativeNumber);
  cmd_pre->add_flag("--no-root-split", pre.no_root_split, "Do not split at real parts of speed roots");

  SampleArgs smp;
  auto* cmd_sample = app.add_subcommand("sample", "Draw points from a plan");
  cmd_sample->add_option("--plan", smp.plan, "Plan JSON file")->required();
  cmd_sample->add_option("--count", smp.count, "Number of points");
  cmd_sample->add_option("--seed", smp.seed, "64-bit seed (0 = OS entropy)");
  cmd_sample->add_option("--out", smp.out, "Output file (- for stdout)");
  cmd_sample->add_option("--format", smp.format)->check(CLI::IsMember({"csv", "jsonl"}));
  cmd_sample->add_option("--threads", smp.threads)->check(CLI::PositiveNumber);

  ValidateArgs val;
  auto* cmd_val = app.add_subcommand("validate", "Check a plan against the exact arc-length distribution");
  cmd_val->add_option("--plan", val.plan)->required();
  cmd_val->add_option("--curve", val.curve)->required();
  cmd_val->add_option("--count", val.count);
  cmd_val->add_option("--bins", val.bins);
  cmd_val->add_option("--seed", val.seed);
  cmd_val->add_option("--out", val.out, "TV report JSON (- for stdout)");
  cmd_val->add_option("--threads", val.threads)->check(CLI::PositiveNumber);

  BenchArgs bench;
  auto* cmd_bench = app.add_subcommand("bench", "Time the online sampler");
  cmd_bench->add_option("--plan", bench.plan)->required();
  cmd_bench->add_option("--count", bench.count)->check(CLI::PositiveNumber);
  cmd_bench->add_option("--seed", bench.seed);

  ExperimentArgs exp;
  auto* cmd_exp = app.add_subcommand("experiment", "Random-curve experiments, CSV output");
  cmd_exp->add_option("--mode", exp.mode)->check(CLI::IsMember({"table1", "split", "degree"}));
  cmd_exp->add_option("--out", exp.out);
  cmd_exp->add_option("--trials", exp.trials)->check(CLI::PositiveNumber);
  cmd_exp->add_option("--seed", exp.seed);
  cmd_exp->add_option("--samples", exp.samples, "Draws used for timing each plan");
  cmd_exp->add_option("--degrees", exp.degrees)->delimiter(',');
  cmd_exp->add_option("--dims", exp.dims)->delimiter(',');
  cmd_exp->add_option("--epsilons", exp.epsilons)->delimiter(',');
  cmd_exp->add_flag("--root-split", exp.root_split, "Also split at real parts of speed roots");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_pre) return run_preprocess(pre);
    if (*cmd_sample) return run_sample(smp);
    if (*cmd_val) return run_validate(val);
    if (*cmd_bench) return run_bench(bench);
    if (*cmd_exp) return run_experiment(exp);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
