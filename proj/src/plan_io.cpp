#include "arcsample/plan_io.hpp"

#include "arcsample/error.hpp"

#include <cmath>
#include <fstream>

namespace arcsample {
namespace {

using nlohmann::json;

template <typename F>
auto parse_guard(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

double finite_or_null_in(const json& j) { return j.is_null() ? kInfinity : j.get<double>(); }

json finite_or_null_out(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json curve_to_json(const Curved& curve) {
  json comps = json::array();
  for (const auto& p : curve.components()) comps.push_back(p.to_vector());
  return {{"domain", {curve.domain().lo, curve.domain().hi}}, {"components", comps}};
}

Curved curve_from_json(const json& j) {
  return parse_guard("curve", [&] {
    const auto domain = j.at("domain").get<std::vector<double>>();
    if (domain.size() != 2) throw Error(ErrorCode::Parse, "curve domain must be [a, b]");
    std::vector<Polyd> comps;
    for (const auto& c : j.at("components")) {
      auto v = c.get<std::vector<double>>();
      if (v.empty()) throw Error(ErrorCode::Parse, "empty component");
      for (double x : v)
        if (!std::isfinite(x)) throw Error(ErrorCode::Parse, "non-finite coefficient");
      comps.push_back(Polyd::from_vector(v));
    }
    if (comps.empty()) throw Error(ErrorCode::Parse, "curve has no components");
    return Curved(comps, {domain[0], domain[1]});
  });
}

json report_to_json(const AnalyticityReport& r) {
  json roots = json::array();
  for (const auto& z : r.roots) roots.push_back({z.real(), z.imag()});
  return {{"roots", roots},
          {"rho_star", finite_or_null_out(r.rho_star)},
          {"ellipse_sup", r.ellipse_sup},
          {"degree", r.degree},
          {"normalizer", r.normalizer},
          {"uncertified_degree", r.uncertified_degree}};
}

AnalyticityReport report_from_json(const json& j) {
  return parse_guard("report", [&] {
    AnalyticityReport r;
    for (const auto& z : j.at("roots")) r.roots.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
    r.rho_star = finite_or_null_in(j.at("rho_star"));
    r.ellipse_sup = j.at("ellipse_sup").get<double>();
    r.degree = j.at("degree").get<int>();
    r.normalizer = j.at("normalizer").get<double>();
    r.uncertified_degree = j.value("uncertified_degree", r.degree);
    return r;
  });
}

json plan_to_json(const SamplerPlan& plan) {
  json pieces = json::array();
  json reports = json::array();
  for (const auto& p : plan.pieces()) {
    pieces.push_back({{"interval", {p.interval.lo, p.interval.hi}},
                      {"density_coeffs", p.density.to_vector()},
                      {"cdf_coeffs", p.cdf.to_vector()},
                      {"probability", p.probability},
                      {"bisect_depth", p.bisect_depth}});
  }
  for (const auto& r : plan.reports()) reports.push_back(report_to_json(r));
  return {{"ell", plan.ell()}, {"curve", curve_to_json(plan.curve())}, {"pieces", pieces}, {"report", reports}};
}

SamplerPlan plan_from_json(const json& j) {
  return parse_guard("plan", [&] {
    const int ell = j.at("ell").get<int>();
    Curved curve = curve_from_json(j.at("curve"));
    std::vector<PlanPiece> pieces;
    for (const auto& jp : j.at("pieces")) {
      PlanPiece p;
      const auto iv = jp.at("interval").get<std::vector<double>>();
      if (iv.size() != 2 || !(iv[0] < iv[1])) throw Error(ErrorCode::Parse, "bad piece interval");
      p.interval = {iv[0], iv[1]};
      p.density = ChebSeriesd::from_vector(jp.at("density_coeffs").get<std::vector<double>>());
      p.cdf = ChebSeriesd::from_vector(jp.at("cdf_coeffs").get<std::vector<double>>());
      p.probability = jp.at("probability").get<double>();
      p.bisect_depth = jp.at("bisect_depth").get<int>();
      if (p.bisect_depth < 1 || p.bisect_depth > 200) throw Error(ErrorCode::Parse, "bad bisect_depth");
      pieces.push_back(std::move(p));
    }
    std::vector<AnalyticityReport> reports;
    for (const auto& jr : j.at("report")) reports.push_back(report_from_json(jr));
    return SamplerPlan(ell, std::move(curve), std::move(pieces), std::move(reports));
  });
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

Curved read_curve_file(const std::filesystem::path& path) { return curve_from_json(read_json_file(path)); }

SamplerPlan read_plan_file(const std::filesystem::path& path) { return plan_from_json(read_json_file(path)); }

void write_plan_file(const std::filesystem::path& path, const SamplerPlan& plan) {
  write_json_file(path, plan_to_json(plan));
}

}  // namespace arcsample
