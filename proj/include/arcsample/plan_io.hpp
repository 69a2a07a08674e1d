#pragma once

#include "arcsample/curve.hpp"
#include "arcsample/sampler.hpp"

#include <json.hpp>

#include <filesystem>

namespace arcsample {

// Curve file: { "domain": [a, b], "components": [[a0, ..., ad], ...] }
nlohmann::json curve_to_json(const Curved& curve);
Curved curve_from_json(const nlohmann::json& j);

// Plan file: { "ell", "curve", "pieces": [{ "interval", "density_coeffs",
// "cdf_coeffs", "probability", "bisect_depth" }], "report": [...] }.
// Doubles are written in shortest round-trip form, so a write/read cycle is
// bit-exact. rho_star = +inf is written as null.
nlohmann::json plan_to_json(const SamplerPlan& plan);
SamplerPlan plan_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const AnalyticityReport& report);
AnalyticityReport report_from_json(const nlohmann::json& j);

/// Throws Error(Parse) on unreadable or malformed input.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

Curved read_curve_file(const std::filesystem::path& path);
SamplerPlan read_plan_file(const std::filesystem::path& path);
void write_plan_file(const std::filesystem::path& path, const SamplerPlan& plan);

}  // namespace arcsample
