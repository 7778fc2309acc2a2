#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace instanton::report {

inline constexpr const char* kSchemaVersion = "1.0.0";
inline constexpr const char* kToolVersion = "0.1.0";

struct Tolerances {
    double triple = 1e-8;
    double triple_sensitivity = 0.1;
    double ricci = 1e-8;
    double curvature_fd = 1e-6;
    double closedness = 1e-10;
    double curvature_slope_min = -2.1;
    double curvature_slope_max = -1.9;
    double circle_slope_min = -0.38;
    double circle_slope_max = -0.28;
    double fibre_size = 1e-8;
    double fibre_flatness = 1e-12;
    double bad_period = 1e-10;
    double fibration = 1e-8;
    double rotation_period = 1e-4;
    double bijection = 1e-12;
    double decomposable = 1e-10;
    double rotation_constant = 1e-8;
    double lagrangian = 1e-10;
    double phase = 1e-10;
    double negative_control = 1e-3;
    double level_independence = 1e-8;
};

struct RunConfig {
    std::complex<double> tau{0.0, 1.0};
    int b = 1;
    double exponent = 1.5;
    std::uint64_t seed = 42;
    std::size_t triple_samples = 1000;
    std::size_t curvature_samples = 100;
    std::size_t slag_grid = 64;
    double depth_min = 10.0;
    double depth_max = 1000.0;
    std::size_t ray_count = 24;
    double semiflat_eps = 0.3;
    double semiflat_b0 = -0.7;  // the non-standard family
    std::size_t lattice_cases = 10000;
    std::size_t torelli_cases = 100;
    std::size_t word_bound = 8;
    std::string fixtures;       // optional lattice fixture file, resolved against the config directory
    std::string timestamp = "1970-01-01T00:00:00Z";
    Tolerances tol;
};

/// Parses and validates a config document. Throws instanton::Error on any
/// invalid field, including b outside [1, 9].
RunConfig config_from_json(const nlohmann::json& j, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);
nlohmann::json config_to_json(const RunConfig& c);

/// Suite names in report order.
const std::vector<std::string>& suite_names();

/// Runs the named suites (concurrently) and assembles the report document.
nlohmann::json run_suites(const RunConfig& config, const std::vector<std::string>& suites);

bool report_passed(const nlohmann::json& report);

void emit_json(const nlohmann::json& report, std::ostream& out);

/// CSV tables: decay, periods, monodromy and a check summary.
std::vector<std::pair<std::string, std::string>> csv_tables(const nlohmann::json& report);

}  // namespace instanton::report
