// Acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "instanton/errors.hpp"
#include "instanton/hk_core.hpp"
#include "instanton/report.hpp"
#include "instanton/semiflat.hpp"

using namespace instanton;
using nlohmann::json;

namespace {

struct Line {
    bool pass = true;
    std::vector<std::string> notes;

    void need(bool ok, const std::string& note)
    {
        pass = pass && ok;
        notes.push_back(std::string(ok ? "" : "!") + note);
    }
};

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Checks of one suite whose names start with any of the prefixes.
std::vector<json> checks(const json& doc, const std::string& suite, const std::vector<std::string>& prefixes)
{
    std::vector<json> out;
    const json& s = doc.at("suites").at(suite);
    if (s.contains("error")) return out;
    for (const auto& c : s.at("checks")) {
        const std::string name = c.at("name");
        for (const auto& p : prefixes)
            if (name.rfind(p, 0) == 0) {
                out.push_back(c);
                break;
            }
    }
    return out;
}

/// Requires every selected check to pass and at least `minimum` of them to exist.
void from_report(Line& line, const json& doc, const std::string& suite, const std::vector<std::string>& prefixes,
                 std::size_t minimum, const std::string& label)
{
    const auto cs = checks(doc, suite, prefixes);
    std::size_t failed = 0;
    std::string first;
    for (const auto& c : cs)
        if (!c.at("passed").get<bool>()) {
            if (failed++ == 0) first = c.at("name").get<std::string>() + "=" + c.at("value").dump();
        }
    const bool ok = cs.size() >= minimum && failed == 0;
    std::string note = label + " " + std::to_string(cs.size() - failed) + "/" + std::to_string(cs.size());
    if (!first.empty()) note += " (" + first + ")";
    line.need(ok, note);
}

double check_value(const json& doc, const std::string& suite, const std::string& name)
{
    for (const auto& c : doc.at("suites").at(suite).at("checks"))
        if (c.at("name") == name && c.at("value").is_number()) return c.at("value").get<double>();
    return std::numeric_limits<double>::quiet_NaN();
}

void print(int id, const std::string& title, const Line& line)
{
    std::cout << (line.pass ? "PASS" : "FAIL") << "  AC" << id << "  " << title << ":";
    for (const auto& n : line.notes) std::cout << ' ' << n << ';';
    std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv)
{
    const std::string config_path = argc > 1 ? argv[1] : INSTANTON_SOURCE_DIR "/configs/default.json";
    report::RunConfig cfg;
    try {
        cfg = report::load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "acceptance: " << e.what() << '\n';
        return 2;
    }
    const report::Tolerances& tol = cfg.tol;
    bool all = true;
    auto emit = [&](int id, const std::string& title, const Line& line) {
        print(id, title, line);
        all = all && line.pass;
    };

    // 1: triple identities, timed on their own
    {
        Line line;
        const auto t0 = std::chrono::steady_clock::now();
        const auto curve = torus::make_curve(cfg.tau, cfg.b);
        const auto chart = calabi::make_chart(curve, 1.5);
        const auto pts = hk::calabi_samples(chart, cfg.triple_samples, cfg.seed);
        const double calabi_dev = hk::triple_residual(hk::calabi_field(chart), pts).max_deviation;
        const auto wrong = calabi::make_chart(curve, 2.0 / 3.0);
        const double wrong_dev = hk::triple_residual(hk::calabi_field(wrong), pts).max_deviation;
        line.need(calabi_dev < tol.triple, "calabi p=3/2 dev " + sci(calabi_dev) + " < " + sci(tol.triple));
        for (double b0 : {0.0, cfg.semiflat_b0}) {
            const auto p = semiflat::calibrated(semiflat::make_params(cfg.b, b0, cfg.semiflat_eps));
            const auto sp = hk::semiflat_samples(p, cfg.triple_samples, cfg.seed);
            const double dev = hk::triple_residual(hk::semiflat_field(p), sp).max_deviation;
            line.need(dev < tol.triple, "semiflat b0=" + sci(b0) + " dev " + sci(dev));
        }
        line.need(wrong_dev > tol.triple_sensitivity, "p=2/3 dev " + sci(wrong_dev) + " > " + sci(tol.triple_sensitivity));
        line.need(pts.size() >= 1000, "samples " + std::to_string(pts.size()));
        const double secs = seconds_since(t0);
        line.need(secs < 30.0, "runtime " + sci(secs) + " s < 30 s");
        emit(1, "hyperkahler triple identities", line);
    }

    // 2: decay rates, timed on their own
    {
        Line line;
        const auto t0 = std::chrono::steady_clock::now();
        hk::RaySpec ray;
        ray.depth_min = cfg.depth_min;
        ray.depth_max = cfg.depth_max;
        ray.count = cfg.ray_count;
        const auto chart = calabi::make_chart(torus::make_curve(cfg.tau, cfg.b), 1.5);
        const hk::DecayReport d = hk::decay_report(hk::DecayModel::Calabi, chart, ray);
        const double cs = d.curvature.slope, ls = d.circle.slope;
        line.need(!d.degenerate && cs >= tol.curvature_slope_min && cs <= tol.curvature_slope_max,
                  "|Rm| slope " + sci(cs) + " in [" + sci(tol.curvature_slope_min) + ", " + sci(tol.curvature_slope_max) + "]");
        line.need(ls >= tol.circle_slope_min && ls <= tol.circle_slope_max,
                  "circle slope " + sci(ls) + " in [" + sci(tol.circle_slope_min) + ", " + sci(tol.circle_slope_max) + "]");
        const double decades = std::log10(d.samples.back().r / d.samples.front().r);
        line.need(decades >= 1.0, "r spans " + sci(decades) + " decades");
        const double secs = seconds_since(t0);
        line.need(secs < 60.0, "runtime " + sci(secs) + " s < 60 s");
        emit(2, "decay rates", line);
    }

    // 3 to 9 read the full report; 10 compares two full runs
    const auto t0 = std::chrono::steady_clock::now();
    const json doc = report::run_suites(cfg, report::suite_names());
    const double run_secs = seconds_since(t0);

    {
        Line line;
        from_report(line, doc, "calabi", {"curvature."}, 3, "calabi");
        from_report(line, doc, "semiflat", {"standard.curvature.", "nonstandard.curvature."}, 4, "semiflat");
        line.need(true, "calabi max ricci " + sci(check_value(doc, "calabi", "curvature.max_ricci")) + ", fd " +
                            sci(check_value(doc, "calabi", "curvature.max_fd_discrepancy")));
        emit(3, "Ricci-flatness", line);
    }
    {
        Line line;
        from_report(line, doc, "semiflat",
                    {"standard.radius_", "nonstandard.radius_", "standard.bad_cycle", "nonstandard.bad_cycle"}, 14,
                    "size/flatness/bad-cycle checks");
        emit(4, "semi-flat normalizations", line);
    }
    {
        Line line;
        from_report(line, doc, "rotation", {"parameters."}, 4, "closed forms and bijection");
        from_report(line, doc, "rotation", {"consistency."}, 9, "fibre periods for (i,1), (2i,2), (1+i,2)");
        line.need(true, "worst relative error " +
                            sci(std::max({check_value(doc, "rotation", "consistency.tau_0_1_b1.fibre_period_relative_error"),
                                          check_value(doc, "rotation", "consistency.tau_0_2_b2.fibre_period_relative_error"),
                                          check_value(doc, "rotation", "consistency.tau_1_1_b2.fibre_period_relative_error")})));
        emit(5, "parameter map", line);
    }
    {
        Line line;
        from_report(line, doc, "slag", {"line_"}, 12, "residual/phase");
        from_report(line, doc, "slag", {"negative_controls."}, 2, "negative controls");
        from_report(line, doc, "semiflat", {"standard.fibration", "nonstandard.fibration", "fibration_tuned."}, 5,
                    "fibration criterion");
        emit(6, "special Lagrangians", line);
    }
    {
        Line line;
        from_report(line, doc, "monodromy", {"b"}, 10, "b=1..9 exact, b=10 rejected");
        bool rejected = false;
        try {
            json j = report::config_to_json(cfg);
            j["b"] = 10;
            report::config_from_json(j);
        } catch (const Error& e) {
            rejected = e.kind() == ErrorKind::UnsupportedDegree;
        }
        line.need(rejected, "config with b=10 rejected");
        emit(7, "monodromy", line);
    }
    {
        Line line;
        from_report(line, doc, "lattice", {"randomized."}, 4, "randomized (" + std::to_string(cfg.lattice_cases) + " cases)");
        from_report(line, doc, "lattice", {"a2."}, 5, "A2 chambers");
        from_report(line, doc, "lattice", {"les."}, 4, "restriction ranks b=1..9");
        line.need(cfg.lattice_cases >= 10000, "case count " + std::to_string(cfg.lattice_cases));
        emit(8, "lattice suite", line);
    }
    {
        Line line;
        from_report(line, doc, "torelli", {"roundtrip."}, 1,
                    "round trips (" + std::to_string(cfg.torelli_cases) + " planted)");
        from_report(line, doc, "torelli", {"mismatch."}, 3, "mismatch verdicts");
        line.need(cfg.torelli_cases >= 100, "case count " + std::to_string(cfg.torelli_cases));
        emit(9, "Torelli round trip", line);
    }
    {
        Line line;
        std::ostringstream a, b;
        report::emit_json(doc, a);
        report::emit_json(report::run_suites(cfg, report::suite_names()), b);
        line.need(a.str() == b.str(), "two runs of all: " + std::to_string(a.str().size()) + " bytes, " +
                                           (a.str() == b.str() ? "identical" : "different"));
        line.need(true, "full run " + sci(run_secs) + " s");
        emit(10, "determinism", line);
    }
    return all ? 0 : 1;
}
