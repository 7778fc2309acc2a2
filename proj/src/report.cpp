#include "instanton/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "instanton/errors.hpp"
#include "instanton/hk_core.hpp"
#include "instanton/lattice.hpp"
#include "instanton/lattice_io.hpp"
#include "instanton/parallel.hpp"
#include "instanton/semiflat.hpp"
#include "instanton/slag.hpp"
#include "instanton/triple.hpp"

namespace instanton::report {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
// exponent of the hyperkahler member of the Calabi family
constexpr double kTripleExponent = 1.5;

// ---------------------------------------------------------------------------
// Config

template <class T>
void read(const json& j, const char* key, T& out)
{
    if (j.contains(key)) out = j.at(key).get<T>();
}

void require(bool ok, const std::string& what)
{
    if (!ok) throw Error(ErrorKind::InvalidArgument, "config: " + what);
}

}  // namespace

RunConfig config_from_json(const json& j, const std::string& base_dir)
{
    RunConfig c;
    try {
        if (j.contains("tau")) {
            const auto t = j.at("tau").get<std::vector<double>>();
            require(t.size() == 2, "tau must be [re, im]");
            c.tau = {t[0], t[1]};
        }
        read(j, "b", c.b);
        read(j, "exponent", c.exponent);
        read(j, "seed", c.seed);
        read(j, "timestamp", c.timestamp);
        if (j.contains("samples")) {
            read(j.at("samples"), "triple", c.triple_samples);
            read(j.at("samples"), "curvature", c.curvature_samples);
        }
        if (j.contains("grid")) read(j.at("grid"), "slag", c.slag_grid);
        if (j.contains("radial_window")) {
            read(j.at("radial_window"), "depth_min", c.depth_min);
            read(j.at("radial_window"), "depth_max", c.depth_max);
            read(j.at("radial_window"), "count", c.ray_count);
        }
        if (j.contains("semiflat")) {
            read(j.at("semiflat"), "eps", c.semiflat_eps);
            read(j.at("semiflat"), "b0", c.semiflat_b0);
        }
        if (j.contains("lattice")) {
            read(j.at("lattice"), "random_cases", c.lattice_cases);
            read(j.at("lattice"), "torelli_cases", c.torelli_cases);
            read(j.at("lattice"), "word_bound", c.word_bound);
            read(j.at("lattice"), "fixtures", c.fixtures);
        }
        if (j.contains("tolerances")) {
            const json& t = j.at("tolerances");
            Tolerances& o = c.tol;
            read(t, "triple", o.triple);
            read(t, "triple_sensitivity", o.triple_sensitivity);
            read(t, "ricci", o.ricci);
            read(t, "curvature_fd", o.curvature_fd);
            read(t, "closedness", o.closedness);
            read(t, "curvature_slope_min", o.curvature_slope_min);
            read(t, "curvature_slope_max", o.curvature_slope_max);
            read(t, "circle_slope_min", o.circle_slope_min);
            read(t, "circle_slope_max", o.circle_slope_max);
            read(t, "fibre_size", o.fibre_size);
            read(t, "fibre_flatness", o.fibre_flatness);
            read(t, "bad_period", o.bad_period);
            read(t, "fibration", o.fibration);
            read(t, "rotation_period", o.rotation_period);
            read(t, "bijection", o.bijection);
            read(t, "decomposable", o.decomposable);
            read(t, "rotation_constant", o.rotation_constant);
            read(t, "lagrangian", o.lagrangian);
            read(t, "phase", o.phase);
            read(t, "negative_control", o.negative_control);
            read(t, "level_independence", o.level_independence);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("config: ") + e.what());
    }

    if (c.b < 1 || c.b > 9)
        throw Error(ErrorKind::UnsupportedDegree,
                    "config: b = " + std::to_string(c.b) + " outside [1, 9]; ALH*_b instantons require b <= 9");
    if (!(c.tau.imag() > 0.0)) throw Error(ErrorKind::InvalidModulus, "config: Im(tau) must be positive");
    require(c.exponent > 0.0, "exponent must be positive");
    require(c.triple_samples >= 2, "samples.triple must be at least 2");
    require(c.curvature_samples >= 1, "samples.curvature must be at least 1");
    require(c.slag_grid >= 4, "grid.slag must be at least 4");
    require(c.depth_min > 0.0 && c.depth_max > c.depth_min, "radial_window needs 0 < depth_min < depth_max");
    require(c.semiflat_eps > 0.0, "semiflat.eps must be positive");
    require(c.word_bound >= 1, "lattice.word_bound must be at least 1");
    const Tolerances& t = c.tol;
    for (double v : {t.triple, t.triple_sensitivity, t.ricci, t.curvature_fd, t.closedness, t.fibre_size,
                     t.fibre_flatness, t.bad_period, t.fibration, t.rotation_period, t.bijection, t.decomposable,
                     t.rotation_constant, t.lagrangian, t.phase, t.negative_control, t.level_independence})
        require(v > 0.0, "tolerances must be positive");
    require(t.curvature_slope_min < t.curvature_slope_max, "curvature slope window is empty");
    require(t.circle_slope_min < t.circle_slope_max, "circle slope window is empty");

    if (!c.fixtures.empty()) {
        const std::filesystem::path p(c.fixtures);
        if (p.is_relative()) c.fixtures = (std::filesystem::path(base_dir) / p).lexically_normal().string();
    }
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open config " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Io, "config " + path + " is not valid JSON: " + e.what());
    }
    const std::string dir = std::filesystem::path(path).parent_path().string();
    return config_from_json(j, dir.empty() ? "." : dir);
}

json config_to_json(const RunConfig& c)
{
    const Tolerances& t = c.tol;
    return json{
        {"tau", {c.tau.real(), c.tau.imag()}},
        {"b", c.b},
        {"exponent", c.exponent},
        {"seed", c.seed},
        {"timestamp", c.timestamp},
        {"samples", {{"triple", c.triple_samples}, {"curvature", c.curvature_samples}}},
        {"grid", {{"slag", c.slag_grid}}},
        {"radial_window", {{"depth_min", c.depth_min}, {"depth_max", c.depth_max}, {"count", c.ray_count}}},
        {"semiflat", {{"eps", c.semiflat_eps}, {"b0", c.semiflat_b0}}},
        {"lattice",
         {{"random_cases", c.lattice_cases},
          {"torelli_cases", c.torelli_cases},
          {"word_bound", c.word_bound},
          {"fixtures", c.fixtures}}},
        {"tolerances",
         {{"triple", t.triple},
          {"triple_sensitivity", t.triple_sensitivity},
          {"ricci", t.ricci},
          {"curvature_fd", t.curvature_fd},
          {"closedness", t.closedness},
          {"curvature_slope_min", t.curvature_slope_min},
          {"curvature_slope_max", t.curvature_slope_max},
          {"circle_slope_min", t.circle_slope_min},
          {"circle_slope_max", t.circle_slope_max},
          {"fibre_size", t.fibre_size},
          {"fibre_flatness", t.fibre_flatness},
          {"bad_period", t.bad_period},
          {"fibration", t.fibration},
          {"rotation_period", t.rotation_period},
          {"bijection", t.bijection},
          {"decomposable", t.decomposable},
          {"rotation_constant", t.rotation_constant},
          {"lagrangian", t.lagrangian},
          {"phase", t.phase},
          {"negative_control", t.negative_control},
          {"level_independence", t.level_independence}}},
    };
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"calabi", "semiflat", "rotation", "slag",
                                                "monodromy", "lattice", "torelli"};
    return names;
}

namespace {

// ---------------------------------------------------------------------------
// Suite bookkeeping

json finite(double v)
{
    if (std::isfinite(v)) return v;
    return nullptr;
}

class Suite {
public:
    explicit Suite(std::string name) : name_(std::move(name)) {}

    void below(const std::string& name, double value, double tol)
    {
        add(name, finite(value), tol, "<", value < tol);
    }
    void above(const std::string& name, double value, double threshold)
    {
        add(name, finite(value), threshold, ">", value > threshold);
    }
    void within(const std::string& name, double value, double lo, double hi)
    {
        add(name, finite(value), json::array({lo, hi}), "in", value >= lo && value <= hi);
    }
    void equal(const std::string& name, const json& value, const json& expected)
    {
        add(name, value, expected, "==", value == expected);
    }
    void truth(const std::string& name, bool value) { add(name, value, true, "==", value); }
    void info(const std::string& key, json value) { info_[key] = std::move(value); }
    json& table(const std::string& key)
    {
        if (!tables_.contains(key)) tables_[key] = json::array();
        return tables_[key];
    }

    /// Runs a section, turning a precondition failure into a failed check.
    void section(const std::string& name, const std::function<void()>& body)
    {
        try {
            body();
        } catch (const Error& e) {
            add(name + ".completed", e.what(), "no error", "==", false);
        } catch (const std::exception& e) {
            add(name + ".completed", e.what(), "no error", "==", false);
        }
    }

    json finish() const
    {
        bool ok = !checks_.empty();
        for (const auto& c : checks_) ok = ok && c.at("passed").get<bool>();
        json out{{"name", name_}, {"passed", ok}, {"checks", checks_}};
        out["info"] = info_.is_null() ? json::object() : info_;
        out["tables"] = tables_.is_null() ? json::object() : tables_;
        return out;
    }

private:
    void add(const std::string& name, json value, json tolerance, const char* relation, bool passed)
    {
        checks_.push_back({{"name", name},
                           {"value", std::move(value)},
                           {"tolerance", std::move(tolerance)},
                           {"relation", relation},
                           {"passed", passed}});
    }

    std::string name_;
    json checks_ = json::array();
    json info_;
    json tables_;
};

/// Standard error of a least-squares slope in log-log coordinates.
double slope_stderr(const std::vector<double>& log_r, double residual_rms)
{
    const std::size_t n = log_r.size();
    if (n < 3) return std::numeric_limits<double>::infinity();
    double mean = 0.0;
    for (double x : log_r) mean += x;
    mean /= double(n);
    double sxx = 0.0;
    for (double x : log_r) sxx += (x - mean) * (x - mean);
    return residual_rms * std::sqrt(double(n) / double(n - 2)) / std::sqrt(sxx);
}

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

// ---------------------------------------------------------------------------
// Suites

json run_calabi(const RunConfig& cfg)
{
    Suite s("calabi");
    const torus::EllipticCurveData curve = torus::make_curve(cfg.tau, cfg.b);
    const calabi::AnsatzChart chart = calabi::make_chart(curve, cfg.exponent);
    const std::vector<ChartPoint> pts = hk::calabi_samples(chart, cfg.triple_samples, cfg.seed);
    s.info("exponent", cfg.exponent);
    s.info("f_modulus", chart.f_modulus);

    s.section("triple", [&] {
        const hk::TripleResidual r = hk::triple_residual(hk::calabi_field(chart), pts);
        s.info("triple_constant", r.mean_ratio);
        s.below("triple.max_deviation", r.max_deviation, cfg.tol.triple);
    });
    s.section("triple_sensitivity", [&] {
        const calabi::AnsatzChart wrong = calabi::make_chart(curve, 2.0 / 3.0);
        const hk::TripleResidual r = hk::triple_residual(hk::calabi_field(wrong), pts);
        s.above("triple_sensitivity.p_2_3_deviation", r.max_deviation, cfg.tol.triple_sensitivity);
    });
    s.section("curvature", [&] {
        const hk::MetricSource src = hk::calabi_metric_source(chart);
        const std::size_t n = std::min(cfg.curvature_samples, pts.size());
        struct Row {
            double ricci, fd, closed;
        };
        const auto rows = parallel_map<Row>(n, [&](std::size_t i) {
            const MetricJet jet = src(pts[i]);
            return Row{hk::kahler_curvature(jet).ricci_norm, hk::curvature_discrepancy(src, pts[i]),
                       hk::closedness_defect(jet)};
        });
        std::vector<double> ricci, fd, closed;
        for (const auto& r : rows) {
            ricci.push_back(r.ricci);
            fd.push_back(r.fd);
            closed.push_back(r.closed);
        }
        s.below("curvature.max_ricci", max_of(ricci), cfg.tol.ricci);
        s.below("curvature.max_fd_discrepancy", max_of(fd), cfg.tol.curvature_fd);
        s.below("curvature.max_closedness_defect", max_of(closed), cfg.tol.closedness);
    });
    s.section("decay", [&] {
        hk::RaySpec ray;
        ray.depth_min = cfg.depth_min;
        ray.depth_max = cfg.depth_max;
        ray.count = cfg.ray_count;
        const hk::DecayReport d = hk::decay_report(hk::DecayModel::Calabi, chart, ray);
        s.truth("decay.fit_available", !d.degenerate);
        s.within("decay.curvature_slope", d.curvature.slope, cfg.tol.curvature_slope_min, cfg.tol.curvature_slope_max);
        s.within("decay.circle_slope", d.circle.slope, cfg.tol.circle_slope_min, cfg.tol.circle_slope_max);
        s.info("decay_r_range", json::array({d.samples.front().r, d.samples.back().r}));
        std::vector<double> log_r;
        for (const auto& p : d.samples) log_r.push_back(std::log(p.r));
        s.info("decay_curvature_fit", {{"slope", d.curvature.slope},
                                       {"stderr", finite(slope_stderr(log_r, d.curvature.residual_rms))},
                                       {"residual_rms", d.curvature.residual_rms}});
        s.info("decay_circle_fit", {{"slope", d.circle.slope},
                                    {"stderr", finite(slope_stderr(log_r, d.circle.residual_rms))},
                                    {"residual_rms", d.circle.residual_rms}});
        json& table = s.table("decay");
        for (const auto& p : d.samples) table.push_back({{"r", p.r}, {"rm", p.rm}, {"circle_length", p.circle_length}});

        const hk::DecayReport flat = hk::decay_report(hk::DecayModel::Flat, chart, ray);
        s.truth("decay.flat_model_degenerate", flat.degenerate);
    });
    return s.finish();
}

json run_semiflat(const RunConfig& cfg)
{
    Suite s("semiflat");
    struct Family {
        const char* name;
        double b0;
    };
    const Family families[] = {{"standard", 0.0}, {"nonstandard", cfg.semiflat_b0}};
    for (const auto& fam : families) {
        const std::string p = fam.name;
        s.section(p, [&] {
            const semiflat::SemiFlatParams params =
                semiflat::calibrated(semiflat::make_params(cfg.b, fam.b0, cfg.semiflat_eps));
            const std::vector<ChartPoint> pts = hk::semiflat_samples(params, cfg.triple_samples, cfg.seed);
            const hk::TripleResidual r = hk::triple_residual(hk::semiflat_field(params), pts);
            s.info(p + ".triple_constant", r.mean_ratio);
            s.info(p + ".kappa", json::array({params.kappa->real(), params.kappa->imag()}));
            s.below(p + ".triple.max_deviation", r.max_deviation, cfg.tol.triple);

            const hk::MetricSource src = hk::semiflat_metric_source(params);
            const std::size_t n = std::min(cfg.curvature_samples, pts.size());
            const auto rows = parallel_map<std::pair<double, double>>(n, [&](std::size_t i) {
                return std::make_pair(hk::kahler_curvature(src(pts[i])).ricci_norm,
                                      hk::curvature_discrepancy(src, pts[i]));
            });
            std::vector<double> ricci, fd;
            for (const auto& [a, b] : rows) {
                ricci.push_back(a);
                fd.push_back(b);
            }
            s.below(p + ".curvature.max_ricci", max_of(ricci), cfg.tol.ricci);
            s.below(p + ".curvature.max_fd_discrepancy", max_of(fd), cfg.tol.curvature_fd);

            std::vector<double> bad;
            for (double radius : {0.1, 0.01}) {
                const std::string tag = p + ".radius_" + (radius == 0.1 ? std::string("0.1") : std::string("0.01"));
                const double size = semiflat::fibre_size(params, radius);
                s.below(tag + ".fibre_size_error", std::abs(size - cfg.semiflat_eps) / cfg.semiflat_eps,
                        cfg.tol.fibre_size);
                s.below(tag + ".fibre_flatness", semiflat::fibre_flatness(params, radius), cfg.tol.fibre_flatness);
                const double re = semiflat::period(params, semiflat::FormSelector::ReHolomorphic,
                                                   {semiflat::CycleKind::Bad, 0, radius});
                const double im = semiflat::period(params, semiflat::FormSelector::ImHolomorphic,
                                                   {semiflat::CycleKind::Bad, 0, radius});
                s.below(tag + ".bad_cycle_period_error", std::abs(re - 1.0) + std::abs(im), cfg.tol.bad_period);
                bad.push_back(re);
                const double w_bad = semiflat::period(params, semiflat::FormSelector::Omega,
                                                      {semiflat::CycleKind::Bad, 0, radius});
                json& table = s.table("periods");
                table.push_back({{"family", p}, {"cycle", "fibre"}, {"form", "omega"}, {"radius", radius},
                                 {"value", size}});
                table.push_back({{"family", p}, {"cycle", "bad"}, {"form", "omega"}, {"radius", radius},
                                 {"value", w_bad}});
                table.push_back({{"family", p}, {"cycle", "bad"}, {"form", "re_Omega"}, {"radius", radius},
                                 {"value", re}});
                table.push_back({{"family", p}, {"cycle", "bad"}, {"form", "im_Omega"}, {"radius", radius},
                                 {"value", im}});
            }
            s.below(p + ".bad_cycle_radius_independence", std::abs(bad[0] - bad[1]), cfg.tol.bad_period);

            const semiflat::FibrationVerdict zero = semiflat::fibration_criterion(params, 0, cfg.tol.fibration);
            s.truth(p + ".fibration.m0_rejected", !zero.exists);
        });
    }
    s.section("fibration_tuned", [&] {
        const semiflat::SemiFlatParams base =
            semiflat::calibrated(semiflat::make_params(cfg.b, 0.0, cfg.semiflat_eps));
        s.truth("fibration_tuned.b0_zero_m1_rejected", !semiflat::fibration_criterion(base, 1, cfg.tol.fibration).exists);
        const double solved = semiflat::solve_b0_for_fibration(base, 1);
        const semiflat::SemiFlatParams params =
            semiflat::calibrated(semiflat::make_params(cfg.b, solved, cfg.semiflat_eps));
        const semiflat::FibrationVerdict v = semiflat::fibration_criterion(params, 1, cfg.tol.fibration);
        s.info("fibration_tuned.b0", solved);
        s.info("fibration_tuned.class_period", v.class_period);
        s.truth("fibration_tuned.m1_exists", v.exists);
        // bad-cycle omega-period is 2 b0 eps / b, so m = 1 is tuned at b0 = -b/2
        s.below("fibration_tuned.solved_b0_error", std::abs(solved + 0.5 * cfg.b), cfg.tol.fibration);
    });
    return s.finish();
}

json run_rotation(const RunConfig& cfg)
{
    Suite s("rotation");
    s.section("parameters", [&] {
        struct Case {
            std::complex<double> tau;
            int b;
            double b0, eps, alpha;
        };
        const double r2pi = 2.0 * std::numbers::sqrt2 * kPi;
        const Case cases[] = {{{0.0, 1.0}, 1, 0.0, r2pi, std::sqrt(kPi)},
                              {{1.0, 1.0}, 2, -1.0, r2pi, std::sqrt(2.0 * kPi)},
                              {{0.0, 2.0}, 2, 0.0, r2pi / 2.0, std::sqrt(4.0 * kPi)}};
        for (const auto& c : cases) {
            const hk::RotationParams p = hk::rotation_parameters(c.tau, c.b);
            const std::string tag = "parameters.tau_" + std::to_string(int(c.tau.real())) + "_" +
                                    std::to_string(int(c.tau.imag())) + "_b" + std::to_string(c.b);
            s.equal(tag + ".closed_form", json::array({p.b0, p.eps, p.alpha}), json::array({c.b0, c.eps, c.alpha}));
        }
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> re(-2.0, 2.0), im(0.1, 4.0);
        std::uniform_int_distribution<int> pick_b(1, 9);
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            const std::complex<double> tau(re(rng), im(rng));
            const int b = pick_b(rng);
            const hk::RotationParams p = hk::rotation_parameters(tau, b);
            worst = std::max(worst, std::abs(hk::tau_from_parameters(p.b0, p.eps, b) - tau));
        }
        s.below("parameters.bijection_roundtrip", worst, cfg.tol.bijection);
    });

    const std::pair<std::complex<double>, int> pairs[] = {{{0.0, 1.0}, 1}, {{0.0, 2.0}, 2}, {{1.0, 1.0}, 2}};
    for (const auto& [tau, b] : pairs) {
        const std::string tag = "consistency.tau_" + std::to_string(int(tau.real())) + "_" +
                                std::to_string(int(tau.imag())) + "_b" + std::to_string(b);
        s.section(tag, [&] {
            const hk::RotationConsistency r = hk::rotation_consistency(tau, b, cfg.seed);
            s.below(tag + ".fibre_period_relative_error", r.period_relative_error, cfg.tol.rotation_period);
            s.below(tag + ".omega_period", std::abs(r.omega_period), cfg.tol.lagrangian);
            s.below(tag + ".rotated_constant_error", std::abs(r.rotated_constant - 1.0), cfg.tol.rotation_constant);
            s.info(tag, {{"fibre_period", r.fibre_period},
                         {"alpha_eps", r.expected_period},
                         {"calabi_constant", r.calabi_constant},
                         {"semiflat_constant", r.semiflat_constant},
                         {"rotated_constant", r.rotated_constant}});
        });
    }

    s.section("bookkeeping", [&] {
        const calabi::AnsatzChart chart = calabi::make_chart(torus::make_curve(cfg.tau, cfg.b), kTripleExponent);
        const std::vector<ChartPoint> pts = hk::calabi_samples(chart, 64, cfg.seed);
        const hk::TripleField base = hk::normalize_triple(hk::calabi_field(chart), pts);
        const hk::TripleField once = hk::rotate(base, pts);
        const hk::TripleField twice = hk::rotate(once, pts);
        const hk::TripleField thrice = hk::rotate(twice, pts);
        double decomposable = 0.0, involution = 0.0, three = 0.0;
        for (const auto& pt : pts) {
            const hk::TriplePoint t0 = base(pt), t1 = once(pt), t2 = twice(pt), t3 = thrice(pt);
            const double scale = std::abs(wedge_top(t1.Omega, t1.Omega.conj()));
            decomposable = std::max(decomposable, std::abs(wedge_top(t1.Omega, t1.Omega)) / scale);
            for (int a = 0; a < 4; ++a)
                for (int c = 0; c < 4; ++c) {
                    const double ref = std::max(1.0, std::abs(t0.omega.c[a][c]));
                    involution = std::max(involution, std::abs(t2.omega.c[a][c] - t0.omega.c[a][c]) / ref);
                    involution = std::max(involution, std::abs(t2.Omega.c[a][c] - t0.Omega.c[a][c]) / ref);
                    three = std::max(three, std::abs(t3.omega.c[a][c] - t1.omega.c[a][c]) / ref);
                }
        }
        s.below("bookkeeping.decomposable", decomposable, cfg.tol.decomposable);
        s.below("bookkeeping.rotate_twice_identity", involution, 1e-12);
        s.below("bookkeeping.three_turns_equal_one", three, 1e-12);
        const double c0 = hk::triple_residual(base, pts).mean_ratio;
        const double c1 = hk::triple_residual(once, pts).mean_ratio;
        s.below("bookkeeping.constant_preserved", std::abs(c1 - c0), cfg.tol.rotation_constant);
    });
    return s.finish();
}

json run_slag(const RunConfig& cfg)
{
    Suite s("slag");
    const calabi::AnsatzChart chart = calabi::make_chart(torus::make_curve(cfg.tau, cfg.b), kTripleExponent);
    const hk::TripleField field = hk::calabi_field(chart);
    const std::size_t grid = cfg.slag_grid;
    const std::pair<int, int> lines[] = {{1, 0}, {0, 1}, {1, 1}};
    const double levels[] = {0.04, 0.01, 0.0025};

    for (const auto& [p, q] : lines) {
        const std::string tag = "line_" + std::to_string(p) + "_" + std::to_string(q);
        s.section(tag, [&] {
            const torus::TorusLine line = torus::make_line(p, q);
            const double expected = torus::line_phase(chart.curve, line);
            double residual = 0.0, deviation = 0.0, phase_error = 0.0, level_spread = 0.0;
            std::optional<slag::SLagPeriods> first;
            for (double level : levels) {
                const slag::AnsatzSLag L = slag::build_slag(chart, line, level);
                residual = std::max(residual, slag::lagrangian_residual(L, field, grid));
                const slag::PhaseProfile ph = slag::phase_profile(L, field, grid);
                deviation = std::max(deviation, ph.max_deviation);
                phase_error = std::max(phase_error, std::abs(std::remainder(ph.mean_phase - expected, 2 * kPi)));
                const slag::SLagPeriods per = slag::periods(L, field, grid);
                if (!first) first = per;
                level_spread = std::max({level_spread, std::abs(per.omega - first->omega),
                                         std::abs(per.Omega.real() - first->Omega.real()),
                                         std::abs(per.Omega.imag() - first->Omega.imag())});
                s.table("periods").push_back({{"line", json::array({p, q})},
                                              {"level", level},
                                              {"omega", per.omega},
                                              {"re_Omega", per.Omega.real()},
                                              {"im_Omega", per.Omega.imag()}});
            }
            s.below(tag + ".lagrangian_residual", residual, cfg.tol.lagrangian);
            s.below(tag + ".phase_deviation", deviation, cfg.tol.phase);
            s.below(tag + ".phase_vs_line_phase", phase_error, cfg.tol.phase);
            s.below(tag + ".period_level_spread", level_spread, cfg.tol.level_independence);
        });
    }
    s.section("negative_controls", [&] {
        const torus::TorusLine line = torus::make_line(1, 0);
        const slag::AnsatzSLag tilted = slag::build_slag(chart, line, 0.04, {0.3, 0.0});
        s.above("negative_controls.level_modulation_residual", slag::lagrangian_residual(tilted, field, grid),
                cfg.tol.negative_control);
        const slag::AnsatzSLag wiggle = slag::build_slag(chart, line, 0.04, {0.0, 0.05});
        s.above("negative_controls.base_wiggle_phase_gradient", slag::phase_profile(wiggle, field, grid).max_gradient,
                cfg.tol.negative_control);
    });
    s.section("generators", [&] {
        const auto [l1, l2] = slag::h2_generators(chart);
        const slag::SLagPeriods p1 = slag::periods(l1, field, grid);
        const slag::SLagPeriods p2 = slag::periods(l2, field, grid);
        s.below("generators.omega_periods", std::max(std::abs(p1.omega), std::abs(p2.omega)), cfg.tol.lagrangian);
        const double independence =
            std::abs(std::imag(p1.Omega * std::conj(p2.Omega))) / (std::abs(p1.Omega) * std::abs(p2.Omega));
        s.above("generators.Omega_independence", independence, 1e-6);
        s.info("generators", {{"L", {p1.Omega.real(), p1.Omega.imag()}}, {"L_prime", {p2.Omega.real(), p2.Omega.imag()}}});
    });
    return s.finish();
}

json run_monodromy(const RunConfig&)
{
    Suite s("monodromy");
    for (int b = 1; b <= 9; ++b) {
        const std::string tag = "b" + std::to_string(b);
        s.section(tag, [&] {
            const numerics::IntMatrix m = semiflat::monodromy(b);
            const json got = lattice::to_json(m);
            s.equal(tag + ".matrix", got, json::array({json::array({1, b}), json::array({0, 1})}));
            s.table("monodromy").push_back({{"b", b}, {"matrix", got}});
        });
    }
    bool rejected = false;
    try {
        semiflat::monodromy(10);
    } catch (const Error& e) {
        rejected = e.kind() == ErrorKind::UnsupportedDegree;
    }
    s.truth("b10_rejected", rejected);
    return s.finish();
}

json run_lattice(const RunConfig& cfg)
{
    using namespace lattice;
    Suite s("lattice");
    const IntLattice L = standard_res_lattice();

    s.section("standard", [&] {
        s.equal("standard.F_squared", to_json(L.square(fiber_class())), 0);
        s.equal("standard.det_gram", to_json(L.gram.determinant()), -1);
        const Vec a = {0, 1, -1, 0, 0, 0, 0, 0, 0, 0};
        const Vec b = {0, 0, 1, -1, 0, 0, 0, 0, 0, 0};
        const Vec expected = {0, 1, 0, -1, 0, 0, 0, 0, 0, 0};
        s.truth("standard.reflect_example", reflect(a, b, L) == expected);
    });

    s.section("randomized", [&] {
        std::vector<MarkedLattice> fixtures;
        for (int b = 1; b <= 7; ++b) fixtures.push_back(ib_fixture(b));
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<std::size_t> pick_fixture(0, fixtures.size() - 1);
        std::uniform_int_distribution<int> entry(-5, 5);
        std::size_t involution = 0, pairing = 0, fixing = 0, isometry = 0;
        for (std::size_t k = 0; k < cfg.lattice_cases; ++k) {
            const MarkedLattice& m = fixtures[pick_fixture(rng)];
            std::uniform_int_distribution<std::size_t> pick_root(0, m.nodal.size() - 1);
            const Vec& alpha = m.nodal[pick_root(rng)];
            Vec beta(10), gamma(10);
            for (auto& x : beta) x = entry(rng);
            for (auto& x : gamma) x = entry(rng);
            const Vec sb = reflect(alpha, beta, L);
            if (reflect(alpha, sb, L) != beta) ++involution;
            if (L.pair(sb, reflect(alpha, gamma, L)) != L.pair(beta, gamma)) ++pairing;
            for (const auto& d : m.components)
                if (reflect(alpha, d, L) != d) {
                    ++fixing;
                    break;
                }
            if (k % 10 == 0 && pairing_witness(reflection_matrix(alpha, L), L, L)) ++isometry;
        }
        s.info("randomized.cases", cfg.lattice_cases);
        s.equal("randomized.involution_failures", involution, 0);
        s.equal("randomized.pairing_failures", pairing, 0);
        s.equal("randomized.component_fixing_failures", fixing, 0);
        s.equal("randomized.weyl_matrix_isometry_failures", isometry, 0);
    });

    s.section("cpp", [&] {
        const MarkedLattice m = ib_fixture(1);
        const Vec h = unit(10, 0), e1 = unit(10, 1);
        Vec h2e1 = h;
        h2e1[1] = -2;
        s.truth("cpp.h_member", cpp_membership(h, m).member);
        s.truth("cpp.e1_not_member", !cpp_membership(e1, m).member);
        s.truth("cpp.h_minus_2e1_not_member", !cpp_membership(h2e1, m).member);
    });

    auto chamber_block = [&](const std::string& tag, const std::vector<Vec>& delta, std::size_t chambers,
                             std::size_t order) {
        s.section(tag, [&] {
            const WeylEnumeration group = enumerate_weyl(delta, L, cfg.word_bound);
            s.equal(tag + ".group_order", group.elements.size(), order);
            s.truth(tag + ".group_closed", group.closed);
            const std::vector<Vec> roots = root_orbit(delta, group);
            std::mt19937_64 rng(cfg.seed);
            std::uniform_int_distribution<int> num(-40, 40);
            std::map<std::vector<int>, RatVec> reps;
            for (int k = 0; k < 4000; ++k) {
                RatVec x(10);
                for (auto& v : x) v = Rat(num(rng), 7);
                x[0] = 20;
                try {
                    reps.emplace(chamber_signature(x, roots, L), x);
                } catch (const Error&) {
                }
            }
            s.equal(tag + ".chambers_realized", reps.size(), chambers);
            std::size_t non_unique = 0, misses = 0;
            for (const auto& [sx, x] : reps)
                for (const auto& [sy, y] : reps) {
                    const TransportResult t = chamber_transport(x, y, delta, L, cfg.word_bound);
                    if (!t.element) ++misses;
                    if (!t.unique) ++non_unique;
                }
            s.equal(tag + ".transport_misses", misses, 0);
            s.equal(tag + ".transport_non_unique", non_unique, 0);
        });
    };
    chamber_block("a2", {{0, 1, -1, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 1, -1, 0, 0, 0, 0, 0, 0}}, 6, 6);
    chamber_block("a1xa1", {{0, 1, -1, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 1, -1, 0, 0, 0, 0, 0}}, 4, 4);

    s.section("les", [&] {
        std::size_t mismatches = 0, leaks = 0;
        for (int b = 1; b <= 9; ++b) {
            const MarkedLattice m = ib_fixture(b);
            const Quotient q = les_restriction(m);
            numerics::IntMatrix a(10, m.components.size());
            for (std::size_t c = 0; c < m.components.size(); ++c)
                for (std::size_t r = 0; r < 10; ++r) a(r, c) = m.components[c][r];
            if (q.free_rank != 10 - a.rank() || q.free_rank != std::size_t(10 - b)) ++mismatches;
            for (const auto& d : m.components)
                for (const auto& x : q.projection * d)
                    if (x != 0) ++leaks;
            s.table("les").push_back({{"b", b}, {"quotient_rank", q.free_rank}, {"torsion", q.torsion.size()}});
        }
        s.equal("les.rank_mismatches", mismatches, 0);
        s.equal("les.projection_kills_span", leaks, 0);
        const MarkedLattice m = ib_fixture(1);
        const Quotient q = les_restriction(m);
        Vec hF = unit(10, 0);
        for (std::size_t i = 0; i < 10; ++i) hF[i] += m.fiber[i];
        Vec he1 = unit(10, 0);
        he1[1] = 1;
        s.truth("les.same_restriction_shift_by_F", same_restriction(q, unit(10, 0), hF));
        s.truth("les.different_restriction_e1", !same_restriction(q, unit(10, 0), he1));
    });

    s.section("centralizer", [&] {
        std::size_t bad = 0;
        for (long b = 1; b <= 9; ++b)
            for (const auto& m : unipotent_centralizer(b, 3)) {
                const bool upper = m(1, 0) == 0 && m(0, 0) == m(1, 1) && (m(0, 0) == 1 || m(0, 0) == -1);
                if (!upper) ++bad;
            }
        s.equal("centralizer.non_unipotent_elements", bad, 0);
    });

    if (!cfg.fixtures.empty()) {
        s.section("fixtures", [&] {
            const FixtureDocument doc = load_fixture_file(cfg.fixtures);
            for (const auto& m : doc.marked) s.equal("fixtures." + m.name + ".issues", validate(m).size(), 0);
            s.info("fixtures.marked", doc.marked.size());
        });
    }
    return s.finish();
}

json run_torelli(const RunConfig& cfg)
{
    using namespace lattice;
    Suite s("torelli");
    s.section("roundtrip", [&] {
        std::mt19937_64 rng(cfg.seed);
        std::size_t recovered = 0;
        for (std::size_t k = 0; k < cfg.torelli_cases; ++k) {
            const TorelliCase c = random_torelli_case(rng);
            const TorelliVerdict v = torelli_match(c.source, c.target, c.mu, cfg.word_bound);
            if (v.failing_condition.empty() && v.g && v.unique && v.g->matrix == c.planted) ++recovered;
        }
        s.equal("roundtrip.recovered", recovered, cfg.torelli_cases);
    });
    s.section("identity", [&] {
        const MarkedLattice m = ib_fixture(3);
        const TorelliVerdict v = torelli_match(m, m, numerics::IntMatrix::identity(10), cfg.word_bound);
        s.truth("identity.all_conditions", v.failing_condition.empty());
        s.truth("identity.g_is_identity", v.g && v.g->word.empty() && v.unique);
    });
    s.section("mismatch", [&] {
        std::mt19937_64 rng(cfg.seed + 1);
        std::size_t period_ok = 0, marking_ok = 0;
        const std::size_t n = 20;
        for (std::size_t k = 0; k < n; ++k) {
            const TorelliCase pc = period_mismatch_case(rng);
            const TorelliVerdict pv = torelli_match(pc.source, pc.target, pc.mu, cfg.word_bound);
            if (pv.failing_condition == "condition3" && !pv.g) ++period_ok;
            const TorelliCase mc = marking_mismatch_case(rng);
            const TorelliVerdict mv = torelli_match(mc.source, mc.target, mc.mu, cfg.word_bound);
            if (mv.failing_condition == "condition1" && !mv.g) ++marking_ok;
        }
        s.equal("mismatch.period_rejected_condition3", period_ok, n);
        s.equal("mismatch.marking_rejected_condition1", marking_ok, n);

        const MarkedLattice m = ib_fixture(2);
        numerics::IntMatrix twice = numerics::IntMatrix::identity(10);
        twice(0, 0) = 2;
        const TorelliVerdict v = torelli_match(m, m, twice, cfg.word_bound);
        s.truth("mismatch.non_isometry_witness", v.failing_condition == "pairing" && v.witness.has_value());
    });
    if (!cfg.fixtures.empty()) {
        s.section("fixtures", [&] {
            const FixtureDocument doc = load_fixture_file(cfg.fixtures);
            for (const auto& f : doc.torelli) {
                const TorelliVerdict v = torelli_match(f.source, f.target, f.mu, f.word_bound);
                s.equal("fixtures." + f.name + ".failing_condition", v.failing_condition, f.expected_failure);
                if (f.expected_word)
                    s.truth("fixtures." + f.name + ".word", v.g && v.unique && v.g->word == *f.expected_word);
            }
        });
    }
    return s.finish();
}

json run_one(const std::string& name, const RunConfig& cfg)
{
    try {
        if (name == "calabi") return run_calabi(cfg);
        if (name == "semiflat") return run_semiflat(cfg);
        if (name == "rotation") return run_rotation(cfg);
        if (name == "slag") return run_slag(cfg);
        if (name == "monodromy") return run_monodromy(cfg);
        if (name == "lattice") return run_lattice(cfg);
        if (name == "torelli") return run_torelli(cfg);
        throw Error(ErrorKind::InvalidArgument, "unknown suite " + name);
    } catch (const std::exception& e) {
        return json{{"name", name},
                    {"passed", false},
                    {"error", e.what()},
                    {"checks", json::array()},
                    {"info", json::object()},
                    {"tables", json::object()}};
    }
}

json ledger(const RunConfig& cfg)
{
    return json{
        {"exponent", cfg.exponent},
        {"exponent_scope", "the configured exponent drives the calabi suite; rotation and slag use p = 3/2"},
        {"fibre_degree", "k := b in the semi-flat harmonic coefficient"},
        {"kappa", "Omega_sf = kappa/u dv ^ du, kappa fixed by a unit period over the bad cycle {|u| = r, v real}"},
        {"f_phase", "f = -i |f| so the torus over the line (1, 0) has phase 0"},
        {"level", "the slag level is a value of N = |xi|^2_h, distinct from the fibre size eps"},
        {"triple_constants", "2 omega^2 / (Omega ^ conj Omega) is measured per family, not assumed to be 1"},
        {"rotation", "rotate normalizes Omega to unit triple constant before exchanging forms"},
        {"reflection", "s_alpha(beta) = beta + <alpha, beta> alpha"},
        {"nodal_and_exceptional_sets", "verdicts are relative to the supplied finite sets"},
    };
}

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string cell(const json& v)
{
    if (v.is_number_float()) return num(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

json run_suites(const RunConfig& config, const std::vector<std::string>& suites)
{
    std::vector<std::string> selected;
    for (const auto& name : suite_names())
        if (std::find(suites.begin(), suites.end(), name) != suites.end()) selected.push_back(name);
    for (const auto& name : suites)
        if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
            throw Error(ErrorKind::InvalidArgument, "unknown suite " + name);

    const std::vector<json> results =
        parallel_map<json>(selected.size(), [&](std::size_t i) { return run_one(selected[i], config); });

    json report;
    report["schema_version"] = kSchemaVersion;
    report["tool"] = {{"name", "instanton-lab"}, {"version", kToolVersion}};
    report["timestamp"] = config.timestamp;
    report["config"] = config_to_json(config);
    report["ledger"] = ledger(config);
    json suites_json = json::object();
    bool all = !results.empty();
    for (const auto& r : results) {
        suites_json[r.at("name").get<std::string>()] = r;
        all = all && r.at("passed").get<bool>();
    }
    report["suites"] = suites_json;
    report["passed"] = all;
    return report;
}

bool report_passed(const json& report) { return report.value("passed", false); }

void emit_json(const json& report, std::ostream& out) { out << report.dump(2) << '\n'; }

std::vector<std::pair<std::string, std::string>> csv_tables(const json& report)
{
    std::ostringstream decay, periods, mono, summary;
    decay << "r,|Rm|,circle_length\n";
    periods << "suite,cycle,form,parameter,value\n";
    mono << "b,m11,m12,m21,m22\n";
    summary << "suite,check,value,relation,tolerance,passed\n";

    for (const auto& [name, suite] : report.at("suites").items()) {
        const json& tables = suite.at("tables");
        if (tables.contains("decay"))
            for (const auto& row : tables.at("decay"))
                decay << num(row.at("r")) << ',' << num(row.at("rm")) << ',' << num(row.at("circle_length")) << '\n';
        if (tables.contains("periods")) {
            for (const auto& row : tables.at("periods")) {
                if (name == "semiflat") {
                    periods << name << ',' << row.at("family").get<std::string>() << ':'
                            << row.at("cycle").get<std::string>() << ',' << row.at("form").get<std::string>()
                            << ",radius=" << num(row.at("radius")) << ',' << num(row.at("value")) << '\n';
                } else {
                    const std::string cls = "L(" + std::to_string(row.at("line")[0].get<int>()) + ";" +
                                            std::to_string(row.at("line")[1].get<int>()) + ")";
                    const std::string level = "level=" + num(row.at("level"));
                    for (const char* form : {"omega", "re_Omega", "im_Omega"})
                        periods << name << ',' << cls << ',' << form << ',' << level << ',' << num(row.at(form))
                                << '\n';
                }
            }
        }
        if (tables.contains("monodromy"))
            for (const auto& row : tables.at("monodromy")) {
                const json& m = row.at("matrix");
                mono << row.at("b").get<int>() << ',' << cell(m[0][0]) << ',' << cell(m[0][1]) << ','
                     << cell(m[1][0]) << ',' << cell(m[1][1]) << '\n';
            }
        for (const auto& c : suite.at("checks"))
            summary << name << ',' << csv_quote(c.at("name").get<std::string>()) << ',' << csv_quote(cell(c.at("value")))
                    << ',' << c.at("relation").get<std::string>() << ',' << csv_quote(cell(c.at("tolerance"))) << ','
                    << (c.at("passed").get<bool>() ? "true" : "false") << '\n';
        if (suite.contains("error"))
            summary << name << ",suite_error," << csv_quote(suite.at("error").get<std::string>()) << ",,,false\n";
    }
    return {{"decay.csv", decay.str()},
            {"periods.csv", periods.str()},
            {"monodromy.csv", mono.str()},
            {"summary.csv", summary.str()}};
}

}  // namespace instanton::report
