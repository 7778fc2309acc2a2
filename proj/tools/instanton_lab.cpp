// instanton-lab: runs verification suites and writes a report.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "instanton/errors.hpp"
#include "instanton/report.hpp"

namespace {

namespace fs = std::filesystem;
using instanton::Error;
using instanton::ErrorKind;
namespace report = instanton::report;

constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct Options {
    std::string config;
    std::string out;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, Options& opt)
{
    sub->add_option("--config", opt.config, "config file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "output file (json) or directory (csv)");
    sub->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", opt.seed, "overrides the config seed");
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

void emit(const nlohmann::json& doc, const Options& opt)
{
    if (opt.format == "json") {
        std::ostringstream text;
        report::emit_json(doc, text);
        if (opt.out.empty())
            std::cout << text.str();
        else
            write_file(opt.out, text.str());
        return;
    }
    const auto tables = report::csv_tables(doc);
    if (opt.out.empty()) {
        for (const auto& [name, text] : tables) std::cout << "# table: " << name << '\n' << text;
        return;
    }
    std::error_code ec;
    fs::create_directories(opt.out, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + opt.out + ": " + ec.message());
    for (const auto& [name, text] : tables) write_file(fs::path(opt.out) / name, text);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerical and exact verification of ALH*-type gravitational instanton models"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(report::kToolVersion));

    struct Entry {
        const char* command;
        const char* help;
        std::vector<std::string> suites;
    };
    const std::vector<Entry> entries{
        {"verify-calabi", "Calabi ansatz triple, curvature and decay", {"calabi"}},
        {"verify-semiflat", "semi-flat families, periods and fibration criterion", {"semiflat"}},
        {"verify-rotation", "hyperKahler rotation and the parameter map", {"rotation"}},
        {"slag-check", "special Lagrangian tori and their periods", {"slag"}},
        {"monodromy", "monodromy of the fibre lattice", {"monodromy"}},
        {"lattice", "reflections, chambers and restriction sequence", {"lattice"}},
        {"torelli", "Torelli matching round trips and fixtures", {"torelli"}},
        {"all", "every suite", report::suite_names()},
    };

    Options opt;
    std::vector<std::string> selected;
    for (const auto& e : entries) {
        CLI::App* sub = app.add_subcommand(e.command, e.help);
        add_common(sub, opt);
        sub->callback([&selected, suites = e.suites] { selected = suites; });
    }

    CLI11_PARSE(app, argc, argv);

    report::RunConfig config;
    try {
        config = report::load_config(opt.config);
        if (opt.seed) config.seed = *opt.seed;
    } catch (const Error& e) {
        std::cerr << "instanton-lab: " << e.what() << '\n';
        return e.kind() == ErrorKind::Io ? kExitIo : kExitConfig;
    }

    try {
        const nlohmann::json doc = report::run_suites(config, selected);
        emit(doc, opt);
        if (!report::report_passed(doc)) {
            for (const auto& [name, suite] : doc.at("suites").items())
                if (!suite.at("passed").get<bool>()) std::cerr << "instanton-lab: suite " << name << " failed\n";
            return kExitFailed;
        }
    } catch (const Error& e) {
        std::cerr << "instanton-lab: " << e.what() << '\n';
        return e.kind() == ErrorKind::Io ? kExitIo : kExitFailed;
    }
    return 0;
}
