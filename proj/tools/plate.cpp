// Command-line front end: solve, converge, oracle, preset, validate-config.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plate/config.hpp"
#include "plate/run.hpp"

namespace {

struct Overrides {
    std::string config_path;
    std::string out_dir;
    int quad_order = 0;
    int panels = 0;
    std::vector<std::size_t> track;
    int grid = 0;
    bool timings = false;
};

plate::RunConfig load(const Overrides& o) {
    plate::RunConfig cfg;
    if (!o.config_path.empty()) {
        std::ifstream f(o.config_path);
        if (!f) throw std::runtime_error("cannot read " + o.config_path);
        std::stringstream ss;
        ss << f.rdbuf();
        cfg = plate::parse_config(ss.str());
    }
    return cfg;
}

void apply(plate::RunConfig& cfg, const Overrides& o) {
    if (o.quad_order > 0) cfg.quad.order = o.quad_order;
    if (o.panels > 0) {
        cfg.quad.panels = o.panels;
        cfg.quad.angular_panels = o.panels;
    }
    if (!o.track.empty()) cfg.track = o.track;
    if (o.grid > 0) cfg.grid = o.grid;
    plate::validate_config(cfg);
}

plate::RunOptions options(const Overrides& o) {
    plate::RunOptions opts;
    if (!o.out_dir.empty()) opts.out_dir = o.out_dir;
    opts.timings = o.timings;
    return opts;
}

void print_solve(const plate::SolveReport& rep, const plate::Preset* preset) {
    std::cout << rep.table.to_text();
    std::cout << "basis size " << rep.outcome.basis.size() << ", quadrature points " << rep.outcome.rule.size()
              << ", max residual " << plate::render_12(rep.outcome.result.max_residual()) << "\n";
    if (preset && !preset->reference.empty()) {
        plate::ResultTable cmp;
        cmp.title = "Reference comparison";
        cmp.columns = {"j", "computed", "reference", "rel_dev"};
        const auto& ref = preset->reference.front();
        for (std::size_t j = 0; j < ref.size() && j < rep.outcome.result.size(); ++j) {
            const double t = rep.outcome.result.taus[j];
            cmp.rows.push_back({std::to_string(j + 1), {t, ref[j], std::abs(t - ref[j]) / ref[j]}});
        }
        std::cout << "\n" << cmp.to_text();
    }
}

void print_converge(const plate::ConvergeReport& rep, const plate::Preset* preset) {
    std::cout << rep.eigenvalues.to_text() << "\n" << rep.errors.to_text() << "\n";
    const auto& s = rep.study;
    for (std::size_t t = 0; t < s.tracked.size(); ++t) {
        std::cout << "tau_" << s.tracked[t] << ": ";
        if (s.rates[t].saturated) std::cout << "saturated (relative change below 1e-10)\n";
        else std::cout << "fitted rate p = " << plate::render_12(s.rates[t].p) << "\n";
    }
    if (preset && !preset->reference.empty()) {
        double worst = 0.0;
        for (std::size_t i = 0; i < preset->reference.size() && i < s.ns.size(); ++i) {
            for (std::size_t t = 0; t < preset->reference[i].size() && t < s.tracked.size(); ++t) {
                const double ref = preset->reference[i][t];
                worst = std::max(worst, std::abs(s.taus[i][s.tracked[t] - 1] - ref) / ref);
            }
        }
        std::cout << "max relative deviation from reference: " << plate::render_12(worst) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral-Galerkin eigenvalues of simply supported plates"};
    app.require_subcommand(1);
    Overrides o;

    auto add_common = [&o](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "Configuration file")->check(CLI::ExistingFile);
        sub->add_option("--out", o.out_dir, "Output directory");
        sub->add_option("--quad-order", o.quad_order, "Gauss points per panel")->check(CLI::Range(2, 64));
        sub->add_option("--panels", o.panels, "Square panels per axis / disk angular panels")
            ->check(CLI::Range(1, 64));
        sub->add_option("--track", o.track, "Tracked eigenvalue indices (1-based)")->delimiter(',');
        sub->add_option("--grid", o.grid, "Grid nodes per direction")->check(CLI::Range(2, 2001));
        sub->add_flag("--timings", o.timings, "Record wall-clock time in manifest.json");
    };

    auto* solve = app.add_subcommand("solve", "Assemble and solve one discrete eigenproblem");
    add_common(solve);
    auto* converge = app.add_subcommand("converge", "Convergence study over basis.sizes");
    add_common(converge);

    auto* oracle = app.add_subcommand("oracle", "Exact constant-coefficient spectrum");
    std::string oracle_domain = "disk";
    double alpha0 = 1.0, beta0 = 1.0;
    int count = 10;
    oracle->add_option("--domain", oracle_domain, "disk or square")->check(CLI::IsMember({"disk", "square"}));
    oracle->add_option("--alpha", alpha0, "Constant alpha")->check(CLI::PositiveNumber);
    oracle->add_option("--beta", beta0, "Constant beta")->check(CLI::PositiveNumber);
    oracle->add_option("--count", count, "Number of eigenvalues")->check(CLI::Range(1, 200));
    oracle->add_option("--out", o.out_dir, "Output directory");

    auto* preset = app.add_subcommand("preset", "Run a named reproduction preset");
    std::string preset_name;
    preset->add_option("name", preset_name, "Preset name");
    add_common(preset);
    preset->add_flag_callback(
        "--list",
        [] {
            for (const auto& p : plate::presets()) std::cout << p.name << "  " << p.description << "\n";
            std::exit(0);
        },
        "List presets and exit");

    auto* check = app.add_subcommand("validate-config", "Parse and validate a configuration file");
    check->add_option("--config", o.config_path, "Configuration file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            auto cfg = load(o);
            apply(cfg, o);
            print_solve(plate::run_solve(cfg, options(o)), nullptr);
        } else if (*converge) {
            auto cfg = load(o);
            apply(cfg, o);
            print_converge(plate::run_convergence(cfg, options(o)), nullptr);
        } else if (*oracle) {
            const auto domain = plate::parse_domain(oracle_domain);
            const auto table = plate::oracle_table(domain, alpha0, beta0, count);
            std::cout << table.to_text();
            if (!o.out_dir.empty()) {
                std::filesystem::create_directories(o.out_dir);
                std::ofstream(std::filesystem::path(o.out_dir) / "eigenvalues.csv") << table.to_csv();
            }
        } else if (*preset) {
            if (preset_name.empty()) throw std::invalid_argument("preset: name required (see --list)");
            const auto& p = plate::find_preset(preset_name);
            auto cfg = p.config;
            apply(cfg, o);
            std::cout << p.name << ": " << p.description << "\n\n";
            if (p.kind == plate::Preset::Kind::solve) print_solve(plate::run_solve(cfg, options(o)), &p);
            else print_converge(plate::run_convergence(cfg, options(o)), &p);
        } else if (*check) {
            const auto cfg = load(o);
            std::cout << "ok\n" << plate::serialize_config(cfg);
        }
    } catch (const plate::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
