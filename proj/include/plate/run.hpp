#pragma once

// Drivers behind the command-line tool: single solves, convergence studies,
// oracle spectra and the reproduction presets, with their file outputs.
//
// Files written into the output directory:
//   eigenvalues.csv    eigenvalue table (per N for convergence runs)
//   convergence.csv    R(i) and pairwise rates per tracked index
//   loglog.dat         log N against log R plus a slope -4 reference line
//   eigfun_<j>.dat     sampled eigenfunction u_j on a uniform grid
//   manifest.json      config echo, sizes, residuals, fitted rates

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "plate/analysis.hpp"
#include "plate/config.hpp"
#include "plate/gevp.hpp"
#include "plate/oracle.hpp"
#include "plate/problem.hpp"

namespace plate {

inline constexpr const char* kVersion = "1.0.0";

/// Shortest decimal string that parses back to the same double.
inline std::string render_exact(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

/// Fixed 12 significant digits for human-readable tables.
inline std::string render_12(double v) {
    if (std::isnan(v)) return "-";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct ResultTable {
    std::string title;
    std::vector<std::string> columns;  // columns[0] labels the row label
    struct Row {
        std::string label;
        std::vector<double> values;  // NaN renders as an empty cell
    };
    std::vector<Row> rows;

    std::string to_csv() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
        os << "\n";
        for (const auto& r : rows) {
            os << r.label;
            for (double v : r.values) os << "," << (std::isnan(v) ? "" : render_exact(v));
            os << "\n";
        }
        return os.str();
    }

    std::string to_text() const {
        std::vector<std::size_t> width(columns.size(), 0);
        for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
        for (const auto& r : rows) {
            width[0] = std::max(width[0], r.label.size());
            for (std::size_t k = 0; k < r.values.size() && k + 1 < width.size(); ++k)
                width[k + 1] = std::max(width[k + 1], render_12(r.values[k]).size());
        }
        std::ostringstream os;
        if (!title.empty()) os << title << "\n";
        auto cell = [&](const std::string& s, std::size_t w) {
            os << s << std::string(w > s.size() ? w - s.size() : 0, ' ') << "  ";
        };
        for (std::size_t i = 0; i < columns.size(); ++i) cell(columns[i], width[i]);
        os << "\n";
        for (const auto& r : rows) {
            cell(r.label, width[0]);
            for (std::size_t k = 0; k < r.values.size() && k + 1 < width.size(); ++k)
                cell(render_12(r.values[k]), width[k + 1]);
            os << "\n";
        }
        return os.str();
    }
};

struct RunOptions {
    std::optional<std::filesystem::path> out_dir;
    bool timings = false;  // wall-clock timings break byte-identical manifests
};

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << content;
}

inline nlohmann::ordered_json manifest_base(const std::string& command, const RunConfig& cfg) {
    nlohmann::ordered_json m;
    m["tool"] = "plate";
    m["version"] = kVersion;
    m["command"] = command;
    m["config"] = serialize_config(cfg);
    return m;
}

// Uniform grid over the domain: [0,1]^2 for the square; the part of
// [-1,1]^2 inside the unit disk for the disk.
inline std::vector<Point> sample_grid(Domain domain, int nodes) {
    std::vector<Point> pts;
    const double h = 1.0 / (nodes - 1);
    for (int i = 0; i < nodes; ++i) {
        for (int k = 0; k < nodes; ++k) {
            if (domain == Domain::square) {
                pts.push_back(Point::cartesian(i * h, k * h));
            } else {
                const double x = -1.0 + 2.0 * i * h;
                const double y = -1.0 + 2.0 * k * h;
                if (std::hypot(x, y) <= 1.0 + 1e-12) {
                    auto p = Point::cartesian(x, y);
                    p.r = std::min(p.r, 1.0);
                    pts.push_back(p);
                }
            }
        }
    }
    return pts;
}

inline std::string grid_dump(std::span<const Point> pts, std::span<const double> u) {
    std::ostringstream os;
    os << "x1,x2,u\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        os << render_exact(pts[i].x1) << "," << render_exact(pts[i].x2) << "," << render_exact(u[i]) << "\n";
    }
    return os.str();
}

}  // namespace detail

struct SolveReport {
    ResultTable table;
    SolveOutcome outcome;
    std::optional<std::vector<double>> exact;
    std::vector<std::string> files;
    nlohmann::ordered_json manifest;
};

/// Assemble and solve once; writes eigenvalues.csv, eigfun_<j>.dat and
/// manifest.json when an output directory is given.
inline SolveReport run_solve(const RunConfig& cfg, const RunOptions& opts = {}) {
    validate_config(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const Problem problem = to_problem(cfg);
    SolveReport rep;
    rep.outcome = solve_problem(problem);
    const auto& res = rep.outcome.result;
    const std::size_t rows = std::min(cfg.eigenvalues, res.size());

    if (problem.alpha.is_constant() && problem.beta.is_constant()) {
        rep.exact = constant_coefficient_taus(problem, rows);
    }
    rep.table.title = "Plate eigenvalues (" + std::string(to_string(cfg.domain)) + ", N=" +
                      std::to_string(rep.outcome.basis.size()) + ")";
    rep.table.columns = {"j", "tau", "residual"};
    if (rep.exact) {
        rep.table.columns.push_back("exact");
        rep.table.columns.push_back("rel_error");
    }
    for (std::size_t j = 0; j < rows; ++j) {
        ResultTable::Row row{std::to_string(j + 1), {res.taus[j], res.residuals[j]}};
        if (rep.exact) {
            const double ex = (*rep.exact)[j];
            row.values.push_back(ex);
            row.values.push_back(std::abs(res.taus[j] - ex) / ex);
        }
        rep.table.rows.push_back(std::move(row));
    }

    auto& m = rep.manifest;
    m = detail::manifest_base("solve", cfg);
    m["domain"] = std::string(to_string(cfg.domain));
    m["basis_size"] = rep.outcome.basis.size();
    m["quadrature_points"] = rep.outcome.rule.size();
    m["max_residual"] = res.max_residual();
    m["constant_coefficients"] = rep.exact.has_value();

    if (opts.out_dir) {
        std::filesystem::create_directories(*opts.out_dir);
        detail::write_file(*opts.out_dir / "eigenvalues.csv", rep.table.to_csv());
        rep.files.push_back("eigenvalues.csv");
        if (!cfg.eigenfunctions.empty()) {
            const auto pts = detail::sample_grid(cfg.domain, cfg.grid);
            for (auto j : cfg.eigenfunctions) {
                const auto u = eigenfunction_field(res, rep.outcome.basis, j, pts);
                const std::string name = "eigfun_" + std::to_string(j) + ".dat";
                detail::write_file(*opts.out_dir / name, detail::grid_dump(pts, u));
                rep.files.push_back(name);
            }
        }
    }
    rep.files.push_back("manifest.json");
    m["files"] = rep.files;
    if (opts.timings) {
        m["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    if (opts.out_dir) detail::write_file(*opts.out_dir / "manifest.json", m.dump(2) + "\n");
    return rep;
}

struct ConvergeReport {
    ConvergenceReport study;
    ResultTable eigenvalues;
    ResultTable errors;
    std::vector<double> loglog_slopes;  // fitted slope per tracked index (= -p)
    std::vector<std::string> files;
    nlohmann::ordered_json manifest;
};

/// Runs a convergence study over cfg.sizes; writes eigenvalues.csv,
/// convergence.csv, loglog.dat and manifest.json.
inline ConvergeReport run_convergence(const RunConfig& cfg, const RunOptions& opts = {}) {
    validate_config(cfg);
    if (cfg.sizes.size() < 3) throw config_error("basis.sizes: a convergence study needs at least three sizes");
    const auto t0 = std::chrono::steady_clock::now();
    const Problem problem = to_problem(cfg);
    ConvergeReport rep;
    rep.study = convergence_study(problem, cfg.sizes, cfg.track);
    const auto& s = rep.study;

    rep.eigenvalues.title = "Plate eigenvalues per basis size";
    rep.eigenvalues.columns = {"N"};
    for (auto j : s.tracked) rep.eigenvalues.columns.push_back("tau_" + std::to_string(j));
    for (std::size_t i = 0; i < s.ns.size(); ++i) {
        ResultTable::Row row{std::to_string(s.ns[i]), {}};
        for (auto j : s.tracked) row.values.push_back(s.taus[i][j - 1]);
        rep.eigenvalues.rows.push_back(std::move(row));
    }

    rep.errors.title = "Relative error R(i) and pairwise rate p";
    rep.errors.columns = {"N"};
    for (auto j : s.tracked) rep.errors.columns.push_back("R_" + std::to_string(j));
    for (auto j : s.tracked) rep.errors.columns.push_back("p_" + std::to_string(j));
    if (s.exact) {
        for (auto j : s.tracked) rep.errors.columns.push_back("oracle_err_" + std::to_string(j));
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < s.ns.size(); ++i) {
        ResultTable::Row row{std::to_string(s.ns[i]), {}};
        for (std::size_t t = 0; t < s.tracked.size(); ++t)
            row.values.push_back(i < s.rel_errors[t].size() ? s.rel_errors[t][i] : nan);
        for (std::size_t t = 0; t < s.tracked.size(); ++t)
            row.values.push_back(i >= 1 && i - 1 < s.pairwise_rates[t].size() ? s.pairwise_rates[t][i - 1] : nan);
        if (s.exact) {
            for (std::size_t t = 0; t < s.tracked.size(); ++t) row.values.push_back(s.oracle_errors[t][i]);
        }
        rep.errors.rows.push_back(std::move(row));
    }

    // log-log data: one column per tracked index plus the slope -4 guide
    // anchored at the first point of the first tracked series.
    std::ostringstream ll;
    ll << "# log(N)";
    for (auto j : s.tracked) ll << " log(R_" << j << ")";
    ll << " reference_slope_-4\n";
    for (std::size_t t = 0; t < s.tracked.size(); ++t) {
        const auto& fit = s.rates[t];
        rep.loglog_slopes.push_back(fit.saturated ? nan : -fit.p);
        ll << "# fitted slope for tau_" << s.tracked[t] << ": "
           << (fit.saturated ? std::string("saturated") : render_exact(-fit.p)) << "\n";
    }
    const std::size_t npts = s.ns.size() - 1;
    const double anchor_x = std::log(static_cast<double>(s.ns[0]));
    const double anchor_y = s.rel_errors[0][0] > 0.0 ? std::log(s.rel_errors[0][0]) : 0.0;
    for (std::size_t i = 0; i < npts; ++i) {
        const double x = std::log(static_cast<double>(s.ns[i]));
        ll << render_exact(x);
        for (std::size_t t = 0; t < s.tracked.size(); ++t) {
            const double r = s.rel_errors[t][i];
            ll << " " << (r > 0.0 ? render_exact(std::log(r)) : std::string("nan"));
        }
        ll << " " << render_exact(anchor_y - 4.0 * (x - anchor_x)) << "\n";
    }

    auto& m = rep.manifest;
    m = detail::manifest_base("converge", cfg);
    m["domain"] = std::string(to_string(cfg.domain));
    m["sizes"] = s.ns;
    m["max_residual"] = *std::max_element(s.max_residual.begin(), s.max_residual.end());
    nlohmann::ordered_json rates = nlohmann::ordered_json::array();
    for (std::size_t t = 0; t < s.tracked.size(); ++t) {
        nlohmann::ordered_json r;
        r["index"] = s.tracked[t];
        r["saturated"] = s.rates[t].saturated;
        if (!s.rates[t].saturated) r["p"] = s.rates[t].p;
        r["points"] = s.rates[t].points;
        rates.push_back(r);
    }
    m["rates"] = rates;

    rep.files = {"eigenvalues.csv", "convergence.csv", "loglog.dat", "manifest.json"};
    m["files"] = rep.files;
    if (opts.timings) {
        m["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    if (opts.out_dir) {
        std::filesystem::create_directories(*opts.out_dir);
        detail::write_file(*opts.out_dir / "eigenvalues.csv", rep.eigenvalues.to_csv());
        detail::write_file(*opts.out_dir / "convergence.csv", rep.errors.to_csv());
        detail::write_file(*opts.out_dir / "loglog.dat", ll.str());
        detail::write_file(*opts.out_dir / "manifest.json", m.dump(2) + "\n");
    }
    return rep;
}

/// Closed-form constant-coefficient spectrum as a table. The square
/// spectrum is labelled as the derived companion of the disk formula.
inline ResultTable oracle_table(Domain domain, double alpha0, double beta0, int count) {
    const auto spec = domain == Domain::disk ? exact_disk(alpha0, beta0, count) : exact_square(alpha0, beta0, count);
    ResultTable t;
    t.title = domain == Domain::disk ? "Exact disk spectrum: J_n((tau*beta/alpha)^(1/4)) = 0"
                                     : "Exact square spectrum (derived): tau = (alpha/beta) pi^4 (n^2+m^2)^2";
    t.columns = {"j", "tau", "n", "m"};
    for (std::size_t i = 0; i < spec.entries.size(); ++i) {
        const auto& e = spec.entries[i];
        t.rows.push_back({std::to_string(i + 1), {e.tau, static_cast<double>(e.n), static_cast<double>(e.m)}});
    }
    return t;
}

// ---------------------------------------------------------------------------
// Reproduction presets.

struct Preset {
    enum class Kind { solve, converge };

    std::string name;
    std::string description;
    Kind kind = Kind::solve;
    RunConfig config;
    /// Reference eigenvalues: one row per basis size (a single row for
    /// solves), one column per tracked / reported index.
    std::vector<std::vector<double>> reference;
    double tolerance = 1e-4;  // relative, for the reference comparison
};

namespace detail {

inline RunConfig disk_block_config(std::string alpha, std::string beta) {
    RunConfig c;
    c.domain = Domain::disk;
    c.alpha = std::move(alpha);
    c.beta = std::move(beta);
    c.basis = {Ordering::lex_block, ParityFilter::cosine_only, 0, 5, 4};
    c.eigenvalues = 3;
    return c;
}

// The square studies truncate the 5x5 index block in (n, m) order, so N = 10
// keeps n <= 2, N = 15 keeps n <= 3, and so on.
inline RunConfig square_study_config(std::string alpha, std::string beta, std::vector<std::size_t> track) {
    RunConfig c;
    c.domain = Domain::square;
    c.alpha = std::move(alpha);
    c.beta = std::move(beta);
    c.basis = {Ordering::lex_block, ParityFilter::both, 0, 5, 5};
    c.sizes = {10, 15, 20, 25};
    c.track = std::move(track);
    c.eigenvalues = 4;
    return c;
}

}  // namespace detail

inline const std::vector<Preset>& presets() {
    using K = Preset::Kind;
    static const std::vector<Preset> all = [] {
        std::vector<Preset> p;
        p.push_back({"table1", "disk, alpha=1/4, beta=10, 24 cosine modes (exact comparison)", K::solve,
                     detail::disk_block_config("alpha_const(0.25)", "beta_const(10)"),
                     {{0.8361309908, 5.3890063494, 17.390486256}}, 1e-5});
        p.push_back({"table2-left", "disk, alpha=1/4+r sin^2(theta), beta=10", K::solve,
                     detail::disk_block_config("alpha_rsin2", "beta_const(10)"),
                     {{1.3319675316, 7.4582616121, 29.166695881}}, 1e-4});
        p.push_back({"table2-right", "disk, alpha=1/4, beta=10+2exp(-r^2)", K::solve,
                     detail::disk_block_config("alpha_const(0.25)", "beta_gauss"),
                     {{0.7187824125, 4.7034217796, 15.321238476}}, 1e-4});
        p.push_back({"table3-left", "disk, alpha=1/4(1+step(r-1/4)), beta=10", K::solve,
                     detail::disk_block_config("alpha_step", "beta_const(10)"),
                     {{1.2757025572, 9.9620153799, 34.214855049}}, 1e-4});
        p.push_back({"table3-right", "disk, alpha=1/4, beta=10+2 step(r-1/2)", K::solve,
                     detail::disk_block_config("alpha_const(0.25)", "beta_step"),
                     {{0.7814121836, 4.7870466455, 14.975919099}}, 1e-4});
        p.push_back({"table4", "square, alpha=1/4, beta=(x1^2+1)(x2^2+10), tau_1, tau_2, tau_4", K::converge,
                     detail::square_study_config("alpha_const(0.25)", "beta_poly", {1, 2, 4}),
                     {{7.3573520969, 45.421593372, 118.08243134},
                      {7.3570078657, 45.395939541, 116.61165938},
                      {7.3569921869, 45.394566012, 116.56679385},
                      {7.3569922082, 45.394456592, 116.56395603}},
                     1e-4});
        p.push_back({"table6", "square, alpha=x1 x2+1/4, beta=10", K::converge,
                     detail::square_study_config("alpha_xy", "beta_const(10)", {1, 2, 3}),
                     {{18.05863342659, 109.6130034603, 116.67276901349},
                      {18.02755051044, 107.4962046649, 113.77896218468},
                      {18.01765352838, 107.2367212907, 113.67996470052},
                      {18.01607463791, 107.1599636478, 113.64645491602}},
                     1e-4});
        p.push_back({"table8", "square, alpha=x1 x2+1/4, beta=(x1^2+1)(x2^2+10)", K::converge,
                     detail::square_study_config("alpha_xy", "beta_poly", {1, 2, 3}),
                     {{13.9832243446, 82.8159686896, 89.7089031694},
                      {13.9674641031, 81.7610212109, 89.2854919971},
                      {13.9615777461, 81.6259370343, 89.2499753721},
                      {13.9607067280, 81.5805519814, 89.2373897357}},
                     1e-4});
        {
            auto c = detail::square_study_config("alpha_xy", "beta_poly", {1, 2, 3});
            c.sizes.clear();
            c.eigenfunctions = {1, 2, 3};
            c.grid = 41;
            p.push_back({"fig1-grids", "square, alpha=x1 x2+1/4, beta=(x1^2+1)(x2^2+10), N=25 eigenfunction grids",
                         K::solve, c, {{13.9607067280, 81.5805519814, 89.2373897357}}, 1e-4});
        }
        {
            RunConfig c;
            c.domain = Domain::square;
            c.alpha = "alpha_const(1)";
            c.beta = "beta_const(1)";
            c.basis = {Ordering::ascending_lambda, ParityFilter::both, 0, 0, 0};
            c.sizes = {4, 9, 16};
            c.track = {1};
            p.push_back({"square-constant", "square, alpha=beta=1 (saturates immediately)", K::converge, c, {}, 1e-9});
        }
        return p;
    }();
    return all;
}

inline const Preset& find_preset(std::string_view name) {
    for (const auto& p : presets())
        if (p.name == name) return p;
    std::string known;
    for (const auto& p : presets()) known += (known.empty() ? "" : ", ") + p.name;
    throw std::out_of_range("unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace plate
