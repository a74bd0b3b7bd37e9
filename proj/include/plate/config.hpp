#pragma once

// Run configuration: a flat INI-style document.
//
//   # comment
//   [problem]
//   domain = disk | square
//   alpha  = <catalog key or expression>
//   beta   = <catalog key or expression>
//
//   [basis]
//   ordering = ascending | block
//   parity   = cosine | both          (disk only)
//   count    = N                      (ascending: basis size; block: truncation, 0 = whole block)
//   n_max    = 5                      (block bounds)
//   m_max    = 4
//   sizes    = 10, 15, 20, 25         (convergence studies)
//
//   [quadrature]
//   order          = 12
//   panels         = 0                (square, per axis; 0 = automatic)
//   radial_panels  = 0                (disk; 0 = automatic)
//   angular_panels = 0                (disk; 0 = automatic)
//   split_radii    = 0.25, 0.5        (disk)
//
//   [output]
//   eigenvalues    = 3                (rows of the eigenvalue table)
//   track          = 1, 2, 3          (convergence study indices)
//   eigenfunctions = 1, 2, 3          (grid dumps)
//   grid           = 41               (grid nodes per direction)

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "plate/errors.hpp"
#include "plate/expr.hpp"
#include "plate/problem.hpp"

namespace plate {

struct RunConfig {
    Domain domain = Domain::disk;
    std::string alpha = "alpha_const(1)";
    std::string beta = "beta_const(1)";
    BasisSpec basis{Ordering::ascending_lambda, ParityFilter::both, 24, 0, 0};
    std::vector<std::size_t> sizes;
    QuadSpec quad;
    std::size_t eigenvalues = 3;
    std::vector<std::size_t> track{1, 2, 3};
    std::vector<std::size_t> eigenfunctions;
    int grid = 41;

    friend bool operator==(const RunConfig& a, const RunConfig& b) {
        return a.domain == b.domain && a.alpha == b.alpha && a.beta == b.beta &&
               a.basis.ordering == b.basis.ordering && a.basis.parity == b.basis.parity &&
               a.basis.count == b.basis.count && a.basis.n_max == b.basis.n_max && a.basis.m_max == b.basis.m_max &&
               a.sizes == b.sizes && a.quad.order == b.quad.order && a.quad.panels == b.quad.panels &&
               a.quad.radial_panels == b.quad.radial_panels && a.quad.angular_panels == b.quad.angular_panels &&
               a.quad.split_radii == b.quad.split_radii && a.eigenvalues == b.eigenvalues && a.track == b.track &&
               a.eigenfunctions == b.eigenfunctions && a.grid == b.grid;
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(const std::string& v, const std::string& key, int line) {
    T out{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw config_error("'" + key + "': cannot parse '" + v + "' as a number", line);
    }
    return out;
}

template <class T>
std::vector<T> parse_list(const std::string& v, const std::string& key, int line) {
    std::vector<T> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw config_error("'" + key + "': empty list element", line);
        out.push_back(parse_number<T>(item, key, line));
    }
    return out;
}

inline std::string shortest(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

template <class T>
std::string join(const std::vector<T>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        if constexpr (std::is_floating_point_v<T>) out += shortest(v[i]);
        else out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace detail

/// Semantic checks shared by the parser and programmatic callers; throws
/// config_error naming the offending field.
inline void validate_config(const RunConfig& c) {
    for (const auto& [name, text] : {std::pair<std::string, std::string>{"alpha", c.alpha}, {"beta", c.beta}}) {
        try {
            const auto f = make_coefficient(text, c.domain);
            const auto rep = validate(f, c.domain, kExpressionBoundsDensity);
            if (!rep.ok) throw std::invalid_argument(rep.message);
        } catch (const std::exception& e) {
            throw config_error(name + ": " + e.what());
        }
    }
    if (c.basis.ordering == Ordering::ascending_lambda) {
        if (c.basis.count == 0 && c.sizes.empty()) throw config_error("basis.count: must be positive");
    } else {
        if (c.basis.m_max < 1 || c.basis.n_max < (c.domain == Domain::disk ? 0 : 1)) {
            throw config_error("basis.n_max/m_max: block bounds required for block ordering");
        }
    }
    for (std::size_t i = 1; i < c.sizes.size(); ++i) {
        if (c.sizes[i] <= c.sizes[i - 1]) throw config_error("basis.sizes: must be strictly increasing");
    }
    if (c.quad.order < 2 || c.quad.order > 64) throw config_error("quadrature.order: must lie in [2, 64]");
    if (c.quad.panels < 0 || c.quad.panels > 32 || c.quad.radial_panels < 0 || c.quad.radial_panels > 32 ||
        c.quad.angular_panels < 0 || c.quad.angular_panels > 64) {
        throw config_error("quadrature: panel counts out of range");
    }
    for (std::size_t i = 0; i < c.quad.split_radii.size(); ++i) {
        const double r = c.quad.split_radii[i];
        if (!(r > 0.0 && r < 1.0) || (i > 0 && !(r > c.quad.split_radii[i - 1]))) {
            throw config_error("quadrature.split_radii: must be strictly increasing in (0, 1)");
        }
    }
    if (c.track.empty()) throw config_error("output.track: at least one index required");
    for (auto j : c.track)
        if (j == 0) throw config_error("output.track: indices are 1-based");
    for (auto j : c.eigenfunctions)
        if (j == 0) throw config_error("output.eigenfunctions: indices are 1-based");
    if (c.grid < 2 || c.grid > 2001) throw config_error("output.grid: must lie in [2, 2001]");
}

inline RunConfig parse_config(std::string_view text) {
    RunConfig c;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    std::map<std::string, int> seen;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        std::string s = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw config_error("unterminated section header", line);
            section = detail::trim(s.substr(1, s.size() - 2));
            if (section != "problem" && section != "basis" && section != "quadrature" && section != "output") {
                throw config_error("unknown section [" + section + "]", line);
            }
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw config_error("expected 'key = value'", line);
        if (section.empty()) throw config_error("key outside of any section", line);
        const std::string key = detail::trim(s.substr(0, eq));
        const std::string value = detail::trim(s.substr(eq + 1));
        const std::string full = section + "." + key;
        if (seen.count(full)) throw config_error("duplicate key '" + full + "'", line);
        seen[full] = line;
        if (value.empty()) throw config_error("'" + full + "': empty value", line);

        if (full == "problem.domain") {
            try {
                c.domain = parse_domain(value);
            } catch (const std::exception& e) {
                throw config_error(e.what(), line);
            }
        } else if (full == "problem.alpha") {
            c.alpha = value;
        } else if (full == "problem.beta") {
            c.beta = value;
        } else if (full == "basis.ordering") {
            if (value == "ascending") c.basis.ordering = Ordering::ascending_lambda;
            else if (value == "block") c.basis.ordering = Ordering::lex_block;
            else throw config_error("basis.ordering: expected ascending|block", line);
        } else if (full == "basis.parity") {
            if (value == "cosine") c.basis.parity = ParityFilter::cosine_only;
            else if (value == "both") c.basis.parity = ParityFilter::both;
            else throw config_error("basis.parity: expected cosine|both", line);
        } else if (full == "basis.count") {
            c.basis.count = detail::parse_number<std::size_t>(value, full, line);
        } else if (full == "basis.n_max") {
            c.basis.n_max = detail::parse_number<int>(value, full, line);
        } else if (full == "basis.m_max") {
            c.basis.m_max = detail::parse_number<int>(value, full, line);
        } else if (full == "basis.sizes") {
            c.sizes = detail::parse_list<std::size_t>(value, full, line);
        } else if (full == "quadrature.order") {
            c.quad.order = detail::parse_number<int>(value, full, line);
        } else if (full == "quadrature.panels") {
            c.quad.panels = detail::parse_number<int>(value, full, line);
        } else if (full == "quadrature.radial_panels") {
            c.quad.radial_panels = detail::parse_number<int>(value, full, line);
        } else if (full == "quadrature.angular_panels") {
            c.quad.angular_panels = detail::parse_number<int>(value, full, line);
        } else if (full == "quadrature.split_radii") {
            c.quad.split_radii = detail::parse_list<double>(value, full, line);
        } else if (full == "output.eigenvalues") {
            c.eigenvalues = detail::parse_number<std::size_t>(value, full, line);
        } else if (full == "output.track") {
            c.track = detail::parse_list<std::size_t>(value, full, line);
        } else if (full == "output.eigenfunctions") {
            c.eigenfunctions = detail::parse_list<std::size_t>(value, full, line);
        } else if (full == "output.grid") {
            c.grid = detail::parse_number<int>(value, full, line);
        } else {
            throw config_error("unknown key '" + full + "'", line);
        }
    }
    // The default count applies to ascending order only; a block without an
    // explicit count is taken whole.
    if (c.basis.ordering == Ordering::lex_block && !seen.count("basis.count")) c.basis.count = 0;
    validate_config(c);
    return c;
}

inline std::string serialize_config(const RunConfig& c) {
    std::ostringstream os;
    os << "[problem]\n"
       << "domain = " << to_string(c.domain) << "\n"
       << "alpha = " << c.alpha << "\n"
       << "beta = " << c.beta << "\n\n"
       << "[basis]\n"
       << "ordering = " << to_string(c.basis.ordering) << "\n"
       << "parity = " << (c.basis.parity == ParityFilter::both ? "both" : "cosine") << "\n"
       << "count = " << c.basis.count << "\n"
       << "n_max = " << c.basis.n_max << "\n"
       << "m_max = " << c.basis.m_max << "\n";
    if (!c.sizes.empty()) os << "sizes = " << detail::join(c.sizes) << "\n";
    os << "\n[quadrature]\n"
       << "order = " << c.quad.order << "\n"
       << "panels = " << c.quad.panels << "\n"
       << "radial_panels = " << c.quad.radial_panels << "\n"
       << "angular_panels = " << c.quad.angular_panels << "\n";
    if (!c.quad.split_radii.empty()) os << "split_radii = " << detail::join(c.quad.split_radii) << "\n";
    os << "\n[output]\n"
       << "eigenvalues = " << c.eigenvalues << "\n";
    if (!c.track.empty()) os << "track = " << detail::join(c.track) << "\n";
    if (!c.eigenfunctions.empty()) os << "eigenfunctions = " << detail::join(c.eigenfunctions) << "\n";
    os << "grid = " << c.grid << "\n";
    return os.str();
}

inline Problem to_problem(const RunConfig& c) {
    Problem p;
    p.domain = c.domain;
    p.alpha = make_coefficient(c.alpha, c.domain);
    p.beta = make_coefficient(c.beta, c.domain);
    p.basis = c.basis;
    p.quad = c.quad;
    return p;
}

}  // namespace plate
