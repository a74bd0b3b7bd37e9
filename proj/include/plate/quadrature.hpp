#pragma once

// Composite tensor Gauss-Legendre rules on the unit square and unit disk.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "plate/errors.hpp"
#include "plate/geometry.hpp"
#include "plate/specfun.hpp"

namespace plate {

struct QuadRule {
    Domain domain = Domain::square;
    std::vector<Point> points;
    std::vector<double> weights;

    // Construction metadata.
    int order_1 = 0;  // per-panel order in x1 (square) or r (disk)
    int order_2 = 0;  // per-panel order in x2 (square) or theta (disk)
    std::vector<double> edges_1;  // panel edges in x1 / r
    std::vector<double> edges_2;  // panel edges in x2 / theta

    std::size_t size() const { return points.size(); }
};

namespace detail {

struct Rule1d {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline Rule1d composite_gauss(int order, const std::vector<double>& edges) {
    const auto g = gauss_legendre(order);
    Rule1d out;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double half = 0.5 * (edges[p + 1] - edges[p]);
        const double mid = 0.5 * (edges[p + 1] + edges[p]);
        for (int i = 0; i < order; ++i) {
            out.nodes.push_back(mid + half * g.nodes[i]);
            out.weights.push_back(half * g.weights[i]);
        }
    }
    return out;
}

inline std::vector<double> uniform_edges(double a, double b, int panels) {
    std::vector<double> e(panels + 1);
    for (int i = 0; i <= panels; ++i) e[i] = a + (b - a) * i / panels;
    e.back() = b;
    return e;
}

inline void check_order(int order) {
    if (order < 2 || order > 64) throw std::domain_error("quadrature order must lie in [2, 64]");
}

}  // namespace detail

inline QuadRule square_rule(int order, int panels_per_axis) {
    detail::check_order(order);
    if (panels_per_axis < 1 || panels_per_axis > 32) {
        throw std::domain_error("square_rule: panels per axis must lie in [1, 32]");
    }
    QuadRule rule;
    rule.domain = Domain::square;
    rule.order_1 = rule.order_2 = order;
    rule.edges_1 = rule.edges_2 = detail::uniform_edges(0.0, 1.0, panels_per_axis);
    const auto g = detail::composite_gauss(order, rule.edges_1);
    rule.points.reserve(g.nodes.size() * g.nodes.size());
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        for (std::size_t k = 0; k < g.nodes.size(); ++k) {
            rule.points.push_back(Point::cartesian(g.nodes[i], g.nodes[k]));
            rule.weights.push_back(g.weights[i] * g.weights[k]);
        }
    }
    return rule;
}

/// Polar tensor rule on the unit disk. Radial panels run over [0,1] split at
/// `split_radii` (and optionally subdivided uniformly into `radial_panels`
/// pieces first); the angle uses `angular_panels` equal panels on [0, 2*pi].
inline QuadRule disk_rule(int radial_order, int angular_order, const std::vector<double>& split_radii = {},
                          int angular_panels = 4, int radial_panels = 1) {
    detail::check_order(radial_order);
    detail::check_order(angular_order);
    if (angular_panels < 1 || angular_panels > 64 || radial_panels < 1 || radial_panels > 32) {
        throw std::domain_error("disk_rule: panel counts out of range");
    }
    for (std::size_t i = 0; i < split_radii.size(); ++i) {
        if (!(split_radii[i] > 0.0 && split_radii[i] < 1.0) || (i > 0 && !(split_radii[i] > split_radii[i - 1]))) {
            throw std::domain_error("disk_rule: split radii must be strictly increasing in (0, 1)");
        }
    }
    QuadRule rule;
    rule.domain = Domain::disk;
    rule.order_1 = radial_order;
    rule.order_2 = angular_order;
    rule.edges_1 = detail::uniform_edges(0.0, 1.0, radial_panels);
    rule.edges_1.insert(rule.edges_1.end(), split_radii.begin(), split_radii.end());
    std::sort(rule.edges_1.begin(), rule.edges_1.end());
    rule.edges_1.erase(std::unique(rule.edges_1.begin(), rule.edges_1.end(),
                                   [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                       rule.edges_1.end());
    rule.edges_2 = detail::uniform_edges(0.0, 2.0 * std::numbers::pi, angular_panels);

    const auto radial = detail::composite_gauss(radial_order, rule.edges_1);
    const auto angular = detail::composite_gauss(angular_order, rule.edges_2);
    rule.points.reserve(radial.nodes.size() * angular.nodes.size());
    for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
        const double r = radial.nodes[i];
        for (std::size_t k = 0; k < angular.nodes.size(); ++k) {
            rule.points.push_back(Point::polar(r, angular.nodes[k]));
            rule.weights.push_back(r * radial.weights[i] * angular.weights[k]);
        }
    }
    return rule;
}

/// Sum of w_i f(p_i) in a fixed order.
template <class Field>
double integrate(const Field& f, const QuadRule& rule) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.points.size(); ++i) {
        const double v = f(rule.points[i]);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "integrate: non-finite integrand at (" << rule.points[i].x1 << ", " << rule.points[i].x2 << ")";
            throw numerical_error(os.str());
        }
        sum += rule.weights[i] * v;
    }
    return sum;
}

}  // namespace plate
