#pragma once

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace plate {

enum class Domain { disk, square };

inline std::string_view to_string(Domain d) { return d == Domain::disk ? "disk" : "square"; }

inline Domain parse_domain(std::string_view s) {
    if (s == "disk") return Domain::disk;
    if (s == "square") return Domain::square;
    throw std::invalid_argument("unknown domain '" + std::string(s) + "' (expected disk|square)");
}

/// A point carried in both Cartesian and polar form so that coefficient
/// fields can use whichever coordinates they are written in. The unit disk is
/// centred at the origin; the unit square is [0,1]^2.
struct Point {
    double x1 = 0.0;
    double x2 = 0.0;
    double r = 0.0;
    double theta = 0.0;  // in [0, 2*pi)

    static Point cartesian(double x1, double x2) {
        double t = std::atan2(x2, x1);
        if (t < 0.0) t += 2.0 * std::numbers::pi;
        return {x1, x2, std::hypot(x1, x2), t};
    }

    static Point polar(double r, double theta) {
        return {r * std::cos(theta), r * std::sin(theta), r, theta};
    }
};

inline constexpr double kBoundarySlack = 1e-12;

inline bool contains(Domain d, const Point& p) {
    if (d == Domain::disk) return p.r <= 1.0 + kBoundarySlack;
    return p.x1 >= -kBoundarySlack && p.x1 <= 1.0 + kBoundarySlack && p.x2 >= -kBoundarySlack &&
           p.x2 <= 1.0 + kBoundarySlack;
}

inline void require_inside(Domain d, const Point& p) {
    if (!contains(d, p)) {
        std::ostringstream os;
        os << "point (" << p.x1 << ", " << p.x2 << ") lies outside the unit " << to_string(d);
        throw std::domain_error(os.str());
    }
}

inline double domain_area(Domain d) { return d == Domain::disk ? std::numbers::pi : 1.0; }

}  // namespace plate
