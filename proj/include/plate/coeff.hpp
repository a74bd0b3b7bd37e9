#pragma once

// Positive, bounded coefficient fields alpha(x) and beta(x).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plate/geometry.hpp"

namespace plate {

class CoefficientField {
public:
    using Evaluator = std::function<double(const Point&)>;

    CoefficientField(Evaluator eval, double declared_min, double declared_max, std::string description,
                     std::vector<double> jump_radii = {})
        : eval_(std::move(eval)),
          min_(declared_min),
          max_(declared_max),
          description_(std::move(description)),
          jumps_(std::move(jump_radii)) {
        if (!eval_) throw std::invalid_argument("CoefficientField: empty evaluator");
        if (!(declared_min > 0.0) || !(declared_min <= declared_max) || !std::isfinite(declared_max)) {
            throw std::invalid_argument("CoefficientField '" + description_ +
                                        "': declared bounds must satisfy 0 < min <= max < inf");
        }
        std::sort(jumps_.begin(), jumps_.end());
    }

    double operator()(const Point& p) const { return eval_(p); }

    double declared_min() const { return min_; }
    double declared_max() const { return max_; }
    const std::string& description() const { return description_; }
    /// Radii on which the field jumps (disk only); quadrature splits there.
    const std::vector<double>& jump_radii() const { return jumps_; }
    bool is_constant() const { return min_ == max_; }

    /// Same field multiplied by s > 0.
    CoefficientField scaled(double s) const {
        auto inner = eval_;
        std::ostringstream os;
        os << s << "*(" << description_ << ")";
        return CoefficientField([inner, s](const Point& p) { return s * inner(p); }, s * min_, s * max_,
                                os.str(), jumps_);
    }

private:
    Evaluator eval_;
    double min_;
    double max_;
    std::string description_;
    std::vector<double> jumps_;
};

inline CoefficientField constant_field(double c) {
    std::ostringstream os;
    os.precision(17);
    os << c;
    return CoefficientField([c](const Point&) { return c; }, c, c, os.str());
}

/// Open-condition indicator: 1 when v > 0, 0 otherwise (so 0 at the jump).
inline double step(double v) { return v > 0.0 ? 1.0 : 0.0; }

/// Catalog keys:
///   alpha_rsin2   1/4 + r sin^2(theta)          disk
///   beta_gauss    10 + 2 exp(-r^2)              disk
///   alpha_step    1/4 (1 + step(r - 1/4))       disk, jump at r = 1/4
///   beta_step     10 + 2 step(r - 1/2)          disk, jump at r = 1/2
///   alpha_xy      x1 x2 + 1/4                   square
///   beta_poly     (x1^2 + 1)(x2^2 + 10)         square
///   alpha_const(c), beta_const(c)               constant c > 0
inline CoefficientField catalog(std::string_view key) {
    if (key == "alpha_rsin2") {
        return {[](const Point& p) {
                    const double s = std::sin(p.theta);
                    return 0.25 + p.r * s * s;
                },
                0.25, 1.25, "1/4 + r*sin(theta)^2"};
    }
    if (key == "beta_gauss") {
        return {[](const Point& p) { return 10.0 + 2.0 * std::exp(-p.r * p.r); }, 10.0 + 2.0 * std::exp(-1.0), 12.0,
                "10 + 2*exp(-r^2)"};
    }
    if (key == "alpha_step") {
        return {[](const Point& p) { return 0.25 * (1.0 + step(p.r - 0.25)); }, 0.25, 0.5,
                "1/4*(1 + step(r - 0.25))", {0.25}};
    }
    if (key == "beta_step") {
        return {[](const Point& p) { return 10.0 + 2.0 * step(p.r - 0.5); }, 10.0, 12.0, "10 + 2*step(r - 0.5)",
                {0.5}};
    }
    if (key == "alpha_xy") {
        return {[](const Point& p) { return p.x1 * p.x2 + 0.25; }, 0.25, 1.25, "x1*x2 + 1/4"};
    }
    if (key == "beta_poly") {
        return {[](const Point& p) { return (p.x1 * p.x1 + 1.0) * (p.x2 * p.x2 + 10.0); }, 10.0, 22.0,
                "(x1^2 + 1)*(x2^2 + 10)"};
    }
    for (std::string_view prefix : {"alpha_const(", "beta_const("}) {
        if (key.starts_with(prefix) && key.ends_with(")")) {
            const auto arg = key.substr(prefix.size(), key.size() - prefix.size() - 1);
            double c = 0.0;
            const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), c);
            if (ec != std::errc() || ptr != arg.data() + arg.size()) {
                throw std::out_of_range("catalog: bad constant in '" + std::string(key) + "'");
            }
            if (!(c > 0.0) || !std::isfinite(c)) {
                throw std::invalid_argument("catalog: constant must be positive, got '" + std::string(arg) + "'");
            }
            return constant_field(c);
        }
    }
    throw std::out_of_range("catalog: unknown coefficient key '" + std::string(key) + "'");
}

inline bool is_catalog_key(std::string_view key) {
    static constexpr std::string_view names[] = {"alpha_rsin2", "beta_gauss", "alpha_step",
                                                 "beta_step",   "alpha_xy",   "beta_poly"};
    for (auto n : names)
        if (key == n) return true;
    return (key.starts_with("alpha_const(") || key.starts_with("beta_const(")) && key.ends_with(")");
}

struct ValidationReport {
    bool ok = true;
    double observed_min = std::numeric_limits<double>::infinity();
    double observed_max = -std::numeric_limits<double>::infinity();
    std::string message;
};

/// Samples `field` on a tensor grid (polar on the disk, Cartesian on the
/// square) with `density` nodes per direction, boundary included.
template <class Field>
ValidationReport sample_bounds(const Field& field, Domain domain, int density) {
    if (density < 8) throw std::domain_error("validate: grid density must be >= 8");
    ValidationReport rep;
    const double h = 1.0 / (density - 1);
    for (int i = 0; i < density; ++i) {
        for (int k = 0; k < density; ++k) {
            const Point p = domain == Domain::disk
                                ? Point::polar(i * h, 2.0 * std::numbers::pi * k / density)
                                : Point::cartesian(i * h, k * h);
            const double v = field(p);
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "non-finite value at (" << p.x1 << ", " << p.x2 << ")";
                rep.ok = false;
                rep.message = os.str();
                return rep;
            }
            rep.observed_min = std::min(rep.observed_min, v);
            rep.observed_max = std::max(rep.observed_max, v);
        }
    }
    return rep;
}

inline ValidationReport validate(const CoefficientField& field, Domain domain, int density) {
    auto rep = sample_bounds(field, domain, density);
    if (!rep.ok) return rep;
    // Relative slack for bounds computed in closed form (e.g. 10 + 2/e).
    const double slack = 1e-12 * field.declared_max();
    std::ostringstream os;
    if (rep.observed_min <= 0.0) {
        rep.ok = false;
        os << "positivity violated: observed min " << rep.observed_min;
    } else if (rep.observed_min < field.declared_min() - slack) {
        rep.ok = false;
        os << "observed min " << rep.observed_min << " below declared " << field.declared_min();
    } else if (rep.observed_max > field.declared_max() + slack) {
        rep.ok = false;
        os << "observed max " << rep.observed_max << " above declared " << field.declared_max();
    }
    rep.message = os.str();
    return rep;
}

}  // namespace plate
