#pragma once

// Bessel functions of the first kind, their positive zeros, and
// Gauss-Legendre rules. Everything here is a pure function of its arguments.

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "plate/errors.hpp"

namespace plate {

inline constexpr int kMaxBesselOrder = 50;
inline constexpr double kMaxBesselArg = 500.0;
inline constexpr double kRootTolerance = 1e-12;

namespace detail {

// Ascending series; used where no cancellation can build up.
inline double bessel_j_series(int n, double x) {
    const double half = 0.5 * x;
    double term = 1.0;
    for (int k = 1; k <= n; ++k) term *= half / k;
    const double q = half * half;
    double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (static_cast<double>(k) * (n + k));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// Miller's backward recurrence normalised by J0 + 2*sum(J_2k) = 1.
inline double bessel_j_miller(int n, double x) {
    const double big = std::max<double>(n, x);
    int start = static_cast<int>(big + 20.0 + std::ceil(std::sqrt(60.0 * big)));
    start += start % 2;

    const double two_over_x = 2.0 / x;
    double next = 0.0;  // J_{k+1}
    double cur = 1e-300;  // J_k
    double value = 0.0;
    double norm = 0.0;
    for (int k = start; k > 0; --k) {
        const double prev = k * two_over_x * cur - next;  // J_{k-1}
        next = cur;
        cur = prev;
        if (std::abs(cur) > 1e250) {
            cur *= 1e-250;
            next *= 1e-250;
            value *= 1e-250;
            norm *= 1e-250;
        }
        if (k - 1 == n) value = cur;
        if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * cur;
    }
    norm += cur;  // J_0
    return value / norm;
}

}  // namespace detail

/// J_n(x) for 0 <= n <= 50 and 0 <= x <= 500, absolute error below 1e-12.
inline double bessel_j(int n, double x) {
    if (n < 0 || n > kMaxBesselOrder || !(x >= 0.0) || x > kMaxBesselArg) {
        std::ostringstream os;
        os << "bessel_j: (n=" << n << ", x=" << x << ") outside supported range "
           << "0<=n<=" << kMaxBesselOrder << ", 0<=x<=" << kMaxBesselArg;
        throw std::domain_error(os.str());
    }
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    if (x < 2.0) return detail::bessel_j_series(n, x);
    return detail::bessel_j_miller(n, x);
}

struct BesselRootTable {
    int order = 0;
    std::vector<double> roots;
    double tolerance = kRootTolerance;
};

namespace detail {

inline double bisect_root(int n, double lo, double hi, double f_lo) {
    while (hi - lo > 0.25 * kRootTolerance) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = bessel_j(n, mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Scans [max(n,1), limit] in steps of 0.5 and polishes every sign change.
// Stops after `max_count` roots; the first zero of J_n exceeds n, so the scan
// never skips the leading root.
inline std::vector<double> scan_roots(int n, std::size_t max_count, double limit) {
    constexpr double step = 0.5;
    std::vector<double> roots;
    double a = std::max(static_cast<double>(n), 1.0);
    double fa = bessel_j(n, a);
    while (roots.size() < max_count) {
        const double b = a + step;
        if (b > limit) break;
        const double fb = bessel_j(n, b);
        if (fb == 0.0) {
            roots.push_back(b);
        } else if ((fa > 0.0) != (fb > 0.0)) {
            roots.push_back(bisect_root(n, a, b, fa));
        }
        a = b;
        fa = fb;
    }
    return roots;
}

}  // namespace detail

/// First `count` positive zeros of J_n (n <= 50, count <= 100).
inline BesselRootTable bessel_roots(int n, int count) {
    if (n < 0 || n > kMaxBesselOrder || count < 1 || count > 100) {
        throw std::domain_error("bessel_roots: need 0<=n<=50 and 1<=count<=100, got n=" +
                                std::to_string(n) + ", count=" + std::to_string(count));
    }
    BesselRootTable table;
    table.order = n;
    table.roots = detail::scan_roots(n, static_cast<std::size_t>(count), kMaxBesselArg);
    if (table.roots.size() < static_cast<std::size_t>(count)) {
        std::ostringstream os;
        os << "bessel_roots: bracketing failure for J_" << n << ": found " << table.roots.size()
           << " of " << count << " sign changes scanning [" << std::max(n, 1) << ", "
           << kMaxBesselArg << "]";
        throw numerical_error(os.str());
    }
    return table;
}

/// All positive zeros of J_n strictly below `limit`.
inline BesselRootTable bessel_roots_below(int n, double limit) {
    if (n < 0 || n > kMaxBesselOrder || !(limit > 0.0) || limit > kMaxBesselArg) {
        throw std::domain_error("bessel_roots_below: order or limit outside supported range");
    }
    BesselRootTable table;
    table.order = n;
    if (limit <= n) return table;
    // The last bracket may straddle `limit`, so scan one step past it.
    table.roots = detail::scan_roots(n, static_cast<std::size_t>(-1),
                                     std::min(limit + 0.5, kMaxBesselArg));
    while (!table.roots.empty() && table.roots.back() >= limit) table.roots.pop_back();
    return table;
}

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// k-point Gauss-Legendre rule on [-1, 1], nodes ascending.
inline GaussRule gauss_legendre(int k) {
    if (k < 1 || k > 64) {
        throw std::domain_error("gauss_legendre: need 1<=k<=64, got " + std::to_string(k));
    }
    GaussRule rule;
    rule.nodes.assign(k, 0.0);
    rule.weights.assign(k, 0.0);
    const int half = (k + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int j = 2; j <= k; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = k * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                // One more derivative evaluation at the converged node.
                p0 = 1.0;
                p1 = x;
                for (int j = 2; j <= k; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = k * (x * p1 - p0) / (x * x - 1.0);
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[k - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[k - 1 - i] = w;
    }
    if (k % 2 == 1) rule.nodes[k / 2] = 0.0;
    return rule;
}

}  // namespace plate
