#pragma once

// Closed-form simply supported plate eigenvalues for constant coefficients.
// With alpha, beta constant every Dirichlet eigenfunction phi solves the
// plate problem, giving tau = (alpha/beta) * lambda^2:
//   disk:   tau_{n,m} = (alpha/beta) j_{n,m}^4   (roots of J_n((tau beta/alpha)^{1/4}))
//   square: tau_{n,m} = (alpha/beta) pi^4 (n^2 + m^2)^2
// The square formula is the same separation argument carried over to the
// square's eigenbasis; it is cross-checked against the Galerkin solve.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "plate/basis.hpp"

namespace plate {

struct ExactEigenvalue {
    double tau;
    int n;
    int m;
};

struct ExactSpectrum {
    Domain domain = Domain::disk;
    double alpha0 = 1.0;
    double beta0 = 1.0;
    std::vector<ExactEigenvalue> entries;  // ascending

    std::vector<double> taus() const {
        std::vector<double> t;
        t.reserve(entries.size());
        for (const auto& e : entries) t.push_back(e.tau);
        return t;
    }
};

namespace detail {

inline void check_oracle_args(double alpha0, double beta0, int count) {
    if (!(alpha0 > 0.0) || !(beta0 > 0.0)) throw std::domain_error("oracle: coefficients must be positive");
    if (count < 1 || count > 200) throw std::domain_error("oracle: count must lie in [1, 200]");
}

}  // namespace detail

/// Disk spectrum, one entry per (n, m): the cosine and sine partners of a
/// mode with n >= 1 share the root and are reported once.
inline ExactSpectrum exact_disk(double alpha0, double beta0, int count) {
    detail::check_oracle_args(alpha0, beta0, count);
    // enumerate_disk certifies the sorted prefix using j_{n,1} > n.
    const auto basis = enumerate_disk(FirstN{static_cast<std::size_t>(count)}, ParityFilter::cosine_only);
    ExactSpectrum s{Domain::disk, alpha0, beta0, {}};
    const double ratio = alpha0 / beta0;
    for (const auto& p : basis) {
        const double j = p.wavenumber;
        s.entries.push_back({ratio * (j * j) * (j * j), p.mode.n(), p.mode.m()});
    }
    return s;
}

/// Square spectrum with multiplicity: (n, m) and (m, n) both appear.
inline ExactSpectrum exact_square(double alpha0, double beta0, int count) {
    detail::check_oracle_args(alpha0, beta0, count);
    const auto basis = enumerate_square(FirstN{static_cast<std::size_t>(count)});
    ExactSpectrum s{Domain::square, alpha0, beta0, {}};
    const double ratio = alpha0 / beta0;
    constexpr double pi4 = std::numbers::pi * std::numbers::pi * std::numbers::pi * std::numbers::pi;
    for (const auto& p : basis) {
        const double k2 = static_cast<double>(p.mode.n() * p.mode.n() + p.mode.m() * p.mode.m());
        s.entries.push_back({ratio * pi4 * k2 * k2, p.mode.n(), p.mode.m()});
    }
    return s;
}

}  // namespace plate
