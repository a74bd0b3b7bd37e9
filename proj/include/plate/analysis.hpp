#pragma once

// Convergence-rate estimation, Weyl-law band checks and projection tails.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "plate/basis.hpp"
#include "plate/problem.hpp"

namespace plate {

/// R(i) below this marks a sequence as saturated at the quadrature floor.
inline constexpr double kSaturationFloor = 1e-10;

struct RateFit {
    bool saturated = false;  // fewer than two usable points
    double p = 0.0;          // R(i) ~ C N_i^{-p}
    std::size_t points = 0;
};

/// Least-squares slope of log R against log N, skipping saturated points.
inline RateFit fit_rate(std::span<const double> ns, std::span<const double> rel_errors) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < rel_errors.size(); ++i) {
        if (rel_errors[i] >= kSaturationFloor) {
            xs.push_back(std::log(ns[i]));
            ys.push_back(std::log(rel_errors[i]));
        }
    }
    RateFit fit;
    fit.points = xs.size();
    if (xs.size() < 2) {
        fit.saturated = true;
        return fit;
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    fit.p = -sxy / sxx;
    return fit;
}

struct ConvergenceReport {
    std::vector<std::size_t> ns;
    std::vector<std::vector<double>> taus;    // taus[i] = spectrum at ns[i]
    std::vector<std::size_t> tracked;         // 1-based eigenvalue indices
    std::vector<std::vector<double>> rel_errors;  // [t][i] = R(i) for tracked[t]
    std::vector<std::vector<double>> pairwise_rates;  // [t][i-1] from R(i-1), R(i); NaN below the floor
    std::vector<RateFit> rates;               // per tracked index
    std::optional<std::vector<double>> exact; // oracle value per tracked index
    std::vector<std::vector<double>> oracle_errors;  // [t][i] = |tau(N_i) - exact| / exact
    std::vector<double> max_residual;         // per N

    bool saturated(std::size_t t) const { return rates.at(t).saturated; }
};

/// Oracle values tau_j = (alpha/beta) lambda_j^2 for constant coefficients,
/// taken over the ascending enumeration of the same mode family.
inline std::vector<double> constant_coefficient_taus(const Problem& problem, std::size_t count) {
    const double ratio = problem.alpha.declared_min() / problem.beta.declared_min();
    const auto basis = problem.domain == Domain::disk ? enumerate_disk(FirstN{count}, problem.basis.parity)
                                                      : enumerate_square(FirstN{count});
    std::vector<double> out;
    for (const auto& p : basis) out.push_back(ratio * p.lambda * p.lambda);
    return out;
}

inline ConvergenceReport convergence_study(const Problem& problem, std::span<const std::size_t> ns,
                                           std::span<const std::size_t> tracked) {
    if (ns.size() < 3) throw std::domain_error("convergence_study: need at least three basis sizes");
    for (std::size_t i = 1; i < ns.size(); ++i) {
        if (ns[i] <= ns[i - 1]) throw std::domain_error("convergence_study: sizes must be strictly increasing");
    }
    if (tracked.empty()) throw std::domain_error("convergence_study: no eigenvalues tracked");
    for (auto j : tracked) {
        if (j < 1 || j > ns.front()) {
            throw std::domain_error("convergence_study: tracked index " + std::to_string(j) +
                                    " invalid at N=" + std::to_string(ns.front()));
        }
    }

    ConvergenceReport rep;
    rep.ns.assign(ns.begin(), ns.end());
    rep.tracked.assign(tracked.begin(), tracked.end());
    for (auto n : ns) {
        try {
            const auto out = solve_problem(problem, n);
            rep.taus.push_back(out.result.taus);
            rep.max_residual.push_back(out.result.max_residual());
        } catch (const std::exception& e) {
            throw numerical_error("convergence_study: N=" + std::to_string(n) + ": " + e.what());
        }
    }

    std::vector<double> nd(ns.begin(), ns.end());
    for (auto j : tracked) {
        std::vector<double> r;
        for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
            const double a = rep.taus[i][j - 1];
            const double b = rep.taus[i + 1][j - 1];
            r.push_back(std::abs(a - b) / b);
        }
        std::vector<double> pw;
        for (std::size_t i = 1; i < r.size(); ++i) {
            const bool usable = r[i] >= kSaturationFloor && r[i - 1] >= kSaturationFloor;
            pw.push_back(usable ? std::log(r[i - 1] / r[i]) / std::log(nd[i] / nd[i - 1])
                                : std::numeric_limits<double>::quiet_NaN());
        }
        rep.rates.push_back(fit_rate(std::span(nd).first(r.size()), r));
        rep.rel_errors.push_back(std::move(r));
        rep.pairwise_rates.push_back(std::move(pw));
    }

    if (problem.alpha.is_constant() && problem.beta.is_constant()) {
        const std::size_t jmax = *std::max_element(tracked.begin(), tracked.end());
        const auto exact = constant_coefficient_taus(problem, jmax);
        rep.exact.emplace();
        for (auto j : tracked) {
            const double ex = exact[j - 1];
            rep.exact->push_back(ex);
            std::vector<double> errs;
            for (const auto& t : rep.taus) errs.push_back(std::abs(t[j - 1] - ex) / ex);
            rep.oracle_errors.push_back(std::move(errs));
        }
    }
    return rep;
}

struct WeylDiagnostic {
    double min_ratio = 0.0;  // min over 10 <= j <= N of lambda_j / j^{2/d}
    double max_ratio = 0.0;
    bool pass = false;
};

/// Weyl-law band check with d = 2; passes when the ratio band sits inside
/// [0.1, 100].
inline WeylDiagnostic weyl_check(const BasisSet& basis) {
    if (basis.size() < 20) throw std::domain_error("weyl_check: need at least 20 eigenpairs");
    for (std::size_t i = 1; i < basis.size(); ++i) {
        if (basis[i].lambda < basis[i - 1].lambda) throw std::domain_error("weyl_check: basis not ascending");
    }
    WeylDiagnostic d;
    d.min_ratio = std::numeric_limits<double>::infinity();
    d.max_ratio = 0.0;
    for (std::size_t j = 10; j <= basis.size(); ++j) {
        const double ratio = basis[j - 1].lambda / static_cast<double>(j);
        d.min_ratio = std::min(d.min_ratio, ratio);
        d.max_ratio = std::max(d.max_ratio, ratio);
    }
    d.pass = std::isfinite(d.max_ratio) && d.min_ratio >= 0.1 && d.max_ratio <= 100.0;
    return d;
}

/// X(D)-norm of (I - Pi_N) f: sqrt(sum_{j > N} lambda_j^2 c_j^2).
inline double projection_tail(std::span<const double> coeffs, const BasisSet& basis, std::size_t n) {
    if (coeffs.size() != basis.size()) throw std::domain_error("projection_tail: coefficient/basis size mismatch");
    if (n >= coeffs.size()) throw std::domain_error("projection_tail: truncation must be below the ambient size");
    double s = 0.0;
    for (std::size_t j = n; j < coeffs.size(); ++j) {
        const double t = basis[j].lambda * coeffs[j];
        s += t * t;
    }
    return std::sqrt(s);
}

/// X(D)-distance sqrt(sum lambda_j^2 (a_j - b_j)^2) between two coefficient
/// vectors over the same basis.
inline double x_norm_distance(std::span<const double> a, std::span<const double> b, const BasisSet& basis) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double t = basis[j].lambda * (a[j] - b[j]);
        s += t * t;
    }
    return std::sqrt(s);
}

}  // namespace plate
