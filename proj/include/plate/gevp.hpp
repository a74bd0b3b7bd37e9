#pragma once

// Dense symmetric-definite generalized eigenproblem A u = tau B u.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "plate/assembly.hpp"
#include "plate/basis.hpp"
#include "plate/errors.hpp"
#include "plate/linalg.hpp"

namespace plate {

struct PlateEigenResult {
    std::vector<double> taus;                  // ascending
    std::vector<std::vector<double>> vectors;  // unit Euclidean norm, largest |entry| positive
    std::vector<double> residuals;             // ||A v - tau B v|| / ||A v||

    std::size_t size() const { return taus.size(); }
    double max_residual() const {
        return residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
    }
};

namespace detail {

inline void fix_sign(std::span<double> v) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < v.size(); ++k)
        if (std::abs(v[k]) > std::abs(v[best])) best = k;
    if (v[best] < 0.0)
        for (double& x : v) x = -x;
}

inline double relative_residual(const Matrix& a, const Matrix& b, std::span<const double> v, double tau) {
    const auto av = a * v;
    const auto bv = b * v;
    double num = 0.0;
    for (std::size_t k = 0; k < av.size(); ++k) num += (av[k] - tau * bv[k]) * (av[k] - tau * bv[k]);
    return std::sqrt(num) / norm2(av);
}

}  // namespace detail

/// Solves A u = tau B u for symmetric A and symmetric positive definite B.
inline PlateEigenResult solve_pencil(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.rows();
    if (n == 0 || a.cols() != n || b.rows() != n || b.cols() != n) {
        throw std::invalid_argument("solve_pencil: A and B must be square and of equal size");
    }
    const auto l = cholesky(b);
    if (!l) throw assembly_error("solve_pencil: B is not positive definite");

    // C = L^{-1} A L^{-T}, built as L^{-1} (L^{-1} A)^T.
    Matrix x(n, n);
    std::vector<double> col(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = a(i, j);
        forward_substitute(*l, col);
        for (std::size_t i = 0; i < n; ++i) x(j, i) = col[i];  // stores (L^{-1}A)^T
    }
    Matrix c(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = x(i, j);
        forward_substitute(*l, col);
        for (std::size_t i = 0; i < n; ++i) c(i, j) = col[i];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) c(i, j) = c(j, i) = 0.5 * (c(i, j) + c(j, i));

    const auto eig = symmetric_eigen(c);

    PlateEigenResult out;
    out.taus = eig.values;
    out.vectors.resize(n);
    out.residuals.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        auto& v = out.vectors[j];
        v.resize(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = eig.vectors(i, j);
        backward_substitute_transposed(*l, v);
        const double nv = norm2(v);
        for (double& t : v) t /= nv;
        detail::fix_sign(v);
        out.residuals[j] = detail::relative_residual(a, b, v, out.taus[j]);
    }
    return out;
}

/// Plate eigenvalues for an assembled system; all taus must come out
/// positive since both forms are definite.
inline PlateEigenResult solve(const GalerkinSystem& system) {
    auto result = solve_pencil(system.A, system.B);
    for (double t : result.taus) {
        if (!(t > 0.0)) throw numerical_error("solve: non-positive plate eigenvalue " + std::to_string(t));
    }
    return result;
}

/// u_{j,N}(p) = sum_k c_k phi_k(p) for 1-based index j.
inline std::vector<double> eigenfunction_field(const PlateEigenResult& result, const BasisSet& basis, std::size_t j,
                                               std::span<const Point> points) {
    if (j < 1 || j > result.size()) {
        throw std::domain_error("eigenfunction_field: index " + std::to_string(j) + " outside [1, " +
                                std::to_string(result.size()) + "]");
    }
    if (basis.size() != result.vectors[j - 1].size()) {
        throw std::domain_error("eigenfunction_field: basis does not match result");
    }
    const auto& c = result.vectors[j - 1];
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        require_inside(basis.domain, p);
        double u = 0.0;
        for (std::size_t k = 0; k < basis.size(); ++k) u += c[k] * detail::phi_unchecked(basis[k], p);
        out.push_back(u);
    }
    return out;
}

}  // namespace plate
