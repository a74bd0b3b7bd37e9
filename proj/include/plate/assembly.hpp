#pragma once

// Galerkin matrices of the forms
//   a(u, v) = int alpha * Lap(u) * Lap(v),   b(u, v) = int beta * u * v
// on a Dirichlet eigenbasis. Since -Lap(phi_j) = lambda_j phi_j, the
// stiffness entries reduce to lambda_i lambda_j int alpha phi_i phi_j.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "plate/basis.hpp"
#include "plate/coeff.hpp"
#include "plate/errors.hpp"
#include "plate/linalg.hpp"
#include "plate/quadrature.hpp"

namespace plate {

struct GalerkinSystem {
    Matrix A;
    Matrix B;
    Domain domain = Domain::square;
    std::size_t basis_size = 0;
    std::size_t rule_size = 0;
    std::string alpha_description;
    std::string beta_description;

    std::size_t size() const { return basis_size; }
};

/// Basis values at the quadrature points; row i holds phi_i(p_q).
inline Matrix basis_values(const BasisSet& basis, const QuadRule& rule) {
    if (basis.domain != rule.domain) throw std::domain_error("basis_values: basis and rule on different domains");
    Matrix phi(basis.size(), rule.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        auto row = phi.row(i);
        for (std::size_t q = 0; q < rule.size(); ++q) row[q] = detail::phi_unchecked(basis[i], rule.points[q]);
    }
    return phi;
}

namespace detail {

// M_ij = scale_i scale_j sum_q w_q phi_i(q) phi_j(q), upper triangle mirrored.
inline Matrix weighted_gram(const Matrix& phi, const std::vector<double>& w, const std::vector<double>& scale) {
    const std::size_t n = phi.rows();
    const std::size_t nq = phi.cols();
    Matrix out(n, n);
    // Quadrature points are processed in cache-sized chunks.
    constexpr std::size_t chunk = 256;
    std::vector<double> wi(chunk);
    for (std::size_t q0 = 0; q0 < nq; q0 += chunk) {
        const std::size_t len = std::min(chunk, nq - q0);
        const std::span<double> wspan(wi.data(), len);
        for (std::size_t i = 0; i < n; ++i) {
            const auto pi = phi.row(i).subspan(q0, len);
            for (std::size_t q = 0; q < len; ++q) wspan[q] = w[q0 + q] * pi[q];
            for (std::size_t j = i; j < n; ++j) out(i, j) += dot(wspan, phi.row(j).subspan(q0, len));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double s = out(i, j) * scale[i] * scale[j];
            out(i, j) = s;
            out(j, i) = s;
        }
    }
    return out;
}

inline std::vector<double> weighted_field(const CoefficientField& f, const QuadRule& rule) {
    std::vector<double> w(rule.size());
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const double v = f(rule.points[q]);
        if (!std::isfinite(v) || !(v > 0.0)) {
            throw std::domain_error("assemble: coefficient '" + f.description() +
                                    "' is not positive and finite at a quadrature point");
        }
        w[q] = rule.weights[q] * v;
    }
    return w;
}

}  // namespace detail

inline GalerkinSystem assemble(const BasisSet& basis, const CoefficientField& alpha, const CoefficientField& beta,
                               const QuadRule& rule) {
    if (basis.domain != rule.domain) throw std::domain_error("assemble: basis and rule on different domains");
    if (basis.size() == 0) throw std::domain_error("assemble: empty basis");

    const Matrix phi = basis_values(basis, rule);
    std::vector<double> lambda(basis.size()), ones(basis.size(), 1.0);
    for (std::size_t i = 0; i < basis.size(); ++i) lambda[i] = basis[i].lambda;

    GalerkinSystem sys;
    sys.domain = basis.domain;
    sys.basis_size = basis.size();
    sys.rule_size = rule.size();
    sys.alpha_description = alpha.description();
    sys.beta_description = beta.description();
    sys.A = detail::weighted_gram(phi, detail::weighted_field(alpha, rule), lambda);
    sys.B = detail::weighted_gram(phi, detail::weighted_field(beta, rule), ones);

    if (!cholesky(sys.B)) throw assembly_error("assemble: mass matrix B is not positive definite");
    if (!cholesky(sys.A)) throw assembly_error("assemble: stiffness matrix A is not positive definite");
    return sys;
}

}  // namespace plate
